// dynamics.cpp — Bloch equations, spline interpolation, ODE propagation, secular and RWA solutions

#include "nonmarkov/dynamics.hpp"

#include "nonmarkov/quadrature.hpp"

#include <boost/numeric/odeint.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdio>
#include <numbers>
#include <ostream>

namespace nonmarkov::dynamics {

double BlochVector::norm() const noexcept { return std::sqrt(bx * bx + by * by + bz * bz); }

BlochVector operator-(const BlochVector& a, const BlochVector& b) {
    return {a.bx - b.bx, a.by - b.by, a.bz - b.bz};
}

DampingSystem DampingSystem::assemble(const tcl::CoefficientSet& c) {
    const double gm = c.gamma_minus.total(), gp = c.gamma_plus.total(), g0 = c.gamma_zero.total();
    const double al = c.alpha.total(), be = c.beta.total();
    const double shift = c.s_minus.total() - c.s_plus.total();
    const double transverse = gm + gp + g0;
    DampingSystem d;
    d.M << -0.5 * (transverse - 2.0 * al), shift - be, 0.0,
           -(shift + be), -0.5 * (transverse + 2.0 * al), 0.0,
           0.0, 0.0, -(gm + gp);
    d.v << 0.0, 0.0, gp - gm;
    return d;
}

BlochVector DampingSystem::apply(const BlochVector& b) const { return BlochVector::from(M * b.vec() + v); }

BlochVector bloch_rhs(const BlochVector& b, const tcl::CoefficientSet& c) {
    const double gm = c.gamma_minus.total(), gp = c.gamma_plus.total(), g0 = c.gamma_zero.total();
    const double al = c.alpha.total(), be = c.beta.total();
    const double sp = c.s_plus.total(), sm = c.s_minus.total();
    return {
        -0.5 * (gm + gp + g0 - 2.0 * al) * b.bx + (sm - sp - be) * b.by,
        -0.5 * (gm + gp + g0 + 2.0 * al) * b.by - (sm - sp + be) * b.bx,
        -(gm + gp) * b.bz + gp - gm,
    };
}

// ---- spline -------------------------------------------------------------------------------

CubicSpline::CubicSpline(std::vector<double> x, std::vector<double> y) : x_(std::move(x)), y_(std::move(y)) {
    const std::size_t n = x_.size();
    if (n < 2 || y_.size() != n) throw std::invalid_argument("spline needs at least two matching points");
    m_.assign(n, 0.0);
    if (n > 2) {
        // natural end conditions; Thomas algorithm on the interior second derivatives
        std::vector<double> diag(n, 0.0), rhs(n, 0.0), upper(n, 0.0);
        for (std::size_t i = 1; i + 1 < n; ++i) {
            const double h0 = x_[i] - x_[i - 1], h1 = x_[i + 1] - x_[i];
            const double lower = h0 / 6.0;
            diag[i] = (h0 + h1) / 3.0;
            upper[i] = h1 / 6.0;
            rhs[i] = (y_[i + 1] - y_[i]) / h1 - (y_[i] - y_[i - 1]) / h0;
            if (i > 1) {
                const double f = lower / diag[i - 1];
                diag[i] -= f * upper[i - 1];
                rhs[i] -= f * rhs[i - 1];
            }
        }
        for (std::size_t i = n - 2; i >= 1; --i) {
            m_[i] = (rhs[i] - upper[i] * m_[i + 1]) / diag[i];
            if (i == 1) break;
        }
    }
    cumulative_.assign(n, 0.0);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double h = x_[i + 1] - x_[i];
        cumulative_[i + 1] = cumulative_[i] + 0.5 * h * (y_[i] + y_[i + 1]) - h * h * h * (m_[i] + m_[i + 1]) / 24.0;
    }
}

std::size_t CubicSpline::interval(double x) const {
    auto it = std::upper_bound(x_.begin(), x_.end(), x);
    std::size_t i = it == x_.begin() ? 0 : static_cast<std::size_t>(it - x_.begin()) - 1;
    return std::min(i, x_.size() - 2);
}

double CubicSpline::operator()(double x) const {
    const std::size_t i = interval(x);
    const double h = x_[i + 1] - x_[i];
    const double b = (x - x_[i]) / h;
    const double a = 1.0 - b;
    return a * y_[i] + b * y_[i + 1] + ((a * a * a - a) * m_[i] + (b * b * b - b) * m_[i + 1]) * h * h / 6.0;
}

double CubicSpline::integral(double x) const {
    const std::size_t i = interval(x);
    const double h = x_[i + 1] - x_[i];
    const double b = (x - x_[i]) / h;
    const double a = 1.0 - b;
    const double lin = y_[i] * (b - 0.5 * b * b) + y_[i + 1] * 0.5 * b * b;
    const double curv = m_[i] * ((1.0 - a * a * a * a) / 4.0 - b + 0.5 * b * b) + m_[i + 1] * (b * b * b * b / 4.0 - 0.5 * b * b);
    return cumulative_[i] + h * (lin + curv * h * h / 6.0);
}

// ---- coefficient interpolation ------------------------------------------------------------

CoefficientInterpolator::CoefficientInterpolator(const tcl::CoefficientTrace& trace, bool zero_nonsecular)
    : zero_nonsecular_(zero_nonsecular) {
    tcl::validate_grid(trace.grid);
    t_max_ = trace.grid.back();
    grid_ = trace.grid;
    if (trace.grid.size() < 2) {
        single_point_ = true;
        return;
    }
    const std::size_t n = trace.size();
    std::vector<double> sp(n), sm(n), gm(n), gp(n), g0(n), al(n), be(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& c = trace.sets[i];
        sp[i] = c.s_plus.total();
        sm[i] = c.s_minus.total();
        gm[i] = c.gamma_minus.total();
        gp[i] = c.gamma_plus.total();
        g0[i] = c.gamma_zero.total();
        al[i] = c.alpha.total();
        be[i] = c.beta.total();
    }
    const auto& g = trace.grid;
    sp_ = {g, sp};
    sm_ = {g, sm};
    gm_ = {g, gm};
    gp_ = {g, gp};
    g0_ = {g, g0};
    al_ = {g, al};
    be_ = {g, be};
}

void CoefficientInterpolator::check(double t) const {
    const double slack = 1e-12 * std::max(1.0, t_max_);
    if (t < -slack || t > t_max_ + slack) {
        throw std::out_of_range("time " + std::to_string(t) + " outside the coefficient trace");
    }
}

tcl::CoefficientSet CoefficientInterpolator::at(double t) const {
    check(t);
    if (single_point_) return tcl::make_totals(0.0, 0.0, 0.0);
    auto c = tcl::make_totals(gm_(t), gp_(t), g0_(t), zero_nonsecular_ ? 0.0 : al_(t),
                              zero_nonsecular_ ? 0.0 : be_(t), sp_(t), sm_(t));
    c.t = t;
    return c;
}

double CoefficientInterpolator::integral_gamma_minus(double t) const { return single_point_ ? 0.0 : gm_.integral(t); }
double CoefficientInterpolator::integral_gamma_plus(double t) const { return single_point_ ? 0.0 : gp_.integral(t); }
double CoefficientInterpolator::integral_gamma_zero(double t) const { return single_point_ ? 0.0 : g0_.integral(t); }
double CoefficientInterpolator::integral_s_plus(double t) const { return single_point_ ? 0.0 : sp_.integral(t); }
double CoefficientInterpolator::integral_s_minus(double t) const { return single_point_ ? 0.0 : sm_.integral(t); }

// ---- propagation --------------------------------------------------------------------------

namespace {

namespace odeint = boost::numeric::odeint;
using State = std::array<double, 3>;

double automatic_step_cap(const tcl::CoefficientTrace& trace, const PropagateOptions& opts) {
    if (opts.max_step > 0.0) return opts.max_step;
    if (opts.zero_nonsecular || opts.omega0 <= 0.0) return 0.0;
    double nonsecular = 0.0, rates = 0.0;
    for (const auto& c : trace.sets) {
        nonsecular = std::max(nonsecular, std::abs(c.alpha.total()) + std::abs(c.beta.total()));
        rates = std::max({rates, std::abs(c.gamma_minus.total()), std::abs(c.gamma_plus.total()),
                          std::abs(c.gamma_zero.total()), std::abs(c.s_plus.total()), std::abs(c.s_minus.total())});
    }
    return nonsecular > 1e-6 * rates ? std::numbers::pi / (4.0 * opts.omega0) : 0.0;
}

} // namespace

Trajectory propagate(const BlochVector& initial, const tcl::CoefficientTrace& trace, double t_final,
                     const PropagateOptions& opts) {
    tcl::validate_grid(trace.grid);
    if (t_final < 0.0 || t_final > trace.grid.back()) {
        throw std::out_of_range("t_final lies outside the coefficient trace");
    }
    if (initial.norm() > 1.0 + 1e-12) throw std::invalid_argument("initial Bloch vector is not physical");

    Trajectory out;
    for (double t : trace.grid) {
        if (t <= t_final) out.times.push_back(t);
    }
    if (out.times.back() < t_final) out.times.push_back(t_final);
    if (out.times.size() == 1) {
        out.states.push_back(initial);
        return out;
    }

    const CoefficientInterpolator interp(trace, opts.zero_nonsecular);
    auto rhs = [&interp](const State& x, State& dx, double t) {
        const BlochVector d = bloch_rhs({x[0], x[1], x[2]}, interp.at(t));
        dx = {d.bx, d.by, d.bz};
    };
    State x{initial.bx, initial.by, initial.bz};
    auto observer = [&out](const State& s, double) { out.states.push_back({s[0], s[1], s[2]}); };

    const double cap = automatic_step_cap(trace, opts);
    const double h0 = std::min(1e-3 * t_final, cap > 0.0 ? cap : t_final);
    try {
        auto stepper = odeint::make_dense_output(opts.atol, opts.rtol, cap, odeint::runge_kutta_dopri5<State>());
        odeint::integrate_times(stepper, rhs, x, out.times.begin(), out.times.end(), h0, observer);
    } catch (const std::out_of_range&) {
        throw;
    } catch (const std::exception& e) {
        throw DynamicsError(std::string("Bloch propagation failed: ") + e.what());
    }
    if (out.states.size() != out.times.size()) throw DynamicsError("Bloch propagation stopped early");
    return out;
}

void write_csv(const Trajectory& traj, std::ostream& out) {
    out << "t,bx,by,bz\n";
    char buf[128];
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        const auto& s = traj.states[i];
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", traj.times[i], s.bx, s.by, s.bz);
        out << buf;
    }
}

// ---- secular solution ---------------------------------------------------------------------

namespace {

SecularIntegrals integrals_without_drift(const CoefficientInterpolator& in, double t) {
    SecularIntegrals s;
    s.t = t;
    const double gm = in.integral_gamma_minus(t), gp = in.integral_gamma_plus(t), g0 = in.integral_gamma_zero(t);
    s.Theta = 0.5 * (gm + gp + g0);
    s.Lambda = gm + gp;
    s.delta_phase = in.integral_s_plus(t) - in.integral_s_minus(t);
    return s;
}

// int_a^b e^{Lambda(s)} [Gamma+(s) - Gamma-(s)] ds on one spline interval
double drift_piece(const CoefficientInterpolator& in, double a, double b) {
    const auto rule = quad::gauss_legendre(12);
    double sum = 0.0;
    for (std::size_t k = 0; k < rule->size(); ++k) {
        const double s = 0.5 * (a + b) + 0.5 * (b - a) * rule->nodes[k];
        const auto c = in.at(s);
        const double lambda = in.integral_gamma_minus(s) + in.integral_gamma_plus(s);
        sum += rule->weights[k] * std::exp(lambda) * (c.gamma_plus.total() - c.gamma_minus.total());
    }
    return 0.5 * (b - a) * sum;
}

} // namespace

std::vector<SecularIntegrals> secular_integrals(const tcl::CoefficientTrace& trace) {
    const CoefficientInterpolator in(trace);
    std::vector<SecularIntegrals> out(trace.size());
    double drift = 0.0;
    for (std::size_t i = 0; i < trace.size(); ++i) {
        if (i > 0) drift += drift_piece(in, trace.grid[i - 1], trace.grid[i]);
        out[i] = integrals_without_drift(in, trace.grid[i]);
        out[i].drift = drift;
    }
    return out;
}

SecularIntegrals secular_integrals_at(const CoefficientInterpolator& in, double t) {
    SecularIntegrals s = integrals_without_drift(in, t);
    const auto& g = in.grid();
    double drift = 0.0;
    for (std::size_t i = 1; i < g.size() && g[i - 1] < t; ++i) drift += drift_piece(in, g[i - 1], std::min(g[i], t));
    s.drift = drift;
    return s;
}

BlochVector secular_solution(const BlochVector& b0, const SecularIntegrals& in) {
    const double damp = std::exp(-in.Theta);
    const double c = std::cos(in.delta_phase), s = std::sin(in.delta_phase);
    return {
        damp * (b0.bx * c - b0.by * s),
        damp * (b0.bx * s + b0.by * c),
        std::exp(-in.Lambda) * (b0.bz + in.drift),
    };
}

// ---- RWA reference model ------------------------------------------------------------------

double rwa_gamma(double t, const spectral::SpectralParams& p) {
    using cplx = std::complex<double>;
    const cplx L{p.lambda, -p.delta};
    cplx d = std::sqrt(L * L - 2.0 * p.gamma0 * p.lambda);
    cplx w = 0.5 * d * t;
    // the expression is even in d; pick the sign with Re(w) >= 0 so exp(-2w) cannot overflow
    if (w.real() < 0.0) {
        d = -d;
        w = -w;
    }
    if (std::abs(w) < 1e-6) {
        // tanh(w)/d -> t/2 (1 - w^2/3) near the confluent point
        const cplx ratio = 0.5 * t * (1.0 - w * w / 3.0);
        return std::real(2.0 * p.gamma0 * p.lambda * ratio / (1.0 + L * ratio));
    }
    const cplx e = std::exp(-2.0 * w);
    const cplx th = (1.0 - e) / (1.0 + e);
    return std::real(2.0 * p.gamma0 * p.lambda * th / (d + L * th));
}

namespace {

double rwa_frequency(const spectral::SpectralParams& p) {
    const std::complex<double> L{p.lambda, -p.delta};
    const auto d = std::sqrt(L * L - 2.0 * p.gamma0 * p.lambda);
    return std::abs(d.imag()) + std::abs(p.delta) + p.lambda;
}

double rwa_integral(const spectral::SpectralParams& p, double a, double b, double omega) {
    if (b <= a) return 0.0;
    quad::Options o;
    o.rtol = 1e-12;
    o.atol = 1e-15 * p.gamma0 * (b - a);
    o.omega = omega;
    return quad::integrate([&](double s) { return rwa_gamma(s, p); }, a, b, o).value;
}

} // namespace

RwaRate rwa_decay_rate(double t, const spectral::SpectralParams& p) {
    if (t < 0.0) throw std::invalid_argument("RWA rate needs t >= 0");
    return {rwa_gamma(t, p), rwa_integral(p, 0.0, t, rwa_frequency(p))};
}

RwaTrace rwa_trace(const spectral::SpectralParams& p, const std::vector<double>& grid) {
    tcl::validate_grid(grid);
    RwaTrace out;
    out.grid = grid;
    const double omega = rwa_frequency(p);
    double acc = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (i > 0) acc += rwa_integral(p, grid[i - 1], grid[i], omega);
        out.gamma.push_back(rwa_gamma(grid[i], p));
        out.Gamma_accum.push_back(acc);
    }
    return out;
}

void write_csv(const RwaTrace& trace, std::ostream& out) {
    out << "t,gamma,Gamma_accum\n";
    char buf[96];
    for (std::size_t i = 0; i < trace.grid.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", trace.grid[i], trace.gamma[i], trace.Gamma_accum[i]);
        out << buf;
    }
}

RwaF rwa_F(double Gamma, double a, double b_abs) {
    if (a == 0.0 && b_abs == 0.0) return {0.0, true};
    const double a2 = a * a, b2 = b_abs * b_abs;
    const double num = a2 * std::exp(-1.5 * Gamma) + b2 * std::exp(-0.5 * Gamma);
    return {num / std::sqrt(a2 * std::exp(-Gamma) + b2), false};
}

RwaF rwa_F(double t, const spectral::SpectralParams& p, double a, double b_abs) {
    return rwa_F(rwa_decay_rate(t, p).Gamma_accum, a, b_abs);
}

} // namespace nonmarkov::dynamics
