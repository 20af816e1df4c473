// tcl_coefficients.cpp — second-order coefficients, trace evaluation and CSV output

#include "nonmarkov/tcl_coefficients.hpp"

#include "nonmarkov/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <thread>
#include <tuple>

namespace nonmarkov::tcl {

SystemBath make_bath(const spectral::SpectralParams& params, spectral::FrequencyConvention convention) {
    return {spectral::kernels_for(params, convention), params.omega0};
}

CoefficientSet make_totals(double gamma_minus, double gamma_plus, double gamma_zero, double alpha, double beta,
                           double s_plus, double s_minus) {
    CoefficientSet c;
    c.gamma_minus.second_order = gamma_minus;
    c.gamma_plus.second_order = gamma_plus;
    // Γ0 has no second-order part, so its value goes in the fourth-order slot
    c.gamma_zero.fourth_order = gamma_zero;
    c.alpha.second_order = alpha;
    c.beta.second_order = beta;
    c.s_plus.second_order = s_plus;
    c.s_minus.second_order = s_minus;
    return c;
}

TclOrder parse_order(const std::string& name) {
    if (name == "tcl2" || name == "TCL2" || name == "2") return TclOrder::TCL2;
    if (name == "tcl4" || name == "TCL4" || name == "4") return TclOrder::TCL4;
    throw std::invalid_argument("unknown TCL order '" + name + "'");
}

std::string to_string(TclOrder order) { return order == TclOrder::TCL2 ? "tcl2" : "tcl4"; }

namespace {

double tau_integral(const std::function<double(double)>& f, double t, const SystemBath& bath, double rtol) {
    if (t < 0.0) throw std::invalid_argument("coefficient time must be nonnegative");
    if (t == 0.0) return 0.0;
    quad::Options opts;
    opts.rtol = rtol;
    opts.omega = bath.omega0 + bath.kernels->frequency_scale();
    // near-zero integrals (e.g. the counter-rotating rates) are judged on the kernel scale
    opts.atol = rtol * std::abs(bath.kernels->c(0.0)) * t;
    const quad::Result r = quad::integrate(f, 0.0, t, opts);
    if (!r.converged) throw quad::NumericalError("second-order tau integral missed its tolerance", r.value, r.error);
    return r.value;
}

} // namespace

double lamb_shift_2(double t, const SystemBath& bath, Sign sign, double rtol) {
    const double pm = sign == Sign::Plus ? 1.0 : -1.0;
    const auto& K = *bath.kernels;
    const double om = bath.omega0;
    auto f = [&](double tau) {
        double c = 0.0, s = 0.0;
        K.evaluate(tau, c, s);
        return std::sin(om * tau) * c - pm * std::cos(om * tau) * s;
    };
    return pm * tau_integral(f, t, bath, rtol);
}

double gamma_2(double t, const SystemBath& bath, Sign sign, double rtol) {
    const double pm = sign == Sign::Plus ? 1.0 : -1.0;
    const auto& K = *bath.kernels;
    const double om = bath.omega0;
    auto f = [&](double tau) {
        double c = 0.0, s = 0.0;
        K.evaluate(tau, c, s);
        return 2.0 * (std::cos(om * tau) * c - pm * std::sin(om * tau) * s);
    };
    return tau_integral(f, t, bath, rtol);
}

std::pair<double, double> nonsecular_2(double t, const SystemBath& bath, double rtol) {
    const auto& K = *bath.kernels;
    const double om = bath.omega0;
    auto fa = [&](double tau) { return 2.0 * K.c(t - tau) * std::cos(om * (t + tau)); };
    auto fb = [&](double tau) { return 2.0 * K.c(t - tau) * std::sin(om * (t + tau)); };
    return {tau_integral(fa, t, bath, rtol), tau_integral(fb, t, bath, rtol)};
}

void validate_grid(const std::vector<double>& grid) {
    if (grid.empty()) throw std::invalid_argument("time grid is empty");
    if (grid.front() != 0.0) throw std::invalid_argument("time grid must start at 0");
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (!(grid[i] > grid[i - 1])) throw std::invalid_argument("time grid must be strictly increasing");
    }
}

std::vector<double> uniform_grid(double t_max, std::size_t points) {
    if (points < 2) throw std::invalid_argument("grid needs at least two points");
    if (!(t_max > 0.0)) throw std::invalid_argument("grid end must be positive");
    std::vector<double> g(points);
    for (std::size_t i = 0; i < points; ++i) {
        g[i] = t_max * static_cast<double>(i) / static_cast<double>(points - 1);
    }
    g.back() = t_max;
    return g;
}

CoefficientTrace evaluate_trace(const SystemBath& bath, const std::vector<double>& grid, TclOrder order,
                                const TraceOptions& opts) {
    validate_grid(grid);
    CoefficientTrace trace;
    trace.grid = grid;
    trace.order = order;
    trace.sets.resize(grid.size());
    trace.metadata.resize(grid.size());

    auto point = [&](std::size_t i) {
        const double t = grid[i];
        CoefficientSet& c = trace.sets[i];
        c.t = t;
        c.s_plus.second_order = lamb_shift_2(t, bath, Sign::Plus, opts.second_rtol);
        c.s_minus.second_order = lamb_shift_2(t, bath, Sign::Minus, opts.second_rtol);
        c.gamma_plus.second_order = gamma_2(t, bath, Sign::Plus, opts.second_rtol);
        c.gamma_minus.second_order = gamma_2(t, bath, Sign::Minus, opts.second_rtol);
        std::tie(c.alpha.second_order, c.beta.second_order) = nonsecular_2(t, bath, opts.second_rtol);
        if (order == TclOrder::TCL2) return;

        const auto iv = fourth_order_all(t, bath, opts.fourth);
        auto get = [&](Selector s) { return iv[static_cast<std::size_t>(s)]; };
        c.s_plus.fourth_order = get(Selector::SPlus).value;
        c.s_minus.fourth_order = get(Selector::SMinus).value;
        c.gamma_plus.fourth_order = get(Selector::GammaPlus).value;
        c.gamma_minus.fourth_order = get(Selector::GammaMinus).value;
        c.gamma_zero.fourth_order = get(Selector::GammaZero).value;
        c.alpha.fourth_order = get(Selector::Alpha).value;
        c.beta.fourth_order = get(Selector::Beta).value;

        PointMetadata& meta = trace.metadata[i];
        for (const auto& r : iv) {
            meta.cubature_order = std::max(meta.cubature_order, r.order);
            meta.error_estimate = std::max(meta.error_estimate, r.error);
            meta.converged = meta.converged && r.converged;
        }
        if (opts.strict && !meta.converged) {
            throw quad::NumericalError("fourth-order cubature did not converge at t = " + std::to_string(t),
                                       c.gamma_minus.fourth_order, meta.error_estimate);
        }
    };

    unsigned threads = opts.threads ? opts.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, grid.size()));
    if (threads <= 1) {
        for (std::size_t i = 0; i < grid.size(); ++i) point(i);
        return trace;
    }
    // strided assignment; every point writes only its own slot
    std::vector<std::exception_ptr> failures(threads);
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = w; i < grid.size(); i += threads) point(i);
            } catch (...) {
                failures[w] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (const auto& f : failures) {
        if (f) std::rethrow_exception(f);
    }
    return trace;
}

CoefficientTrace evaluate_trace(const spectral::SpectralParams& params, const std::vector<double>& grid,
                                TclOrder order, const TraceOptions& opts) {
    return evaluate_trace(make_bath(params), grid, order, opts);
}

void write_csv(const CoefficientTrace& trace, std::ostream& out) {
    out << "t,S+II,S+IV,S-II,S-IV,G-II,G-IV,G+II,G+IV,G0,alphaII,alphaIV,betaII,betaIV\n";
    char buf[64];
    auto put = [&](double v, bool last = false) {
        std::snprintf(buf, sizeof buf, "%.17g", v + 0.0);  // + 0.0 prints -0 as 0
        out << buf << (last ? '\n' : ',');
    };
    for (const auto& c : trace.sets) {
        put(c.t);
        put(c.s_plus.second_order);
        put(c.s_plus.fourth_order);
        put(c.s_minus.second_order);
        put(c.s_minus.fourth_order);
        put(c.gamma_minus.second_order);
        put(c.gamma_minus.fourth_order);
        put(c.gamma_plus.second_order);
        put(c.gamma_plus.fourth_order);
        put(c.gamma_zero.fourth_order);
        put(c.alpha.second_order);
        put(c.alpha.fourth_order);
        put(c.beta.second_order);
        put(c.beta.fourth_order, true);
    }
}

} // namespace nonmarkov::tcl
