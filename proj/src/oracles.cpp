// oracles.cpp — brute-force references: Choi construction, Riemann sums, direct kernel quadrature

#include "nonmarkov/oracles.hpp"

#include "nonmarkov/measures.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/ooura_fourier_integrals.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace nonmarkov::oracles {

using cd = std::complex<double>;
constexpr cd I{0.0, 1.0};

Density density_from_bloch(const BlochVector& b) {
    Density rho;
    rho << 0.5 * (1.0 + b.bz), 0.5 * cd(b.bx, -b.by), 0.5 * cd(b.bx, b.by), 0.5 * (1.0 - b.bz);
    return rho;
}

BlochVector bloch_from_density(const Density& rho) {
    // b_j = Tr(rho sigma_j)
    return {2.0 * rho(0, 1).real(), -2.0 * rho(0, 1).imag(), (rho(0, 0) - rho(1, 1)).real()};
}

Density apply_generator(const tcl::CoefficientSet& c, const Density& rho) {
    Density up = Density::Zero();  // sigma_+ = |1><0|
    up(0, 1) = 1.0;
    const Density down = up.adjoint();
    const Density p_exc = up * down;
    const Density p_gnd = down * up;

    const double gm = c.gamma_minus.total(), gp = c.gamma_plus.total(), g0 = c.gamma_zero.total();
    const cd nonsec(c.alpha.total(), c.beta.total());

    const Density H = c.s_plus.total() * p_exc + c.s_minus.total() * p_gnd;
    auto lindblad = [&](const Density& jump) {
        const Density jj = jump.adjoint() * jump;
        return Density(jump * rho * jump.adjoint() - 0.5 * (jj * rho + rho * jj));
    };
    Density out = -I * (H * rho - rho * H);
    out += gm * lindblad(down) + gp * lindblad(up) + g0 * lindblad(p_exc);
    // the Hermitian-conjugate term written out, since Choi blocks are not Hermitian
    out += nonsec * (up * rho * up) + std::conj(nonsec) * (down * rho * down);
    return out;
}

ChoiState choi_state() {
    Eigen::Vector4cd phi = Eigen::Vector4cd::Zero();
    phi[1] = phi[2] = 1.0 / std::sqrt(2.0);  // |01>, |10>
    return phi * phi.adjoint();
}

namespace {

double perturbed_norm_rate(const tcl::CoefficientSet& c, double eps) {
    const ChoiState phi = choi_state();
    ChoiState lifted;
    // (L (x) 1) acts on each 2x2 block indexed by the ancilla pair
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            Density block;
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) block(i, j) = phi(2 * i + a, 2 * j + b);
            const Density mapped = apply_generator(c, block);
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) lifted(2 * i + a, 2 * j + b) = mapped(i, j);
        }
    }
    ChoiState m = phi + eps * lifted;
    m = 0.5 * (m + m.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<ChoiState> eig(m, Eigen::EigenvaluesOnly);
    return (eig.eigenvalues().cwiseAbs().sum() - 1.0) / eps;
}

} // namespace

double choi_g_oracle(const tcl::CoefficientSet& coeffs, double eps, bool richardson) {
    if (!(eps > 0.0 && eps <= 1e-3)) throw std::invalid_argument("epsilon must lie in (0, 1e-3]");
    const double f = perturbed_norm_rate(coeffs, eps);
    const double g = richardson ? 2.0 * perturbed_norm_rate(coeffs, 0.5 * eps) - f : f;
    // the trace norm is at least 1, so anything below zero is eigenvalue rounding
    return std::max(g, 0.0);
}

// ---------------------------------------------------------------------------

namespace {

// One fourth-order integrand at (t, t1, t2, t3).
class QuarticIntegrand {
public:
    QuarticIntegrand(const spectral::CorrelationKernels& k, double omega0, tcl::Selector which)
        : k_(k), w_(omega0), which_(which) {}

    double operator()(double t, double t1, double t2, double t3) const {
        double c01, s01, c02, s02, c03, s03, c12, s12, c13, s13, c23, s23;
        k_.evaluate(t - t1, c01, s01);
        k_.evaluate(t - t2, c02, s02);
        k_.evaluate(t - t3, c03, s03);
        k_.evaluate(t1 - t2, c12, s12);
        k_.evaluate(t1 - t3, c13, s13);
        k_.evaluate(t2 - t3, c23, s23);
        (void)c01;
        (void)s01;
        (void)c23;
        (void)s23;
        const double sn01 = std::sin(w_ * (t - t1)), cs01 = std::cos(w_ * (t - t1));
        const double sn02 = std::sin(w_ * (t - t2)), cs02 = std::cos(w_ * (t - t2));
        const double sn03 = std::sin(w_ * (t - t3)), cs03 = std::cos(w_ * (t - t3));
        const double sn12 = std::sin(w_ * (t1 - t2)), sn13 = std::sin(w_ * (t1 - t3));
        const double sn23 = std::sin(w_ * (t2 - t3));

        using tcl::Selector;
        switch (which_) {
        case Selector::SPlus:
        case Selector::SMinus: {
            const double w3 = which_ == Selector::SPlus ? 3.0 : -1.0;
            return 2.0 * ((s02 * sn03 - w3 * c02 * cs03) * c13 * sn12 + (c02 * sn03 - s02 * cs03) * s13 * sn12 +
                          (s03 * sn02 - w3 * c03 * cs02) * c12 * sn13 + (c03 * sn02 - s03 * cs02) * s12 * sn13 +
                          (-s03 * sn01 - c03 * cs01) * c12 * sn23 + (-c03 * sn01 + s03 * cs01) * s12 * sn23);
        }
        case Selector::GammaPlus:
        case Selector::GammaMinus: {
            const double pm = which_ == Selector::GammaPlus ? 1.0 : -1.0;
            return -8.0 * ((c13 * sn03 + pm * s13 * cs03) * c02 * sn12 + (c12 * sn02 + pm * s12 * cs02) * c03 * sn13 -
                           pm * (s03 * c12 + c03 * s12) * sn23 * cs01);
        }
        case Selector::GammaZero:
            return 16.0 * ((c02 * c13 + s02 * s13) * sn03 * sn12 + (c03 * c12 + s03 * s12) * sn02 * sn13 +
                           (c03 * c12 - s03 * s12) * sn01 * sn23);
        case Selector::Alpha: {
            const double sp2 = k_.s(t + t2), sp3 = k_.s(t + t3);
            return -8.0 * (sp2 * s13 * std::sin(w_ * (t + t3)) * sn12 + sp3 * s12 * std::sin(w_ * (t + t2)) * sn13 +
                           (c03 * c12 - s03 * s12) * std::sin(w_ * (t + t1)) * sn23);
        }
        case Selector::Beta:
            return 8.0 * (s02 * s13 * std::cos(w_ * (t + t3)) * sn12 + s03 * s12 * std::cos(w_ * (t + t2)) * sn13 +
                          (c03 * c12 - s03 * s12) * std::cos(w_ * (t + t1)) * sn23);
        }
        return 0.0;
    }

private:
    const spectral::CorrelationKernels& k_;
    double w_;
    tcl::Selector which_;
};

} // namespace

double simplex_riemann_oracle(double t, const spectral::CorrelationKernels& kernels, double omega0,
                              tcl::Selector which, int n) {
    if (n < 50) throw std::invalid_argument("simplex Riemann oracle needs n >= 50");
    if (t <= 0.0) return 0.0;
    const QuarticIntegrand f(kernels, omega0, which);
    const double h = t / n;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        const double t1 = (i + 0.5) * h;
        for (int j = 0; j <= i; ++j) {
            const double t2 = (j + 0.5) * h;
            for (int k = 0; k <= j; ++k) {
                const double t3 = (k + 0.5) * h;
                const int ties = (i == j) + (j == k);
                const double weight = ties == 0 ? 1.0 : ties == 1 ? 0.5 : 1.0 / 6.0;
                sum += weight * f(t, t1, t2, t3);
            }
        }
    }
    return sum * h * h * h;
}

double tcl2_riemann_oracle(double t, const spectral::CorrelationKernels& kernels, double omega0,
                           tcl::Selector which, int steps) {
    if (steps < 1) throw std::invalid_argument("need at least one step");
    if (t <= 0.0 || which == tcl::Selector::GammaZero) return 0.0;
    const double h = t / steps;
    double sum = 0.0;
    for (int i = 0; i < steps; ++i) {
        const double tau = (i + 0.5) * h;
        double c, s;
        kernels.evaluate(tau, c, s);
        const double sn = std::sin(omega0 * tau), cs = std::cos(omega0 * tau);
        switch (which) {
        case tcl::Selector::SPlus: sum += sn * c - cs * s; break;
        case tcl::Selector::SMinus: sum += -(sn * c + cs * s); break;
        case tcl::Selector::GammaPlus: sum += 2.0 * (cs * c - sn * s); break;
        case tcl::Selector::GammaMinus: sum += 2.0 * (cs * c + sn * s); break;
        case tcl::Selector::Alpha: sum += 2.0 * kernels.c(t - tau) * std::cos(omega0 * (t + tau)); break;
        case tcl::Selector::Beta: sum += 2.0 * kernels.c(t - tau) * std::sin(omega0 * (t + tau)); break;
        case tcl::Selector::GammaZero: break;
        }
    }
    return sum * h;
}

std::pair<double, double> lorentzian_kernel_oracle(double t, const spectral::SpectralParams& p) {
    p.validate();
    const double lam = p.lambda, wc = p.omega_c();
    const double norm = p.gamma0 * lam / (2.0 * std::numbers::pi);
    const double width = 500.0 * lam;
    const double v_max = std::asinh(width / lam);

    // core: omega = wc + lam sinh v turns J d omega into norm * sech(v) dv
    double core_c = 0.0, core_s = 0.0;
    double v = -v_max;
    while (v < v_max) {
        const double outer = std::abs(v) + 0.25;  // cosh is largest at the far end of the panel
        const double step = std::min({0.25, 2.0 / (lam * t * std::cosh(outer) + 1e-300), v_max - v});
        const double a = v, b = v + step;
        core_c += boost::math::quadrature::gauss<double, 20>::integrate(
            [&](double x) { return norm / std::cosh(x) * std::cos((wc + lam * std::sinh(x)) * t); }, a, b);
        core_s += boost::math::quadrature::gauss<double, 20>::integrate(
            [&](double x) { return norm / std::cosh(x) * std::sin((wc + lam * std::sinh(x)) * t); }, a, b);
        v = b;
    }

    // tails |omega - wc| > width; together they contribute 2 trig(wc t) * int_W^inf J(x) cos(x t) dx
    double tail;
    if (t == 0.0) {
        tail = norm * (0.5 * std::numbers::pi - std::atan(width / lam));
    } else {
        auto shifted = [&](double y) {
            const double x = width + y;
            return norm * lam / (x * x + lam * lam);
        };
        boost::math::quadrature::ooura_fourier_cos<double> cos_rule(1e-12);
        boost::math::quadrature::ooura_fourier_sin<double> sin_rule(1e-12);
        const double ic = cos_rule.integrate(shifted, t).first;
        const double is = sin_rule.integrate(shifted, t).first;
        tail = std::cos(width * t) * ic - std::sin(width * t) * is;
    }
    return {core_c + 2.0 * std::cos(wc * t) * tail, core_s + 2.0 * std::sin(wc * t) * tail};
}

std::vector<double> finite_difference_sigma(const std::vector<BlochVector>& first,
                                            const std::vector<BlochVector>& second,
                                            const std::vector<double>& grid) {
    if (first.size() != grid.size() || second.size() != grid.size()) {
        throw std::invalid_argument("trajectories and grid differ in length");
    }
    const std::size_t n = grid.size();
    if (n < 3) throw std::invalid_argument("finite differences need at least three points");
    std::vector<double> d(n), out(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = measures::trace_distance(first[i], second[i]);
    out[0] = (d[1] - d[0]) / (grid[1] - grid[0]);
    out[n - 1] = (d[n - 1] - d[n - 2]) / (grid[n - 1] - grid[n - 2]);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        // three-point derivative, second order on nonuniform grids
        const double hl = grid[i] - grid[i - 1], hr = grid[i + 1] - grid[i];
        out[i] = (hl * hl * (d[i + 1] - d[i]) + hr * hr * (d[i] - d[i - 1])) / (hl * hr * (hl + hr));
    }
    return out;
}

} // namespace nonmarkov::oracles
