// fourth_order.cpp — fourth-order coefficients: tensor Gauss–Legendre cubature on the simplex
// and an exact evaluation for kernels that are finite sums of exponentials

#include "nonmarkov/tcl_coefficients.hpp"

#include "fourth_order_terms.hpp"
#include "nonmarkov/quadrature.hpp"

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <bitset>
#include <cmath>
#include <complex>
#include <limits>

namespace nonmarkov::tcl {

namespace {

using terms::Arg;
using terms::Fn;
using cplx = std::complex<double>;

using Mask = std::bitset<kSelectorCount>;

std::size_t index_of(Selector which) { return static_cast<std::size_t>(which); }

struct FlatProduct {
    std::size_t slot;
    double coeff;  // includes the integrand prefactor
    std::array<terms::Factor, 4> factors;
};

std::vector<FlatProduct> flatten(const Mask& mask) {
    std::vector<FlatProduct> out;
    for (Selector which : kAllSelectors) {
        if (!mask.test(index_of(which))) continue;
        const auto& in = terms::integrand(which);
        for (const auto& p : in.products) out.push_back({index_of(which), in.prefactor * p.coeff, p.factors});
    }
    return out;
}

// Natural size of a fourth-order integral: |prefactor| c(0)^2 times the simplex volume.
double magnitude_scale(double t, const SystemBath& bath, Selector which) {
    const double c0 = std::abs(bath.kernels->c(0.0));
    return std::abs(terms::integrand(which).prefactor) * c0 * c0 * t * t * t / 6.0;
}

// ---- tensor cubature ----------------------------------------------------------------------

struct ArgNeeds {
    std::array<bool, terms::kArgCount> kernel{};
    std::array<bool, terms::kArgCount> trig{};
};

ArgNeeds needs_of(const std::vector<FlatProduct>& products) {
    ArgNeeds n;
    for (const auto& p : products) {
        for (const auto& f : p.factors) {
            if (f.fn == Fn::C || f.fn == Fn::S) n.kernel[f.arg] = true;
            else n.trig[f.arg] = true;
        }
    }
    return n;
}

std::array<double, kSelectorCount> tensor_sweep(double t, const SystemBath& bath,
                                                const std::vector<FlatProduct>& products,
                                                const ArgNeeds& needs, std::size_t order) {
    const auto rule = quad::gauss_legendre(order);
    std::vector<double> x(order), w(order);
    for (std::size_t k = 0; k < order; ++k) {
        x[k] = 0.5 * (rule->nodes[k] + 1.0);
        w[k] = 0.5 * rule->weights[k];
    }
    const auto& K = *bath.kernels;
    const double om = bath.omega0;
    const double sin0 = std::sin(om * t);
    const double cos0 = std::cos(om * t);

    // val[arg][fn]; sin/cos of omega0*arg come from angle addition on per-time phases
    double val[terms::kArgCount][4] = {};
    auto set_kernel = [&](Arg a, double arg) {
        if (needs.kernel[a]) K.evaluate(arg, val[a][0], val[a][1]);
    };
    // sin(om (ta - tb)) and cos(om (ta - tb)) from the phases of ta and tb
    auto set_diff = [&](Arg a, double sa, double ca, double sb, double cb) {
        val[a][2] = sa * cb - ca * sb;
        val[a][3] = ca * cb + sa * sb;
    };
    auto set_sum = [&](Arg a, double sb, double cb) {
        val[a][2] = sin0 * cb + cos0 * sb;
        val[a][3] = cos0 * cb - sin0 * sb;
    };

    std::array<double, kSelectorCount> acc{};
    std::array<double, kSelectorCount> inner{};
    for (std::size_t i = 0; i < order; ++i) {
        const double t1 = t * x[i];
        const double wi = w[i] * t;
        const double s1 = std::sin(om * t1), c1 = std::cos(om * t1);
        set_kernel(terms::D01, t - t1);
        set_kernel(terms::P1, t + t1);
        set_diff(terms::D01, sin0, cos0, s1, c1);
        set_sum(terms::P1, s1, c1);
        for (std::size_t j = 0; j < order; ++j) {
            const double t2 = t1 * x[j];
            const double wij = wi * w[j] * t1;
            const double s2 = std::sin(om * t2), c2 = std::cos(om * t2);
            set_kernel(terms::D02, t - t2);
            set_kernel(terms::D12, t1 - t2);
            set_kernel(terms::P2, t + t2);
            set_diff(terms::D02, sin0, cos0, s2, c2);
            set_diff(terms::D12, s1, c1, s2, c2);
            set_sum(terms::P2, s2, c2);
            inner.fill(0.0);
            for (std::size_t k = 0; k < order; ++k) {
                const double t3 = t2 * x[k];
                const double wk = w[k] * t2;
                const double s3 = std::sin(om * t3), c3 = std::cos(om * t3);
                set_kernel(terms::D03, t - t3);
                set_kernel(terms::D13, t1 - t3);
                set_kernel(terms::D23, t2 - t3);
                set_kernel(terms::P3, t + t3);
                set_diff(terms::D03, sin0, cos0, s3, c3);
                set_diff(terms::D13, s1, c1, s3, c3);
                set_diff(terms::D23, s2, c2, s3, c3);
                set_sum(terms::P3, s3, c3);
                for (const auto& p : products) {
                    const auto& f = p.factors;
                    inner[p.slot] += wk * p.coeff * val[f[0].arg][static_cast<int>(f[0].fn)] *
                                     val[f[1].arg][static_cast<int>(f[1].fn)] *
                                     val[f[2].arg][static_cast<int>(f[2].fn)] *
                                     val[f[3].arg][static_cast<int>(f[3].fn)];
                }
            }
            for (std::size_t s = 0; s < kSelectorCount; ++s) acc[s] += wij * inner[s];
        }
    }
    return acc;
}

void tensor_cubature(double t, const SystemBath& bath, const Mask& mask, const FourthOrderOptions& opts,
                     std::array<FourthOrderResult, kSelectorCount>& out) {
    const auto products = flatten(mask);
    const auto needs = needs_of(products);
    std::array<double, kSelectorCount> floor{};
    for (Selector which : kAllSelectors) {
        floor[index_of(which)] = opts.atol > 0.0 ? opts.atol : 1e-9 * magnitude_scale(t, bath, which);
    }

    auto finish = [&](const std::array<double, kSelectorCount>& coarse,
                      const std::array<double, kSelectorCount>& fine, std::size_t order) {
        for (std::size_t s = 0; s < kSelectorCount; ++s) {
            if (!mask.test(s)) continue;
            const double err = std::abs(fine[s] - coarse[s]);
            out[s] = {fine[s], err, order, err <= opts.rtol * std::abs(fine[s]) + floor[s]};
        }
    };

    if (opts.fixed_order > 0) {
        const std::size_t half = std::max<std::size_t>(opts.fixed_order / 2, 1);
        finish(tensor_sweep(t, bath, products, needs, half),
               tensor_sweep(t, bath, products, needs, opts.fixed_order), opts.fixed_order);
        return;
    }

    const double omega = std::max(bath.omega0, bath.kernels->frequency_scale());
    std::size_t order = std::max<std::size_t>(opts.min_order, static_cast<std::size_t>(std::ceil(omega * t / 2.0)));
    order = std::min(order, std::max<std::size_t>(opts.max_order / 2, 1));
    auto previous = tensor_sweep(t, bath, products, needs, order);
    while (true) {
        const std::size_t next = 2 * order;
        const auto current = tensor_sweep(t, bath, products, needs, next);
        finish(previous, current, next);
        bool done = true;
        for (std::size_t s = 0; s < kSelectorCount; ++s) {
            if (mask.test(s) && !out[s].converged) done = false;
        }
        if (done || 2 * next > opts.max_order) return;
        previous = current;
        order = next;
    }
}

// ---- exact evaluation for exponential kernels ---------------------------------------------
//
// With gaps u0 = t - t1, u1 = t1 - t2, u2 = t2 - t3, u3 = t3 every argument is a nonnegative
// integer combination of the u_k, so expanding each factor into exponentials turns a product
// into sums of exp(w . u) over the simplex sum(u) = t. That integral is the divided difference
// of exp(t z) at w0..w3, i.e. the corner entry of exp(t B) with B bidiagonal(w; 1).

using Atom = std::pair<cplx, cplx>;  // (amplitude, rate)

struct AtomTables {
    std::vector<Atom> c, s, sin, cos;
};

AtomTables atoms_of(const std::vector<spectral::ExpTerm>& kernel_terms, double omega0) {
    AtomTables a;
    const cplx i{0.0, 1.0};
    for (const auto& term : kernel_terms) {
        const cplx amp = term.amplitude, conj_amp = std::conj(term.amplitude);
        a.c.push_back({0.5 * amp, term.rate});
        a.c.push_back({0.5 * conj_amp, std::conj(term.rate)});
        a.s.push_back({amp / (2.0 * i), term.rate});
        a.s.push_back({-conj_amp / (2.0 * i), std::conj(term.rate)});
    }
    a.sin = {{1.0 / (2.0 * i), i * omega0}, {-1.0 / (2.0 * i), -i * omega0}};
    a.cos = {{0.5, i * omega0}, {0.5, -i * omega0}};
    return a;
}

// Multiplicity of gap u_k inside each argument.
std::array<int, 4> gap_weights(Arg a) {
    switch (a) {
    case terms::D01: return {1, 0, 0, 0};
    case terms::D02: return {1, 1, 0, 0};
    case terms::D03: return {1, 1, 1, 0};
    case terms::D12: return {0, 1, 0, 0};
    case terms::D13: return {0, 1, 1, 0};
    case terms::D23: return {0, 0, 1, 0};
    case terms::P1: return {1, 2, 2, 2};
    case terms::P2: return {1, 1, 2, 2};
    case terms::P3: return {1, 1, 1, 2};
    }
    return {0, 0, 0, 0};
}

cplx simplex_exponential(double t, const std::array<cplx, 4>& w) {
    Eigen::Matrix4cd B = Eigen::Matrix4cd::Zero();
    for (int k = 0; k < 4; ++k) B(k, k) = t * w[k];
    for (int k = 0; k < 3; ++k) B(k, k + 1) = t;
    const Eigen::Matrix4cd E = B.exp();
    return E(0, 3);
}

void exponential_simplex(double t, const SystemBath& bath, const Mask& mask,
                         std::array<FourthOrderResult, kSelectorCount>& out) {
    const auto* kernel_terms = bath.kernels->exponential_terms();
    const AtomTables tables = atoms_of(*kernel_terms, bath.omega0);
    auto table_for = [&](Fn fn) -> const std::vector<Atom>& {
        switch (fn) {
        case Fn::C: return tables.c;
        case Fn::S: return tables.s;
        case Fn::Sin: return tables.sin;
        case Fn::Cos: return tables.cos;
        }
        return tables.c;
    };

    std::array<double, kSelectorCount> value{}, magnitude{};
    for (const auto& p : flatten(mask)) {
        std::array<const std::vector<Atom>*, 4> lists{};
        std::array<std::array<int, 4>, 4> weights{};
        for (int f = 0; f < 4; ++f) {
            lists[f] = &table_for(p.factors[f].fn);
            weights[f] = gap_weights(p.factors[f].arg);
        }
        for (const auto& a0 : *lists[0])
            for (const auto& a1 : *lists[1])
                for (const auto& a2 : *lists[2])
                    for (const auto& a3 : *lists[3]) {
                        const cplx amp = p.coeff * a0.first * a1.first * a2.first * a3.first;
                        std::array<cplx, 4> w{};
                        for (int k = 0; k < 4; ++k) {
                            w[k] = a0.second * static_cast<double>(weights[0][k]) +
                                   a1.second * static_cast<double>(weights[1][k]) +
                                   a2.second * static_cast<double>(weights[2][k]) +
                                   a3.second * static_cast<double>(weights[3][k]);
                        }
                        value[p.slot] += (amp * simplex_exponential(t, w)).real();
                        magnitude[p.slot] += std::abs(amp);
                    }
    }
    const double vol = t * t * t / 6.0;
    for (std::size_t s = 0; s < kSelectorCount; ++s) {
        if (!mask.test(s)) continue;
        // round-off bound: every term is at most |amp| * volume in size
        const double err = 64.0 * std::numeric_limits<double>::epsilon() * magnitude[s] * vol;
        out[s] = {value[s], err, 0, true};
    }
}

std::array<FourthOrderResult, kSelectorCount> evaluate(double t, const SystemBath& bath, const Mask& mask,
                                                       const FourthOrderOptions& opts) {
    if (t < 0.0) throw std::invalid_argument("fourth-order coefficients need t >= 0");
    std::array<FourthOrderResult, kSelectorCount> out{};
    if (t == 0.0) return out;
    FourthOrderMethod method = opts.method;
    if (method == FourthOrderMethod::Automatic) {
        method = bath.kernels->exponential_terms() ? FourthOrderMethod::ExponentialSimplex
                                                   : FourthOrderMethod::TensorCubature;
    }
    if (method == FourthOrderMethod::ExponentialSimplex) {
        if (!bath.kernels->exponential_terms()) {
            throw std::invalid_argument("kernels have no exponential decomposition");
        }
        exponential_simplex(t, bath, mask, out);
    } else {
        tensor_cubature(t, bath, mask, opts, out);
    }
    return out;
}

} // namespace

std::string to_string(Selector which) {
    switch (which) {
    case Selector::SPlus: return "S+IV";
    case Selector::SMinus: return "S-IV";
    case Selector::GammaPlus: return "G+IV";
    case Selector::GammaMinus: return "G-IV";
    case Selector::GammaZero: return "G0";
    case Selector::Alpha: return "alphaIV";
    case Selector::Beta: return "betaIV";
    }
    return "?";
}

FourthOrderResult fourth_order(double t, const SystemBath& bath, Selector which, const FourthOrderOptions& opts) {
    Mask mask;
    mask.set(index_of(which));
    return evaluate(t, bath, mask, opts)[index_of(which)];
}

std::array<FourthOrderResult, kSelectorCount> fourth_order_all(double t, const SystemBath& bath,
                                                               const FourthOrderOptions& opts) {
    Mask mask;
    mask.set();
    return evaluate(t, bath, mask, opts);
}

} // namespace nonmarkov::tcl
