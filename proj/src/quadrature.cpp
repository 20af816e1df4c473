// quadrature.cpp — Gauss–Legendre node generation and adaptive integration

#include "nonmarkov/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <mutex>
#include <limits>
#include <numbers>
#include <utility>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/ooura_fourier_integrals.hpp>

namespace nonmarkov::quad {

namespace {

// Returns (P_n(x), P_{n-1}(x)) by the three-term recurrence.
std::pair<double, double> legendre_pair(std::size_t n, double x) {
    double p0 = 1.0;
    double p1 = x;
    for (std::size_t k = 2; k <= n; ++k) {
        const double kk = static_cast<double>(k);
        const double p2 = ((2.0 * kk - 1.0) * x * p1 - (kk - 1.0) * p0) / kk;
        p0 = p1;
        p1 = p2;
    }
    return {p1, p0};
}

GaussRule build_rule(std::size_t n) {
    GaussRule rule;
    rule.nodes.assign(n, 0.0);
    rule.weights.assign(n, 0.0);
    if (n == 1) {
        rule.weights[0] = 2.0;
        return rule;
    }
    const double nn = static_cast<double>(n);
    for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (nn + 0.5));
        for (int iter = 0; iter < 100; ++iter) {
            const auto [pn, pm] = legendre_pair(n, x);
            const double dp = nn * (x * pn - pm) / (x * x - 1.0);
            const double dx = pn / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        const auto [pn, pm] = legendre_pair(n, x);
        const double dp = nn * (x * pn - pm) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
    return rule;
}

} // namespace

std::shared_ptr<const GaussRule> gauss_legendre(std::size_t n) {
    if (n == 0) throw std::invalid_argument("Gauss-Legendre order must be positive");
    static std::mutex mutex;
    static std::map<std::size_t, std::shared_ptr<const GaussRule>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    auto rule = std::make_shared<const GaussRule>(build_rule(n));
    cache.emplace(n, rule);
    return rule;
}

namespace {

struct Panel {
    double a, b, value, error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

// 21-point Kronrod panel with the QUADPACK error heuristic, which is far less pessimistic than
// |K - G| on smooth integrands.
Panel kronrod_panel(const std::function<double(double)>& f, double a, double b) {
    using GK = boost::math::quadrature::gauss_kronrod<double, 21>;
    using G = boost::math::quadrature::gauss<double, 10>;
    const auto& x = GK::abscissa();
    const auto& wk = GK::weights();
    const auto& wg = G::weights();
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    std::array<double, 21> fv{};
    fv[0] = f(mid);
    for (std::size_t i = 1; i < x.size(); ++i) {
        fv[2 * i - 1] = f(mid + half * x[i]);
        fv[2 * i] = f(mid - half * x[i]);
    }
    double kron = fv[0] * wk[0], gauss = 0.0, l1 = std::abs(fv[0]) * wk[0];
    for (std::size_t i = 1; i < x.size(); ++i) {
        const double pair = fv[2 * i - 1] + fv[2 * i];
        kron += pair * wk[i];
        l1 += (std::abs(fv[2 * i - 1]) + std::abs(fv[2 * i])) * wk[i];
        // odd Kronrod abscissae coincide with the 10 Gauss nodes
        if (i % 2 == 1) gauss += pair * wg[i / 2];
    }
    const double mean = 0.5 * kron;
    double asc = std::abs(fv[0] - mean) * wk[0];
    for (std::size_t i = 1; i < x.size(); ++i) {
        asc += (std::abs(fv[2 * i - 1] - mean) + std::abs(fv[2 * i] - mean)) * wk[i];
    }
    double err = std::abs(kron - gauss);
    if (asc != 0.0 && err != 0.0) err = asc * std::min(1.0, std::pow(200.0 * err / asc, 1.5));
    const double floor = 50.0 * std::numeric_limits<double>::epsilon() * l1;
    err = std::max(err, floor);
    return {a, b, kron * half, err * std::abs(half)};
}

} // namespace

Result integrate(const std::function<double(double)>& f, double a, double b, const Options& opts) {
    if (a == b) return {};
    const double sign = b > a ? 1.0 : -1.0;
    const double lo = std::min(a, b);
    const double hi = std::max(a, b);
    // at most ~pi of phase per panel keeps each Kronrod panel well resolved
    std::size_t panels = 1;
    if (opts.omega > 0.0) {
        panels = static_cast<std::size_t>(std::ceil((hi - lo) * opts.omega / std::numbers::pi));
        panels = std::max<std::size_t>(panels, 1);
    }
    const double width = (hi - lo) / static_cast<double>(panels);
    std::vector<Panel> heap;
    heap.reserve(panels + 64);
    double value = 0.0, error = 0.0;
    for (std::size_t p = 0; p < panels; ++p) {
        const double x0 = lo + width * static_cast<double>(p);
        const double x1 = (p + 1 == panels) ? hi : x0 + width;
        heap.push_back(kronrod_panel(f, x0, x1));
        value += heap.back().value;
        error += heap.back().error;
    }
    std::make_heap(heap.begin(), heap.end());
    // global adaptivity: bisect the worst panel until the total error meets the request
    const std::size_t budget = panels + (std::size_t{1} << std::min(opts.max_depth, 16u));
    auto target = [&] { return std::max(opts.atol, opts.rtol * std::abs(value)); };
    while (error > target() && heap.size() < budget) {
        std::pop_heap(heap.begin(), heap.end());
        const Panel worst = heap.back();
        heap.pop_back();
        const double m = 0.5 * (worst.a + worst.b);
        if (!(m > worst.a && m < worst.b)) {
            heap.push_back(worst);
            std::push_heap(heap.begin(), heap.end());
            break;
        }
        const Panel left = kronrod_panel(f, worst.a, m);
        const Panel right = kronrod_panel(f, m, worst.b);
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push_back(left);
        std::push_heap(heap.begin(), heap.end());
        heap.push_back(right);
        std::push_heap(heap.begin(), heap.end());
    }
    // re-sum to shed the drift of the running updates
    value = 0.0;
    error = 0.0;
    for (const auto& p : heap) {
        value += p.value;
        error += p.error;
    }
    Result out;
    out.value = sign * value;
    out.error = error;
    out.converged = error <= std::max(opts.atol, opts.rtol * std::abs(value));
    return out;
}

double integrate_or_throw(const std::function<double(double)>& f, double a, double b, const Options& opts) {
    const Result r = integrate(f, a, b, opts);
    if (!r.converged) {
        throw NumericalError("adaptive quadrature did not reach tolerance", r.value, r.error);
    }
    return r.value;
}

double composite_gauss(const std::function<double(double)>& f, double a, double b,
                       std::size_t panels, std::size_t order) {
    const auto rule = gauss_legendre(order);
    const double width = (b - a) / static_cast<double>(panels);
    double sum = 0.0;
    for (std::size_t p = 0; p < panels; ++p) {
        const double mid = a + width * (static_cast<double>(p) + 0.5);
        double local = 0.0;
        for (std::size_t k = 0; k < rule->size(); ++k) {
            local += rule->weights[k] * f(mid + 0.5 * width * rule->nodes[k]);
        }
        sum += local * 0.5 * width;
    }
    return sum;
}

Result fourier_cos_half_line(const std::function<double(double)>& f, double w, double rtol) {
    if (w == 0.0) {
        boost::math::quadrature::exp_sinh<double> integrator;
        double err = 0.0;
        const double v = integrator.integrate(f, 0.0, std::numeric_limits<double>::infinity(), rtol, &err);
        return {v, err, err <= rtol};
    }
    const double aw = std::abs(w);
    boost::math::quadrature::ooura_fourier_cos<double> integrator(rtol);
    auto [v, rel] = integrator.integrate(f, aw);
    return {v, rel * std::abs(v), rel <= rtol};
}

Result fourier_sin_half_line(const std::function<double(double)>& f, double w, double rtol) {
    if (w == 0.0) return {};
    const double aw = std::abs(w);
    boost::math::quadrature::ooura_fourier_sin<double> integrator(rtol);
    auto [v, rel] = integrator.integrate(f, aw);
    const double sign = w > 0.0 ? 1.0 : -1.0;
    return {sign * v, rel * std::abs(v), rel <= rtol};
}

} // namespace nonmarkov::quad
