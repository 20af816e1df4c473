// quadrature.hpp — Gauss–Legendre rules and adaptive 1-D integration helpers

#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace nonmarkov::quad {

// Nodes and weights on [-1, 1].
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
    std::size_t size() const noexcept { return nodes.size(); }
};

// Cached n-point Gauss–Legendre rule (Newton iteration on P_n). Thread-safe.
std::shared_ptr<const GaussRule> gauss_legendre(std::size_t n);

struct Options {
    double rtol{1e-6};
    double atol{1e-15};
    // Dominant angular frequency of the integrand; used to pre-split the range
    // so that no panel spans more than a few radians of phase.
    double omega{0.0};
    unsigned max_depth{18};
};

struct Result {
    double value{0.0};
    double error{0.0};
    bool converged{true};
};

// Raised when an integral misses its tolerance; carries the best estimate.
class NumericalError : public std::runtime_error {
public:
    NumericalError(const std::string& what, double estimate, double error)
        : std::runtime_error(what), estimate_(estimate), error_(error) {}
    double estimate() const noexcept { return estimate_; }
    double error() const noexcept { return error_; }

private:
    double estimate_;
    double error_;
};

// Globally adaptive 21-point Gauss–Kronrod integration of f over [a, b] (a may exceed b).
// The range is first split into oscillation-sized panels when opts.omega > 0.
Result integrate(const std::function<double(double)>& f, double a, double b, const Options& opts = {});

// Same as integrate() but throws NumericalError when the tolerance is missed.
double integrate_or_throw(const std::function<double(double)>& f, double a, double b,
                          const Options& opts = {});

// Composite fixed-order Gauss–Legendre on `panels` equal panels.
double composite_gauss(const std::function<double(double)>& f, double a, double b,
                       std::size_t panels, std::size_t order);

// Fourier-type integral over [0, inf): int_0^inf f(x) cos(w x) dx (or sin) for a
// smooth, decaying f. Returns value and relative error estimate.
Result fourier_cos_half_line(const std::function<double(double)>& f, double w, double rtol);
Result fourier_sin_half_line(const std::function<double(double)>& f, double w, double rtol);

} // namespace nonmarkov::quad
