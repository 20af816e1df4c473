// spectral.hpp — spectral densities and bath correlation kernels C(t), S(t)

#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace nonmarkov::spectral {

// Lorentzian bath parameters in rate units (gamma0 = 1 fixes the unit).
struct SpectralParams {
    double gamma0{1.0};
    double lambda{0.2};
    double delta{0.0};
    double omega0{100.0};

    double omega_c() const noexcept { return omega0 - delta; }
    // Throws std::invalid_argument when gamma0, lambda or omega0 is not positive.
    void validate() const;
};

double lorentzian_density(double omega, const SpectralParams& params);

enum class FrequencyConvention { FullLine, HalfLine };
enum class KernelMode { ClosedForm, Quadrature };

FrequencyConvention parse_convention(const std::string& name);
std::string to_string(FrequencyConvention convention);

// One exponential component of the analytic kernel: c(t) + i s(t) = sum_k amplitude_k e^{rate_k t}
// for t >= 0. Lorentzian baths need a single component.
struct ExpTerm {
    std::complex<double> amplitude;
    std::complex<double> rate;
};

// c(t) = int dw J(w) cos(wt), s(t) = int dw J(w) sin(wt). Immutable; safe to share across threads.
class CorrelationKernels {
public:
    virtual ~CorrelationKernels() = default;
    virtual double c(double t) const = 0;
    virtual double s(double t) const = 0;
    // Both at once; implementations may share work.
    virtual void evaluate(double t, double& c_out, double& s_out) const {
        c_out = c(t);
        s_out = s(t);
    }
    virtual KernelMode mode() const noexcept = 0;
    // Largest angular frequency carried by the kernels; used to size quadrature panels.
    virtual double frequency_scale() const noexcept = 0;
    // Exponential decomposition when one exists (nullptr otherwise).
    virtual const std::vector<ExpTerm>* exponential_terms() const noexcept { return nullptr; }
};

// Finite sum of damped exponentials, evaluated in closed form.
class ExponentialKernels final : public CorrelationKernels {
public:
    explicit ExponentialKernels(std::vector<ExpTerm> terms);
    double c(double t) const override;
    double s(double t) const override;
    void evaluate(double t, double& c_out, double& s_out) const override;
    KernelMode mode() const noexcept override { return KernelMode::ClosedForm; }
    double frequency_scale() const noexcept override { return frequency_scale_; }
    const std::vector<ExpTerm>* exponential_terms() const noexcept override { return &terms_; }

private:
    std::vector<ExpTerm> terms_;
    double frequency_scale_{0.0};
};

// Generic density integrated numerically over [lower, inf). `center` and `width` locate the
// spectral peak so the quadrature can resolve it; lower = -inf selects the full real line.
class QuadratureKernels final : public CorrelationKernels {
public:
    QuadratureKernels(std::function<double(double)> density, double lower, double center,
                      double width, double rtol = 1e-10);
    double c(double t) const override;
    double s(double t) const override;
    void evaluate(double t, double& c_out, double& s_out) const override;
    KernelMode mode() const noexcept override { return KernelMode::Quadrature; }
    double frequency_scale() const noexcept override { return std::abs(center_) + width_; }

private:
    // int_{lower}^{inf} J(w) trig(w t) dw for t >= 0; trig = sin when `sine`.
    double transform(double t, bool sine) const;

    std::function<double(double)> density_;
    double lower_;
    double center_;
    double width_;
    double rtol_;
    double scale_{1.0};  // int J, the natural size of c; quadrature errors are judged against it
};

std::shared_ptr<const CorrelationKernels> kernels_for(
    const SpectralParams& params, FrequencyConvention convention = FrequencyConvention::FullLine);

// Kernels of a bath with J = 0.
std::shared_ptr<const CorrelationKernels> zero_kernels();

// Reads key = value lines (gamma0, lambda, delta, omega0, frequency_convention). Lines
// starting with '#' are comments; unknown keys are left for the caller via `extra`.
struct ParsedConfig {
    SpectralParams params;
    FrequencyConvention convention{FrequencyConvention::FullLine};
    std::vector<std::pair<std::string, std::string>> extra;
};
ParsedConfig parse_config_text(const std::string& text, const SpectralParams& defaults = {});

} // namespace nonmarkov::spectral
