// spectral.cpp — Lorentzian density, closed-form and quadrature correlation kernels

#include "nonmarkov/spectral.hpp"

#include "nonmarkov/quadrature.hpp"

#include <algorithm>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace nonmarkov::spectral {

void SpectralParams::validate() const {
    if (!(gamma0 > 0.0)) throw std::invalid_argument("gamma0 must be positive");
    if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
    if (!(omega0 > 0.0)) throw std::invalid_argument("omega0 must be positive");
    if (!std::isfinite(delta)) throw std::invalid_argument("delta must be finite");
}

double lorentzian_density(double omega, const SpectralParams& p) {
    const double x = omega - p.omega_c();
    return p.gamma0 * p.lambda * p.lambda / (2.0 * std::numbers::pi * (x * x + p.lambda * p.lambda));
}

FrequencyConvention parse_convention(const std::string& name) {
    if (name == "full" || name == "full_line" || name == "full-line") return FrequencyConvention::FullLine;
    if (name == "half" || name == "half_line" || name == "half-line") return FrequencyConvention::HalfLine;
    throw std::invalid_argument("unknown frequency convention '" + name + "'");
}

std::string to_string(FrequencyConvention convention) {
    return convention == FrequencyConvention::FullLine ? "full_line" : "half_line";
}

// ---------------------------------------------------------------------------

ExponentialKernels::ExponentialKernels(std::vector<ExpTerm> terms) : terms_(std::move(terms)) {
    for (const auto& term : terms_) {
        if (term.rate.real() > 0.0) throw std::invalid_argument("kernel component grows in time");
        frequency_scale_ = std::max(frequency_scale_, std::abs(term.rate));
    }
}

void ExponentialKernels::evaluate(double t, double& c_out, double& s_out) const {
    const double at = std::abs(t);
    std::complex<double> sum{0.0, 0.0};
    for (const auto& term : terms_) sum += term.amplitude * std::exp(term.rate * at);
    c_out = sum.real();
    // s is odd; s(0) is exactly zero for any decomposition with real c(0)
    s_out = at == 0.0 ? 0.0 : (t < 0.0 ? -sum.imag() : sum.imag());
}

double ExponentialKernels::c(double t) const {
    double cv = 0.0, sv = 0.0;
    evaluate(t, cv, sv);
    return cv;
}

double ExponentialKernels::s(double t) const {
    double cv = 0.0, sv = 0.0;
    evaluate(t, cv, sv);
    return sv;
}

// ---------------------------------------------------------------------------

namespace {
constexpr double kCoreHalfWidths = 200.0;
constexpr double kPeakHalfWidths = 20.0;
} // namespace

QuadratureKernels::QuadratureKernels(std::function<double(double)> density, double lower, double center,
                                     double width, double rtol)
    : density_(std::move(density)), lower_(lower), center_(center), width_(width), rtol_(rtol) {
    if (!(width_ > 0.0)) throw std::invalid_argument("quadrature kernel width must be positive");
    scale_ = 1.0;
    scale_ = std::max(std::abs(transform(0.0, false)), std::numeric_limits<double>::min());
}

double QuadratureKernels::transform(double t, bool sine) const {
    const auto& J = density_;
    const double b = center_ + kCoreHalfWidths * width_;
    double a = center_ - kCoreHalfWidths * width_;
    if (std::isfinite(lower_)) a = std::max(a, lower_);

    quad::Options opts;
    opts.rtol = rtol_ * 1e-2;
    opts.atol = 0.0;
    opts.omega = t;
    auto integrand = [&](double w) { return J(w) * (sine ? std::sin(w * t) : std::cos(w * t)); };

    double value = 0.0;
    double error = 0.0;
    auto add = [&](const quad::Result& r) {
        value += r.value;
        error += r.error;
    };

    // split the core so that the peak sits in its own well-resolved piece
    std::vector<double> cuts{a, center_ - kPeakHalfWidths * width_, center_ + kPeakHalfWidths * width_, b};
    for (auto& x : cuts) x = std::clamp(x, a, b);
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        if (cuts[i + 1] > cuts[i]) add(quad::integrate(integrand, cuts[i], cuts[i + 1], opts));
    }
    if (std::isfinite(lower_) && lower_ < a) add(quad::integrate(integrand, lower_, a, opts));

    // semi-infinite tails: shift to [0, inf) and expand trig(t (edge +- x))
    auto tail = [&](double edge, double dir) {
        auto f = [&](double x) { return J(edge + dir * x); };
        const quad::Result rc = quad::fourier_cos_half_line(f, t, rtol_ * 1e-2);
        add({0.0, rc.error, true});
        if (t == 0.0) {
            if (!sine) value += rc.value;
            return;
        }
        const quad::Result rs = quad::fourier_sin_half_line(f, t, rtol_ * 1e-2);
        error += rs.error;
        const double ce = std::cos(t * edge);
        const double se = std::sin(t * edge);
        // cos(t(e + d x)) = cos(te)cos(tx) - d sin(te) sin(tx);  sin(t(e + d x)) = sin(te)cos(tx) + d cos(te) sin(tx)
        if (sine) {
            value += se * rc.value + dir * ce * rs.value;
        } else {
            value += ce * rc.value - dir * se * rs.value;
        }
    };
    tail(b, 1.0);
    if (!std::isfinite(lower_)) tail(a, -1.0);

    if (!(error <= rtol_ * scale_)) {
        throw quad::NumericalError("kernel quadrature missed its tolerance", value, error);
    }
    return value;
}

double QuadratureKernels::c(double t) const { return transform(std::abs(t), false); }

double QuadratureKernels::s(double t) const {
    if (t == 0.0) return 0.0;
    const double v = transform(std::abs(t), true);
    return t < 0.0 ? -v : v;
}

void QuadratureKernels::evaluate(double t, double& c_out, double& s_out) const {
    c_out = c(t);
    s_out = s(t);
}

// ---------------------------------------------------------------------------

std::shared_ptr<const CorrelationKernels> kernels_for(const SpectralParams& params,
                                                      FrequencyConvention convention) {
    params.validate();
    if (convention == FrequencyConvention::FullLine) {
        const double kappa = 0.5 * params.gamma0 * params.lambda;
        return std::make_shared<ExponentialKernels>(
            std::vector<ExpTerm>{{{kappa, 0.0}, {-params.lambda, params.omega_c()}}});
    }
    auto density = [params](double w) { return lorentzian_density(w, params); };
    return std::make_shared<QuadratureKernels>(density, 0.0, params.omega_c(), params.lambda);
}

std::shared_ptr<const CorrelationKernels> zero_kernels() {
    return std::make_shared<ExponentialKernels>(std::vector<ExpTerm>{});
}

// ---------------------------------------------------------------------------

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_number(const std::string& key, const std::string& value) {
    std::size_t used = 0;
    double x = 0.0;
    try {
        x = std::stod(value, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != value.size()) {
        throw std::invalid_argument("config key '" + key + "' expects a number, got '" + value + "'");
    }
    return x;
}

} // namespace

ParsedConfig parse_config_text(const std::string& text, const SpectralParams& defaults) {
    ParsedConfig out;
    out.params = defaults;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key = value");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key == "gamma0") out.params.gamma0 = parse_number(key, value);
        else if (key == "lambda") out.params.lambda = parse_number(key, value);
        else if (key == "delta") out.params.delta = parse_number(key, value);
        else if (key == "omega0") out.params.omega0 = parse_number(key, value);
        else if (key == "frequency_convention") out.convention = parse_convention(value);
        else out.extra.emplace_back(key, value);
    }
    return out;
}

} // namespace nonmarkov::spectral
