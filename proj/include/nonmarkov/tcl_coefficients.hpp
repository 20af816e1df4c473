// tcl_coefficients.hpp — second- and fourth-order TCL coefficient functionals

#pragma once

#include "nonmarkov/spectral.hpp"

#include <array>
#include <cstddef>
#include <iosfwd>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace nonmarkov::tcl {

// Kernels plus the atomic transition frequency: everything the coefficient integrals need.
struct SystemBath {
    std::shared_ptr<const spectral::CorrelationKernels> kernels;
    double omega0{100.0};
};

SystemBath make_bath(const spectral::SpectralParams& params,
                     spectral::FrequencyConvention convention = spectral::FrequencyConvention::FullLine);

enum class Sign { Plus, Minus };

struct Coefficient {
    double second_order{0.0};
    double fourth_order{0.0};
    double total() const noexcept { return second_order + fourth_order; }
};

struct CoefficientSet {
    double t{0.0};
    Coefficient s_plus, s_minus;
    Coefficient gamma_minus, gamma_plus, gamma_zero;
    Coefficient alpha, beta;
};

// Convenience for building coefficient sets from totals (second-order slot holds the value).
CoefficientSet make_totals(double gamma_minus, double gamma_plus, double gamma_zero,
                           double alpha = 0.0, double beta = 0.0, double s_plus = 0.0,
                           double s_minus = 0.0);

enum class TclOrder { TCL2, TCL4 };

TclOrder parse_order(const std::string& name);
std::string to_string(TclOrder order);

// ---- second order -------------------------------------------------------------------------

// Relative tolerance used for the one-dimensional tau integrals.
inline constexpr double kSecondOrderRtol = 1e-10;

double lamb_shift_2(double t, const SystemBath& bath, Sign sign, double rtol = kSecondOrderRtol);
double gamma_2(double t, const SystemBath& bath, Sign sign, double rtol = kSecondOrderRtol);
// (alpha^II, beta^II)
std::pair<double, double> nonsecular_2(double t, const SystemBath& bath, double rtol = kSecondOrderRtol);

// ---- fourth order -------------------------------------------------------------------------

enum class Selector { SPlus, SMinus, GammaPlus, GammaMinus, GammaZero, Alpha, Beta };
inline constexpr std::size_t kSelectorCount = 7;
inline constexpr std::array<Selector, kSelectorCount> kAllSelectors{
    Selector::SPlus, Selector::SMinus, Selector::GammaPlus, Selector::GammaMinus,
    Selector::GammaZero, Selector::Alpha, Selector::Beta};

std::string to_string(Selector which);

enum class FourthOrderMethod {
    // exponential-atom evaluation when the kernels expose a decomposition, cubature otherwise
    Automatic,
    TensorCubature,
    ExponentialSimplex,
};

struct FourthOrderOptions {
    FourthOrderMethod method{FourthOrderMethod::Automatic};
    double rtol{1e-4};
    double atol{0.0};  // absolute floor; 0 picks a scale-aware default
    std::size_t min_order{24};
    std::size_t max_order{1024};
    // If nonzero, run the cubature at exactly this order (no doubling); for convergence studies.
    std::size_t fixed_order{0};
};

struct FourthOrderResult {
    double value{0.0};
    double error{0.0};       // estimated absolute error
    std::size_t order{0};    // Gauss–Legendre points per axis (0 for the exponential method)
    bool converged{true};
};

FourthOrderResult fourth_order(double t, const SystemBath& bath, Selector which,
                               const FourthOrderOptions& opts = {});

std::array<FourthOrderResult, kSelectorCount> fourth_order_all(double t, const SystemBath& bath,
                                                               const FourthOrderOptions& opts = {});

// ---- traces -------------------------------------------------------------------------------

struct PointMetadata {
    std::size_t cubature_order{0};
    double error_estimate{0.0};  // largest estimated absolute error over the fourth-order parts
    bool converged{true};
};

struct CoefficientTrace {
    std::vector<double> grid;
    std::vector<CoefficientSet> sets;
    std::vector<PointMetadata> metadata;
    TclOrder order{TclOrder::TCL4};

    std::size_t size() const noexcept { return grid.size(); }
};

struct TraceOptions {
    FourthOrderOptions fourth{};
    double second_rtol{kSecondOrderRtol};
    unsigned threads{0};  // 0 = hardware concurrency
    // Throw quad::NumericalError when a fourth-order point misses its tolerance.
    bool strict{false};
};

// Grid check: strictly increasing, starting at 0. Throws std::invalid_argument.
void validate_grid(const std::vector<double>& grid);
std::vector<double> uniform_grid(double t_max, std::size_t points);

CoefficientTrace evaluate_trace(const SystemBath& bath, const std::vector<double>& grid, TclOrder order,
                                const TraceOptions& opts = {});
CoefficientTrace evaluate_trace(const spectral::SpectralParams& params, const std::vector<double>& grid,
                                TclOrder order, const TraceOptions& opts = {});

// Header: t,S+II,S+IV,S-II,S-IV,G-II,G-IV,G+II,G+IV,G0,alphaII,alphaIV,betaII,betaIV
void write_csv(const CoefficientTrace& trace, std::ostream& out);

} // namespace nonmarkov::tcl
