// measures.hpp — RHP indivisibility g(t), BLP backflow sigma(t), interval detection

#pragma once

#include "nonmarkov/dynamics.hpp"
#include "nonmarkov/spectral.hpp"
#include "nonmarkov/tcl_coefficients.hpp"

#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace nonmarkov::measures {

using dynamics::BlochVector;

struct StatePair {
    BlochVector first;
    BlochVector second;

    BlochVector difference() const { return first - second; }
    // difference of excited-state populations, (bz1 - bz2)/2
    double population_difference() const;
    // modulus of the difference of the coherences rho_10, |db_perp|/2
    double coherence_difference() const;
    bool degenerate() const;

    // (|1><1|, |0><0|)
    static StatePair canonical() { return {dynamics::kExcited, dynamics::kGround}; }
};

class DegeneratePairError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class Variant { Full, Secular, Rwa };
Variant parse_variant(const std::string& name);
std::string to_string(Variant v);

// Which parts of each coefficient enter g and sigma.
enum class Parts { Totals, SecondOrderOnly };

struct Interval {
    double start;
    double end;
    bool operator==(const Interval&) const = default;
};

struct MeasureTrace {
    std::vector<double> grid;
    std::vector<double> g;
    std::vector<double> sigma;
    std::vector<Interval> idis;
    std::vector<Interval> ibis;
    double idi_tol{0.0};
    double ibi_tol{0.0};
    Variant variant{Variant::Full};
};

// ---- pointwise measures -------------------------------------------------------------------

double rhp_g_full(const tcl::CoefficientSet& c, Parts parts = Parts::Totals);
double rhp_g_secular(const tcl::CoefficientSet& c, Parts parts = Parts::Totals);
double rhp_g_rwa(double gamma);
double rhp_g_rwa(double t, const spectral::SpectralParams& params);

// Uses the differences of the propagated states at the same time as the coefficients.
double blp_sigma_full(const BlochVector& difference, const tcl::CoefficientSet& c, Parts parts = Parts::Totals);
double blp_sigma_secular(const StatePair& initial, const dynamics::SecularIntegrals& integrals,
                         const tcl::CoefficientSet& c, Parts parts = Parts::Totals);
double blp_sigma_rwa(double gamma, double Gamma_accum, const StatePair& initial);
double blp_sigma_rwa(double t, const spectral::SpectralParams& params, const StatePair& initial);

double trace_distance(const BlochVector& a, const BlochVector& b);

// ---- intervals ----------------------------------------------------------------------------

// Maximal intervals where series > tol. Crossings are placed by linear interpolation; when
// `continuous` is given they are refined by bisection on continuous(t) > tol instead.
std::vector<Interval> detect_intervals(const std::vector<double>& grid, const std::vector<double>& series,
                                       double tol, const std::function<double(double)>& continuous = {});

struct ConditionFlags {
    bool backflow_sum3{false};    // Γ- + Γ+ + Γ0 < 0
    bool backflow_sum2{false};    // Γ- + Γ+ < 0
    bool indivisible_any{false};  // any of Γ-, Γ+, Γ0 < 0
    bool implication_holds{true};
};
ConditionFlags check_conditions(const tcl::CoefficientSet& c);

struct IntegratedMeasures {
    double N_blp{0.0};
    double I_rhp{0.0};
};
IntegratedMeasures integrated_measures(const MeasureTrace& trace);

// ---- whole traces -------------------------------------------------------------------------

struct MeasureOptions {
    Parts parts{Parts::Totals};
    dynamics::PropagateOptions propagation{};
    // relative threshold for IDIs/IBIs of the full and secular variants
    double relative_tol{1e-9};
};

// Largest |coefficient total| over the trace; the interval threshold is relative to it.
double max_coefficient_magnitude(const tcl::CoefficientTrace& trace);

MeasureTrace measure_trace_full(const tcl::CoefficientTrace& trace, const StatePair& pair, double omega0,
                                const MeasureOptions& opts = {});
MeasureTrace measure_trace_secular(const tcl::CoefficientTrace& trace, const StatePair& pair,
                                   const MeasureOptions& opts = {});
MeasureTrace measure_trace_rwa(const spectral::SpectralParams& params, const std::vector<double>& grid,
                               const StatePair& pair);

// Secular sigma maximized over initial pairs of pure states on an n x 2n Bloch-sphere grid.
struct PairSweepResult {
    double sigma{0.0};
    StatePair pair;
};
PairSweepResult sweep_secular_pairs(const dynamics::SecularIntegrals& integrals, const tcl::CoefficientSet& c,
                                    int n = 16);

// CSV: t,g,sigma,in_idi,in_ibi
void write_csv(const MeasureTrace& trace, std::ostream& out);
// [[start, end], ...]
std::string intervals_json(const std::vector<Interval>& intervals);

} // namespace nonmarkov::measures
