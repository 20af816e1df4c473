// dynamics.hpp — Bloch-vector propagation: general ODE, secular closed form, RWA reference

#pragma once

#include "nonmarkov/spectral.hpp"
#include "nonmarkov/tcl_coefficients.hpp"

#include <Eigen/Dense>

#include <iosfwd>
#include <stdexcept>
#include <vector>

namespace nonmarkov::dynamics {

struct BlochVector {
    double bx{0.0};
    double by{0.0};
    double bz{0.0};

    double norm() const noexcept;
    Eigen::Vector3d vec() const { return {bx, by, bz}; }
    static BlochVector from(const Eigen::Vector3d& v) { return {v[0], v[1], v[2]}; }
};

BlochVector operator-(const BlochVector& a, const BlochVector& b);

// Excited state |1><1| has bz = +1, ground state |0><0| has bz = -1.
inline constexpr BlochVector kExcited{0.0, 0.0, 1.0};
inline constexpr BlochVector kGround{0.0, 0.0, -1.0};

// db/dt = M b + v
struct DampingSystem {
    Eigen::Matrix3d M;
    Eigen::Vector3d v;

    static DampingSystem assemble(const tcl::CoefficientSet& coeffs);
    BlochVector apply(const BlochVector& b) const;
};

// Right-hand side of the Bloch equations from the coefficient totals.
BlochVector bloch_rhs(const BlochVector& b, const tcl::CoefficientSet& coeffs);

// Natural cubic spline with exact antiderivative.
class CubicSpline {
public:
    CubicSpline() = default;
    CubicSpline(std::vector<double> x, std::vector<double> y);
    double operator()(double x) const;
    // int_{x_0}^{x} S(s) ds
    double integral(double x) const;
    double x_min() const { return x_.front(); }
    double x_max() const { return x_.back(); }

private:
    std::size_t interval(double x) const;
    std::vector<double> x_, y_, m_, cumulative_;
};

// Cubic interpolation of the coefficient totals of a trace.
class CoefficientInterpolator {
public:
    explicit CoefficientInterpolator(const tcl::CoefficientTrace& trace, bool zero_nonsecular = false);
    // Totals at time t; throws std::out_of_range outside the trace grid.
    tcl::CoefficientSet at(double t) const;
    double t_max() const { return t_max_; }

    // Exact integrals of the interpolants from 0 to t.
    double integral_gamma_minus(double t) const;
    double integral_gamma_plus(double t) const;
    double integral_gamma_zero(double t) const;
    double integral_s_plus(double t) const;
    double integral_s_minus(double t) const;
    const std::vector<double>& grid() const { return grid_; }

private:
    void check(double t) const;
    CubicSpline sp_, sm_, gm_, gp_, g0_, al_, be_;
    std::vector<double> grid_;
    bool zero_nonsecular_;
    bool single_point_{false};
    double t_max_{0.0};
};

class DynamicsError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct PropagateOptions {
    // Per-step tolerances; tighter than 1e-9 because the global error accumulates over a window
    // of a few thousand steps.
    double rtol{1e-12};
    double atol{1e-15};
    // Drop alpha and beta (secular approximation of the generator).
    bool zero_nonsecular{false};
    // Transition frequency; sets the step cap pi/(4 omega0) when the nonsecular terms matter.
    double omega0{0.0};
    double max_step{0.0};  // explicit cap; 0 = automatic
};

struct Trajectory {
    std::vector<double> times;
    std::vector<BlochVector> states;
};

// Adaptive Dormand–Prince 5(4) integration of the Bloch equations with coefficients
// spline-interpolated from the trace. Output at the trace grid points up to t_final.
Trajectory propagate(const BlochVector& initial, const tcl::CoefficientTrace& trace, double t_final,
                     const PropagateOptions& opts = {});

void write_csv(const Trajectory& traj, std::ostream& out);

// ---- secular solution ---------------------------------------------------------------------

struct SecularIntegrals {
    double t{0.0};
    double Theta{0.0};
    double Lambda{0.0};
    double delta_phase{0.0};
    // int_0^t e^{Lambda(s)} [Gamma+(s) - Gamma-(s)] ds, the z drift term
    double drift{0.0};
};

// Integrals of the interpolated trace at each grid point.
std::vector<SecularIntegrals> secular_integrals(const tcl::CoefficientTrace& trace);
SecularIntegrals secular_integrals_at(const CoefficientInterpolator& interp, double t);

BlochVector secular_solution(const BlochVector& initial, const SecularIntegrals& integrals);

// ---- rotating-wave reference model --------------------------------------------------------

// gamma(t) of the exactly solvable RWA model.
double rwa_gamma(double t, const spectral::SpectralParams& params);

struct RwaRate {
    double gamma{0.0};
    double Gamma_accum{0.0};
};
RwaRate rwa_decay_rate(double t, const spectral::SpectralParams& params);

struct RwaTrace {
    std::vector<double> grid;
    std::vector<double> gamma;
    std::vector<double> Gamma_accum;
};
RwaTrace rwa_trace(const spectral::SpectralParams& params, const std::vector<double>& grid);
void write_csv(const RwaTrace& trace, std::ostream& out);

struct RwaF {
    double value{0.0};
    bool degenerate{false};
};
// a = population difference, b_abs = |coherence difference| of the initial pair.
RwaF rwa_F(double Gamma_accum, double a, double b_abs);
RwaF rwa_F(double t, const spectral::SpectralParams& params, double a, double b_abs);

} // namespace nonmarkov::dynamics
