// positivity.hpp — complete-positivity diagnostics for the secular-plus-nonsecular map

#pragma once

#include "nonmarkov/tcl_coefficients.hpp"

#include <iosfwd>
#include <stdexcept>
#include <vector>

namespace nonmarkov::positivity {

struct PositivityPoint {
    double t{0.0};
    double Theta{0.0};
    double Lambda{0.0};
    double chi{1.0};
    double A{1.0};
    double kappa{0.0};
    double theta_ns{0.0};
    double G{1.0};
    bool nec1{true};     // Λ ≥ 0
    bool nec2{true};     // 2Θ ≥ Λ
    bool suff{true};     // χ cosh θ ≤ 1 + A² − κ² − 2|A − χ|
    bool relaxed{true};  // (1 − A)² + χ − κ² ≥ 0
};

using PositivityReport = std::vector<PositivityPoint>;

// Thrown when a point has suff = true but G < 0, which would contradict the algebra.
class InvariantViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// Integrals are accumulated by the trapezoidal rule on the trace grid, from coefficient totals.
PositivityReport positivity_report(const tcl::CoefficientTrace& trace);

std::vector<bool> relaxed_secular_check(const tcl::CoefficientTrace& trace);

// CSV: t,Theta,Lambda,chi,A,kappa,theta_ns,G,nec1,nec2,suff,relaxed
void write_csv(const PositivityReport& report, std::ostream& out);

} // namespace nonmarkov::positivity
