// positivity.cpp — prefix integrals and the block-diagonal positivity inequalities

#include "nonmarkov/positivity.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

namespace nonmarkov::positivity {

PositivityReport positivity_report(const tcl::CoefficientTrace& trace) {
    tcl::validate_grid(trace.grid);
    const auto& sets = trace.sets;
    PositivityReport report(sets.size());

    // running trapezoid sums; the drift integrand e^{Λ(s)}[Γ+ − Γ-] needs Λ first at each node
    double Theta = 0.0, Lambda = 0.0, theta_ns = 0.0, drift = 0.0;
    double prev_drift_f = 0.0;
    for (std::size_t i = 0; i < sets.size(); ++i) {
        const auto& c = sets[i];
        const double gm = c.gamma_minus.total(), gp = c.gamma_plus.total(), g0 = c.gamma_zero.total();
        const double mod = std::hypot(c.alpha.total(), c.beta.total());
        if (i > 0) {
            const auto& p = sets[i - 1];
            const double h = trace.grid[i] - trace.grid[i - 1];
            const double pgm = p.gamma_minus.total(), pgp = p.gamma_plus.total(), pg0 = p.gamma_zero.total();
            Theta += 0.25 * h * ((pgm + pgp + pg0) + (gm + gp + g0));
            Lambda += 0.5 * h * ((pgm + pgp) + (gm + gp));
            theta_ns += h * (std::hypot(p.alpha.total(), p.beta.total()) + mod);
        }
        const double drift_f = std::exp(Lambda) * (gp - gm);
        if (i > 0) drift += 0.5 * (trace.grid[i] - trace.grid[i - 1]) * (prev_drift_f + drift_f);
        prev_drift_f = drift_f;

        PositivityPoint& pt = report[i];
        pt.t = trace.grid[i];
        pt.Theta = Theta;
        pt.Lambda = Lambda;
        pt.chi = std::exp(-2.0 * Theta);
        pt.A = std::exp(-Lambda);
        pt.kappa = pt.A * drift;
        pt.theta_ns = theta_ns;
        const double ch = pt.chi * std::cosh(theta_ns);
        pt.G = (1.0 - pt.A) * (1.0 - pt.A) + 2.0 * pt.chi - pt.kappa * pt.kappa - ch;
        pt.nec1 = Lambda >= 0.0;
        pt.nec2 = 2.0 * Theta >= Lambda;
        pt.suff = ch <= 1.0 + pt.A * pt.A - pt.kappa * pt.kappa - 2.0 * std::abs(pt.A - pt.chi);
        pt.relaxed = (1.0 - pt.A) * (1.0 - pt.A) + pt.chi - pt.kappa * pt.kappa >= 0.0;

        // suff gives χ cosh θ ≤ 1 + A² − κ² − 2|A − χ| ≤ 1 + A² − κ² − 2(A − χ), which is G ≥ 0;
        // allow for the rounding of the two sides
        const double slack = 1e-12 * (1.0 + ch + pt.kappa * pt.kappa);
        if (pt.suff && pt.G < -slack) {
            throw InvariantViolation("sufficient condition holds but G < 0 at t = " + std::to_string(pt.t));
        }
    }
    return report;
}

std::vector<bool> relaxed_secular_check(const tcl::CoefficientTrace& trace) {
    std::vector<bool> out;
    for (const auto& p : positivity_report(trace)) out.push_back(p.relaxed);
    return out;
}

void write_csv(const PositivityReport& report, std::ostream& out) {
    out << "t,Theta,Lambda,chi,A,kappa,theta_ns,G,nec1,nec2,suff,relaxed\n";
    char buf[320];
    for (const auto& p : report) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%d,%d,%d,%d\n", p.t, p.Theta,
                      p.Lambda, p.chi, p.A, p.kappa, p.theta_ns, p.G, p.nec1, p.nec2, p.suff, p.relaxed);
        out << buf;
    }
}

} // namespace nonmarkov::positivity
