// test_positivity.cpp — G(t) diagnostic and the necessary / sufficient / relaxed flags

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

#include "nonmarkov/positivity.hpp"

#include <cmath>
#include <random>
#include <sstream>

using namespace nonmarkov;

namespace {

tcl::CoefficientTrace constant_trace(const tcl::CoefficientSet& c, double t_max, std::size_t n) {
    tcl::CoefficientTrace tr;
    tr.grid = tcl::uniform_grid(t_max, n);
    tr.order = tcl::TclOrder::TCL4;
    for (double t : tr.grid) {
        auto s = c;
        s.t = t;
        tr.sets.push_back(s);
    }
    tr.metadata.resize(n);
    return tr;
}

} // namespace

TEST_CASE("zero integrals at the origin") {
    const auto tr = tcl::evaluate_trace(testing::narrow_bath(), tcl::uniform_grid(1.0, 11), tcl::TclOrder::TCL4);
    const auto rep = positivity::positivity_report(tr);
    const auto& p = rep.front();
    CHECK(p.t == 0.0);
    CHECK(p.chi == 1.0);
    CHECK(p.A == 1.0);
    CHECK(p.kappa == 0.0);
    CHECK(p.theta_ns == 0.0);
    CHECK(p.G == 1.0);
    CHECK((p.nec1 && p.nec2 && p.suff && p.relaxed));
    CHECK(positivity::relaxed_secular_check(tr).front());
}

TEST_CASE("zero coefficients keep every condition") {
    const auto tr = constant_trace(tcl::CoefficientSet{}, 5.0, 51);
    for (const auto& p : positivity::positivity_report(tr)) {
        CHECK(p.G == 1.0);
        CHECK((p.nec1 && p.nec2 && p.suff && p.relaxed));
    }
    for (bool ok : positivity::relaxed_secular_check(tr)) CHECK(ok);
}

TEST_CASE("constant rates against closed forms") {
    // Γ- = 0.3, Γ+ = 0.1, Γ0 = 0.2, |α + iβ| = 0.05
    const auto c = tcl::make_totals(0.3, 0.1, 0.2, 0.03, 0.04);
    const auto tr = constant_trace(c, 2.0, 2001);
    const auto rep = positivity::positivity_report(tr);
    const auto& p = rep.back();
    const double t = 2.0;
    const double Lambda = 0.4 * t, Theta = 0.5 * 0.6 * t;
    const double A = std::exp(-Lambda);
    const double kappa = A * (-0.2) * (std::exp(Lambda) - 1.0) / 0.4;
    CHECK(p.Lambda == doctest::Approx(Lambda).epsilon(1e-12));
    CHECK(p.Theta == doctest::Approx(Theta).epsilon(1e-12));
    CHECK(p.theta_ns == doctest::Approx(2.0 * 0.05 * t).epsilon(1e-12));
    CHECK(p.kappa == doctest::Approx(kappa).epsilon(1e-6));
    const double chi = std::exp(-2.0 * Theta);
    const double G = (1 - A) * (1 - A) + 2 * chi - kappa * kappa - chi * std::cosh(2.0 * 0.05 * t);
    CHECK(p.G == doctest::Approx(G).epsilon(1e-6));
    CHECK(p.nec1);
    CHECK(p.nec2);
}

TEST_CASE("G stays positive over one correlation time") {
    for (const auto& p : {testing::narrow_bath(), testing::medium_bath(), testing::broad_bath()}) {
        CAPTURE(p.lambda);
        const double t_corr = 1.0 / p.lambda;
        const auto tr = tcl::evaluate_trace(p, tcl::uniform_grid(t_corr, 200), tcl::TclOrder::TCL4);
        const auto rep = positivity::positivity_report(tr);
        for (std::size_t i = 1; i < rep.size(); ++i) CHECK(rep[i].G > 0.0);
    }
}

TEST_CASE("relaxed secular condition over a long window") {
    const auto tr = tcl::evaluate_trace(testing::narrow_bath(), tcl::uniform_grid(20.0, 400), tcl::TclOrder::TCL4);
    for (bool ok : positivity::relaxed_secular_check(tr)) CHECK(ok);
    const auto rep = positivity::positivity_report(tr);
    for (std::size_t i = 1; i < rep.size(); ++i) {
        CHECK(rep[i].theta_ns >= rep[i - 1].theta_ns);
        // the sufficient inequality implies G >= 0 (the report throws otherwise)
        if (rep[i].suff) CHECK(rep[i].G >= -1e-12);
        CHECK(rep[i].relaxed == positivity::relaxed_secular_check(tr)[i]);
    }
}

TEST_CASE("without nonsecular rates the sufficient condition loses the cosh") {
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> u(-0.5, 1.0);
    for (int k = 0; k < 50; ++k) {
        const auto c = tcl::make_totals(u(rng), u(rng), u(rng));
        const auto tr = constant_trace(c, 3.0, 31);
        for (const auto& p : positivity::positivity_report(tr)) {
            CHECK(p.theta_ns == 0.0);
            const bool direct = p.chi <= 1.0 + p.A * p.A - p.kappa * p.kappa - 2.0 * std::abs(p.A - p.chi);
            CHECK(p.suff == direct);
        }
    }
}

TEST_CASE("positivity CSV") {
    const auto rep = positivity::positivity_report(constant_trace(tcl::CoefficientSet{}, 1.0, 2));
    std::ostringstream out;
    positivity::write_csv(rep, out);
    CHECK(out.str() == "t,Theta,Lambda,chi,A,kappa,theta_ns,G,nec1,nec2,suff,relaxed\n"
                       "0,0,0,1,1,0,0,1,1,1,1,1\n1,0,0,1,1,0,0,1,1,1,1,1\n");
}
