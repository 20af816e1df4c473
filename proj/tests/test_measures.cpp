// test_measures.cpp — RHP and BLP rates, interval detection, the backflow/indivisibility implication

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

#include "nonmarkov/measures.hpp"

#include <nlohmann/json.hpp>

#include <random>
#include <sstream>

using namespace nonmarkov;
using measures::Interval;
using measures::StatePair;
using dynamics::BlochVector;
using testing::narrow_bath;

namespace {

tcl::CoefficientSet rates(double gm, double gp, double g0, double a = 0.0, double b = 0.0) {
    return tcl::make_totals(gm, gp, g0, a, b);
}

void check_interval_shape(const std::vector<Interval>& iv, const std::vector<double>& grid) {
    for (std::size_t i = 0; i < iv.size(); ++i) {
        CHECK(iv[i].start <= iv[i].end);
        CHECK(iv[i].start >= grid.front());
        CHECK(iv[i].end <= grid.back());
        if (i > 0) CHECK(iv[i - 1].end <= iv[i].start);
    }
}

} // namespace

TEST_CASE("state pairs") {
    const auto canon = StatePair::canonical();
    const auto d = canon.difference();
    CHECK(d.bx == 0.0);
    CHECK(d.by == 0.0);
    CHECK(d.bz == 2.0);
    CHECK(canon.population_difference() == 1.0);
    CHECK(canon.coherence_difference() == 0.0);
    const StatePair p{{0.3, -0.1, 0.2}, {0.1, 0.4, -0.5}};
    CHECK(p.difference().bx == 0.3 - 0.1);
    CHECK(p.difference().by == -0.1 - 0.4);
    CHECK(p.difference().bz == 0.2 - (-0.5));
    CHECK(StatePair{{0.1, 0.2, 0.3}, {0.1, 0.2, 0.3}}.degenerate());
}

TEST_CASE("RHP rate, general form") {
    CHECK(measures::rhp_g_full(rates(1.0, 0.5, 0.2)) == 0.0);
    CHECK(measures::rhp_g_full(rates(-1.0, 0.0, 0.0)) == doctest::Approx(1.0).epsilon(1e-15));
    // nonsecular terms alone make the map indivisible
    CHECK(measures::rhp_g_full(rates(0.0, 0.0, 0.0, 0.0, 1.0)) == doctest::Approx(1.0));
    CHECK(measures::rhp_g_full(rates(0.3, 0.2, 0.0, 0.1, 0.0)) == 0.0);
    CHECK(measures::rhp_g_full(rates(0.3, 0.2, 0.0, 1.0, 0.0)) > 0.0);
}

TEST_CASE("RHP rate, secular form") {
    CHECK(measures::rhp_g_secular(rates(0.3, 0.1, 0.2)) == 0.0);
    CHECK(measures::rhp_g_secular(rates(-0.1, 0.05, 0.0)) == doctest::Approx(0.1).epsilon(1e-15));
    CHECK(measures::rhp_g_secular(rates(0.0, 0.0, -0.4)) == doctest::Approx(0.2).epsilon(1e-15));
}

TEST_CASE("general and secular RHP rates coincide without nonsecular terms") {
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const auto c = rates(u(rng), u(rng), u(rng));
        worst = std::max(worst, std::abs(measures::rhp_g_full(c) - measures::rhp_g_secular(c)));
    }
    CHECK(worst <= 1e-12);
}

TEST_CASE("RHP rate of the RWA model") {
    CHECK(measures::rhp_g_rwa(0.3) == 0.0);
    CHECK(measures::rhp_g_rwa(-0.2) == 0.2);
    const auto p = testing::broad_bath();
    for (const double t : tcl::uniform_grid(0.05, 400)) CHECK(measures::rhp_g_rwa(t, p) == 0.0);
}

TEST_CASE("BLP rate, general form") {
    CHECK(measures::blp_sigma_full({0, 0, 2}, rates(0.2, 0.1, 0.0)) == doctest::Approx(-0.3).epsilon(1e-15));
    CHECK(measures::blp_sigma_full({0.3, 0.1, 0.4}, tcl::CoefficientSet{}) == 0.0);
    CHECK_THROWS_AS(measures::blp_sigma_full({0, 0, 0}, rates(1, 0, 0)), measures::DegeneratePairError);
}

TEST_CASE("BLP rate, secular form") {
    const dynamics::SecularIntegrals in{1.0, 0.4, 0.3, 0.2, 0.1};
    const auto c = rates(0.2, 0.1, 0.05);
    CHECK(measures::blp_sigma_secular(StatePair::canonical(), in, c) ==
          doctest::Approx(-(0.2 + 0.1) * std::exp(-in.Lambda)).epsilon(1e-14));
    CHECK(measures::blp_sigma_secular(StatePair::canonical(), in, tcl::CoefficientSet{}) == 0.0);

    const StatePair transverse{{1, 0, 0}, {-1, 0, 0}};
    std::mt19937 rng(9);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 500; ++i) {
        const auto ci = rates(u(rng), u(rng), u(rng));
        const double sum3 = ci.gamma_minus.total() + ci.gamma_plus.total() + ci.gamma_zero.total();
        CHECK((measures::blp_sigma_secular(transverse, in, ci) > 0.0) == (sum3 < 0.0));
    }
    CHECK_THROWS_AS(measures::blp_sigma_secular({{0, 0, 1}, {0, 0, 1}}, in, c), measures::DegeneratePairError);
}

TEST_CASE("BLP rate of the RWA model") {
    const auto canon = StatePair::canonical();
    CHECK(measures::blp_sigma_rwa(0.4, 0.3, canon) < 0.0);
    CHECK(measures::blp_sigma_rwa(0.0, 0.3, canon) == 0.0);
    CHECK(measures::blp_sigma_rwa(-0.4, 0.3, canon) > 0.0);
    CHECK_THROWS_AS(measures::blp_sigma_rwa(0.1, 0.0, {{0, 0, 1}, {0, 0, 1}}), measures::DegeneratePairError);
}

TEST_CASE("trace distance") {
    CHECK(measures::trace_distance({0.1, 0.2, 0.3}, {0.1, 0.2, 0.3}) == 0.0);
    CHECK(measures::trace_distance({0, 0, 1}, {0, 0, -1}) == 1.0);
    CHECK(measures::trace_distance({1, 0, 0}, {0, 1, 0}) == doctest::Approx(std::sqrt(2.0) / 2.0));
}

TEST_CASE("interval detection") {
    const std::vector<double> grid{0, 1, 2, 3, 4};
    CHECK(measures::detect_intervals(grid, {-1, -2, -1, -3, -0.5}, 0.0).empty());
    // single upward crossing halfway between 1 and 2
    const auto up = measures::detect_intervals(grid, {-1, -1, 1, 1, 1}, 0.0);
    REQUIRE(up.size() == 1);
    CHECK(up[0].start == doctest::Approx(1.5));
    CHECK(up[0].end == 4.0);
    const auto two = measures::detect_intervals(grid, {1, -1, -1, 3, -1}, 0.0);
    REQUIRE(two.size() == 2);
    CHECK(two[0] == Interval{0.0, 0.5});
    CHECK(two[1].start == doctest::Approx(2.25));
    CHECK(two[1].end == doctest::Approx(3.75));
    // a threshold moves the crossing
    const auto tol = measures::detect_intervals(grid, {0, 0, 2, 0, 0}, 1.0);
    REQUIRE(tol.size() == 1);
    CHECK(tol[0].start == doctest::Approx(1.5));
    CHECK(tol[0].end == doctest::Approx(2.5));
    // refinement on a continuous function
    const std::vector<double> g2{0, 1, 2};
    const auto exact = measures::detect_intervals(g2, {-0.5, -std::cos(1.0) + 0.5, -std::cos(2.0) + 0.5}, 0.0,
                                                  [](double t) { return -std::cos(t) + 0.5; });
    REQUIRE(exact.size() == 1);
    CHECK(exact[0].start == doctest::Approx(std::acos(0.5)).epsilon(1e-14));
    CHECK_THROWS_AS(measures::detect_intervals(grid, {1, 2}, 0.0), std::invalid_argument);
}

TEST_CASE("condition flags") {
    auto f = measures::check_conditions(rates(-1.0, 0.2, 0.1));
    CHECK(f.backflow_sum3);
    CHECK(f.backflow_sum2);
    CHECK(f.indivisible_any);
    f = measures::check_conditions(rates(-0.1, 0.2, 0.0));
    CHECK_FALSE(f.backflow_sum3);
    CHECK_FALSE(f.backflow_sum2);
    CHECK(f.indivisible_any);
    f = measures::check_conditions(rates(0.1, 0.2, 0.3));
    CHECK_FALSE(f.backflow_sum3);
    CHECK_FALSE(f.backflow_sum2);
    CHECK_FALSE(f.indivisible_any);
    std::mt19937 rng(4);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 10000; ++i) CHECK(measures::check_conditions(rates(u(rng), u(rng), u(rng))).implication_holds);
}

TEST_CASE("integrated measures") {
    measures::MeasureTrace mt;
    mt.grid = {0.0, 1.0, 2.0};
    mt.g = {1.0, 1.0, 1.0};
    mt.sigma = {-1.0, -0.5, -0.2};
    auto m = measures::integrated_measures(mt);
    CHECK(m.N_blp == 0.0);
    CHECK(m.I_rhp == doctest::Approx(2.0));
    mt.g = {0.0, 0.0, 0.0};
    CHECK(measures::integrated_measures(mt).I_rhp == 0.0);
    mt.sigma = {0.0, 1.0, 0.0};
    mt.ibis = {{0.0, 2.0}};
    CHECK(measures::integrated_measures(mt).N_blp == doctest::Approx(1.0));
}

TEST_CASE("measure traces for the three baths") {
    const auto pair = StatePair::canonical();
    struct Case {
        spectral::SpectralParams p;
        double t_max;
    };
    for (const auto& [p, t_max] :
         {Case{narrow_bath(), 30.0}, Case{testing::medium_bath(), 1.5}, Case{testing::broad_bath(), 0.05}}) {
        CAPTURE(p.lambda);
        const auto grid = tcl::uniform_grid(t_max, 400);
        const auto tr = tcl::evaluate_trace(p, grid, tcl::TclOrder::TCL4);
        const auto full = measures::measure_trace_full(tr, pair, p.omega0);
        const auto sec = measures::measure_trace_secular(tr, pair);
        const auto rwa = measures::measure_trace_rwa(p, grid, pair);
        for (const auto* mt : {&full, &sec, &rwa}) {
            check_interval_shape(mt->idis, grid);
            check_interval_shape(mt->ibis, grid);
            for (double g : mt->g) CHECK(g >= 0.0);
        }
        // RWA: both measures are governed by the sign of gamma(t)
        CHECK(rwa.idis == rwa.ibis);
        // every grid point with backflow is indivisible
        for (const auto& c : tr.sets) CHECK(measures::check_conditions(c).implication_holds);
        // every secular IBI lies inside a secular IDI
        for (const auto& b : sec.ibis) {
            bool inside = false;
            for (const auto& d : sec.idis) inside = inside || (d.start <= b.start + 1e-9 && b.end <= d.end + 1e-9);
            CHECK(inside);
        }
        if (p.lambda == 400.0) CHECK(full.ibis.empty());
        if (p.lambda == 0.2) {
            for (std::size_t i = 1; i < grid.size(); ++i) CHECK(full.g[i] > full.idi_tol);
        }
    }
}

TEST_CASE("secular value of the canonical pair is reached by the pair sweep") {
    const auto tr = tcl::evaluate_trace(narrow_bath(), tcl::uniform_grid(5.0, 101), tcl::TclOrder::TCL4);
    const auto sec = dynamics::secular_integrals(tr);
    for (std::size_t i = 10; i < tr.size(); i += 30) {
        const double canon = measures::blp_sigma_secular(StatePair::canonical(), sec[i], tr.sets[i]);
        const auto best = measures::sweep_secular_pairs(sec[i], tr.sets[i], 8);
        CHECK(best.sigma >= canon - 1e-15);
    }
}

TEST_CASE("measure CSV and interval JSON") {
    measures::MeasureTrace mt;
    mt.grid = {0.0, 1.0};
    mt.g = {0.0, 0.5};
    mt.sigma = {-0.1, 0.2};
    mt.idis = {{0.5, 1.0}};
    std::ostringstream out;
    measures::write_csv(mt, out);
    CHECK(out.str() == "t,g,sigma,in_idi,in_ibi\n0,0,-0.10000000000000001,0,0\n1,0.5,0.20000000000000001,1,1\n");
    const auto j = nlohmann::json::parse(measures::intervals_json(mt.idis));
    REQUIRE(j.is_array());
    CHECK(j[0][0] == 0.5);
    CHECK(j[0][1] == 1.0);
    CHECK(measures::intervals_json({}) == "[]");
    CHECK(measures::parse_variant("secular") == measures::Variant::Secular);
    CHECK_THROWS_AS(measures::parse_variant("quantum"), std::invalid_argument);
}
