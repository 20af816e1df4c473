// acceptance.cpp — one PASS/FAIL line per acceptance criterion, with the measured numbers

#include "presets.hpp"

#include "nonmarkov/dynamics.hpp"
#include "nonmarkov/measures.hpp"
#include "nonmarkov/oracles.hpp"
#include "nonmarkov/positivity.hpp"
#include "nonmarkov/spectral.hpp"
#include "nonmarkov/tcl_coefficients.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <thread>
#include <vector>

using namespace nonmarkov;

namespace {

class Clock {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_{std::chrono::steady_clock::now()};
};

int failures = 0;

void report(const std::string& id, bool ok, const std::string& detail) {
    std::printf("%s  criterion %-6s %s\n", ok ? "PASS" : "FAIL", id.c_str(), detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

tcl::CoefficientSet random_totals(std::mt19937& rng, bool nonsecular) {
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    return tcl::make_totals(u(rng), u(rng), u(rng), nonsecular ? u(rng) : 0.0, nonsecular ? u(rng) : 0.0, u(rng),
                            u(rng));
}

std::size_t implication_violations(const tcl::CoefficientTrace& tr) {
    std::size_t n = 0;
    for (const auto& c : tr.sets) n += !measures::check_conditions(c).implication_holds;
    return n;
}

} // namespace

int main() {
    const auto fig_a = *cli::find_preset("1a");
    const auto fig_b = *cli::find_preset("1b");
    const auto fig_c = *cli::find_preset("1c");
    std::size_t checked_points = 0, violations = 0;

    {  // 1
        Clock clock;
        const auto kernels = spectral::kernels_for(fig_a.params, spectral::FrequencyConvention::FullLine);
        const double kappa = fig_a.params.gamma0 * fig_a.params.lambda / 2.0;
        double worst = 0.0;
        for (int i = 0; i <= 100; ++i) {
            const double t = 0.1 * i;
            const auto [c, s] = oracles::lorentzian_kernel_oracle(t, fig_a.params);
            const double envelope = kappa * std::exp(-fig_a.params.lambda * t);
            worst = std::max(worst, std::hypot(c - kernels->c(t), s - kernels->s(t)) / envelope);
        }
        const double secs = clock.seconds();
        report("1", worst < 1e-8 && secs < 5.0,
               fmt("kernel closed form vs quadrature, max rel err %.2e over t in [0,10] (%.2f s)", worst, secs));
    }

    {  // 2
        const spectral::SpectralParams resonant{1.0, 0.2, 0.0, 100.0};
        const double t = 50.0 / resonant.lambda;
        const double rate = tcl::gamma_2(t, tcl::make_bath(resonant), tcl::Sign::Minus);
        const double limit = 2.0 * M_PI * spectral::lorentzian_density(resonant.omega0, resonant);
        const double rel = std::abs(rate - limit) / limit;
        report("2", rel < 0.01, fmt("Markov limit G-II(%.0f) = %.8f vs 2 pi J(w0) = %.8f, rel err %.2e", t, rate,
                                    limit, rel));
    }

    {  // 3
        std::mt19937 rng(20240601);
        double worst = 0.0;
        for (int i = 0; i < 10000; ++i) {
            const auto c = random_totals(rng, false);
            worst = std::max(worst, std::abs(measures::rhp_g_full(c) - measures::rhp_g_secular(c)));
        }
        report("3", worst <= 1e-12, fmt("general vs secular g with alpha = beta = 0, 1e4 draws, max abs diff %.2e", worst));
    }

    {  // 4
        Clock clock;
        std::mt19937 rng(77);
        double worst = 0.0;
        for (int i = 0; i < 200; ++i) {
            const auto c = random_totals(rng, true);
            worst = std::max(worst, std::abs(oracles::choi_g_oracle(c, 1e-6, true) - measures::rhp_g_full(c)));
        }
        const double secs = clock.seconds();
        report("4", worst < 1e-4 && secs < 10.0,
               fmt("Choi oracle (eps 1e-6, Richardson) vs closed-form g, 200 draws, max abs err %.2e (%.3f s)", worst,
                   secs));
    }

    // The Fig. 1(a) trace shared by criteria 5, 8(iv), 11 and 12.
    Clock trace_clock;
    const auto grid_a = tcl::uniform_grid(fig_a.t_max, 400);
    const auto trace_a = tcl::evaluate_trace(fig_a.params, grid_a, tcl::TclOrder::TCL4);
    const double trace_secs = trace_clock.seconds();
    checked_points += trace_a.size();
    violations += implication_violations(trace_a);

    {  // 5
        dynamics::PropagateOptions opts;
        opts.zero_nonsecular = true;
        const auto sec = dynamics::secular_integrals(trace_a);
        double worst = 0.0;
        for (const auto& start : {dynamics::kExcited, dynamics::kGround, dynamics::BlochVector{0.6, 0.0, 0.8}}) {
            const auto traj = dynamics::propagate(start, trace_a, fig_a.t_max, opts);
            for (std::size_t i = 0; i < traj.states.size(); ++i) {
                worst = std::max(worst, (traj.states[i] - dynamics::secular_solution(start, sec[i])).norm());
            }
        }
        report("5", worst < 1e-8, fmt("secular closed form vs ODE over [0,%.0f], three initial states, max abs err %.2e",
                                      fig_a.t_max, worst));
    }

    {  // 6
        Clock clock;
        const auto grid = tcl::uniform_grid(fig_a.t_max, 12001);
        const auto tr = tcl::evaluate_trace(fig_a.params, grid, tcl::TclOrder::TCL4);
        checked_points += tr.size();
        violations += implication_violations(tr);
        dynamics::PropagateOptions opts;
        opts.omega0 = fig_a.params.omega0;
        const auto one = dynamics::propagate(dynamics::kExcited, tr, fig_a.t_max, opts);
        const auto two = dynamics::propagate(dynamics::kGround, tr, fig_a.t_max, opts);
        const auto fd = oracles::finite_difference_sigma(one.states, two.states, grid);
        double worst = 0.0;
        for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
            const double s = measures::blp_sigma_full(one.states[i] - two.states[i], tr.sets[i]);
            worst = std::max(worst, std::abs(s - fd[i]));
        }
        report("6", worst < 1e-4,
               fmt("sigma vs finite-difference trace distance, %zu points on [0,%.0f], max abs err %.2e (%.1f s)",
                   grid.size(), fig_a.t_max, worst, clock.seconds()));
    }

    {  // 7
        bool ok = true;
        std::string detail = "RWA IDIs == IBIs:";
        for (const auto& p : {fig_a, fig_b, fig_c}) {
            const auto mt = measures::measure_trace_rwa(p.params, tcl::uniform_grid(p.t_max, 400),
                                                        measures::StatePair::canonical());
            const bool same = mt.idis == mt.ibis;
            ok = ok && same;
            detail += fmt(" (%c) %zu/%zu %s", p.panel, mt.idis.size(), mt.ibis.size(), same ? "equal" : "DIFFER");
        }
        report("7", ok, detail);
    }

    {  // 8(i)
        Clock clock;
        const auto tr = tcl::evaluate_trace(fig_c.params, tcl::uniform_grid(fig_c.t_max, 400), tcl::TclOrder::TCL4);
        checked_points += tr.size();
        violations += implication_violations(tr);
        double max_gm = 0.0, min_rate = 0.0;
        for (const auto& c : tr.sets) {
            max_gm = std::max(max_gm, std::abs(c.gamma_minus.total()));
            min_rate = std::min({min_rate, c.gamma_minus.total(), c.gamma_plus.total(), c.gamma_zero.total()});
        }
        report("8(i)", min_rate >= -1e-3 * max_gm && clock.seconds() < 60.0,
               fmt("Fig. 1(c) rates, min %.3e vs floor %.3e (%.2f s)", min_rate, -1e-3 * max_gm, clock.seconds()));

        // 8(ii) on the same parameters
        Clock c2;
        const auto mt = measures::measure_trace_full(tr, measures::StatePair::canonical(), fig_c.params.omega0);
        report("8(ii)", mt.ibis.empty() && c2.seconds() + clock.seconds() < 60.0,
               fmt("Fig. 2(c) full variant, %zu IBIs (%.2f s)", mt.ibis.size(), c2.seconds() + clock.seconds()));
    }

    {  // 8(iii)
        Clock clock;
        const auto tr = tcl::evaluate_trace(fig_b.params, tcl::uniform_grid(fig_b.t_max, 400), tcl::TclOrder::TCL4);
        checked_points += tr.size();
        violations += implication_violations(tr);
        double min_gp = 0.0;
        for (const auto& c : tr.sets) min_gp = std::min(min_gp, c.gamma_plus.total());
        report("8(iii)", min_gp < 0.0 && clock.seconds() < 60.0,
               fmt("Fig. 1(b) min G+ = %.4e (%.2f s)", min_gp, clock.seconds()));
    }

    {  // 8(iv)
        Clock clock;
        const auto mt = measures::measure_trace_full(trace_a, measures::StatePair::canonical(), fig_a.params.omega0);
        double min_g = INFINITY;
        for (std::size_t i = 1; i < mt.g.size(); ++i) min_g = std::min(min_g, mt.g[i]);
        const double secs = clock.seconds() + trace_secs;
        report("8(iv)", min_g > mt.idi_tol && secs < 60.0,
               fmt("Fig. 3(a) full variant, min g over t > 0 = %.3e vs tol %.2e (%.2f s)", min_g, mt.idi_tol, secs));
    }

    {  // 8(v)
        Clock clock;
        bool ok = true;
        std::string detail = "Fig. 4 min G on (0, 1/lambda]:";
        for (const auto& p : cli::figure4_presets()) {
            const auto grid = tcl::uniform_grid(p.t_max, 400);
            const auto tr = tcl::evaluate_trace(p.params, grid, tcl::TclOrder::TCL4);
            checked_points += tr.size();
            violations += implication_violations(tr);
            const auto rep = positivity::positivity_report(tr);
            double min_G = INFINITY;
            for (std::size_t i = 1; i < rep.size(); ++i) {
                if (rep[i].t <= 1.0 / p.params.lambda) min_G = std::min(min_G, rep[i].G);
            }
            ok = ok && min_G > 0.0;
            detail += fmt(" (%c) %.4f", p.panel, min_G);
        }
        const double secs = clock.seconds();
        report("8(v)", ok && secs < 60.0, detail + fmt(" (%.2f s)", secs));
    }

    {  // 9
        auto doubled = fig_a.params;
        doubled.gamma0 *= 2.0;
        const auto bath1 = tcl::make_bath(fig_a.params), bath2 = tcl::make_bath(doubled);
        const auto one = tcl::fourth_order_all(2.0, bath1);
        const auto two = tcl::fourth_order_all(2.0, bath2);
        bool ok = true;
        double worst = 0.0;
        for (std::size_t k = 0; k < tcl::kSelectorCount; ++k) {
            const double diff = std::abs(two[k].value - 4.0 * one[k].value);
            const double bound = 1e-6 * std::abs(4.0 * one[k].value) + two[k].error + 4.0 * one[k].error;
            ok = ok && diff <= bound;
            worst = std::max(worst, diff / std::abs(4.0 * one[k].value));
        }
        report("9", ok, fmt("x2 coupling scales all 7 fourth-order coefficients by 4, max rel dev %.2e at t = 2", worst));
    }

    {  // 10
        Clock clock;
        const auto bath = tcl::make_bath(fig_a.params);
        std::string detail = "main path vs n = 200 simplex Riemann sum at t = 2:";
        bool ok = true;
        for (auto sel : {tcl::Selector::GammaZero, tcl::Selector::GammaPlus}) {
            const double main = tcl::fourth_order(2.0, bath, sel).value;
            const double ref = oracles::simplex_riemann_oracle(2.0, *bath.kernels, bath.omega0, sel, 200);
            const double rel = std::abs(main - ref) / std::abs(ref);
            ok = ok && rel < 1e-3;
            detail += fmt(" %s %.6e vs %.6e (rel %.2e);", tcl::to_string(sel).c_str(), main, ref, rel);
        }
        const double secs = clock.seconds();
        report("10", ok && secs < 120.0, detail + fmt(" %.1f s", secs));
    }

    report("11", violations == 0,
           fmt("backflow implies indivisibility on %zu grid points of 7 traces, %zu violations", checked_points,
               violations));

    report("12", trace_secs < 120.0,
           fmt("400-point TCL4 trace on [0,%.0f], %.2f s with %u hardware threads", fig_a.t_max, trace_secs,
               std::max(1u, std::thread::hardware_concurrency())));

    std::printf("%d criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
