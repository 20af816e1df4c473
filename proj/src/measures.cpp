// measures.cpp — g(t), sigma(t), interval detection and trace-level drivers

#include "nonmarkov/measures.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>

namespace nonmarkov::measures {

double StatePair::population_difference() const { return 0.5 * (first.bz - second.bz); }

double StatePair::coherence_difference() const {
    const BlochVector d = difference();
    return 0.5 * std::hypot(d.bx, d.by);
}

bool StatePair::degenerate() const {
    const BlochVector d = difference();
    return d.bx == 0.0 && d.by == 0.0 && d.bz == 0.0;
}

Variant parse_variant(const std::string& name) {
    if (name == "full") return Variant::Full;
    if (name == "secular") return Variant::Secular;
    if (name == "rwa") return Variant::Rwa;
    throw std::invalid_argument("unknown model variant '" + name + "'");
}

std::string to_string(Variant v) {
    switch (v) {
    case Variant::Full: return "full";
    case Variant::Secular: return "secular";
    case Variant::Rwa: return "rwa";
    }
    return "?";
}

namespace {

double pick(const tcl::Coefficient& c, Parts parts) {
    return parts == Parts::Totals ? c.total() : c.second_order;
}

struct Rates {
    double gm, gp, g0, al, be;
};

Rates rates_of(const tcl::CoefficientSet& c, Parts parts) {
    return {pick(c.gamma_minus, parts), pick(c.gamma_plus, parts), pick(c.gamma_zero, parts),
            pick(c.alpha, parts), pick(c.beta, parts)};
}

// g is a sum of absolute values minus a bounded term; anything below -1e-12 is a bug
double checked_g(double g) {
    if (g < -1e-12) throw std::logic_error("negative RHP rate g = " + std::to_string(g));
    return std::max(g, 0.0);
}

} // namespace

double rhp_g_full(const tcl::CoefficientSet& c, Parts parts) {
    const Rates r = rates_of(c, parts);
    const double root = std::sqrt((r.gm - r.gp) * (r.gm - r.gp) + 4.0 * (r.al * r.al + r.be * r.be));
    const double sum = r.gm + r.gp;
    return checked_g(0.25 * std::abs(sum + root) + 0.25 * std::abs(sum - root) +
                     0.25 * (std::abs(r.g0) - r.g0 - 2.0 * r.gm - 2.0 * r.gp));
}

double rhp_g_secular(const tcl::CoefficientSet& c, Parts parts) {
    const Rates r = rates_of(c, parts);
    return checked_g(0.25 * (2.0 * std::abs(r.gm) + 2.0 * std::abs(r.gp) + std::abs(r.g0) - 2.0 * r.gm -
                             2.0 * r.gp - r.g0));
}

double rhp_g_rwa(double gamma) { return gamma < 0.0 ? -gamma : 0.0; }

double rhp_g_rwa(double t, const spectral::SpectralParams& params) {
    return rhp_g_rwa(dynamics::rwa_gamma(t, params));
}

double blp_sigma_full(const BlochVector& d, const tcl::CoefficientSet& c, Parts parts) {
    const double norm = d.norm();
    if (norm == 0.0) throw DegeneratePairError("trace distance is zero; sigma is undefined");
    const Rates r = rates_of(c, parts);
    const double transverse = r.gm + r.gp + r.g0;
    return -0.25 / norm *
           ((transverse - 2.0 * r.al) * d.bx * d.bx + (transverse + 2.0 * r.al) * d.by * d.by +
            4.0 * r.be * d.bx * d.by + 2.0 * (r.gm + r.gp) * d.bz * d.bz);
}

double blp_sigma_secular(const StatePair& pair, const dynamics::SecularIntegrals& in, const tcl::CoefficientSet& c,
                         Parts parts) {
    if (pair.degenerate()) throw DegeneratePairError("initial states coincide; sigma is undefined");
    const Rates r = rates_of(c, parts);
    const BlochVector d0 = pair.difference();
    const double perp = d0.bx * d0.bx + d0.by * d0.by;
    const double z2 = d0.bz * d0.bz;
    const double chi = std::exp(-2.0 * in.Theta);
    const double a2 = std::exp(-2.0 * in.Lambda);
    const double inv_norm = 1.0 / std::sqrt(chi * perp + a2 * z2);
    return -0.25 * inv_norm * (chi * (r.gm + r.gp + r.g0) * perp + 2.0 * a2 * (r.gm + r.gp) * z2);
}

double blp_sigma_rwa(double gamma, double Gamma_accum, const StatePair& pair) {
    const auto F = dynamics::rwa_F(Gamma_accum, pair.population_difference(), pair.coherence_difference());
    if (F.degenerate) throw DegeneratePairError("initial states coincide; sigma is undefined");
    return -gamma * F.value;
}

double blp_sigma_rwa(double t, const spectral::SpectralParams& params, const StatePair& pair) {
    const auto rate = dynamics::rwa_decay_rate(t, params);
    return blp_sigma_rwa(rate.gamma, rate.Gamma_accum, pair);
}

double trace_distance(const BlochVector& a, const BlochVector& b) { return 0.5 * (a - b).norm(); }

// ---------------------------------------------------------------------------

std::vector<Interval> detect_intervals(const std::vector<double>& grid, const std::vector<double>& series, double tol,
                                       const std::function<double(double)>& continuous) {
    if (grid.size() != series.size()) throw std::invalid_argument("series and grid sizes differ");
    std::vector<Interval> out;
    if (grid.empty()) return out;

    auto crossing = [&](std::size_t i) {
        // sign of (value - tol) changes between i and i+1
        const double t0 = grid[i], t1 = grid[i + 1];
        if (continuous) {
            const bool left_above = series[i] > tol;
            double lo = t0, hi = t1;
            for (int it = 0; it < 200; ++it) {
                const double mid = 0.5 * (lo + hi);
                if (!(mid > lo && mid < hi)) break;
                if ((continuous(mid) > tol) == left_above) lo = mid;
                else hi = mid;
            }
            return left_above ? lo : hi;
        }
        const double v0 = series[i] - tol, v1 = series[i + 1] - tol;
        return t0 + (t1 - t0) * (v0 / (v0 - v1));
    };

    bool inside = series[0] > tol;
    double start = grid[0];
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        const bool next = series[i + 1] > tol;
        if (next == inside) continue;
        const double x = crossing(i);
        if (next) {
            start = x;
        } else {
            out.push_back({start, x});
        }
        inside = next;
    }
    if (inside) out.push_back({start, grid.back()});
    return out;
}

ConditionFlags check_conditions(const tcl::CoefficientSet& c) {
    const double gm = c.gamma_minus.total(), gp = c.gamma_plus.total(), g0 = c.gamma_zero.total();
    ConditionFlags f;
    f.backflow_sum3 = gm + gp + g0 < 0.0;
    f.backflow_sum2 = gm + gp < 0.0;
    f.indivisible_any = gm < 0.0 || gp < 0.0 || g0 < 0.0;
    f.implication_holds = !(f.backflow_sum3 || f.backflow_sum2) || f.indivisible_any;
    return f;
}

IntegratedMeasures integrated_measures(const MeasureTrace& trace) {
    IntegratedMeasures out;
    const auto& t = trace.grid;
    for (std::size_t i = 0; i + 1 < t.size(); ++i) out.I_rhp += 0.5 * (t[i + 1] - t[i]) * (trace.g[i] + trace.g[i + 1]);

    // sigma restricted to each IBI, linearly interpolated at the interval ends
    auto sigma_at = [&](double x) {
        auto it = std::upper_bound(t.begin(), t.end(), x);
        std::size_t i = it == t.begin() ? 0 : static_cast<std::size_t>(it - t.begin()) - 1;
        i = std::min(i, t.size() - 2);
        const double w = (x - t[i]) / (t[i + 1] - t[i]);
        return (1.0 - w) * trace.sigma[i] + w * trace.sigma[i + 1];
    };
    if (t.size() < 2) return out;
    for (const auto& iv : trace.ibis) {
        std::vector<double> xs{iv.start};
        for (double x : t) {
            if (x > iv.start && x < iv.end) xs.push_back(x);
        }
        xs.push_back(iv.end);
        for (std::size_t k = 0; k + 1 < xs.size(); ++k) {
            out.N_blp += 0.5 * (xs[k + 1] - xs[k]) * (std::max(sigma_at(xs[k]), 0.0) + std::max(sigma_at(xs[k + 1]), 0.0));
        }
    }
    return out;
}

// ---------------------------------------------------------------------------

double max_coefficient_magnitude(const tcl::CoefficientTrace& trace) {
    double m = 0.0;
    for (const auto& c : trace.sets) {
        m = std::max({m, std::abs(c.s_plus.total()), std::abs(c.s_minus.total()), std::abs(c.gamma_minus.total()),
                      std::abs(c.gamma_plus.total()), std::abs(c.gamma_zero.total()), std::abs(c.alpha.total()),
                      std::abs(c.beta.total())});
    }
    return m;
}

MeasureTrace measure_trace_full(const tcl::CoefficientTrace& trace, const StatePair& pair, double omega0,
                                const MeasureOptions& opts) {
    if (pair.degenerate()) throw DegeneratePairError("initial states coincide; sigma is undefined");
    MeasureTrace out;
    out.variant = Variant::Full;
    out.grid = trace.grid;
    auto prop = opts.propagation;
    prop.omega0 = omega0;
    const auto first = dynamics::propagate(pair.first, trace, trace.grid.back(), prop);
    const auto second = dynamics::propagate(pair.second, trace, trace.grid.back(), prop);
    for (std::size_t i = 0; i < trace.size(); ++i) {
        out.g.push_back(rhp_g_full(trace.sets[i], opts.parts));
        out.sigma.push_back(blp_sigma_full(first.states[i] - second.states[i], trace.sets[i], opts.parts));
    }
    out.idi_tol = out.ibi_tol = opts.relative_tol * max_coefficient_magnitude(trace);
    out.idis = detect_intervals(out.grid, out.g, out.idi_tol);
    out.ibis = detect_intervals(out.grid, out.sigma, out.ibi_tol);
    return out;
}

MeasureTrace measure_trace_secular(const tcl::CoefficientTrace& trace, const StatePair& pair,
                                   const MeasureOptions& opts) {
    MeasureTrace out;
    out.variant = Variant::Secular;
    out.grid = trace.grid;
    const auto integrals = dynamics::secular_integrals(trace);
    for (std::size_t i = 0; i < trace.size(); ++i) {
        out.g.push_back(rhp_g_secular(trace.sets[i], opts.parts));
        out.sigma.push_back(blp_sigma_secular(pair, integrals[i], trace.sets[i], opts.parts));
    }
    out.idi_tol = out.ibi_tol = opts.relative_tol * max_coefficient_magnitude(trace);
    out.idis = detect_intervals(out.grid, out.g, out.idi_tol);
    out.ibis = detect_intervals(out.grid, out.sigma, out.ibi_tol);
    return out;
}

MeasureTrace measure_trace_rwa(const spectral::SpectralParams& params, const std::vector<double>& grid,
                               const StatePair& pair) {
    MeasureTrace out;
    out.variant = Variant::Rwa;
    out.grid = grid;
    const auto rwa = dynamics::rwa_trace(params, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        out.g.push_back(rhp_g_rwa(rwa.gamma[i]));
        out.sigma.push_back(blp_sigma_rwa(rwa.gamma[i], rwa.Gamma_accum[i], pair));
    }
    // strict positivity, with crossings refined on the closed-form rate itself
    out.idi_tol = out.ibi_tol = 0.0;
    auto g_of = [&](double t) { return rhp_g_rwa(t, params); };
    auto sigma_of = [&](double t) { return blp_sigma_rwa(t, params, pair); };
    out.idis = detect_intervals(grid, out.g, 0.0, g_of);
    out.ibis = detect_intervals(grid, out.sigma, 0.0, sigma_of);
    return out;
}

PairSweepResult sweep_secular_pairs(const dynamics::SecularIntegrals& integrals, const tcl::CoefficientSet& c, int n) {
    std::vector<BlochVector> points;
    for (int i = 0; i <= n; ++i) {
        const double theta = std::numbers::pi * i / n;
        const int m = (i == 0 || i == n) ? 1 : 2 * n;
        for (int j = 0; j < m; ++j) {
            const double phi = 2.0 * std::numbers::pi * j / m;
            points.push_back({std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)});
        }
    }
    PairSweepResult best{-std::numeric_limits<double>::infinity(), {}};
    for (std::size_t a = 0; a < points.size(); ++a) {
        for (std::size_t b = a + 1; b < points.size(); ++b) {
            const StatePair p{points[a], points[b]};
            if (p.degenerate()) continue;
            const double s = blp_sigma_secular(p, integrals, c);
            if (s > best.sigma) best = {s, p};
        }
    }
    return best;
}

void write_csv(const MeasureTrace& trace, std::ostream& out) {
    out << "t,g,sigma,in_idi,in_ibi\n";
    char buf[128];
    for (std::size_t i = 0; i < trace.grid.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%d,%d\n", trace.grid[i], trace.g[i], trace.sigma[i],
                      trace.g[i] > trace.idi_tol ? 1 : 0, trace.sigma[i] > trace.ibi_tol ? 1 : 0);
        out << buf;
    }
}

std::string intervals_json(const std::vector<Interval>& intervals) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& iv : intervals) j.push_back({iv.start, iv.end});
    return j.dump();
}

} // namespace nonmarkov::measures
