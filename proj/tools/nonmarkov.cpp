// nonmarkov.cpp — command-line front end: coefficient, measure and positivity sweeps, SVG plots

#include "plot.hpp"
#include "presets.hpp"

#include "nonmarkov/dynamics.hpp"
#include "nonmarkov/measures.hpp"
#include "nonmarkov/positivity.hpp"
#include "nonmarkov/quadrature.hpp"
#include "nonmarkov/spectral.hpp"
#include "nonmarkov/tcl_coefficients.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace nonmarkov;

namespace {

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string label{"custom"};
    spectral::SpectralParams params{};
    spectral::FrequencyConvention convention{spectral::FrequencyConvention::FullLine};
    double t_max{30.0};
    std::size_t grid{400};
    tcl::TclOrder order{tcl::TclOrder::TCL4};
    measures::Variant variant{measures::Variant::Full};
    bool compare_rwa{false};
    std::string out{"."};
    double fourth_rtol{1e-4};
    double second_rtol{tcl::kSecondOrderRtol};
    double ode_rtol{1e-12};
    double ode_atol{1e-15};
    double interval_rtol{1e-9};
    unsigned threads{0};
};

// Raw command-line values; empty optionals leave the preset or config value in place.
struct Flags {
    std::string figure;
    std::string config;
    std::optional<std::string> order, variant, out;
    std::optional<std::size_t> grid;
    std::optional<double> tmax;
    bool compare_rwa{false};
};

double to_double(const std::string& key, const std::string& v) {
    try {
        std::size_t used = 0;
        const double d = std::stod(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw UsageError("config key '" + key + "' expects a number, got '" + v + "'");
    }
}

RunConfig build_config(const Flags& f, const std::optional<cli::FigurePreset>& preset) {
    RunConfig rc;
    if (preset) {
        rc.label = preset->id;
        rc.params = preset->params;
        rc.t_max = preset->t_max;
    }
    if (!f.config.empty()) {
        std::ifstream in(f.config);
        if (!in) throw UsageError("cannot read config " + f.config);
        std::stringstream ss;
        ss << in.rdbuf();
        spectral::ParsedConfig parsed;
        try {
            parsed = spectral::parse_config_text(ss.str(), rc.params);
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
        rc.params = parsed.params;
        rc.convention = parsed.convention;
        if (!preset) rc.label = fs::path(f.config).stem().string();
        for (const auto& [key, value] : parsed.extra) {
            if (key == "tmax") rc.t_max = to_double(key, value);
            else if (key == "grid") rc.grid = static_cast<std::size_t>(to_double(key, value));
            else if (key == "order") rc.order = tcl::parse_order(value);
            else if (key == "variant") rc.variant = measures::parse_variant(value);
            else if (key == "out") rc.out = value;
            else if (key == "fourth_rtol") rc.fourth_rtol = to_double(key, value);
            else if (key == "second_rtol") rc.second_rtol = to_double(key, value);
            else if (key == "ode_rtol") rc.ode_rtol = to_double(key, value);
            else if (key == "ode_atol") rc.ode_atol = to_double(key, value);
            else if (key == "interval_rtol") rc.interval_rtol = to_double(key, value);
            else if (key == "threads") rc.threads = static_cast<unsigned>(to_double(key, value));
            else throw UsageError("unknown config key '" + key + "'");
        }
    }
    if (f.order) rc.order = tcl::parse_order(*f.order);
    if (f.variant) rc.variant = measures::parse_variant(*f.variant);
    if (f.out) rc.out = *f.out;
    if (f.grid) rc.grid = *f.grid;
    if (f.tmax) rc.t_max = *f.tmax;
    rc.compare_rwa = f.compare_rwa;

    if (rc.grid < 2) throw UsageError("grid size must be at least 2");
    if (!(rc.t_max > 0.0)) throw UsageError("tmax must be positive");
    rc.params.validate();
    return rc;
}

std::optional<cli::FigurePreset> lookup_figure(const std::string& id) {
    if (id.empty()) return std::nullopt;
    auto p = cli::find_preset(id);
    if (!p) throw UsageError("unknown figure '" + id + "'");
    return p;
}

tcl::CoefficientTrace compute_trace(const RunConfig& rc) {
    tcl::TraceOptions opts;
    opts.fourth.rtol = rc.fourth_rtol;
    opts.second_rtol = rc.second_rtol;
    opts.threads = rc.threads;
    const auto grid = tcl::uniform_grid(rc.t_max, rc.grid);
    return tcl::evaluate_trace(tcl::make_bath(rc.params, rc.convention), grid, rc.order, opts);
}

fs::path output_path(const RunConfig& rc, const std::string& name) {
    fs::create_directories(rc.out);
    return fs::path(rc.out) / name;
}

template <class Writer>
void write_file(const fs::path& path, Writer&& w) {
    std::ofstream out(path);
    if (!out) throw UsageError("cannot write " + path.string());
    w(out);
    std::cout << path.string() << '\n';
}

int cmd_coefficients(const RunConfig& rc) {
    const auto trace = compute_trace(rc);
    bool all_converged = true;
    for (const auto& m : trace.metadata) all_converged = all_converged && m.converged;
    if (!all_converged) std::cerr << "warning: some fourth-order points missed their tolerance\n";
    write_file(output_path(rc, "coefficients_" + rc.label + ".csv"), [&](std::ostream& o) { tcl::write_csv(trace, o); });
    return 0;
}

void write_measures(const RunConfig& rc, const measures::MeasureTrace& mt, std::size_t violations) {
    const std::string stem = rc.label + "_" + measures::to_string(mt.variant);
    write_file(output_path(rc, "measures_" + stem + ".csv"), [&](std::ostream& o) { measures::write_csv(mt, o); });
    const auto integrated = measures::integrated_measures(mt);
    nlohmann::json j;
    j["variant"] = measures::to_string(mt.variant);
    j["idis"] = nlohmann::json::parse(measures::intervals_json(mt.idis));
    j["ibis"] = nlohmann::json::parse(measures::intervals_json(mt.ibis));
    j["idi_tol"] = mt.idi_tol;
    j["ibi_tol"] = mt.ibi_tol;
    j["N_blp"] = integrated.N_blp;
    j["I_rhp"] = integrated.I_rhp;
    j["implication_violations"] = violations;
    write_file(output_path(rc, "intervals_" + stem + ".json"), [&](std::ostream& o) { o << j.dump(2) << '\n'; });
}

int cmd_measures(const RunConfig& rc) {
    const auto pair = measures::StatePair::canonical();
    measures::MeasureOptions opts;
    opts.propagation.rtol = rc.ode_rtol;
    opts.propagation.atol = rc.ode_atol;
    opts.relative_tol = rc.interval_rtol;

    std::vector<measures::Variant> variants{rc.variant};
    if (rc.compare_rwa && rc.variant != measures::Variant::Rwa) variants.push_back(measures::Variant::Rwa);
    const bool need_trace = rc.variant != measures::Variant::Rwa;
    std::optional<tcl::CoefficientTrace> trace;
    std::size_t violations = 0;
    if (need_trace) {
        trace = compute_trace(rc);
        for (const auto& c : trace->sets) violations += !measures::check_conditions(c).implication_holds;
    }
    for (auto v : variants) {
        measures::MeasureTrace mt;
        switch (v) {
        case measures::Variant::Full: mt = measures::measure_trace_full(*trace, pair, rc.params.omega0, opts); break;
        case measures::Variant::Secular: mt = measures::measure_trace_secular(*trace, pair, opts); break;
        case measures::Variant::Rwa:
            mt = measures::measure_trace_rwa(rc.params, tcl::uniform_grid(rc.t_max, rc.grid), pair);
            break;
        }
        write_measures(rc, mt, v == measures::Variant::Rwa ? 0 : violations);
    }
    return 0;
}

int cmd_positivity(const Flags& f) {
    std::vector<RunConfig> runs;
    if (f.figure == "4") {
        for (const auto& p : cli::figure4_presets()) runs.push_back(build_config(f, p));
    } else {
        runs.push_back(build_config(f, lookup_figure(f.figure)));
    }
    for (const auto& rc : runs) {
        const auto report = positivity::positivity_report(compute_trace(rc));
        write_file(output_path(rc, "positivity_" + rc.label + ".csv"),
                   [&](std::ostream& o) { positivity::write_csv(report, o); });
    }
    return 0;
}

struct PlotFlags {
    std::vector<std::string> files;
    bool overlay{false};
    bool nonsecular{false};
    std::string quantity;
    std::string out{"."};
    std::string name{"overlay"};
};

int cmd_plot(const PlotFlags& pf) {
    std::vector<cli::Table> tables;
    for (const auto& f : pf.files) {
        try {
            tables.push_back(cli::read_csv(f));
        } catch (const std::exception& e) {
            throw UsageError(e.what());
        }
    }
    std::vector<cli::Panel> panels;
    for (std::size_t i = 0; i < tables.size(); ++i) {
        try {
            panels.push_back(cli::panel_from_table(tables[i], fs::path(pf.files[i]).stem().string(), pf.quantity,
                                                   pf.nonsecular));
        } catch (const std::invalid_argument& e) {
            throw UsageError(pf.files[i] + ": " + e.what());
        }
    }
    fs::create_directories(pf.out);
    if (pf.overlay) {
        // first file solid, later files dotted and dashed, as in the full-vs-RWA figures
        static const cli::Dash cycle[] = {cli::Dash::Solid, cli::Dash::Dotted, cli::Dash::DotDash, cli::Dash::Dashed};
        cli::Panel merged;
        merged.title = pf.name;
        merged.y_label = panels.front().y_label;
        for (std::size_t i = 0; i < panels.size(); ++i) {
            for (auto c : panels[i].curves) {
                c.label = panels[i].title + (panels[i].curves.size() > 1 ? ":" + c.label : "");
                c.dash = cycle[i % 4];
                merged.curves.push_back(std::move(c));
            }
        }
        const std::string svg = cli::render_svg(merged);
        write_file(fs::path(pf.out) / (pf.name + ".svg"), [&](std::ostream& o) { o << svg; });
        return 0;
    }
    for (const auto& p : panels) {
        const std::string svg = cli::render_svg(p);
        write_file(fs::path(pf.out) / (p.title + ".svg"), [&](std::ostream& o) { o << svg; });
    }
    return 0;
}

void add_run_flags(CLI::App* sub, Flags& f, bool measures_flags) {
    sub->add_option("--figure", f.figure, "figure preset (1a-1d, 2a-2c, 3a-3c; 4 for positivity)");
    sub->add_option("--config", f.config, "key = value parameter file");
    sub->add_option("--order", f.order, "tcl2 or tcl4");
    sub->add_option("--grid", f.grid, "number of grid points");
    sub->add_option("--tmax", f.tmax, "end of the time window");
    sub->add_option("--out", f.out, "output directory");
    if (measures_flags) {
        sub->add_option("--variant", f.variant, "full, secular or rwa");
        sub->add_flag("--compare-rwa", f.compare_rwa, "also write the RWA curves");
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Non-Markovianity of a two-level atom beyond the rotating-wave approximation"};
    app.require_subcommand(1);

    Flags coeff_flags, measure_flags, positivity_flags;
    PlotFlags plot_flags;
    auto* coeff = app.add_subcommand("coefficients", "coefficient trace CSV");
    add_run_flags(coeff, coeff_flags, false);
    auto* meas = app.add_subcommand("measures", "g(t), sigma(t) and interval lists");
    add_run_flags(meas, measure_flags, true);
    auto* pos = app.add_subcommand("positivity", "complete-positivity diagnostic G(t)");
    add_run_flags(pos, positivity_flags, false);
    auto* plot = app.add_subcommand("plot", "render CSVs as SVG line plots");
    plot->add_option("files", plot_flags.files, "CSV files")->required();
    plot->add_flag("--overlay", plot_flags.overlay, "draw all files in one panel");
    plot->add_flag("--nonsecular", plot_flags.nonsecular, "plot alpha and beta from a coefficient CSV");
    plot->add_option("--quantity", plot_flags.quantity, "sigma or g for measure CSVs");
    plot->add_option("--out", plot_flags.out, "output directory");
    plot->add_option("--name", plot_flags.name, "file stem of the overlay plot");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*coeff) {
            if (coeff_flags.figure == "4") throw UsageError("figure 4 belongs to the positivity command");
            return cmd_coefficients(build_config(coeff_flags, lookup_figure(coeff_flags.figure)));
        }
        if (*meas) {
            if (measure_flags.figure == "4") throw UsageError("figure 4 belongs to the positivity command");
            return cmd_measures(build_config(measure_flags, lookup_figure(measure_flags.figure)));
        }
        if (*pos) return cmd_positivity(positivity_flags);
        if (*plot) return cmd_plot(plot_flags);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const quad::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << " (estimate " << e.estimate() << ", error " << e.error()
                  << ")\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 2;
    }
    return 1;
}
