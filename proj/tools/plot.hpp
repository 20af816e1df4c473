// plot.hpp — reading the CSVs written by the other commands and drawing them as SVG line plots

#pragma once

#include <string>
#include <vector>

namespace nonmarkov::cli {

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<double>> columns;

    std::size_t rows() const { return columns.empty() ? 0 : columns.front().size(); }
    bool has(const std::string& name) const;
    const std::vector<double>& column(const std::string& name) const;  // throws std::invalid_argument
};

// Throws std::runtime_error on unreadable files, ragged rows or an empty body.
Table read_csv(const std::string& path);

enum class Dash { Solid, Dotted, DotDash, Dashed };

struct Curve {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
    Dash dash{Dash::Solid};
};

struct Panel {
    std::string title;
    std::string x_label{"t"};
    std::string y_label;
    std::vector<Curve> curves;
};

std::string render_svg(const Panel& panel);

// Curves of a known CSV layout: coefficient totals (Γ-, Γ+, Γ0, or α, β when `nonsecular`),
// measure traces (`quantity` is "sigma" or "g"), or the positivity diagnostic G.
Panel panel_from_table(const Table& table, const std::string& title, const std::string& quantity,
                       bool nonsecular);

} // namespace nonmarkov::cli
