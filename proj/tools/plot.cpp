// plot.cpp — CSV reader and a small SVG line-plot writer

#include "plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace nonmarkov::cli {

bool Table::has(const std::string& name) const {
    return std::find(header.begin(), header.end(), name) != header.end();
}

const std::vector<double>& Table::column(const std::string& name) const {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw std::invalid_argument("CSV has no column '" + name + "'");
    return columns[static_cast<std::size_t>(it - header.begin())];
}

Table read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    Table t;
    std::string line;
    if (!std::getline(in, line) || line.empty()) throw std::runtime_error(path + " is empty");
    {
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) t.header.push_back(cell);
    }
    t.columns.resize(t.header.size());
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        std::size_t k = 0;
        while (std::getline(ss, cell, ',')) {
            if (k >= t.columns.size()) throw std::runtime_error(path + ": too many fields on row " + std::to_string(row));
            t.columns[k++].push_back(std::stod(cell));
        }
        if (k != t.columns.size()) throw std::runtime_error(path + ": too few fields on row " + std::to_string(row));
    }
    if (t.rows() == 0) throw std::runtime_error(path + " has a header but no data");
    return t;
}

namespace {

std::string dash_attr(Dash d) {
    switch (d) {
    case Dash::Solid: return "";
    case Dash::Dotted: return " stroke-dasharray=\"2,3\"";
    case Dash::DotDash: return " stroke-dasharray=\"8,3,2,3\"";
    case Dash::Dashed: return " stroke-dasharray=\"6,4\"";
    }
    return "";
}

// 1-2-5 tick spacing giving roughly `target` ticks
double tick_step(double span, int target) {
    const double raw = span / target;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    for (double m : {1.0, 2.0, 5.0, 10.0}) {
        if (m * mag >= raw) return m * mag;
    }
    return 10.0 * mag;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", std::abs(v) < 1e-12 ? 0.0 : v);
    return buf;
}

} // namespace

std::string render_svg(const Panel& panel) {
    constexpr double W = 640, H = 420, L = 80, R = 20, T = 40, B = 55;
    double xmin = INFINITY, xmax = -INFINITY, ymin = INFINITY, ymax = -INFINITY;
    for (const auto& c : panel.curves) {
        for (std::size_t i = 0; i < c.x.size(); ++i) {
            xmin = std::min(xmin, c.x[i]);
            xmax = std::max(xmax, c.x[i]);
            ymin = std::min(ymin, c.y[i]);
            ymax = std::max(ymax, c.y[i]);
        }
    }
    if (!std::isfinite(xmin)) throw std::invalid_argument("nothing to plot");
    if (xmax == xmin) xmax = xmin + 1.0;
    if (ymax == ymin) {
        ymin -= 0.5;
        ymax += 0.5;
    }
    const double pad = 0.05 * (ymax - ymin);
    ymin -= pad;
    ymax += pad;
    auto sx = [&](double x) { return L + (x - xmin) / (xmax - xmin) * (W - L - R); };
    auto sy = [&](double y) { return H - B - (y - ymin) / (ymax - ymin) * (H - T - B); };

    std::ostringstream o;
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    o << "<text x=\"" << W / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" << panel.title << "</text>\n";
    o << "<rect x=\"" << L << "\" y=\"" << T << "\" width=\"" << W - L - R << "\" height=\"" << H - T - B
      << "\" fill=\"none\" stroke=\"black\"/>\n";

    const double xs = tick_step(xmax - xmin, 6), ys = tick_step(ymax - ymin, 6);
    for (double x = std::ceil(xmin / xs) * xs; x <= xmax + 1e-9 * xs; x += xs) {
        o << "<line x1=\"" << sx(x) << "\" y1=\"" << H - B << "\" x2=\"" << sx(x) << "\" y2=\"" << H - B + 5
          << "\" stroke=\"black\"/><text x=\"" << sx(x) << "\" y=\"" << H - B + 18 << "\" text-anchor=\"middle\">"
          << fmt(x) << "</text>\n";
    }
    for (double y = std::ceil(ymin / ys) * ys; y <= ymax + 1e-9 * ys; y += ys) {
        o << "<line x1=\"" << L - 5 << "\" y1=\"" << sy(y) << "\" x2=\"" << L << "\" y2=\"" << sy(y)
          << "\" stroke=\"black\"/><text x=\"" << L - 8 << "\" y=\"" << sy(y) + 4 << "\" text-anchor=\"end\">"
          << fmt(y) << "</text>\n";
    }
    if (ymin < 0.0 && ymax > 0.0) {
        o << "<line x1=\"" << L << "\" y1=\"" << sy(0) << "\" x2=\"" << W - R << "\" y2=\"" << sy(0)
          << "\" stroke=\"#bbb\"/>\n";
    }
    o << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 12 << "\" text-anchor=\"middle\">" << panel.x_label
      << "</text>\n";
    o << "<text transform=\"translate(18," << (T + H - B) / 2 << ") rotate(-90)\" text-anchor=\"middle\">"
      << panel.y_label << "</text>\n";

    double legend_y = T + 16;
    for (const auto& c : panel.curves) {
        o << "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"1.2\"" << dash_attr(c.dash) << " points=\"";
        for (std::size_t i = 0; i < c.x.size(); ++i) o << sx(c.x[i]) << ',' << sy(c.y[i]) << ' ';
        o << "\"/>\n";
        o << "<line x1=\"" << W - R - 120 << "\" y1=\"" << legend_y << "\" x2=\"" << W - R - 90 << "\" y2=\""
          << legend_y << "\" stroke=\"black\"" << dash_attr(c.dash) << "/><text x=\"" << W - R - 84 << "\" y=\""
          << legend_y + 4 << "\">" << c.label << "</text>\n";
        legend_y += 16;
    }
    o << "</svg>\n";
    return o.str();
}

Panel panel_from_table(const Table& table, const std::string& title, const std::string& quantity, bool nonsecular) {
    Panel p;
    p.title = title;
    const auto& t = table.column("t");
    auto total = [&](const std::string& second, const std::string& fourth) {
        std::vector<double> v = table.column(second);
        const auto& iv = table.column(fourth);
        for (std::size_t i = 0; i < v.size(); ++i) v[i] += iv[i];
        return v;
    };
    if (table.has("G-II")) {
        if (nonsecular) {
            p.y_label = "nonsecular coefficients";
            p.curves.push_back({"alpha", t, total("alphaII", "alphaIV"), Dash::Solid});
            p.curves.push_back({"beta", t, total("betaII", "betaIV"), Dash::Dotted});
        } else {
            p.y_label = "rates";
            p.curves.push_back({"Gamma-", t, total("G-II", "G-IV"), Dash::DotDash});
            p.curves.push_back({"Gamma+", t, total("G+II", "G+IV"), Dash::Dotted});
            p.curves.push_back({"Gamma0", t, table.column("G0"), Dash::Solid});
        }
    } else if (table.has("sigma")) {
        const std::string q = quantity.empty() ? "sigma" : quantity;
        if (q != "sigma" && q != "g") throw std::invalid_argument("quantity must be sigma or g");
        p.y_label = q;
        p.curves.push_back({q, t, table.column(q), Dash::Solid});
    } else if (table.has("G") && table.has("chi")) {
        p.y_label = "G";
        p.curves.push_back({"G", t, table.column("G"), Dash::Solid});
    } else {
        throw std::invalid_argument("unrecognized CSV layout");
    }
    return p;
}

} // namespace nonmarkov::cli
