// presets.cpp — parameter sets and time windows of the reproduced figures

#include "presets.hpp"

#include <stdexcept>

namespace nonmarkov::cli {

spectral::SpectralParams panel_params(char panel) {
    spectral::SpectralParams p;
    p.gamma0 = 1.0;
    p.omega0 = 100.0;
    switch (panel) {
    case 'a': p.lambda = 0.2; p.delta = 2.0; break;
    case 'b': p.lambda = 5.0; p.delta = 50.0; break;
    case 'c': p.lambda = 400.0; p.delta = 10.0; break;
    default: throw std::invalid_argument(std::string("unknown panel '") + panel + "'");
    }
    return p;
}

double panel_window(char panel) {
    switch (panel) {
    case 'a': return 30.0;
    case 'b': return 1.5;
    case 'c': return 0.05;
    default: throw std::invalid_argument(std::string("unknown panel '") + panel + "'");
    }
}

std::optional<FigurePreset> find_preset(const std::string& id) {
    if (id.size() != 2) return std::nullopt;
    const char fig = id[0];
    char panel = id[1];
    if (fig == '1' && panel == 'd') panel = 'a';
    const bool ok = (fig == '1' || fig == '2' || fig == '3') && (panel == 'a' || panel == 'b' || panel == 'c');
    if (!ok) return std::nullopt;
    return FigurePreset{id, panel, panel_params(panel), panel_window(panel)};
}

std::vector<FigurePreset> figure4_presets() {
    std::vector<FigurePreset> out;
    for (char panel : {'a', 'b', 'c'}) {
        const auto p = panel_params(panel);
        out.push_back({std::string("4") + panel, panel, p, 2.0 / p.lambda});
    }
    return out;
}

} // namespace nonmarkov::cli
