// presets.hpp — parameter sets and time windows of the reproduced figures

#pragma once

#include "nonmarkov/spectral.hpp"

#include <optional>
#include <string>
#include <vector>

namespace nonmarkov::cli {

struct FigurePreset {
    std::string id;      // "1a", "2c", ...
    char panel;          // 'a', 'b', 'c' (1d shares the parameters of 1a)
    spectral::SpectralParams params;
    double t_max;
};

// Parameters of panel a/b/c: omega0 = 100 gamma0, gamma0 = 1.
spectral::SpectralParams panel_params(char panel);

// Window of figures 1-3 for a panel: 30, 1.5 and 0.05. Figure 4 uses [0, 2/lambda].
double panel_window(char panel);

// "1a".."1d", "2a".."2c", "3a".."3c". Figure 4 is expanded by the caller into panels a-c.
std::optional<FigurePreset> find_preset(const std::string& id);

std::vector<FigurePreset> figure4_presets();

} // namespace nonmarkov::cli
