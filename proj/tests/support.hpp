// support.hpp — parameter sets shared by the test binaries

#pragma once

#include "nonmarkov/spectral.hpp"

#include <chrono>
#include <cmath>

namespace testing {

inline nonmarkov::spectral::SpectralParams narrow_bath() { return {1.0, 0.2, 2.0, 100.0}; }
inline nonmarkov::spectral::SpectralParams medium_bath() { return {1.0, 5.0, 50.0, 100.0}; }
inline nonmarkov::spectral::SpectralParams broad_bath() { return {1.0, 400.0, 10.0, 100.0}; }

inline double rel_err(double a, double b) { return std::abs(a - b) / std::abs(b); }

class Stopwatch {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_{std::chrono::steady_clock::now()};
};

} // namespace testing
