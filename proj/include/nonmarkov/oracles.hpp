// oracles.hpp — slow, independent reference computations for cross-checking the main numerics

#pragma once

#include "nonmarkov/dynamics.hpp"
#include "nonmarkov/spectral.hpp"
#include "nonmarkov/tcl_coefficients.hpp"

#include <Eigen/Dense>

#include <utility>
#include <vector>

namespace nonmarkov::oracles {

using dynamics::BlochVector;

// Matrix index 0 is the excited level |1>, index 1 the ground level |0>, so sigma_z = diag(1, -1).
using Density = Eigen::Matrix2cd;
using ChoiState = Eigen::Matrix4cd;  // system (x) ancilla, system index major

Density density_from_bloch(const BlochVector& b);
BlochVector bloch_from_density(const Density& rho);

// The time-local generator at one instant, assembled from the operator form of the master
// equation (Lamb-shift Hamiltonian, secular and nonsecular dissipators) with coefficient totals.
Density apply_generator(const tcl::CoefficientSet& coeffs, const Density& rho);

// (|01> + |10>)/sqrt(2), projected.
ChoiState choi_state();

// (|| [1 + eps (L (x) 1)] |Phi><Phi| ||_1 - 1) / eps. With `richardson`, returns
// 2 f(eps/2) - f(eps). Throws std::invalid_argument unless 0 < eps <= 1e-3.
double choi_g_oracle(const tcl::CoefficientSet& coeffs, double eps = 1e-6, bool richardson = false);

// Midpoint sum over the n^3 cells of [0, t]^3 restricted to t >= t1 >= t2 >= t3, with weight 1/2
// on cells cut once by the ordering and 1/6 on the diagonal cells. The integrands are written out
// directly rather than taken from the product tables the main path uses. Requires n >= 50.
double simplex_riemann_oracle(double t, const spectral::CorrelationKernels& kernels, double omega0,
                              tcl::Selector which, int n);

// Midpoint sum for the second-order coefficient of `which` (0 for Γ0, which has none).
double tcl2_riemann_oracle(double t, const spectral::CorrelationKernels& kernels, double omega0,
                           tcl::Selector which, int steps = 100000);

// c(t), s(t) of the full-line Lorentzian by direct integration of the density: sinh-mapped
// Gauss panels of bounded phase on the core, Fourier-type quadrature on the two tails.
std::pair<double, double> lorentzian_kernel_oracle(double t, const spectral::SpectralParams& params);

// dD/dt of the trace distance along two trajectories: centred differences inside, one-sided
// at the ends. Throws std::invalid_argument on mismatched lengths or fewer than three points.
std::vector<double> finite_difference_sigma(const std::vector<BlochVector>& first,
                                            const std::vector<BlochVector>& second,
                                            const std::vector<double>& grid);

} // namespace nonmarkov::oracles
