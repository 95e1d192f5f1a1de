#pragma once
#include <Eigen/Dense>
#include <complex>
#include <cstdint>

namespace bandpoly {

/// One-dimensional band variance profile J = (1 - w^2 Laplacian)^{-1} with
/// Neumann (reflecting) boundary conditions on n sites.  Rows of J sum to 1.
struct BandProfile {
  int n = 0;
  double w = 0.0;
  Eigen::MatrixXd j;    ///< variance profile J_{jk}
  Eigen::MatrixXd amp;  ///< entry amplitudes sqrt(J_{jk}/2)
};

/// Discrete Neumann Laplacian stencil L (as a positive matrix -Delta):
/// diagonal (1,2,...,2,1), off-diagonals -1.
Eigen::MatrixXd neumann_stencil(int n);

/// Solves (I + w^2 L) J = I column-by-column with the Thomas algorithm.
/// Throws std::invalid_argument for n < 1 or w <= 0.
BandProfile build_profile(int n, double w);

/// Draws one n x n complex Gaussian matrix with E|H_jk|^2 = J_jk,
/// H_jk = sqrt(J_jk/2) (g1 + i g2).  Entry (j,k) consumes the counter-based
/// stream keyed by (seed, j, k) at counter sample_index, so the same
/// (seed, sample_index) produces coupled noise across different profiles
/// (common random numbers across a w-grid).
Eigen::MatrixXcd sample_matrix(const BandProfile& profile, std::uint64_t seed,
                               std::uint64_t sample_index = 0);

}  // namespace bandpoly
