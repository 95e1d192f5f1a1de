#pragma once
#include <vector>

namespace bandpoly {

/// Gauss-Legendre rule on [-1,1].
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Nodes/weights by Newton iteration on the Legendre polynomial; accurate to
/// machine precision for n up to several thousand.
GaussLegendre gauss_legendre(int n);

/// The same rule affinely mapped to [a,b].
GaussLegendre gauss_legendre(int n, double a, double b);

}  // namespace bandpoly
