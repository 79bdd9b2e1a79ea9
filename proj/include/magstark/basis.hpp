#pragma once

// Truncated tensor Hermite basis: 1D oscillator functions, Gauss-Legendre
// panel quadrature, and the 1D ladder-operator matrices.

#include <Eigen/Core>

#include <string>
#include <vector>

namespace magstark {

struct BasisSpec {
  int Nx = 36;
  int Ny = 24;
  double lx = 1.0;   // oscillator length in x
  double ly = 1.0;   // oscillator length in y
  int Qx = 0;        // quadrature node budget, 0 = automatic (>= 2Nx enforced)
  int Qy = 0;
  int dense_cap = 2500;

  int dim() const { return Nx * Ny; }
  std::vector<std::string> check() const;
  void validate() const;

  /// lx = ly = 1/sqrt(B), the magnetic length.
  static BasisSpec for_field(double B, int Nx = 36, int Ny = 24);
};

/// Normalized Hermite functions phi_0..phi_{n-1} at point x, length scale l.
void hermite_values(int n, double x, double l, double* out);

/// phi_m(xs[q]) as an n x Q matrix.
Eigen::MatrixXd hermite_matrix(int n, const std::vector<double>& xs, double l);

/// Gauss-Legendre nodes and weights on [-1, 1]; cached per order.
struct GaussLegendre {
  std::vector<double> x, w;
};
const GaussLegendre& gauss_legendre(int n);

/// Composite Gauss-Legendre grid over consecutive panels [breaks_i, breaks_{i+1}].
struct QuadGrid {
  std::vector<double> x, w;
  int size() const { return static_cast<int>(x.size()); }
};
QuadGrid panel_grid(const std::vector<double>& breaks, int per_panel);

/// Uniform panel breakpoints covering [a, b] with spacing <= h.
std::vector<double> uniform_breaks(double a, double b, double h);

/// 1D ladder matrices in the standard Hermite convention:
///   X real symmetric tridiagonal, <m|x|n> = (l/sqrt2)(sqrt(n+1) d_{m,n+1} + sqrt(n) d_{m,n-1})
///   P = i * P_im with P_im real antisymmetric
///   X2, P2 the exact x^2 and p^2 blocks (pentadiagonal).
struct LadderMatrices {
  Eigen::MatrixXd X, X2, P2, P_im;
};
LadderMatrices ladder_matrices(int N, double l);

} // namespace magstark
