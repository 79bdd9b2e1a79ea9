#pragma once

// Pointwise model evaluation: the impurity potential and its analytic
// continuation in x, the plateau cutoff h_F of the reference Hamiltonian,
// and the full local field term.  All functions here are pure.

#include <complex>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace magstark {

using Complex = std::complex<double>;

/// Physical field configuration.  b is the imaginary translation x -> x+ib.
struct FieldParams {
  double B = 1.0;  // magnetic field strength, > 0
  double F = 0.0;  // electric field strength, >= 0
  double b = 0.0;  // imaginary translation, >= 0

  std::vector<std::string> check() const;
  void validate() const;  // throws std::invalid_argument on violation
};

enum class PotentialKind { GaussianBump, GaussianGaussian };

const char* to_string(PotentialKind k);
PotentialKind potential_kind_from_string(const std::string& s);

/// Attractive impurity V(x,y) = -V0 exp(-nu x^2) g(y).
/// GaussianBump: g is the C-inf bump exp(1 - a1^2/(a1^2-y^2)) on |y|<a1, 0 outside.
/// GaussianGaussian: g(y) = exp(-y^2/a1^2), entire in both variables.
struct PotentialModel {
  PotentialKind kind = PotentialKind::GaussianGaussian;
  double V0 = 2.5;  // amplitude, > 0
  double nu = 1.0;  // x Gaussian rate, > 0
  double a0 = 1.0;  // x plateau half-width (envelope bookkeeping only)
  double a1 = 1.0;  // y support half-width (bump) or y width scale (gaussian)
  double beta = std::numeric_limits<double>::infinity();  // analyticity strip

  std::vector<std::string> check() const;
  void validate() const;

  double g(double y) const;                 // y profile on the real axis
  std::uint64_t hash() const;               // identity for operator metadata
};

/// F-dependent cut geometry.  Cut points scale as C/F^{1-eps}; the y cuts
/// move out like F^{-tau}.
struct ScheduleParams {
  double eps = 0.2;
  double gamma0 = 1.25;
  double Cbar = 0.9;
  double C0 = 0.45;
  double C1 = 0.6;
  double C2 = 0.3;
  double tau = 5.0;
  double alpha = 2.5;
  double b0 = 1.0;
  double a1 = 1.0;  // must match the active potential's a1

  std::vector<std::string> check() const;
  void validate() const;

  double b_schedule(double F) const;  // b = b0 F^alpha
};

/// Concrete cut points at a given F.
struct DerivedGeometry {
  double gammaF = 0;
  double xbar = 0, x0 = 0, x1 = 0, x2 = 0;
  double y2 = 0, y0 = 0, y1 = 0, ybar = 0;

  static DerivedGeometry from(const ScheduleParams& s, double F);

  std::vector<std::string> check() const;
  void validate() const;
};

/// h_F(x+ib), the smoothed plateau cutoff, continued in x.
/// Throws std::domain_error if gammaF*b >= pi/4 (outside the tanh strip).
Complex eval_hF(double x, double b, const DerivedGeometry& geom);

/// V(x+ib, y).  Throws std::domain_error if b >= model.beta.
Complex eval_potential(double x, double y, double b, const PotentialModel& model);

/// -F (x+ib) h_F(x+ib) chi_A(y), the local field term of the reference
/// Hamiltonian, continued in x.
Complex eval_local_field(double x, double y, double b, double F,
                         const DerivedGeometry& geom);

} // namespace magstark
