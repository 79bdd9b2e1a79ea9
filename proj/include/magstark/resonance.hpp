#pragma once

// Resonance identification: impurity levels of H(0), the eigenvalue of
// H(F, ib) continuing a level, width/lifetime, and stability diagnostics.

#include "magstark/eig.hpp"
#include "magstark/operators.hpp"

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace magstark {

struct ImpurityLevel {
  double e_alpha = 0;
  int multiplicity = 1;
  double gap_to_landau = 0;
};

struct ResonanceOptions {
  double window_c = 0.5;          // window half-width = min(window_c F^{eps/2}, 0.8 gap)
  double eps = 0.2;               // exponent used by the window scale
  double gap_delta = 0.1;         // min gap to Landau levels, units of B
  double noise_floor_rel = 1e-12; // Gamma floor = rel * max|H|
  double continuum_frac = 0.4;    // require continuum_gap >= frac * bF
  double degeneracy_tol = 1e-6;
  int basis_bump = 4;
  double delta_b_floor = 1e-10;   // |E(b)-E(2b)| <= max(0.1 Gamma, floor)
  double delta_N_floor = 1e-8;    // |E(N)-E(N+4)| <= max(0.1 Gamma, floor)
};

enum class LocateStatus { Ok, Unresolved, NotFound };

const char* to_string(LocateStatus s);

struct ResonanceEstimate {
  std::complex<double> E{0, 0};
  double Gamma = 0;
  double tau = 0;
  double e_alpha_seed = 0;
  double delta_b = 0;
  double delta_N = 0;
  double continuum_gap = 0;
  LocateStatus status = LocateStatus::NotFound;
  std::string diagnostic;
};

class NotFoundError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Discrete levels of H(0) = H_L + V: eigenvalues at distance > gap_delta*B
/// from every Landau level (2n+1)B, restricted to the reliable lower part of
/// the truncated spectrum and to spatially localized eigenvectors.
std::vector<ImpurityLevel> unperturbed_levels(double B, const PotentialModel& model,
                                              const BasisSpec& basis,
                                              const ResonanceOptions& opts = {});

/// The eigenvalue of the window [e_a - w, e_a + w] x (above the shifted
/// continuum band) closest in Re to the seed.  Throws NotFoundError when the
/// window is empty.
std::complex<double> locate_in_spectrum(const std::vector<std::complex<double>>& eigs,
                                        const ImpurityLevel& seed, double F, double bF,
                                        const ResonanceOptions& opts = {});

/// Full estimate at fields.b: solves H(F, ib), locates the resonance, then
/// re-solves at 2b and at a bumped basis (+4 on both axes) for the stability
/// fields.  Throws NotFoundError only if the base solve finds nothing.
ResonanceEstimate locate_resonance(const FieldParams& fields, const PotentialModel& model,
                                   const BasisSpec& basis, const ImpurityLevel& seed,
                                   const ResonanceOptions& opts = {});

/// (Gamma, tau); tau = +inf when Gamma is at or below the noise floor.
std::pair<double, double> width_and_lifetime(const ResonanceEstimate& est);

struct H2Report {
  double e_alpha = 0;
  double lambda0 = 0;          // eigenvalue of H2(F, 0) continuing e_alpha
  double max_im_in_window = 0; // max |Im| of H2(F, ib) eigenvalues in the window
  double pairing = 0;          // |lambda(ib) - lambda(0)|
  double envelope_dev = 0;     // |lambda0 - e_alpha|
  double envelope_ratio = 0;   // envelope_dev / F^eps
  double overlap = 0;          // |<v_H2(ib), v_H(ib)>|
  double h2_max_abs = 0;       // max |H2| entry, for relative gates
};

/// Reality and projector-proximity cross-check of the reference Hamiltonian.
H2Report h2_crosscheck(const FieldParams& fields, const PotentialModel& model,
                       const ScheduleParams& schedule, const BasisSpec& basis,
                       const ImpurityLevel& seed, const ResonanceOptions& opts = {});

} // namespace magstark
