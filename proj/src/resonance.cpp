#include "magstark/resonance.hpp"

#include "magstark/log.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace magstark {

namespace {

double landau_gap(double lambda, double B) {
  // distance to the nearest (2n+1)B, n >= 0
  if (lambda <= B) return B - lambda;
  const double k = std::round((lambda / B - 1.0) / 2.0);
  double best = std::numeric_limits<double>::infinity();
  for (double n : {k - 1, k, k + 1}) {
    if (n < 0) continue;
    best = std::min(best, std::abs(lambda - (2 * n + 1) * B));
  }
  return best;
}

double window_halfwidth(double F, double gap, const ResonanceOptions& opts) {
  const double wf = F > 0 ? std::pow(F, 0.5 * opts.eps) : 1.0;
  return std::min(opts.window_c * wf, 0.8 * gap);
}

} // namespace

const char* to_string(LocateStatus s) {
  switch (s) {
    case LocateStatus::Ok: return "ok";
    case LocateStatus::Unresolved: return "unresolved";
    default: return "not-found";
  }
}

std::vector<ImpurityLevel> unperturbed_levels(double B, const PotentialModel& model,
                                              const BasisSpec& basis,
                                              const ResonanceOptions& opts) {
  FieldParams f0{B, 0.0, 0.0};
  ComplexOperator H0 = assemble_H(f0, model, basis);
  RealEig eig = eig_real_symmetric(H0.M.real(), /*vectors=*/true);

  const double cut = 0.5 * B * std::min(basis.Nx, basis.Ny);
  const double loc_cut = 0.25 * (basis.Nx + basis.Ny);

  std::vector<double> kept;
  for (int i = 0; i < eig.values.size(); ++i) {
    const double lambda = eig.values(i);
    if (lambda >= cut) break;
    if (landau_gap(lambda, B) <= opts.gap_delta * B) continue;
    // localization: mean total mode index of the eigenvector
    double mean_idx = 0;
    for (int k = 0; k < basis.dim(); ++k) {
      const double c2 = eig.vectors(k, i) * eig.vectors(k, i);
      mean_idx += c2 * (k / basis.Ny + k % basis.Ny);
    }
    if (mean_idx > loc_cut) continue;
    kept.push_back(lambda);
  }

  std::vector<ImpurityLevel> levels;
  for (size_t i = 0; i < kept.size();) {
    size_t j = i + 1;
    while (j < kept.size() && kept[j] - kept[j - 1] < opts.degeneracy_tol) ++j;
    double mean = 0;
    for (size_t k = i; k < j; ++k) mean += kept[k];
    mean /= static_cast<double>(j - i);
    levels.push_back({mean, static_cast<int>(j - i), landau_gap(mean, B)});
    i = j;
  }
  return levels;
}

std::complex<double> locate_in_spectrum(const std::vector<std::complex<double>>& eigs,
                                        const ImpurityLevel& seed, double F, double bF,
                                        const ResonanceOptions& opts) {
  const double w = window_halfwidth(F, seed.gap_to_landau, opts);
  const double im_min = -0.5 * std::max(bF, 1e-9);
  const std::complex<double>* best = nullptr;
  double best_d = std::numeric_limits<double>::infinity();
  for (const auto& z : eigs) {
    if (z.imag() <= im_min) continue;
    const double d = std::abs(z.real() - seed.e_alpha);
    if (d > w) continue;
    if (d < best_d) {
      best_d = d;
      best = &z;
    }
  }
  if (!best) {
    std::ostringstream os;
    os << "no eigenvalue in the window [" << seed.e_alpha - w << ", " << seed.e_alpha + w
       << "] x (" << im_min << ", 0]: basis too small, b too small, or the level "
       << "dissolved into a Landau cluster";
    throw NotFoundError(os.str());
  }
  return *best;
}

ResonanceEstimate locate_resonance(const FieldParams& fields, const PotentialModel& model,
                                   const BasisSpec& basis, const ImpurityLevel& seed,
                                   const ResonanceOptions& opts) {
  fields.validate();
  const double bF = fields.F * fields.b;

  ComplexOperator H = assemble_H(fields, model, basis);
  const double hmax = H.max_abs();
  const std::vector<std::complex<double>> eigs = eig_values(H.M);
  const std::complex<double> E = locate_in_spectrum(eigs, seed, fields.F, bF, opts);

  ResonanceEstimate est;
  est.E = E;
  est.e_alpha_seed = seed.e_alpha;
  est.Gamma = -2.0 * E.imag();
  est.continuum_gap = E.imag() + bF;
  const double floor = opts.noise_floor_rel * hmax;
  est.tau = est.Gamma > floor ? 1.0 / est.Gamma : std::numeric_limits<double>::infinity();

  auto relocate = [&](const FieldParams& f2, const BasisSpec& b2,
                      std::optional<std::complex<double>>& out) {
    try {
      ComplexOperator H2 = assemble_H(f2, model, b2);
      out = locate_in_spectrum(eig_values(H2.M), seed, f2.F, f2.F * f2.b, opts);
    } catch (const NotFoundError&) {
      out.reset();
    }
  };

  std::optional<std::complex<double>> E2b, EN;
  FieldParams f2 = fields;
  f2.b = 2.0 * fields.b;
  relocate(f2, basis, E2b);
  BasisSpec bumped = basis;
  bumped.Nx += opts.basis_bump;
  bumped.Ny += opts.basis_bump;
  relocate(fields, bumped, EN);

  const double nan = std::numeric_limits<double>::quiet_NaN();
  est.delta_b = E2b ? std::abs(E - *E2b) : nan;
  est.delta_N = EN ? std::abs(E - *EN) : nan;

  // acceptance order: noise floor, strip, b-doubling, basis bump, continuum
  est.status = LocateStatus::Ok;
  const double strip_tol = 1e-12 * hmax;
  if (est.Gamma <= floor) {
    est.status = LocateStatus::Unresolved;
    est.diagnostic = "width at or below the noise floor";
    est.tau = std::numeric_limits<double>::infinity();
  } else if (E.imag() > strip_tol || E.imag() <= -bF - strip_tol) {
    est.status = LocateStatus::Unresolved;
    est.diagnostic = "eigenvalue outside the strip -bF < Im E <= 0";
  } else if (!E2b || est.delta_b > std::max(0.1 * est.Gamma, opts.delta_b_floor)) {
    est.status = LocateStatus::Unresolved;
    est.diagnostic = E2b ? "b-doubling moved the eigenvalue by more than 0.1*Gamma"
                         : "b-doubling run lost the resonance";
  } else if (!EN || est.delta_N > std::max(0.1 * est.Gamma, opts.delta_N_floor)) {
    est.status = LocateStatus::Unresolved;
    est.diagnostic = EN ? "basis bump moved the eigenvalue by more than 0.1*Gamma"
                        : "basis-bump run lost the resonance";
  } else if (est.continuum_gap < opts.continuum_frac * bF) {
    est.status = LocateStatus::NotFound;
    est.diagnostic = "continuum separation below 0.4*bF; estimate flagged";
  }
  return est;
}

std::pair<double, double> width_and_lifetime(const ResonanceEstimate& est) {
  return {est.Gamma, est.tau};
}

H2Report h2_crosscheck(const FieldParams& fields, const PotentialModel& model,
                       const ScheduleParams& schedule, const BasisSpec& basis,
                       const ImpurityLevel& seed, const ResonanceOptions& opts) {
  H2Report rep;
  rep.e_alpha = seed.e_alpha;

  FieldParams f0 = fields;
  f0.b = 0.0;
  ComplexOperator H2_0 = assemble_H2(f0, model, schedule, basis);
  RealEig e0 = eig_real_symmetric(H2_0.M.real());
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < e0.values.size(); ++i) {
    const double d = std::abs(e0.values(i) - seed.e_alpha);
    if (d < best) {
      best = d;
      rep.lambda0 = e0.values(i);
    }
  }
  rep.envelope_dev = std::abs(rep.lambda0 - seed.e_alpha);
  rep.envelope_ratio =
      fields.F > 0 ? rep.envelope_dev / std::pow(fields.F, schedule.eps) : 0.0;

  ComplexOperator H2b = assemble_H2(fields, model, schedule, basis);
  rep.h2_max_abs = H2b.max_abs();
  std::vector<EigenPair> pairs = eig_dense(H2b);

  const double w = window_halfwidth(fields.F, seed.gap_to_landau, opts);
  const EigenPair* nearest = nullptr;
  double dmin = std::numeric_limits<double>::infinity();
  for (const auto& p : pairs) {
    if (std::abs(p.lambda.real() - seed.e_alpha) <= w)
      rep.max_im_in_window = std::max(rep.max_im_in_window, std::abs(p.lambda.imag()));
    const double d = std::abs(p.lambda - std::complex<double>(rep.lambda0, 0.0));
    if (d < dmin) {
      dmin = d;
      nearest = &p;
    }
  }
  if (nearest) rep.pairing = dmin;

  if (fields.F > 0 && fields.b > 0 && nearest) {
    ComplexOperator H = assemble_H(fields, model, basis);
    std::vector<EigenPair> hp = eig_dense(H);
    const EigenPair* hres = nullptr;
    double hd = std::numeric_limits<double>::infinity();
    const double bF = fields.F * fields.b;
    for (const auto& p : hp) {
      if (p.lambda.imag() <= -0.5 * std::max(bF, 1e-9)) continue;
      const double d = std::abs(p.lambda.real() - seed.e_alpha);
      if (d <= w && d < hd) {
        hd = d;
        hres = &p;
      }
    }
    if (hres) rep.overlap = std::abs(nearest->v.dot(hres->v));
  } else if (fields.F == 0.0) {
    rep.overlap = 1.0;  // H2 = H exactly
  }
  return rep;
}

} // namespace magstark
