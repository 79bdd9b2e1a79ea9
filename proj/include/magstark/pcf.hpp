#pragma once

// Parabolic cylinder functions D_{-mu} for mu in {1,2,3} and the Gaussian
// tail integral int_0^inf t^{mu-1} e^{-b t^2 - c t} dt in closed form.

namespace magstark {

/// D_{-mu}(z) for mu in {1, 2, 3}, real z.  Positive for all real z.
/// Route: D_{-1} via the erfc identity, D_{-2}/D_{-3} by downward order
/// recurrence; asymptotic series beyond |z| = 12; negative z by reflection.
double pcf_D(int mu, double z);

/// Leading large-|z| branch of D_{-mu}:
///   z -> +inf : e^{-z^2/4} z^{-mu}
///   z -> -inf : sqrt(2 pi)/Gamma(mu) e^{z^2/4} |z|^{mu-1}
double pcf_asymptotic_branch(int mu, double z);

/// int_0^inf t^{mu-1} e^{-bq t^2 - c t} dt
///   = (2 bq)^{-mu/2} Gamma(mu) exp(c^2/(8 bq)) D_{-mu}(c/sqrt(2 bq)).
/// Throws std::invalid_argument if bq <= 0 or mu not in {1,2,3}.
double gaussian_tail(int mu, double bq, double c);

} // namespace magstark
