#include "magstark/pcf.hpp"

#include <cmath>
#include <stdexcept>

namespace magstark {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kSwitch = 12.0;  // erfc route below, asymptotic series above

void check_mu(int mu) {
  if (mu < 1 || mu > 3) throw std::invalid_argument("pcf: mu must be 1, 2 or 3");
}

// Asymptotic series sum for D_p(z), z >= kSwitch, p = -mu:
//   D_p(z) = e^{-z^2/4} z^p [ 1 - p(p-1)/(2z^2) + p(p-1)(p-2)(p-3)/(2*4*z^4) - ... ]
double asympt_series(int mu, double z) {
  const double p = -static_cast<double>(mu);
  const double z2 = z * z;
  double term = 1.0, sum = 1.0;
  for (int k = 0; k < 30; ++k) {
    const double next = term * (-(p - 2 * k) * (p - 2 * k - 1)) / (2.0 * (k + 1) * z2);
    if (std::abs(next) >= std::abs(term)) break;  // asymptotic tail turned
    term = next;
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return std::exp(-z2 / 4.0) * std::pow(z, p) * sum;
}

// D_{-1}, D_{-2}, D_{-3} for z >= 0.
void pcf_nonneg(double z, double out[3]) {
  double d1;
  if (z < kSwitch) {
    d1 = std::sqrt(kPi / 2.0) * std::exp(z * z / 4.0) * std::erfc(z / std::sqrt(2.0));
  } else {
    d1 = asympt_series(1, z);
  }
  const double d0 = std::exp(-z * z / 4.0);
  if (z < kSwitch) {
    out[0] = d1;
    out[1] = d0 - z * d1;             // D_{-2} = D_0 - z D_{-1}
    out[2] = 0.5 * (d1 - z * out[1]); // D_{-3} = (D_{-1} - z D_{-2})/2
  } else {
    // the recurrence cancels catastrophically at large z; use the series
    out[0] = d1;
    out[1] = asympt_series(2, z);
    out[2] = asympt_series(3, z);
  }
}

} // namespace

double pcf_D(int mu, double z) {
  check_mu(mu);
  if (!std::isfinite(z)) throw std::invalid_argument("pcf_D: z must be finite");
  double d[3];
  if (z >= 0) {
    pcf_nonneg(z, d);
    return d[mu - 1];
  }
  // Reflection to w = -z > 0; every term below is positive, so no cancellation.
  const double w = -z;
  pcf_nonneg(w, d);
  const double d1 = std::sqrt(2.0 * kPi) * std::exp(w * w / 4.0) - d[0];
  if (mu == 1) return d1;
  const double d2 = std::exp(-w * w / 4.0) + w * d1;
  if (mu == 2) return d2;
  return 0.5 * (d1 + w * d2);
}

double pcf_asymptotic_branch(int mu, double z) {
  check_mu(mu);
  static const double gamma_mu[] = {1.0, 1.0, 2.0};  // Gamma(1..3)
  if (z >= 0) return std::exp(-z * z / 4.0) * std::pow(z, -mu);
  const double w = -z;
  return std::sqrt(2.0 * kPi) / gamma_mu[mu - 1] * std::exp(w * w / 4.0) *
         std::pow(w, mu - 1);
}

double gaussian_tail(int mu, double bq, double c) {
  check_mu(mu);
  if (!(bq > 0)) throw std::invalid_argument("gaussian_tail: bq must be > 0");
  static const double gamma_mu[] = {1.0, 1.0, 2.0};
  const double s = std::sqrt(2.0 * bq);
  return std::pow(2.0 * bq, -0.5 * mu) * gamma_mu[mu - 1] *
         std::exp(c * c / (8.0 * bq)) * pcf_D(mu, c / s);
}

} // namespace magstark
