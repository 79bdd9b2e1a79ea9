#include "magstark/model.hpp"

#include <cmath>
#include <cstring>
#include <sstream>
#include <stdexcept>

namespace magstark {

namespace {

constexpr double kPi = 3.14159265358979323846;

void throw_if(const std::vector<std::string>& errs, const char* what) {
  if (errs.empty()) return;
  std::ostringstream os;
  os << what << ": ";
  for (size_t i = 0; i < errs.size(); ++i) {
    if (i) os << "; ";
    os << errs[i];
  }
  throw std::invalid_argument(os.str());
}

} // namespace

std::vector<std::string> FieldParams::check() const {
  std::vector<std::string> errs;
  if (!(B > 0)) errs.push_back("B must be > 0");
  if (!(F >= 0)) errs.push_back("F must be >= 0");
  if (!(b >= 0)) errs.push_back("b must be >= 0");
  return errs;
}

void FieldParams::validate() const { throw_if(check(), "FieldParams"); }

const char* to_string(PotentialKind k) {
  return k == PotentialKind::GaussianBump ? "gaussian-bump" : "gaussian-gaussian";
}

PotentialKind potential_kind_from_string(const std::string& s) {
  if (s == "gaussian-bump") return PotentialKind::GaussianBump;
  if (s == "gaussian-gaussian") return PotentialKind::GaussianGaussian;
  throw std::invalid_argument("unknown potential kind '" + s + "'");
}

std::vector<std::string> PotentialModel::check() const {
  std::vector<std::string> errs;
  if (!(V0 > 0)) errs.push_back("V0 must be > 0");
  if (!(nu > 0)) errs.push_back("nu must be > 0");
  if (!(a0 > 0)) errs.push_back("a0 must be > 0");
  if (!(a1 > 0)) errs.push_back("a1 must be > 0");
  if (!(beta > 0)) errs.push_back("beta must be > 0");
  return errs;
}

void PotentialModel::validate() const { throw_if(check(), "PotentialModel"); }

double PotentialModel::g(double y) const {
  if (kind == PotentialKind::GaussianBump) {
    const double r = y / a1;
    if (std::abs(r) >= 1.0) return 0.0;
    return std::exp(1.0 - 1.0 / (1.0 - r * r));
  }
  const double r = y / a1;
  return std::exp(-r * r);
}

std::uint64_t PotentialModel::hash() const {
  // FNV-1a over the defining parameters.
  auto mix = [](std::uint64_t h, std::uint64_t v) {
    h ^= v;
    return h * 1099511628211ULL;
  };
  std::uint64_t h = 14695981039346656037ULL;
  auto bits = [](double x) {
    std::uint64_t u;
    static_assert(sizeof(u) == sizeof(x));
    std::memcpy(&u, &x, sizeof(u));
    return u;
  };
  h = mix(h, static_cast<std::uint64_t>(kind));
  h = mix(h, bits(V0));
  h = mix(h, bits(nu));
  h = mix(h, bits(a0));
  h = mix(h, bits(a1));
  h = mix(h, bits(beta));
  return h;
}

std::vector<std::string> ScheduleParams::check() const {
  std::vector<std::string> errs;
  if (!(eps > 0 && eps < 1)) errs.push_back("eps must be in (0,1)");
  if (!(gamma0 > 0)) errs.push_back("gamma0 must be > 0");
  if (!(C2 > 0)) errs.push_back("C2 must be > 0");
  if (!(C2 < C0)) errs.push_back("C2 >= C0 violates x2 < x0 ordering");
  if (!(C0 < C1)) errs.push_back("C0 >= C1 violates x0 < x1 ordering");
  if (!(C1 < Cbar)) errs.push_back("C1 >= Cbar violates x1 < xbar ordering");
  if (!(alpha > 2)) errs.push_back("alpha must be > 2");
  if (!(tau > alpha + 2)) errs.push_back("tau must be > alpha + 2");
  if (!(b0 > 0)) errs.push_back("b0 must be > 0");
  if (!(a1 > 0)) errs.push_back("a1 must be > 0");
  return errs;
}

void ScheduleParams::validate() const { throw_if(check(), "ScheduleParams"); }

double ScheduleParams::b_schedule(double F) const { return b0 * std::pow(F, alpha); }

DerivedGeometry DerivedGeometry::from(const ScheduleParams& s, double F) {
  if (!(F > 0)) throw std::invalid_argument("DerivedGeometry requires F > 0");
  const double scale = std::pow(F, -(1.0 - s.eps));
  const double ytick = std::pow(F, -s.tau);
  DerivedGeometry g;
  g.gammaF = s.gamma0 * scale;
  g.xbar = s.Cbar * scale;
  g.x0 = s.C0 * scale;
  g.x1 = s.C1 * scale;
  g.x2 = s.C2 * scale;
  g.y2 = s.a1 + 1.0;
  g.y0 = g.y2 + ytick + 1.0;
  g.y1 = g.y0 + ytick + 1.0;
  g.ybar = g.y1 + ytick;
  return g;
}

std::vector<std::string> DerivedGeometry::check() const {
  std::vector<std::string> errs;
  if (!(gammaF > 0)) errs.push_back("gammaF must be > 0");
  for (double v : {xbar, x0, x1, x2, y2, y0, y1, ybar})
    if (!(v > 0)) { errs.push_back("cut points must be positive"); break; }
  if (!(x2 < x0 && x0 < x1 && x1 < xbar)) errs.push_back("x ordering x2 < x0 < x1 < xbar violated");
  if (!(y2 < y0 && y0 < y1 && y1 < ybar)) errs.push_back("y ordering y2 < y0 < y1 < ybar violated");
  return errs;
}

void DerivedGeometry::validate() const { throw_if(check(), "DerivedGeometry"); }

Complex eval_hF(double x, double b, const DerivedGeometry& geom) {
  const double g = geom.gammaF;
  if (!(g * std::abs(b) < kPi / 4.0))
    throw std::domain_error("eval_hF: gammaF*b >= pi/4, outside the tanh analyticity strip");
  // h_F(x+ib) = (e^{2g xbar} - e^{-2g xbar}) /
  //             (e^{2g xbar} + e^{-2g xbar} + e^{2g(x+ib)} + e^{-2g(x+ib)})
  // evaluated with the largest exponent factored out, so huge g*xbar cannot
  // overflow and the far tails keep full relative accuracy.
  const double s1 = 2.0 * g * geom.xbar;
  const double s3 = 2.0 * g * x;
  const double M = std::max(s1, std::abs(s3));
  const double e1 = std::exp(s1 - M);
  const double e1m = std::exp(-s1 - M);
  const double e3 = std::exp(s3 - M);
  const double e3m = std::exp(-s3 - M);
  const double phi = 2.0 * g * b;
  const Complex rot(std::cos(phi), std::sin(phi));
  const double num = e1 - e1m;
  const Complex den = e1 + e1m + e3 * rot + e3m * std::conj(rot);
  return num / den;
}

Complex eval_potential(double x, double y, double b, const PotentialModel& model) {
  if (!(b < model.beta))
    throw std::domain_error("eval_potential: b >= beta, outside the analyticity strip of V");
  const double gy = model.g(y);
  if (gy == 0.0) return Complex(0.0, 0.0);
  // -V0 e^{-nu (x+ib)^2} g(y) = -V0 e^{nu b^2 - nu x^2} e^{-2 i nu b x} g(y)
  const double mag = -model.V0 * std::exp(model.nu * (b * b - x * x)) * gy;
  const double phi = -2.0 * model.nu * b * x;
  return Complex(mag * std::cos(phi), mag * std::sin(phi));
}

Complex eval_local_field(double x, double y, double b, double F,
                         const DerivedGeometry& geom) {
  if (std::abs(y) > geom.ybar) return Complex(0.0, 0.0);
  return -F * Complex(x, b) * eval_hF(x, b, geom);
}

} // namespace magstark
