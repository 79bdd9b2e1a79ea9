#include "magstark/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace magstark {

namespace {

constexpr double kPi = 3.14159265358979323846;

void require_domain(double gammaF, double b) {
  if (!(gammaF * std::abs(b) < kPi / 4.0))
    throw std::domain_error("x-family continuation outside the tanh strip (gammaF*b >= pi/4)");
}

// 1/(1 + e^{-2(u+iv)}) without overflow; relative accuracy in both tails.
Complex half_step(double u, double v) {
  const Complex rot(std::cos(2.0 * v), std::sin(2.0 * v));
  if (u >= 0) {
    const Complex den = 1.0 + std::exp(-2.0 * u) * std::conj(rot);
    return 1.0 / den;
  }
  const Complex e = std::exp(2.0 * u) * rot;
  return e / (e + 1.0);
}

// (e^{2g c} - e^{-2g c}) / (e^{2g c} + e^{-2g c} + e^{2g(x+ib)} + e^{-2g(x+ib)})
// == (1/2)[tanh(g(x+c+ib)) - tanh(g(x-c+ib))], evaluated stably.
Complex plateau(double g, double c, double x, double b) {
  const double s1 = 2.0 * g * c;
  const double s3 = 2.0 * g * x;
  const double M = std::max(s1, std::abs(s3));
  const double e1 = std::exp(s1 - M);
  const double e1m = std::exp(-s1 - M);
  const double e3 = std::exp(s3 - M);
  const double e3m = std::exp(-s3 - M);
  const Complex rot(std::cos(2.0 * g * b), std::sin(2.0 * g * b));
  return (e1 - e1m) / (e1 + e1m + e3 * rot + e3m * std::conj(rot));
}

// C-inf ramp: 0 for t <= 0, 1 for t >= 1.
double smooth_ramp(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / t);
  const double bb = std::exp(-1.0 / (1.0 - t));
  return a / (a + bb);
}

// grid over [lo, hi], uniformly spaced plus log-refined clusters near the
// given feature points (transition widths are 1/gammaF << span)
std::vector<double> refined_grid(double lo, double hi, int n,
                                 const std::vector<double>& features, double gammaF) {
  std::vector<double> pts;
  pts.reserve(n + features.size() * 64);
  for (int i = 0; i < n; ++i) pts.push_back(lo + (hi - lo) * i / (n - 1.0));
  const double w0 = 1e-4 / gammaF, w1 = 30.0 / gammaF;
  for (double c : features) {
    for (int k = 0; k < 32; ++k) {
      const double off = w0 * std::pow(w1 / w0, k / 31.0);
      for (double s : {-1.0, 1.0}) {
        const double x = c + s * off;
        if (x > lo && x < hi) pts.push_back(x);
      }
    }
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

double pearson(const std::vector<double>& xs, const std::vector<double>& ys) {
  const size_t n = xs.size();
  double mx = 0, my = 0;
  for (size_t i = 0; i < n; ++i) { mx += xs[i]; my += ys[i]; }
  mx /= n; my /= n;
  double sxy = 0, sxx = 0, syy = 0;
  for (size_t i = 0; i < n; ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

} // namespace

const char* to_string(JSelector s) {
  switch (s) {
    case JSelector::JMinus: return "J-";
    case JSelector::JTildeMinus: return "Jt-";
    case JSelector::J0: return "J0";
    case JSelector::JTilde0: return "Jt0";
    case JSelector::JPlus: return "J+";
    case JSelector::JTildePlus: return "Jt+";
    case JSelector::JLess: return "J<";
    case JSelector::JC: return "Jc";
    case JSelector::JGreater: return "J>";
    case JSelector::JTildeLess: return "Jt<";
    case JSelector::JTildeC: return "Jtc";
    case JSelector::JTildeGreater: return "Jt>";
  }
  return "?";
}

Complex eval_J(JSelector which, double coord, double b, const DerivedGeometry& geom) {
  const double g = geom.gammaF;
  const double x = coord, y = coord;
  switch (which) {
    // x family: J_-(x) = (1/2)[1 + tanh(g(x - x2))] etc.
    case JSelector::JMinus:
      require_domain(g, b);
      return half_step(g * (x - geom.x2), g * b);
    case JSelector::JTildeMinus:
      require_domain(g, b);
      return half_step(g * (x - geom.x0), g * b);
    case JSelector::J0:
      require_domain(g, b);
      return plateau(g, geom.x1, x, b);
    case JSelector::JTilde0:
      require_domain(g, b);
      return plateau(g, geom.x0, x, b);
    case JSelector::JPlus:
      require_domain(g, b);
      return half_step(-g * (x + geom.x2), -g * b);
    case JSelector::JTildePlus:
      require_domain(g, b);
      return half_step(-g * (x + geom.x0), -g * b);
    // y family: width-1 C-inf transitions at the stated plateaus
    case JSelector::JLess: return smooth_ramp(-y - geom.y2);
    case JSelector::JC: return smooth_ramp(geom.y1 - std::abs(y));
    case JSelector::JGreater: return smooth_ramp(y - geom.y2);
    // sharp indicator partition: (-inf,-y0) / [-y0, y0] / (y0, inf)
    case JSelector::JTildeLess: return y < -geom.y0 ? 1.0 : 0.0;
    case JSelector::JTildeC: return std::abs(y) <= geom.y0 ? 1.0 : 0.0;
    case JSelector::JTildeGreater: return y > geom.y0 ? 1.0 : 0.0;
  }
  throw std::invalid_argument("eval_J: bad selector");
}

CheckReport check_j0_bound(const DerivedGeometry& geom, double b, int grid_n) {
  require_domain(geom.gammaF, b);
  const double g = geom.gammaF;
  const double cosb = std::cos(2.0 * g * b);
  auto grid = refined_grid(-4.0 * geom.x1, 4.0 * geom.x1, grid_n,
                           {-geom.x1, geom.x1}, g);
  CheckReport rep;
  rep.name = "j0_bound";
  double worst = 0, at = 0;
  for (double x : grid) {
    const double aJ = std::abs(plateau(g, geom.x1, x, b));
    const double expo = std::min(-2.0 * g * (std::abs(x) - geom.x1), 1.0);
    const double bound = std::exp(expo) / cosb;
    const double ratio = aJ / bound;
    if (ratio > worst) { worst = ratio; at = x; }
  }
  rep.worst = worst;
  rep.worst_at = at;
  rep.pass = worst <= 1.0 + 1e-12;
  rep.extras["metric"] = 0;  // 0 = ratio-to-bound
  rep.extras["grid_n"] = static_cast<double>(grid.size());
  rep.extras["span"] = 4.0 * geom.x1;
  rep.extras["b"] = b;
  return rep;
}

CheckReport check_hF_bounds(const DerivedGeometry& geom, double b, int grid_n) {
  require_domain(geom.gammaF, b);
  const double g = geom.gammaF;
  const double cosb = std::cos(2.0 * g * b);
  auto grid = refined_grid(-3.0 * geom.xbar, 3.0 * geom.xbar, grid_n,
                           {-geom.xbar, geom.xbar}, g);
  CheckReport rep;
  rep.name = "hF_bounds";
  double worst = 0, at = 0;
  for (double x : grid) {
    // |h_F(x+ib)| <= e^{2g xbar} / ([e^{2gx}+e^{-2gx}] cos 2gb + e^{2g xbar}+e^{-2g xbar})
    const double s1 = 2.0 * g * geom.xbar;
    const double s3 = 2.0 * g * x;
    const double M = std::max(s1, std::abs(s3));
    const double bound_h = std::exp(s1 - M) /
        ((std::exp(s3 - M) + std::exp(-s3 - M)) * cosb + std::exp(s1 - M) + std::exp(-s1 - M));
    const double ah = std::abs(plateau(g, geom.xbar, x, b));
    double ratio = ah / bound_h;
    if (ratio > worst) { worst = ratio; at = x; }

    // |1 - h_F(x+ib)| <= (e^{-4g(x-xbar)}+1)^{-1/2} + (e^{4g(x+xbar)}+1)^{-1/2}
    const Complex one_m_h = 1.0 - plateau(g, geom.xbar, x, b);
    auto inv_sqrt_term = [](double t) {
      // (e^t + 1)^{-1/2}
      if (t > 0) return std::exp(-0.5 * t) / std::sqrt(1.0 + std::exp(-t));
      return 1.0 / std::sqrt(std::exp(t) + 1.0);
    };
    const double h1 = inv_sqrt_term(-4.0 * g * (x - geom.xbar));
    const double h2 = inv_sqrt_term(4.0 * g * (x + geom.xbar));
    ratio = std::abs(one_m_h) / (h1 + h2);
    if (ratio > worst) { worst = ratio; at = x; }
  }
  rep.worst = worst;
  rep.worst_at = at;
  rep.pass = worst <= 1.0 + 1e-12;
  rep.extras["metric"] = 0;
  rep.extras["grid_n"] = static_cast<double>(grid.size());
  rep.extras["span"] = 3.0 * geom.xbar;
  rep.extras["b"] = b;
  return rep;
}

double partition_defect(const DerivedGeometry& geom, double b, int grid_n) {
  require_domain(geom.gammaF, b);
  auto grid = refined_grid(-3.0 * geom.xbar, 3.0 * geom.xbar, grid_n,
                           {-geom.x2, geom.x2, -geom.x0, geom.x0, -geom.x1, geom.x1}, geom.gammaF);
  double sup = 0;
  for (double x : grid) {
    const Complex s =
        eval_J(JSelector::JMinus, x, b, geom) * eval_J(JSelector::JTildeMinus, x, b, geom) +
        eval_J(JSelector::J0, x, b, geom) * eval_J(JSelector::JTilde0, x, b, geom) +
        eval_J(JSelector::JPlus, x, b, geom) * eval_J(JSelector::JTildePlus, x, b, geom);
    sup = std::max(sup, std::abs(s - 1.0));
  }
  return sup;
}

CheckReport check_localfield_norm(const ScheduleParams& schedule,
                                  const std::vector<double>& F_list) {
  if (F_list.empty()) throw std::invalid_argument("check_localfield_norm: empty F list");
  CheckReport rep;
  rep.name = "localfield_norm";
  double rmin = std::numeric_limits<double>::infinity(), rmax = 0;
  double s_at_fmin = 0, s_at_fmax = 0;
  double fmin = *std::min_element(F_list.begin(), F_list.end());
  double fmax = *std::max_element(F_list.begin(), F_list.end());
  for (double F : F_list) {
    const auto geom = DerivedGeometry::from(schedule, F);
    auto grid = refined_grid(0.0, 3.0 * geom.xbar, 2048, {geom.xbar}, geom.gammaF);
    double s = 0;
    for (double x : grid)
      s = std::max(s, std::abs(F * x * plateau(geom.gammaF, geom.xbar, x, 0.0).real()));
    const double r = s / std::pow(F, schedule.eps);
    rep.extras["s(" + std::to_string(F) + ")"] = s;
    rmin = std::min(rmin, r);
    rmax = std::max(rmax, r);
    if (F == fmin) s_at_fmin = s;
    if (F == fmax) s_at_fmax = s;
  }
  rep.worst = rmax / rmin;
  rep.pass = (rep.worst <= 1.5) && (s_at_fmin < s_at_fmax);
  rep.extras["metric"] = 1;  // 1 = ratio spread
  rep.extras["ratio_min"] = rmin;
  rep.extras["ratio_max"] = rmax;
  return rep;
}

double a2_product_sup(const DerivedGeometry& geom, double b, double F, int grid_n,
                      double* arg_sup) {
  require_domain(geom.gammaF, b);
  const double g = geom.gammaF;
  auto grid = refined_grid(-3.0 * geom.xbar, 3.0 * geom.xbar, grid_n,
                           {-geom.xbar, geom.xbar, -geom.x1, geom.x1}, g);
  double sup = 0, at = 0;
  for (double x : grid) {
    const double v = F * std::abs(x) * std::abs(1.0 - plateau(g, geom.xbar, x, b)) *
                     std::abs(plateau(g, geom.x1, x, b));
    if (v > sup) { sup = v; at = x; }
  }
  if (arg_sup) *arg_sup = at;
  return sup;
}

namespace {

CheckReport trend_report(const char* name, const ScheduleParams& schedule,
                         const std::vector<double>& F_list, double corr_gate,
                         const std::function<double(const DerivedGeometry&, double, double)>& sup_fn) {
  if (F_list.size() < 3)
    throw std::invalid_argument(std::string(name) + ": need at least 3 F values");
  CheckReport rep;
  rep.name = name;
  std::vector<double> us, logs;
  for (double F : F_list) {
    const auto geom = DerivedGeometry::from(schedule, F);
    const double b = schedule.b_schedule(F);
    const double s = sup_fn(geom, b, F);
    us.push_back(std::pow(F, -2.0 * (1.0 - schedule.eps)));
    logs.push_back(std::log(s));
    rep.extras["sup(" + std::to_string(F) + ")"] = s;
  }
  const double corr = pearson(us, logs);
  // slope via least squares
  double mx = 0, my = 0;
  for (size_t i = 0; i < us.size(); ++i) { mx += us[i]; my += logs[i]; }
  mx /= us.size(); my /= logs.size();
  double num = 0, den = 0;
  for (size_t i = 0; i < us.size(); ++i) {
    num += (us[i] - mx) * (logs[i] - my);
    den += (us[i] - mx) * (us[i] - mx);
  }
  rep.extras["slope"] = num / den;
  rep.extras["correlation"] = corr;
  rep.extras["metric"] = 2;  // 2 = correlation
  rep.worst = corr;
  rep.pass = corr <= corr_gate && num / den < 0;
  return rep;
}

} // namespace

CheckReport check_a2_product(const ScheduleParams& schedule,
                             const std::vector<double>& F_list, int grid_n) {
  return trend_report("a2_product", schedule, F_list, -0.98,
                      [grid_n](const DerivedGeometry& g, double b, double F) {
                        return a2_product_sup(g, b, F, grid_n);
                      });
}

CheckReport check_partition_trend(const ScheduleParams& schedule,
                                  const std::vector<double>& F_list, int grid_n) {
  return trend_report("partition_defect", schedule, F_list, -0.99,
                      [grid_n](const DerivedGeometry& g, double b, double) {
                        return partition_defect(g, b, grid_n);
                      });
}

double schur_norm_bound(const Eigen::MatrixXcd& M) {
  double row = 0, col = 0;
  for (Eigen::Index i = 0; i < M.rows(); ++i) row = std::max(row, M.row(i).cwiseAbs().sum());
  for (Eigen::Index j = 0; j < M.cols(); ++j) col = std::max(col, M.col(j).cwiseAbs().sum());
  return std::max(row, col);
}

double schur_norm_bound(const ComplexOperator& op) { return schur_norm_bound(op.M); }

nlohmann::json CheckReport::to_json() const {
  nlohmann::json j;
  j["name"] = name;
  j["pass"] = pass;
  j["worst"] = worst;
  j["worst_at"] = worst_at;
  for (const auto& [k, v] : extras) j[k] = v;
  return j;
}

nlohmann::json verification_report(const ScheduleParams& schedule,
                                   const std::vector<double>& F_list,
                                   const std::vector<std::string>& selection) {
  auto selected = [&](const std::string& n) {
    return selection.empty() ||
           std::find(selection.begin(), selection.end(), n) != selection.end();
  };
  nlohmann::json checks = nlohmann::json::array();
  if (selected("j0_bound") || selected("hF_bounds")) {
    for (double F : F_list) {
      const auto geom = DerivedGeometry::from(schedule, F);
      const double b = schedule.b_schedule(F);
      if (selected("j0_bound")) {
        auto r = check_j0_bound(geom, b);
        r.extras["F"] = F;
        checks.push_back(r.to_json());
      }
      if (selected("hF_bounds")) {
        auto r = check_hF_bounds(geom, b);
        r.extras["F"] = F;
        checks.push_back(r.to_json());
      }
    }
  }
  if (selected("localfield_norm")) checks.push_back(check_localfield_norm(schedule, F_list).to_json());
  if (selected("partition_defect")) checks.push_back(check_partition_trend(schedule, F_list).to_json());
  if (selected("a2_product")) checks.push_back(check_a2_product(schedule, F_list).to_json());

  bool all_pass = true;
  for (const auto& c : checks) all_pass = all_pass && c.at("pass").get<bool>();

  nlohmann::json out;
  out["F_list"] = F_list;
  out["schedule"] = {{"eps", schedule.eps},   {"gamma0", schedule.gamma0},
                     {"Cbar", schedule.Cbar}, {"C0", schedule.C0},
                     {"C1", schedule.C1},     {"C2", schedule.C2},
                     {"tau", schedule.tau},   {"alpha", schedule.alpha},
                     {"b0", schedule.b0},     {"a1", schedule.a1}};
  out["checks"] = checks;
  out["all_pass"] = all_pass;
  return out;
}

} // namespace magstark
