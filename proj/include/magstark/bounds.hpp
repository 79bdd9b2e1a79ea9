#pragma once

// Decoupling-function families along both axes and grid verification of the
// closed-form pointwise bounds and smallness trends they obey.

#include "magstark/model.hpp"
#include "magstark/operators.hpp"

#include <json.hpp>

#include <complex>
#include <map>
#include <string>
#include <vector>

namespace magstark {

enum class JSelector {
  JMinus, JTildeMinus, J0, JTilde0, JPlus, JTildePlus,  // x axis, analytic in x
  JLess, JC, JGreater,                                  // y axis, C-inf
  JTildeLess, JTildeC, JTildeGreater                    // y axis, sharp indicators
};

const char* to_string(JSelector s);

/// Evaluate a decoupling function; x-family selectors continue to coord+ib
/// (domain error if gammaF*b >= pi/4), y-family selectors ignore b.
Complex eval_J(JSelector which, double coord, double b, const DerivedGeometry& geom);

struct CheckReport {
  std::string name;
  bool pass = false;
  double worst = 0;      // worst case of the check metric (see extras["metric"])
  double worst_at = 0;   // grid location of the worst case
  std::map<std::string, double> extras;
  nlohmann::json to_json() const;
};

/// |J_0(x+ib)| against its cosine-corrected exponential envelope on
/// [-4 x1, 4 x1].  Metric: max |J0| / bound, PASS iff <= 1 + 1e-12.
CheckReport check_j0_bound(const DerivedGeometry& geom, double b, int grid_n = 4096);

/// |h_F(x+ib)| against its closed-form envelope and |1 - h_F(x+ib)| against
/// the two-term tail bound, on [-3 xbar, 3 xbar].
CheckReport check_hF_bounds(const DerivedGeometry& geom, double b, int grid_n = 4096);

/// sup over the grid of |sum_{a in {-,0,+}} J_a(x+ib) Jt_a(x+ib) - 1|.
double partition_defect(const DerivedGeometry& geom, double b, int grid_n = 4096);

/// s(F) = sup_x |F x h_F(x)|; PASS iff s/F^eps spans less than 50% across the
/// list and s decreases with F.
CheckReport check_localfield_norm(const ScheduleParams& schedule,
                                  const std::vector<double>& F_list);

/// sup_x F |x| |1-h_F(x+ib)| |J_0(x+ib)| at the schedule b; PASS iff the
/// log-sup fits a line in F^{-2(1-eps)} with correlation <= -0.98.
CheckReport check_a2_product(const ScheduleParams& schedule,
                             const std::vector<double>& F_list, int grid_n = 4096);
double a2_product_sup(const DerivedGeometry& geom, double b, double F, int grid_n = 4096,
                      double* arg_sup = nullptr);

/// Same trend gate for the partition defect (correlation <= -0.99).
CheckReport check_partition_trend(const ScheduleParams& schedule,
                                  const std::vector<double>& F_list, int grid_n = 4096);

/// Row/column absolute-sum upper bound on the spectral norm.
double schur_norm_bound(const ComplexOperator& op);
double schur_norm_bound(const Eigen::MatrixXcd& M);

/// All checks over the given F list at the schedule b; structured report.
nlohmann::json verification_report(const ScheduleParams& schedule,
                                   const std::vector<double>& F_list,
                                   const std::vector<std::string>& selection = {});

} // namespace magstark
