#pragma once

// Dense operator assembly in the truncated tensor Hermite basis.
//
// Phase convention: the y modes carry an i^n phase relative to the raw
// Hermite functions.  With that twist the cross term 2B y p_x assembles as a
// real symmetric matrix, so every Hamiltonian built here is real symmetric at
// b = 0 and complex symmetric (M = M^T) for b > 0.  Matrices of even
// functions of y stay real; their entries pick up a (-1)^{(m-n)/2} sign on
// even index offsets and vanish on odd offsets.

#include "magstark/basis.hpp"
#include "magstark/model.hpp"

#include <Eigen/Core>

#include <complex>
#include <cstdint>
#include <functional>
#include <string>

namespace magstark {

struct OperatorMeta {
  double B = 0, F = 0, b = 0;
  std::uint64_t model_hash = 0;
  BasisSpec basis;
  std::string label;
};

struct ComplexOperator {
  Eigen::MatrixXcd M;
  OperatorMeta meta;

  int dim() const { return static_cast<int>(M.rows()); }
  double max_abs() const;
  double symmetry_defect() const;   // max |M - M^T| entry
  double hermiticity_defect() const;  // max |M - M^dagger| entry
};

Eigen::MatrixXd kron(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B);
Eigen::MatrixXcd kron(const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& B);

/// S_mn = int phi_m(x) f(x) phi_n(x) dx over the given panels (symmetrized).
Eigen::MatrixXcd weighted_block_1d(const std::function<std::complex<double>(double)>& f,
                                   int N, double l, const std::vector<double>& breaks,
                                   int per_panel = 14);

/// Same for a real even function of y, stored in the rephased y convention.
Eigen::MatrixXd y_even_block(const std::function<double(double)>& g, int N, double l,
                             const std::vector<double>& breaks, int per_panel = 14);

/// Landau Hamiltonian H_L = (p_x + B y)^2 + p_y^2; real symmetric content.
ComplexOperator assemble_HL(const BasisSpec& basis, double B);

/// H(F, ib) = H_L - F x - i F b + V(x+ib, y).
ComplexOperator assemble_H(const FieldParams& fields, const PotentialModel& model,
                           const BasisSpec& basis);

/// H_2(F, ib) = H_L + V(x+ib, y) - F (x+ib) h_F(x+ib) chi_A(y).
ComplexOperator assemble_H2(const FieldParams& fields, const PotentialModel& model,
                            const ScheduleParams& schedule, const BasisSpec& basis);
ComplexOperator assemble_H2(const FieldParams& fields, const PotentialModel& model,
                            const DerivedGeometry& geom, const BasisSpec& basis);

/// Tensor potential block V(x+ib, y) alone.
ComplexOperator potential_operator(const PotentialModel& model, double b,
                                   const BasisSpec& basis);

/// Tensor local-field block -F (x+ib) h_F(x+ib) chi_A(y) alone.
ComplexOperator local_field_operator(double F, double b, const DerivedGeometry& geom,
                                     const BasisSpec& basis);

/// Binary dump: 16-byte header (u64 dim, u64 flags, bit0 = real at b=0),
/// then dim*dim row-major little-endian f64 pairs (re, im).  Debugging aid.
void dump_operator(const ComplexOperator& op, const std::string& path);
Eigen::MatrixXcd load_operator_matrix(const std::string& path);

} // namespace magstark
