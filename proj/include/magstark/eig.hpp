#pragma once

// Dense non-Hermitian eigendecomposition with residual verification.
// Backed by the standard balancing + Hessenberg + shifted-QR routine (zgeev);
// the contract here is the residual/trace/shift-equivariance behaviour, not
// the algorithm.

#include "magstark/operators.hpp"

#include <Eigen/Core>

#include <complex>
#include <stdexcept>
#include <vector>

namespace magstark {

struct EigenPair {
  std::complex<double> lambda;
  Eigen::VectorXcd v;       // unit 2-norm
  double residual = 0.0;    // ||M v - lambda v||_2
};

class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, std::vector<int> unconverged_indices)
      : std::runtime_error(what), unconverged(std::move(unconverged_indices)) {}
  std::vector<int> unconverged;
};

/// All dim eigenpairs, sorted by (Re, Im).  Throws ConvergenceError if the QR
/// iteration fails or a residual exceeds 1e-10 * max|M| * dim.
std::vector<EigenPair> eig_dense(const Eigen::MatrixXcd& M);
std::vector<EigenPair> eig_dense(const ComplexOperator& op);

/// Eigenvalues only (no vectors, no residuals); same ordering.
std::vector<std::complex<double>> eig_values(const Eigen::MatrixXcd& M);

/// Real symmetric fast path (dsyevd).
struct RealEig {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXd vectors;  // columns; empty when not requested
};
RealEig eig_real_symmetric(const Eigen::MatrixXd& M, bool vectors = false);

/// Pairs of eig_dense(M) with |lambda - center| <= radius.
std::vector<EigenPair> eig_window(const ComplexOperator& op, std::complex<double> center,
                                  double radius);
std::vector<EigenPair> eig_window(const std::vector<EigenPair>& pairs,
                                  std::complex<double> center, double radius);

} // namespace magstark
