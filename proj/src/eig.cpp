#include "magstark/eig.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#define LAPACK_COMPLEX_CUSTOM
#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

namespace magstark {

namespace {

void sort_pairs(std::vector<EigenPair>& pairs) {
  std::sort(pairs.begin(), pairs.end(), [](const EigenPair& a, const EigenPair& b) {
    if (a.lambda.real() != b.lambda.real()) return a.lambda.real() < b.lambda.real();
    return a.lambda.imag() < b.lambda.imag();
  });
}

} // namespace

std::vector<EigenPair> eig_dense(const Eigen::MatrixXcd& M) {
  const int n = static_cast<int>(M.rows());
  if (n < 1 || M.cols() != n) throw std::invalid_argument("eig_dense: matrix must be square");
  if (!M.allFinite()) throw std::invalid_argument("eig_dense: matrix has non-finite entries");

  Eigen::MatrixXcd A = M;  // zgeev overwrites
  Eigen::VectorXcd w(n);
  Eigen::MatrixXcd vr(n, n);
  const lapack_int info =
      LAPACKE_zgeev(LAPACK_COL_MAJOR, 'N', 'V', n, A.data(), n, w.data(), nullptr, 1,
                    vr.data(), n);
  if (info < 0) throw std::invalid_argument("eig_dense: bad argument to zgeev");
  if (info > 0) {
    std::vector<int> bad(info);
    std::iota(bad.begin(), bad.end(), 0);
    std::ostringstream os;
    os << "eig_dense: QR iteration failed, " << info << " eigenvalues unconverged";
    throw ConvergenceError(os.str(), std::move(bad));
  }

  // residuals in one multiply
  Eigen::MatrixXcd R = M * vr - vr * w.asDiagonal();
  const double scale = M.cwiseAbs().maxCoeff();
  const double bound = 1e-10 * scale * n;

  std::vector<EigenPair> pairs(n);
  std::vector<int> bad;
  for (int i = 0; i < n; ++i) {
    pairs[i].lambda = w(i);
    pairs[i].v = vr.col(i);
    const double vn = pairs[i].v.norm();
    if (vn > 0) pairs[i].v /= vn;
    pairs[i].residual = R.col(i).norm() / (vn > 0 ? vn : 1.0);
    if (!(pairs[i].residual <= bound)) bad.push_back(i);
  }
  if (!bad.empty()) {
    std::ostringstream os;
    os << "eig_dense: " << bad.size() << " eigenpairs exceed the residual bound "
       << bound;
    throw ConvergenceError(os.str(), std::move(bad));
  }
  sort_pairs(pairs);
  return pairs;
}

std::vector<EigenPair> eig_dense(const ComplexOperator& op) { return eig_dense(op.M); }

std::vector<std::complex<double>> eig_values(const Eigen::MatrixXcd& M) {
  const int n = static_cast<int>(M.rows());
  if (n < 1 || M.cols() != n) throw std::invalid_argument("eig_values: matrix must be square");
  Eigen::MatrixXcd A = M;
  Eigen::VectorXcd w(n);
  const lapack_int info = LAPACKE_zgeev(LAPACK_COL_MAJOR, 'N', 'N', n, A.data(), n,
                                        w.data(), nullptr, 1, nullptr, 1);
  if (info != 0) {
    std::vector<int> bad(std::max<lapack_int>(info, 0));
    std::iota(bad.begin(), bad.end(), 0);
    throw ConvergenceError("eig_values: zgeev failed", std::move(bad));
  }
  std::vector<std::complex<double>> out(w.data(), w.data() + n);
  std::sort(out.begin(), out.end(), [](auto a, auto b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return out;
}

RealEig eig_real_symmetric(const Eigen::MatrixXd& M, bool vectors) {
  const int n = static_cast<int>(M.rows());
  if (n < 1 || M.cols() != n)
    throw std::invalid_argument("eig_real_symmetric: matrix must be square");
  RealEig out;
  out.values.resize(n);
  Eigen::MatrixXd A = M;
  const lapack_int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, vectors ? 'V' : 'N', 'L', n,
                                         A.data(), n, out.values.data());
  if (info != 0) throw ConvergenceError("eig_real_symmetric: dsyevd failed", {});
  if (vectors) out.vectors = std::move(A);
  return out;
}

std::vector<EigenPair> eig_window(const std::vector<EigenPair>& pairs,
                                  std::complex<double> center, double radius) {
  if (!(radius > 0)) throw std::invalid_argument("eig_window: radius must be > 0");
  std::vector<EigenPair> out;
  for (const auto& p : pairs)
    if (std::abs(p.lambda - center) <= radius) out.push_back(p);
  return out;
}

std::vector<EigenPair> eig_window(const ComplexOperator& op, std::complex<double> center,
                                  double radius) {
  return eig_window(eig_dense(op), center, radius);
}

} // namespace magstark
