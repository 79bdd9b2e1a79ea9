#include "magstark/operators.hpp"

#include "magstark/log.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace magstark {

namespace {

// Rephased y-axis 1D matrices (see header note).
struct YMatrices {
  Eigen::MatrixXd Ky;   // y = i * Ky, Ky real antisymmetric
  Eigen::MatrixXd Y2;   // y^2
  Eigen::MatrixXd P2;   // p_y^2
};

YMatrices y_matrices(int N, double l) {
  YMatrices m;
  m.Ky = Eigen::MatrixXd::Zero(N, N);
  m.Y2 = Eigen::MatrixXd::Zero(N, N);
  m.P2 = Eigen::MatrixXd::Zero(N, N);
  const double s2 = std::sqrt(2.0);
  for (int n = 0; n + 1 < N; ++n) {
    const double r = l / s2 * std::sqrt(n + 1.0);
    m.Ky(n + 1, n) = -r;
    m.Ky(n, n + 1) = r;
  }
  for (int n = 0; n < N; ++n) {
    m.Y2(n, n) = l * l * (n + 0.5);
    m.P2(n, n) = (n + 0.5) / (l * l);
    if (n + 2 < N) {
      const double r = 0.5 * std::sqrt((n + 1.0) * (n + 2.0));
      m.Y2(n + 2, n) = m.Y2(n, n + 2) = -l * l * r;
      m.P2(n + 2, n) = m.P2(n, n + 2) = r / (l * l);
    }
  }
  return m;
}

std::vector<double> merge_breaks(std::vector<double> pts, double lo, double hi) {
  pts.push_back(lo);
  pts.push_back(hi);
  std::sort(pts.begin(), pts.end());
  std::vector<double> out;
  for (double p : pts) {
    if (p < lo - 1e-12 || p > hi + 1e-12) continue;
    if (!out.empty() && p - out.back() < 1e-9) continue;
    out.push_back(p);
  }
  if (out.size() < 2) out = {lo, hi};
  return out;
}

// Doubles the panel density once if the first refinement moves any entry by
// more than tol; warns if even the refined grid has not settled.
template <typename Builder>
auto converged_block(const Builder& build, const std::vector<double>& breaks,
                     const char* what, double tol = 1e-8) {
  auto split = [](const std::vector<double>& b) {
    std::vector<double> out;
    out.reserve(b.size() * 2);
    for (size_t i = 0; i + 1 < b.size(); ++i) {
      out.push_back(b[i]);
      out.push_back(0.5 * (b[i] + b[i + 1]));
    }
    out.push_back(b.back());
    return out;
  };
  auto coarse = build(breaks);
  auto fine_breaks = split(breaks);
  auto fine = build(fine_breaks);
  double diff = (coarse - fine).cwiseAbs().maxCoeff();
  if (diff > tol) {
    auto finer = build(split(fine_breaks));
    const double diff2 = (fine - finer).cwiseAbs().maxCoeff();
    if (diff2 > tol) {
      std::ostringstream os;
      os << what << ": quadrature not converged, doubling still moves entries by "
         << diff2;
      log::warn(os.str());
    }
    return finer;
  }
  return fine;
}

Eigen::MatrixXcd raw_weighted_block(const std::function<std::complex<double>(double)>& f,
                                    int N, double l, const std::vector<double>& breaks,
                                    int per_panel) {
  QuadGrid grid = panel_grid(breaks, per_panel);
  const int Q = grid.size();
  Eigen::MatrixXd phi = hermite_matrix(N, grid.x, l);
  Eigen::VectorXd wre(Q), wim(Q);
  for (int q = 0; q < Q; ++q) {
    const std::complex<double> fv = f(grid.x[q]);
    wre(q) = grid.w[q] * fv.real();
    wim(q) = grid.w[q] * fv.imag();
  }
  Eigen::MatrixXd Sre = phi * wre.asDiagonal() * phi.transpose();
  Eigen::MatrixXd Sim = phi * wim.asDiagonal() * phi.transpose();
  Eigen::MatrixXcd S(N, N);
  S.real() = 0.5 * (Sre + Sre.transpose());
  S.imag() = 0.5 * (Sim + Sim.transpose());
  return S;
}

std::vector<double> x_domain_breaks(const BasisSpec& basis, double feature_scale) {
  const double L = basis.lx * std::sqrt(2.0 * basis.Nx) + 8.0 * basis.lx;
  double h = std::min(0.5 * basis.lx, feature_scale);
  if (basis.Qx > 0) {
    const double h_q = 2.0 * L / (static_cast<double>(basis.Qx) / 14.0);
    h = std::min(h, h_q);
  }
  return uniform_breaks(-L, L, h);
}

} // namespace

double ComplexOperator::max_abs() const { return M.cwiseAbs().maxCoeff(); }

double ComplexOperator::symmetry_defect() const {
  return (M - M.transpose()).cwiseAbs().maxCoeff();
}

double ComplexOperator::hermiticity_defect() const {
  return (M - M.adjoint()).cwiseAbs().maxCoeff();
}

Eigen::MatrixXd kron(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B) {
  Eigen::MatrixXd out(A.rows() * B.rows(), A.cols() * B.cols());
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (Eigen::Index j = 0; j < A.cols(); ++j)
      out.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
  return out;
}

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& B) {
  Eigen::MatrixXcd out(A.rows() * B.rows(), A.cols() * B.cols());
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (Eigen::Index j = 0; j < A.cols(); ++j)
      out.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
  return out;
}

Eigen::MatrixXcd weighted_block_1d(const std::function<std::complex<double>(double)>& f,
                                   int N, double l, const std::vector<double>& breaks,
                                   int per_panel) {
  return converged_block(
      [&](const std::vector<double>& b) { return raw_weighted_block(f, N, l, b, per_panel); },
      breaks, "weighted_block_1d");
}

Eigen::MatrixXd y_even_block(const std::function<double(double)>& g, int N, double l,
                             const std::vector<double>& breaks, int per_panel) {
  Eigen::MatrixXcd raw = converged_block(
      [&](const std::vector<double>& b) {
        return raw_weighted_block([&](double y) { return std::complex<double>(g(y), 0.0); },
                                  N, l, b, per_panel);
      },
      breaks, "y_even_block");
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(N, N);
  for (int m = 0; m < N; ++m)
    for (int n = 0; n < N; ++n) {
      const int d = n - m;
      if (d % 2 != 0) continue;  // exact parity zero
      const double sign = (((d / 2) % 2) == 0) ? 1.0 : -1.0;
      out(m, n) = sign * raw(m, n).real();
    }
  return out;
}

ComplexOperator assemble_HL(const BasisSpec& basis, double B) {
  basis.validate();
  if (!(B > 0)) throw std::invalid_argument("assemble_HL: B must be > 0");
  LadderMatrices lx = ladder_matrices(basis.Nx, basis.lx);
  YMatrices ly = y_matrices(basis.Ny, basis.ly);
  Eigen::MatrixXd Ix = Eigen::MatrixXd::Identity(basis.Nx, basis.Nx);
  Eigen::MatrixXd Iy = Eigen::MatrixXd::Identity(basis.Ny, basis.Ny);
  // (p_x + B y)^2 + p_y^2 = p_x^2 + 2B y p_x + B^2 y^2 + p_y^2
  // cross term: kron(i Ax, i Ky) = -kron(Ax, Ky), real symmetric
  Eigen::MatrixXd H = kron(lx.P2, Iy) - 2.0 * B * kron(lx.P_im, ly.Ky) +
                      B * B * kron(Ix, ly.Y2) + kron(Ix, ly.P2);
  ComplexOperator op;
  op.M = H.cast<std::complex<double>>();
  op.meta = {B, 0.0, 0.0, 0, basis, "H_L"};
  return op;
}

ComplexOperator potential_operator(const PotentialModel& model, double b,
                                   const BasisSpec& basis) {
  model.validate();
  basis.validate();
  if (!(b < model.beta))
    throw std::domain_error("potential_operator: b >= beta");
  const double V0 = model.V0, nu = model.nu;
  auto fx = [&](double x) {
    const double mag = -V0 * std::exp(nu * (b * b - x * x));
    const double phi = -2.0 * nu * b * x;
    return std::complex<double>(mag * std::cos(phi), mag * std::sin(phi));
  };
  Eigen::MatrixXcd Vx = weighted_block_1d(
      fx, basis.Nx, basis.lx, x_domain_breaks(basis, 0.5 / std::sqrt(nu)));

  std::vector<double> ybreaks;
  if (model.kind == PotentialKind::GaussianBump) {
    ybreaks = uniform_breaks(-model.a1, model.a1, std::min(model.a1 / 8.0, 0.5 * basis.ly));
  } else {
    const double Ly = basis.ly * std::sqrt(2.0 * basis.Ny) + 8.0 * basis.ly;
    ybreaks = uniform_breaks(-Ly, Ly, std::min(0.5 * basis.ly, 0.5 * model.a1));
  }
  Eigen::MatrixXd Gy = y_even_block([&](double y) { return model.g(y); },
                                    basis.Ny, basis.ly, ybreaks);
  ComplexOperator op;
  op.M = kron(Vx, Gy.cast<std::complex<double>>());
  op.meta = {0.0, 0.0, b, model.hash(), basis, "V"};
  return op;
}

ComplexOperator local_field_operator(double F, double b, const DerivedGeometry& geom,
                                     const BasisSpec& basis) {
  basis.validate();
  geom.validate();
  const double L = basis.lx * std::sqrt(2.0 * basis.Nx) + 8.0 * basis.lx;
  // refine near the tanh transitions at +-xbar
  std::vector<double> pts;
  const double w = 8.0 / geom.gammaF;
  const double hfine = std::min(0.4 / geom.gammaF, 0.25 * basis.lx);
  for (double c : {-geom.xbar, geom.xbar}) {
    if (c - w > L || c + w < -L) continue;
    const double a = std::max(c - w, -L), bb = std::min(c + w, L);
    auto fine = uniform_breaks(a, bb, hfine);
    pts.insert(pts.end(), fine.begin(), fine.end());
  }
  auto coarse = uniform_breaks(-L, L, 0.5 * basis.lx);
  pts.insert(pts.end(), coarse.begin(), coarse.end());
  auto breaks = merge_breaks(pts, -L, L);

  auto u = [&](double x) { return -F * Complex(x, b) * eval_hF(x, b, geom); };
  Eigen::MatrixXcd Wx = weighted_block_1d(u, basis.Nx, basis.lx, breaks);

  const double Ly = basis.ly * std::sqrt(2.0 * basis.Ny) + 8.0 * basis.ly;
  const double yl = std::min(geom.ybar, Ly);
  Eigen::MatrixXd Cy = y_even_block([](double) { return 1.0; }, basis.Ny, basis.ly,
                                    uniform_breaks(-yl, yl, 0.5 * basis.ly));
  ComplexOperator op;
  op.M = kron(Wx, Cy.cast<std::complex<double>>());
  op.meta = {0.0, F, b, 0, basis, "W_F"};
  return op;
}

ComplexOperator assemble_H(const FieldParams& fields, const PotentialModel& model,
                           const BasisSpec& basis) {
  fields.validate();
  ComplexOperator V = potential_operator(model, fields.b, basis);
  ComplexOperator op = assemble_HL(basis, fields.B);
  if (fields.F != 0.0) {
    LadderMatrices lx = ladder_matrices(basis.Nx, basis.lx);
    Eigen::MatrixXd Iy = Eigen::MatrixXd::Identity(basis.Ny, basis.Ny);
    op.M -= fields.F * kron(lx.X, Iy).cast<std::complex<double>>();
    op.M -= Complex(0.0, fields.F * fields.b) *
            Eigen::MatrixXcd::Identity(basis.dim(), basis.dim());
  }
  op.M += V.M;
  op.meta = {fields.B, fields.F, fields.b, model.hash(), basis, "H"};
  return op;
}

ComplexOperator assemble_H2(const FieldParams& fields, const PotentialModel& model,
                            const DerivedGeometry& geom, const BasisSpec& basis) {
  fields.validate();
  if (fields.F == 0.0) {
    ComplexOperator op = assemble_H(fields, model, basis);
    op.meta.label = "H_2";
    return op;
  }
  ComplexOperator op = assemble_HL(basis, fields.B);
  op.M += potential_operator(model, fields.b, basis).M;
  op.M += local_field_operator(fields.F, fields.b, geom, basis).M;
  op.meta = {fields.B, fields.F, fields.b, model.hash(), basis, "H_2"};
  return op;
}

ComplexOperator assemble_H2(const FieldParams& fields, const PotentialModel& model,
                            const ScheduleParams& schedule, const BasisSpec& basis) {
  schedule.validate();
  if (schedule.a1 != model.a1)
    log::warn("assemble_H2: schedule.a1 differs from model.a1");
  if (fields.F == 0.0) {
    ComplexOperator op = assemble_H(fields, model, basis);
    op.meta.label = "H_2";
    return op;
  }
  return assemble_H2(fields, model, DerivedGeometry::from(schedule, fields.F), basis);
}

void dump_operator(const ComplexOperator& op, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("dump_operator: cannot open " + path);
  const std::uint64_t dim = static_cast<std::uint64_t>(op.dim());
  const std::uint64_t flags = (op.meta.b == 0.0) ? 1u : 0u;
  out.write(reinterpret_cast<const char*>(&dim), 8);
  out.write(reinterpret_cast<const char*>(&flags), 8);
  for (std::uint64_t i = 0; i < dim; ++i)
    for (std::uint64_t j = 0; j < dim; ++j) {
      const double re = op.M(i, j).real(), im = op.M(i, j).imag();
      out.write(reinterpret_cast<const char*>(&re), 8);
      out.write(reinterpret_cast<const char*>(&im), 8);
    }
  if (!out) throw std::runtime_error("dump_operator: write failed for " + path);
}

Eigen::MatrixXcd load_operator_matrix(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("load_operator_matrix: cannot open " + path);
  std::uint64_t dim = 0, flags = 0;
  in.read(reinterpret_cast<char*>(&dim), 8);
  in.read(reinterpret_cast<char*>(&flags), 8);
  if (!in || dim == 0 || dim > (1u << 20))
    throw std::runtime_error("load_operator_matrix: bad header in " + path);
  Eigen::MatrixXcd M(dim, dim);
  for (std::uint64_t i = 0; i < dim; ++i)
    for (std::uint64_t j = 0; j < dim; ++j) {
      double re = 0, im = 0;
      in.read(reinterpret_cast<char*>(&re), 8);
      in.read(reinterpret_cast<char*>(&im), 8);
      M(i, j) = Complex(re, im);
    }
  if (!in) throw std::runtime_error("load_operator_matrix: truncated file " + path);
  return M;
}

} // namespace magstark
