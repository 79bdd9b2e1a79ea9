#include "magstark/basis.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace magstark {

std::vector<std::string> BasisSpec::check() const {
  std::vector<std::string> errs;
  if (Nx < 2) errs.push_back("Nx must be >= 2");
  if (Ny < 2) errs.push_back("Ny must be >= 2");
  if (!(lx > 0)) errs.push_back("lx must be > 0");
  if (!(ly > 0)) errs.push_back("ly must be > 0");
  if (Nx >= 2 && Ny >= 2 && Nx * Ny > dense_cap) {
    std::ostringstream os;
    os << "Nx*Ny = " << Nx * Ny << " exceeds the dense-solver cap " << dense_cap;
    errs.push_back(os.str());
  }
  if (Qx != 0 && Qx < 2 * Nx) errs.push_back("Qx must be 0 (auto) or >= 2*Nx");
  if (Qy != 0 && Qy < 2 * Ny) errs.push_back("Qy must be 0 (auto) or >= 2*Ny");
  return errs;
}

void BasisSpec::validate() const {
  auto errs = check();
  if (errs.empty()) return;
  std::string msg = "BasisSpec: ";
  for (size_t i = 0; i < errs.size(); ++i) msg += (i ? "; " : "") + errs[i];
  throw std::invalid_argument(msg);
}

BasisSpec BasisSpec::for_field(double B, int Nx, int Ny) {
  if (!(B > 0)) throw std::invalid_argument("BasisSpec::for_field: B must be > 0");
  BasisSpec s;
  s.Nx = Nx;
  s.Ny = Ny;
  s.lx = s.ly = 1.0 / std::sqrt(B);
  return s;
}

void hermite_values(int n, double x, double l, double* out) {
  const double t = x / l;
  const double w = std::exp(-0.5 * t * t);
  out[0] = 0.7511255444649425 * w / std::sqrt(l);  // pi^{-1/4}
  if (n > 1) out[1] = std::sqrt(2.0) * t * out[0];
  for (int k = 1; k + 1 < n; ++k)
    out[k + 1] = std::sqrt(2.0 / (k + 1)) * t * out[k] -
                 std::sqrt(static_cast<double>(k) / (k + 1)) * out[k - 1];
}

Eigen::MatrixXd hermite_matrix(int n, const std::vector<double>& xs, double l) {
  Eigen::MatrixXd out(n, xs.size());
  std::vector<double> col(n);
  for (size_t q = 0; q < xs.size(); ++q) {
    hermite_values(n, xs[q], l, col.data());
    for (int m = 0; m < n; ++m) out(m, q) = col[m];
  }
  return out;
}

namespace {

GaussLegendre compute_gl(int n) {
  // Newton iteration on P_n from the Chebyshev initial guess.
  GaussLegendre gl;
  gl.x.resize(n);
  gl.w.resize(n);
  const double pi = 3.14159265358979323846;
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(pi * (i + 0.75) / (n + 0.5));
    double dp = 0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    gl.x[i] = -x;
    gl.x[n - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    gl.w[i] = w;
    gl.w[n - 1 - i] = w;
  }
  if (n % 2 == 1) gl.x[n / 2] = 0.0;
  return gl;
}

} // namespace

const GaussLegendre& gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: order must be >= 1");
  static std::map<int, GaussLegendre> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, compute_gl(n)).first;
  return it->second;
}

QuadGrid panel_grid(const std::vector<double>& breaks, int per_panel) {
  if (breaks.size() < 2) throw std::invalid_argument("panel_grid: need at least 2 breakpoints");
  const GaussLegendre& gl = gauss_legendre(per_panel);
  QuadGrid grid;
  grid.x.reserve((breaks.size() - 1) * per_panel);
  grid.w.reserve((breaks.size() - 1) * per_panel);
  for (size_t p = 0; p + 1 < breaks.size(); ++p) {
    const double a = breaks[p], b = breaks[p + 1];
    if (!(b > a)) throw std::invalid_argument("panel_grid: breakpoints must increase");
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    for (int q = 0; q < per_panel; ++q) {
      grid.x.push_back(c + h * gl.x[q]);
      grid.w.push_back(h * gl.w[q]);
    }
  }
  return grid;
}

std::vector<double> uniform_breaks(double a, double b, double h) {
  if (!(b > a) || !(h > 0)) throw std::invalid_argument("uniform_breaks: bad interval");
  const int n = std::max(1, static_cast<int>(std::ceil((b - a) / h)));
  std::vector<double> out(n + 1);
  for (int i = 0; i <= n; ++i) out[i] = a + (b - a) * i / n;
  return out;
}

LadderMatrices ladder_matrices(int N, double l) {
  if (N < 2) throw std::invalid_argument("ladder_matrices: N must be >= 2");
  if (!(l > 0)) throw std::invalid_argument("ladder_matrices: l must be > 0");
  LadderMatrices m;
  m.X = Eigen::MatrixXd::Zero(N, N);
  m.P_im = Eigen::MatrixXd::Zero(N, N);
  m.X2 = Eigen::MatrixXd::Zero(N, N);
  m.P2 = Eigen::MatrixXd::Zero(N, N);
  const double s2 = std::sqrt(2.0);
  for (int n = 0; n + 1 < N; ++n) {
    const double r = std::sqrt(n + 1.0);
    m.X(n + 1, n) = m.X(n, n + 1) = l / s2 * r;
    // p = i/(l sqrt2) (a^dag - a):  <n+1|p|n> = i/(l sqrt2) sqrt(n+1)
    m.P_im(n + 1, n) = r / (l * s2);
    m.P_im(n, n + 1) = -r / (l * s2);
  }
  for (int n = 0; n < N; ++n) {
    m.X2(n, n) = l * l * (n + 0.5);
    m.P2(n, n) = (n + 0.5) / (l * l);
    if (n + 2 < N) {
      const double r = 0.5 * std::sqrt((n + 1.0) * (n + 2.0));
      m.X2(n + 2, n) = m.X2(n, n + 2) = l * l * r;
      m.P2(n + 2, n) = m.P2(n, n + 2) = -r / (l * l);
    }
  }
  return m;
}

} // namespace magstark
