#include "chordgeom/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <tuple>

#include "chordgeom/rng.hpp"

namespace chordgeom {

namespace {

Rule1D legendre_raw(int k) {
  Rule1D r;
  if (k == 1) {
    r.x = {0.0};
    r.w = {2.0};
    return r;
  }
  r.x.resize(k);
  r.w.resize(k);
  for (int i = 0; i < k; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (k + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= k; ++j) {
        double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = k * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    double p0 = 1.0, p1 = x;
    for (int j = 2; j <= k; ++j) {
      double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
      p0 = p1;
      p1 = p2;
    }
    dp = k * (x * p1 - p0) / (x * x - 1.0);
    r.x[k - 1 - i] = x;
    r.w[k - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return r;
}

const Rule1D& legendre_cached(int k) {
  static std::mutex mu;
  static std::map<int, Rule1D> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(k);
  if (it == cache.end()) it = cache.emplace(k, legendre_raw(k)).first;
  return it->second;
}

}  // namespace

Rule1D gauss_legendre(int k, double a, double b) {
  if (k < 1) throw Error(ErrorCode::Precondition, "rule needs at least one node");
  const Rule1D& r = legendre_cached(k);
  Rule1D out;
  out.x.resize(k);
  out.w.resize(k);
  const double h = 0.5 * (b - a);
  for (int i = 0; i < k; ++i) {
    out.x[i] = a + h * (r.x[i] + 1.0);
    out.w[i] = h * r.w[i];
  }
  return out;
}

Rule1D gauss_jacobi01(int k, double alpha, double beta) {
  if (k < 1 || alpha <= -1.0 || beta <= -1.0) throw Error(ErrorCode::Precondition, "invalid Jacobi rule");
  const double ab = alpha + beta;
  Vec diag(k), off(std::max(k - 1, 1));
  for (int j = 0; j < k; ++j) {
    if (j == 0) {
      diag[j] = (beta - alpha) / (ab + 2.0);
    } else {
      const double s = 2.0 * j + ab;
      diag[j] = (beta * beta - alpha * alpha) / (s * (s + 2.0));
    }
  }
  for (int j = 1; j < k; ++j) {
    const double s = 2.0 * j + ab;
    double b2;
    if (j == 1) {
      b2 = 4.0 * (1.0 + alpha) * (1.0 + beta) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab));
    } else {
      b2 = 4.0 * j * (j + alpha) * (j + beta) * (j + ab) / (s * s * (s + 1.0) * (s - 1.0));
    }
    off[j - 1] = std::sqrt(b2);
  }
  const double mu0 = std::exp((ab + 1.0) * std::log(2.0) + std::lgamma(alpha + 1.0) + std::lgamma(beta + 1.0) -
                              std::lgamma(ab + 2.0));
  Rule1D r;
  r.x.resize(k);
  r.w.resize(k);
  if (k == 1) {
    r.x[0] = 0.5 * (1.0 + diag[0]);
    r.w[0] = mu0 / std::pow(2.0, ab + 1.0);
    return r;
  }
  Eigen::SelfAdjointEigenSolver<Mat> es;
  es.computeFromTridiagonal(diag, off.head(k - 1), Eigen::ComputeEigenvectors);
  const double scale = std::pow(2.0, -(ab + 1.0));
  for (int j = 0; j < k; ++j) {
    const double v0 = es.eigenvectors()(0, j);
    r.x[j] = 0.5 * (1.0 + es.eigenvalues()[j]);
    r.w[j] = mu0 * v0 * v0 * scale;
  }
  return r;
}

// ---------------------------------------------------------------- sphere rules

namespace {

// Rule on S^{d-1} in R^d with weights summing to its surface measure.
void sphere_rule(int d, int n_theta, int n_phi, std::vector<Vec>& nodes, std::vector<double>& w) {
  nodes.clear();
  w.clear();
  if (d == 1) {
    nodes.push_back(Vec::Constant(1, 1.0));
    nodes.push_back(Vec::Constant(1, -1.0));
    w = {1.0, 1.0};
    return;
  }
  if (d == 2) {
    for (int k = 0; k < n_phi; ++k) {
      const double phi = 2.0 * std::numbers::pi * (k + 0.5) / n_phi;
      Vec v(2);
      v << std::cos(phi), std::sin(phi);
      nodes.push_back(v);
      w.push_back(2.0 * std::numbers::pi / n_phi);
    }
    return;
  }
  std::vector<Vec> sub;
  std::vector<double> sw;
  sphere_rule(d - 1, n_theta, n_phi, sub, sw);
  Rule1D g = gauss_legendre(n_theta, 0.0, std::numbers::pi);
  for (int i = 0; i < n_theta; ++i) {
    const double th = g.x[i];
    const double st = std::sin(th);
    const double wt = g.w[i] * std::pow(st, d - 2);
    for (std::size_t k = 0; k < sub.size(); ++k) {
      Vec v(d);
      v[0] = std::cos(th);
      v.tail(d - 1) = st * sub[k];
      nodes.push_back(v);
      w.push_back(wt * sw[k]);
    }
  }
}

}  // namespace

double SphereQuadrature::total_weight() const {
  double s = 0.0;
  for (double x : weights) s += x;
  return s;
}

SphereQuadrature SphereQuadrature::product_grid(int n, int n_theta, int n_phi) {
  if (n < 2) throw Error(ErrorCode::Precondition, "sphere dimension must be at least 2");
  SphereQuadrature Q;
  Q.scheme = SphereScheme::ProductGrid;
  Q.n = n;
  Q.n_theta = n_theta;
  Q.n_phi = n_phi;
  sphere_rule(n, n_theta, n_phi, Q.nodes, Q.weights);
  // Rescale so the weights reproduce n*omega_n to round-off.
  const double target = n * omega(n);
  const double s = target / Q.total_weight();
  for (double& x : Q.weights) x *= s;
  return Q;
}

SphereQuadrature SphereQuadrature::monte_carlo(int n, int N, std::uint64_t seed) {
  if (n < 2 || N < 2) throw Error(ErrorCode::Precondition, "invalid Monte Carlo sphere rule");
  SphereQuadrature Q;
  Q.scheme = SphereScheme::MonteCarlo;
  Q.n = n;
  Q.seed = seed;
  const int half = N / 2;
  auto g = substream(seed, stream::sphere_mc, 0);
  for (int i = 0; i < half; ++i) {
    Vec u = random_direction(n, g);
    Q.nodes.push_back(u);
    Q.nodes.push_back(-u);
  }
  const double w = n * omega(n) / Q.nodes.size();
  Q.weights.assign(Q.nodes.size(), w);
  return Q;
}

SphereQuadrature SphereQuadrature::default_for(int n, std::uint64_t seed) {
  if (n <= 3) return product_grid(n, 128, 256);
  return monte_carlo(n, 200000, seed);
}

Mat orthonormal_complement(const Vec& p) {
  const int n = static_cast<int>(p.size());
  Eigen::HouseholderQR<Mat> qr(p);
  Mat Q = qr.householderQ();
  return Q.rightCols(n - 1);
}

HemisphereRule hemisphere_grid(const Vec& p, int n_theta, int n_phi) {
  const int n = static_cast<int>(p.size());
  Mat B = orthonormal_complement(p);
  std::vector<Vec> sub;
  std::vector<double> sw;
  sphere_rule(n - 1, n_theta, n_phi, sub, sw);
  Rule1D g = gauss_legendre(n_theta, 0.0, 0.5 * std::numbers::pi);
  HemisphereRule R;
  for (int i = 0; i < n_theta; ++i) {
    const double th = g.x[i];
    const double ct = std::cos(th), st = std::sin(th);
    const double wt = g.w[i] * std::pow(st, n - 2);
    for (std::size_t k = 0; k < sub.size(); ++k) {
      R.nodes.push_back(ct * p + st * (B * sub[k]));
      R.weights.push_back(wt * sw[k]);
      R.t.push_back(ct);
    }
  }
  return R;
}

HemisphereRule jacobi_hemisphere(const Vec& p, double beta, int n_t, int n_theta, int n_phi) {
  const int n = static_cast<int>(p.size());
  const double alpha = 0.5 * (n - 3);
  Mat B = orthonormal_complement(p);
  std::vector<Vec> sub;
  std::vector<double> sw;
  sphere_rule(n - 1, n_theta, n_phi, sub, sw);
  Rule1D g = gauss_jacobi01(n_t, alpha, beta);
  HemisphereRule R;
  for (int i = 0; i < n_t; ++i) {
    const double t = g.x[i];
    const double s = std::sqrt(std::max(0.0, 1.0 - t * t));
    const double wt = g.w[i] * std::pow(1.0 + t, alpha);
    for (std::size_t k = 0; k < sub.size(); ++k) {
      R.nodes.push_back(t * p + s * (B * sub[k]));
      R.weights.push_back(wt * sw[k]);
      R.t.push_back(t);
    }
  }
  return R;
}

// ---------------------------------------------------------------- simplex rules

namespace {

SimplexRule conical_raw(int d, int k, int layers) {
  SimplexRule R;
  R.d = d;
  if (d == 0) {
    R.bary.push_back(Vec::Ones(1));
    R.w.push_back(1.0);
    return R;
  }
  SimplexRule base = conical_raw(d - 1, k, 0);
  std::vector<std::pair<double, double>> pieces;
  if (layers <= 0) {
    pieces.emplace_back(0.0, 1.0);
  } else {
    double a = 0.0, len = 0.5;
    for (int l = 0; l < layers; ++l) {
      pieces.emplace_back(a, a + len);
      a += len;
      len *= 0.5;
    }
    pieces.emplace_back(a, 1.0);
  }
  for (auto [a, b] : pieces) {
    Rule1D g = gauss_legendre(k, a, b);
    for (int i = 0; i < k; ++i) {
      const double s = g.x[i];
      const double ws = g.w[i] * d * std::pow(s, d - 1);
      for (std::size_t j = 0; j < base.bary.size(); ++j) {
        Vec lam(d + 1);
        lam[0] = 1.0 - s;
        lam.tail(d) = s * base.bary[j];
        R.bary.push_back(lam);
        R.w.push_back(ws * base.w[j]);
      }
    }
  }
  return R;
}

}  // namespace

SimplexRule conical_simplex_rule(int d, int k, int layers) {
  static std::mutex mu;
  static std::map<std::tuple<int, int, int>, SimplexRule> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_tuple(d, k, layers);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, conical_raw(d, k, layers)).first;
  return it->second;
}

}  // namespace chordgeom
