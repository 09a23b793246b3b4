#include "chordgeom/minkowski.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "hull.hpp"

namespace chordgeom {

const char* status_name(SolverStatus s) {
  switch (s) {
    case SolverStatus::Converged: return "converged";
    case SolverStatus::NonConvergence: return "NonConvergence";
    case SolverStatus::DegenerateDrift: return "DegenerateDrift";
    case SolverStatus::CollapseDetected: return "CollapseDetected";
  }
  return "unknown";
}

std::vector<int> antipodal_partners(const DiscreteSphericalMeasure& mu, double tol) {
  const int m = static_cast<int>(mu.atoms.size());
  std::vector<int> p(m, -1);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if (j != i && (mu.atoms[i].u + mu.atoms[j].u).norm() <= tol) {
        p[i] = j;
        break;
      }
  return p;
}

DataReport validate_chord_data(const DiscreteSphericalMeasure& mu, double centroid_tol) {
  mu.validate();
  DataReport r;
  auto d = measure_diagnostics(mu);
  r.hemisphere_margin = d.hemisphere_margin;
  const double tot = d.total_mass;
  if (!(tot > 0.0)) {
    r.ok = false;
    r.violations.push_back("measure has zero total mass");
    return r;
  }
  r.centroid_relative = d.centroid_vector.norm() / tot;
  if (d.degenerate) {
    r.ok = false;
    r.violations.push_back("measure is concentrated on a closed hemisphere");
  }
  if (r.centroid_relative > centroid_tol) {
    r.ok = false;
    r.violations.push_back("centroid condition fails: |sum m_i u_i| / |mu| = " + std::to_string(r.centroid_relative));
  }
  return r;
}

DataReport validate_log_data(const DiscreteSphericalMeasure& mu, double q) {
  mu.validate();
  const int n = mu.dim;
  const int m = static_cast<int>(mu.atoms.size());
  auto partner = antipodal_partners(mu);
  for (int i = 0; i < m; ++i) {
    const int j = partner[i];
    if (mu.atoms[i].mass == 0.0) continue;
    if (j < 0 || std::abs(mu.atoms[j].mass - mu.atoms[i].mass) > 1e-9 * mu.atoms[i].mass)
      throw Error(ErrorCode::NotEven, "atom " + std::to_string(i) + " has no antipodal partner of equal mass");
  }
  DataReport r = validate_chord_data(mu);
  const double tot = mu.total();
  // Candidate subspaces: spans of atom subsets and coordinate subspaces.
  std::vector<Vec> gens;
  for (int i = 0; i < m; ++i)
    if (mu.atoms[i].mass > 0.0 && (partner[i] < 0 || partner[i] > i)) gens.push_back(mu.atoms[i].u);
  std::vector<Mat> bases;
  auto add_span = [&](const std::vector<Vec>& vs) {
    Mat E(n, vs.size());
    for (std::size_t c = 0; c < vs.size(); ++c) E.col(c) = vs[c];
    Eigen::JacobiSVD<Mat> svd(E, Eigen::ComputeThinU);
    int rank = 0;
    for (int c = 0; c < svd.singularValues().size(); ++c)
      if (svd.singularValues()[c] > 1e-9) ++rank;
    if (rank < 1 || rank > n - 1) return;
    Mat Bs = svd.matrixU().leftCols(rank);
    for (const Mat& B : bases)
      if (B.cols() == rank && (B * B.transpose() - Bs * Bs.transpose()).norm() < 1e-9) return;
    bases.push_back(Bs);
  };
  const int G = static_cast<int>(gens.size());
  for (int k = 1; k <= std::min(n - 1, G); ++k)
    detail::for_each_subset(G, k, [&](const std::vector<int>& S) {
      std::vector<Vec> vs;
      for (int i : S) vs.push_back(gens[i]);
      add_span(vs);
    });
  for (int k = 1; k <= n - 1; ++k)
    detail::for_each_subset(n, k, [&](const std::vector<int>& S) {
      std::vector<Vec> vs;
      for (int i : S) vs.push_back(Vec::Unit(n, i));
      add_span(vs);
    });
  auto rank_of = [](const Mat& E) {
    if (E.cols() == 0) return 0;
    Eigen::JacobiSVD<Mat> svd(E);
    int rank = 0;
    for (int c = 0; c < svd.singularValues().size(); ++c)
      if (svd.singularValues()[c] > 1e-9) ++rank;
    return rank;
  };
  // Mass outside span B lies in a subspace complementary to it.
  auto splits = [&](const Mat& B) {
    std::vector<Vec> rest;
    for (const Atom& a : mu.atoms)
      if (a.mass > 0.0 && (a.u - B * (B.transpose() * a.u)).norm() > 1e-9) rest.push_back(a.u);
    Mat W(n, rest.size());
    for (std::size_t c = 0; c < rest.size(); ++c) W.col(c) = rest[c];
    Mat BW(n, B.cols() + W.cols());
    BW << B, W;
    return rank_of(W) == n - B.cols() && rank_of(BW) == n;
  };
  bool split = q == 1.0;
  r.worst_margin = std::numeric_limits<double>::infinity();
  for (const Mat& B : bases) {
    const int k = static_cast<int>(B.cols());
    double mass = 0.0;
    for (const Atom& a : mu.atoms)
      if ((a.u - B * (B.transpose() * a.u)).norm() <= 1e-9) mass += a.mass;
    const double ratio = mass / tot;
    const double bound = (k + std::min<double>(k, q - 1.0)) / (n + q - 1.0);
    const double margin = bound - ratio;
    if (split && margin <= 1e-12) split = margin >= -1e-12 && splits(B);
    if (margin < r.worst_margin) {
      r.worst_margin = margin;
      r.worst_k = k;
      r.worst_basis = B;
    }
  }
  if (r.worst_margin <= 1e-12) {
    r.ok = false;
    r.equality_split = split;
    r.violations.push_back("subspace mass inequality fails for k = " + std::to_string(r.worst_k) +
                           " (margin " + std::to_string(r.worst_margin) + ")");
  }
  return r;
}

double entropy(const HPolytope& K, const DiscreteSphericalMeasure& mu) {
  const double tot = mu.total();
  double s = 0.0;
  for (const Atom& a : mu.atoms) {
    const double h = K.support(a.u);
    if (!(h > 0.0)) throw Error(ErrorCode::NonpositiveSupport, "support function must be positive at every atom");
    s += a.mass * std::log(h);
  }
  return -s / tot;
}

double chord_objective(const HPolytope& K, const DiscreteSphericalMeasure& mu, double q, const MeasureConfig& cfg) {
  const int n = K.dim();
  const double I = chord_data(K, q, cfg).I;
  double s = 0.0;
  for (const Atom& a : mu.atoms) s += a.mass * K.support(a.u);
  return std::log(I) / (n + q - 1.0) - std::log(s);
}

double log_objective(const HPolytope& K, const DiscreteSphericalMeasure& mu, double q, const MeasureConfig& cfg) {
  const int n = K.dim();
  return entropy(K, mu) + std::log(chord_data(K, q, cfg).I) / (n + q - 1.0);
}

namespace {

struct Eval {
  bool valid = false;
  double J = -std::numeric_limits<double>::infinity();
  Vec grad;
  double residual = std::numeric_limits<double>::infinity();
  std::optional<HPolytope> P;
  PolytopeMeasure data;
};

struct AscentOutcome {
  Vec y;
  Eval last;
  std::vector<double> trace;
  int iterations = 0;
  bool collapsed = false;
};

using Evaluator = std::function<Eval(const Vec&)>;
using Hook = std::function<bool(Vec&, Eval&)>;

// Quasi-Newton ascent with Armijo backtracking.
AscentOutcome ascend(const Vec& y0, const Evaluator& evaluate, const SolverConfig& cfg, const Hook& after_step,
                     const std::function<bool(const Eval&)>& collapsed) {
  AscentOutcome out;
  out.y = y0;
  Eval E = evaluate(y0);
  if (!E.valid) throw Error(ErrorCode::EmptyInterior, "initial iterate is infeasible");
  out.trace.push_back(E.J);
  const int d = static_cast<int>(y0.size());
  Mat H = Mat::Identity(d, d);
  bool fresh = true;
  for (int it = 0; it < cfg.max_iters; ++it) {
    if (E.residual <= cfg.residual_tol || E.grad.norm() <= cfg.grad_tol) break;
    if (collapsed(E)) {
      out.collapsed = true;
      break;
    }
    Vec dir = H * E.grad;
    double slope = E.grad.dot(dir);
    if (!(slope > 0.0)) {
      H.setIdentity();
      fresh = true;
      dir = E.grad;
      slope = E.grad.dot(dir);
    }
    double alpha = cfg.step0;
    const double big = dir.cwiseAbs().maxCoeff();
    if (alpha * big > 1.0) alpha = 1.0 / big;
    bool accepted = false;
    Eval En;
    Vec Y;
    for (int ls = 0; ls < 60; ++ls) {
      Y = out.y + alpha * dir;
      En = evaluate(Y);
      if (En.valid && En.J >= E.J + cfg.armijo_c * alpha * slope) {
        accepted = true;
        break;
      }
      alpha *= cfg.armijo_shrink;
    }
    ++out.iterations;
    if (!accepted) {
      if (!fresh) {
        H.setIdentity();
        fresh = true;
        continue;
      }
      break;
    }
    const Vec s = Y - out.y;
    const Vec yk = E.grad - En.grad;  // gradient change of -J
    const double sy = s.dot(yk);
    if (sy > 1e-14 * s.norm() * yk.norm()) {
      const double rho = 1.0 / sy;
      Mat I = Mat::Identity(d, d);
      H = (I - rho * s * yk.transpose()) * H * (I - rho * yk * s.transpose()) + rho * s * s.transpose();
      fresh = false;
    }
    out.y = Y;
    E = std::move(En);
    if (after_step && after_step(out.y, E)) {
      H.setIdentity();
      fresh = true;
    }
    out.trace.push_back(E.J);
  }
  if (collapsed(E)) out.collapsed = true;
  out.last = std::move(E);
  return out;
}

std::vector<Vec> atom_dirs(const DiscreteSphericalMeasure& mu) {
  std::vector<Vec> u;
  for (const Atom& a : mu.atoms) u.push_back(a.u);
  return u;
}

double aspect(const HPolytope& P) { return P.inradius() / P.circumradius(P.chebyshev_center()); }

}  // namespace

SolverResult solve_chord_minkowski(const DiscreteSphericalMeasure& mu, const SolverConfig& cfg) {
  if (!(cfg.q > 0.0)) throw Error(ErrorCode::Precondition, "q must be positive");
  auto rep = validate_chord_data(mu);
  if (cfg.check_data && !rep.ok) throw Error(ErrorCode::Precondition, "invalid chord data: " + rep.violations.front());
  const int n = mu.dim;
  const int m = static_cast<int>(mu.atoms.size());
  const double q = cfg.q;
  const double e = n + q - 1.0;
  const std::vector<Vec> U = atom_dirs(mu);
  Vec mass(m);
  for (int i = 0; i < m; ++i) mass[i] = mu.atoms[i].mass;

  auto residual_of = [&](const std::vector<double>& F, double factor) {
    double r = 0.0;
    for (int i = 0; i < m; ++i)
      if (mass[i] > 0.0) r = std::max(r, std::abs(factor * F[i] - mass[i]) / mass[i]);
    return r;
  };

  Evaluator evaluate = [&](const Vec& y) {
    Eval E;
    std::vector<double> h(m);
    for (int i = 0; i < m; ++i) h[i] = std::exp(y[i]);
    try {
      E.P.emplace(U, h);
    } catch (const Error&) {
      return E;
    }
    E.data = chord_data(*E.P, q, cfg.measure);
    const double I = E.data.I;
    double mh = 0.0;
    for (int i = 0; i < m; ++i) mh += mass[i] * h[i];
    E.J = std::log(I) / e - std::log(mh);
    E.grad.resize(m);
    for (int i = 0; i < m; ++i) E.grad[i] = h[i] * (E.data.F[i] / (e * I) - mass[i] / mh);
    // F_q(lambda K) = lambda^{n+q-2} F_q(K) with lambda^{n+q-2} = sum m h / ((n+q-1) I).
    E.residual = residual_of(E.data.F, mh / (e * I));
    E.valid = std::isfinite(E.J);
    return E;
  };

  Hook recenter = [&](Vec& y, Eval& E) {
    const Vec h = y.array().exp();
    if (h.minCoeff() >= 0.05 * h.maxCoeff()) return false;
    const Vec c = E.P->chebyshev_center();
    Vec y2(m);
    for (int i = 0; i < m; ++i) y2[i] = std::log(h[i] - U[i].dot(c));
    Eval E2 = evaluate(y2);
    if (!E2.valid || E2.J < E.J - 1e-12 * std::abs(E.J)) return false;
    y = y2;
    E = std::move(E2);
    return true;
  };

  auto out = ascend(Vec::Zero(m), evaluate, cfg, recenter, [](const Eval&) { return false; });

  SolverResult res;
  res.objective_trace = out.trace;
  res.iterations = out.iterations;
  const HPolytope& K0 = *out.last.P;
  const std::vector<double> hr = K0.realized_offsets();
  double mh = 0.0;
  for (int i = 0; i < m; ++i) mh += mass[i] * hr[i];
  const double lam = std::pow(mh / (e * out.last.data.I), 1.0 / (n + q - 2.0));
  std::vector<double> hs(m);
  for (int i = 0; i < m; ++i) hs[i] = lam * std::exp(out.y[i]);
  res.body.emplace(U, hs);
  res.scale_lambda = lam;
  auto fin = chord_data(*res.body, q, cfg.measure);
  res.residual = residual_of(fin.F, 1.0);
  double gsum = 0.0, mhs = 0.0;
  for (int i = 0; i < m; ++i) mhs += mass[i] * hs[i];
  for (int i = 0; i < m; ++i) {
    const double g = hs[i] * (fin.F[i] / (e * fin.I) - mass[i] / mhs);
    gsum += g * g;
  }
  res.grad_norm = std::sqrt(gsum);
  const double tol = cfg.residual_tol + cfg.measure_tol_budget;
  int redundant = 0;
  for (int i = 0; i < m; ++i) {
    if (res.body->redundant(i)) ++redundant;
    if (mass[i] > 0.0 && std::abs(fin.F[i] - mass[i]) / mass[i] > tol) res.unmatched_atoms.push_back(i);
  }
  if (2 * redundant > m) {
    res.status = SolverStatus::DegenerateDrift;
  } else {
    res.status = res.residual <= tol ? SolverStatus::Converged : SolverStatus::NonConvergence;
  }
  return res;
}

SolverResult solve_chord_log_minkowski(const DiscreteSphericalMeasure& mu, const SolverConfig& cfg) {
  const int n = mu.dim;
  const double q = cfg.q;
  if (!(q >= 1.0 && q <= n + 1.0)) throw Error(ErrorCode::Precondition, "log problem needs 1 <= q <= n+1");
  auto rep = validate_log_data(mu, q);
  if (cfg.check_data && !rep.ok && !rep.equality_split)
    throw Error(ErrorCode::Precondition, "invalid log data: " + rep.violations.front());
  const int m = static_cast<int>(mu.atoms.size());
  const std::vector<Vec> U = atom_dirs(mu);
  auto partner = antipodal_partners(mu);
  // One variable per antipodal pair.
  std::vector<int> var(m, -1);
  int nv = 0;
  for (int i = 0; i < m; ++i) {
    if (var[i] >= 0) continue;
    var[i] = nv;
    if (partner[i] >= 0) var[partner[i]] = nv;
    ++nv;
  }
  Vec mass(m);
  for (int i = 0; i < m; ++i) mass[i] = mu.atoms[i].mass;
  const double tot = mass.sum();
  // q = n+1 shares its maximizers with q = 1 since G_{n+1} = ((n+1)/omega_n) V G_1.
  const double qe = q == n + 1.0 ? 1.0 : q;
  const double e = n + qe - 1.0;

  auto residual_of = [&](const std::vector<double>& F, const std::vector<double>& h, double factor, double eq) {
    double r = 0.0;
    for (int i = 0; i < m; ++i)
      if (mass[i] > 0.0) r = std::max(r, std::abs(factor * h[i] * F[i] / eq - mass[i]) / mass[i]);
    return r;
  };

  Evaluator evaluate = [&](const Vec& y) {
    Eval E;
    std::vector<double> h(m);
    for (int i = 0; i < m; ++i) h[i] = std::exp(y[var[i]]);
    try {
      E.P.emplace(U, h);
    } catch (const Error&) {
      return E;
    }
    E.data = chord_data(*E.P, qe, cfg.measure);
    const double I = E.data.I;
    double ent = 0.0;
    for (int i = 0; i < m; ++i) ent += mass[i] * std::log(h[i]);
    E.J = -ent / tot + std::log(I) / e;
    E.grad = Vec::Zero(nv);
    for (int i = 0; i < m; ++i) E.grad[var[i]] += -mass[i] / tot + h[i] * E.data.F[i] / (e * I);
    // G(sK) = s^{n+q-1} G(K) with s^{n+q-1} = |mu| / I.
    E.residual = residual_of(E.data.F, h, tot / I, e);
    E.valid = std::isfinite(E.J);
    return E;
  };

  auto out = ascend(Vec::Zero(nv), evaluate, cfg, nullptr, [](const Eval& E) { return E.P && aspect(*E.P) < 1e-6; });

  SolverResult res;
  res.objective_trace = out.trace;
  res.iterations = out.iterations;
  const HPolytope& K0 = *out.last.P;
  const double Iq = chord_data(K0, q, cfg.measure).I;
  const double s = std::pow(tot / Iq, 1.0 / (n + q - 1.0));
  std::vector<double> hs(m);
  for (int i = 0; i < m; ++i) hs[i] = s * std::exp(out.y[var[i]]);
  res.body.emplace(U, hs);
  res.scale_lambda = s;
  auto fin = chord_data(*res.body, q, cfg.measure);
  res.residual = residual_of(fin.F, hs, 1.0, n + q - 1.0);
  res.grad_norm = out.last.grad.norm();
  const double tol = cfg.residual_tol + cfg.measure_tol_budget;
  int redundant = 0;
  for (int i = 0; i < m; ++i) {
    if (res.body->redundant(i)) ++redundant;
    if (mass[i] > 0.0 && std::abs(hs[i] * fin.F[i] / (n + q - 1.0) - mass[i]) / mass[i] > tol)
      res.unmatched_atoms.push_back(i);
  }
  if (out.collapsed || aspect(*res.body) < 1e-6) {
    res.status = SolverStatus::CollapseDetected;
  } else if (2 * redundant > m) {
    res.status = SolverStatus::DegenerateDrift;
  } else {
    res.status = res.residual <= tol ? SolverStatus::Converged : SolverStatus::NonConvergence;
  }
  return res;
}

}  // namespace chordgeom
