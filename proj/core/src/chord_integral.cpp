#include "chordgeom/chord_integral.hpp"

#include <algorithm>
#include <cmath>

#include "chordgeom/parallel.hpp"

namespace chordgeom {

const char* method_name(ChordMethod m) {
  switch (m) {
    case ChordMethod::LineMC: return "line_mc";
    case ChordMethod::VolumeForm: return "volume_form";
    case ChordMethod::RieszDouble: return "riesz_double";
    case ChordMethod::ClosedForm: return "closed_form";
    case ChordMethod::ProjectionQuadrature: return "projection_quadrature";
  }
  return "unknown";
}

ChordMethod parse_method(const std::string& s) {
  for (ChordMethod m : {ChordMethod::LineMC, ChordMethod::VolumeForm, ChordMethod::RieszDouble, ChordMethod::ClosedForm,
                        ChordMethod::ProjectionQuadrature})
    if (s == method_name(m)) return m;
  throw Error(ErrorCode::Precondition, "unknown method '" + s + "'");
}

long default_line_samples(int n) { return std::lround(std::pow(10.0, 5.0 + 0.5 * n)); }

double ball_chord_integral(int n, double q) {
  return std::pow(2.0, q - 1.0) * (n - 1) * omega(n - 1) * beta_fn(0.5 * (n - 1), 0.5 * (q + 2.0));
}

namespace {

constexpr int kBlocks = 32;

struct BlockStats {
  double sum = 0.0;
  double max_term = 0.0;
  long count = 0;
  long resampled = 0;
};

// Jackknife over blocks for an estimator c * mean(terms).
void finish(ChordEstimate& est, const std::vector<BlockStats>& B, double c) {
  double tot = 0.0;
  long n = 0;
  for (const auto& b : B) {
    tot += b.sum;
    n += b.count;
  }
  est.value = c * tot / n;
  double var = 0.0;
  for (const auto& b : B) {
    const double loo = c * (tot - b.sum) / (n - b.count);
    var += (loo - est.value) * (loo - est.value);
  }
  est.std_error = std::sqrt(var * (B.size() - 1.0) / B.size());
  est.samples = n;
}

long block_count(long N, int b) { return N / kBlocks + (b < N % kBlocks ? 1 : 0); }

Vec disk_point(const Vec& u, double R, std::mt19937_64& g) {
  const int n = static_cast<int>(u.size());
  Vec w;
  double r = 0.0;
  do {
    w = random_direction(n, g);
    w -= w.dot(u) * u;
    r = w.norm();
  } while (r < 1e-8);
  w /= r;
  return w * (R * std::pow(uniform01(g), 1.0 / (n - 1)));
}

}  // namespace

LineSample sample_line(const Body& K, const Vec& c, double R, std::mt19937_64& g) {
  LineSample s;
  s.direction = random_direction(dim(K), g);
  s.base = c + disk_point(s.direction, R, g);
  s.chord = xray(K, s.base, s.direction);
  return s;
}

ChordEstimate chord_line_mc(const Body& K, double q, long N, std::uint64_t seed) {
  if (!(q > -1.0)) throw Error(ErrorCode::Precondition, "line Monte Carlo needs q > -1");
  if (N < 1000) throw Error(ErrorCode::Precondition, "line Monte Carlo needs N >= 1000");
  const int n = dim(K);
  const Vec c = reference_center(K);
  const double R = circumradius(K, c) * (1.0 + 1e-12);
  const double tiny = 1e-14 * diameter(K);
  std::vector<BlockStats> B(kBlocks);
  parallel_for(kBlocks, [&](int b) {
    auto g = substream(seed, stream::line_mc, b);
    BlockStats& st = B[b];
    st.count = block_count(N, b);
    for (long i = 0; i < st.count; ++i) {
      Vec u = random_direction(n, g);
      double X = xray(K, c + disk_point(u, R, g), u);
      if (q < 0.0) {
        while (X > 0.0 && X < tiny) {
          ++st.resampled;
          X = xray(K, c + disk_point(u, R, g), u);
        }
      }
      if (X > 0.0) {
        const double t = std::pow(X, q);
        st.sum += t;
        st.max_term = std::max(st.max_term, t);
      }
    }
  });
  ChordEstimate est;
  est.method = ChordMethod::LineMC;
  est.q = q;
  est.seed = seed;
  finish(est, B, omega(n - 1) * std::pow(R, n - 1));
  double tot = 0.0, mx = 0.0;
  for (const auto& b : B) {
    tot += b.sum;
    mx = std::max(mx, b.max_term);
    est.resampled += b.resampled;
  }
  est.variance_blowup = q < 0.0 && mx > 0.01 * tot;
  return est;
}

ChordEstimate chord_volume_form(const Body& K, double q, long vol_N, const SphereQuadrature& quad, std::uint64_t seed) {
  if (!(q > 0.0)) throw Error(ErrorCode::Precondition, "volume form needs q > 0");
  if (vol_N < kBlocks) throw Error(ErrorCode::Precondition, "volume form needs at least 32 points");
  const int n = dim(K);
  std::vector<BlockStats> B(kBlocks);
  parallel_for(kBlocks, [&](int b) {
    auto g = substream(seed, stream::volume_form, b);
    BlockStats& st = B[b];
    st.count = block_count(vol_N, b);
    for (long i = 0; i < st.count; ++i) {
      Vec z = sample_uniform(K, g);
      while (locate(K, z) != PointLocation::Interior) z = sample_uniform(K, g);
      st.sum += dual_v(K, z, q - 1.0, quad);
    }
  });
  ChordEstimate est;
  est.method = ChordMethod::VolumeForm;
  est.q = q;
  est.seed = seed;
  finish(est, B, q / omega(n) * volume(K));
  return est;
}

ChordEstimate chord_riesz_double(const Body& K, double q, long N, std::uint64_t seed) {
  if (!(q > 1.0)) throw Error(ErrorCode::Precondition, "Riesz double integral needs q > 1");
  const int n = dim(K);
  const double D = diameter(K);
  const double V = volume(K);
  std::vector<BlockStats> B(kBlocks);
  parallel_for(kBlocks, [&](int b) {
    auto g = substream(seed, stream::riesz, b);
    BlockStats& st = B[b];
    st.count = block_count(N, b);
    for (long i = 0; i < st.count; ++i) {
      Vec x = sample_uniform(K, g);
      Vec u = random_direction(n, g);
      // Radius drawn with density proportional to r^{q-2} on [0, D].
      const double r = D * std::pow(uniform01(g), 1.0 / (q - 1.0));
      if (boundary_level(K, x + r * u) <= 0.0) st.sum += 1.0;
    }
  });
  ChordEstimate est;
  est.method = ChordMethod::RieszDouble;
  est.q = q;
  est.seed = seed;
  finish(est, B, q * V * std::pow(D, q - 1.0));
  return est;
}

std::optional<ChordEstimate> chord_closed(const Body& K, double q) {
  const int n = dim(K);
  ChordEstimate est;
  est.method = ChordMethod::ClosedForm;
  est.q = q;
  if (auto B = std::get_if<Ball>(&K)) {
    if (!(q > -1.0)) return std::nullopt;
    est.value = std::pow(B->radius, n + q - 1.0) * ball_chord_integral(n, q);
    return est;
  }
  if (q == 0.0) {
    est.value = omega(n - 1) * surface_area(K) / (n * omega(n));
  } else if (q == 1.0) {
    est.value = volume(K);
  } else if (q == n + 1.0) {
    const double V = volume(K);
    est.value = (n + 1.0) * V * V / omega(n);
  } else {
    return std::nullopt;
  }
  return est;
}

ChordEstimate chord_projection(const HPolytope& P, double q, const ProjectionConfig& cfg) {
  ChordEstimate est;
  est.method = ChordMethod::ProjectionQuadrature;
  est.q = q;
  auto full = projection_chord(P, q, cfg, false);
  ProjectionConfig half = cfg;
  half.n_theta = std::max(2, cfg.n_theta / 2);
  half.n_phi = std::max(4, cfg.n_phi / 2);
  half.n_circle = std::max(8, cfg.n_circle / 2);
  half.n4_theta = std::max(2, cfg.n4_theta / 2);
  half.n4_phi = std::max(4, cfg.n4_phi / 2);
  auto coarse = projection_chord(P, q, half, false);
  est.value = full.I;
  est.std_error = std::abs(full.I - coarse.I);
  est.samples = full.directions;
  return est;
}

MCValue chord_directional(const Body& K, const Vec& u, double q, long M, std::uint64_t seed) {
  if (!(q > -1.0)) throw Error(ErrorCode::Precondition, "directional integral needs q > -1");
  const int n = dim(K);
  const Vec uu = u.normalized();
  const Vec c = reference_center(K);
  const double R = circumradius(K, c) * (1.0 + 1e-12);
  std::vector<BlockStats> B(kBlocks);
  for (int b = 0; b < kBlocks; ++b) {
    auto g = substream(seed, stream::directional, b);
    BlockStats& st = B[b];
    st.count = block_count(M, b);
    for (long i = 0; i < st.count; ++i) {
      const double X = xray(K, c + disk_point(uu, R, g), uu);
      if (X > 0.0) st.sum += std::pow(X, q);
    }
  }
  ChordEstimate tmp;
  finish(tmp, B, omega(n - 1) * std::pow(R, n - 1));
  MCValue out;
  out.value = tmp.value;
  out.std_error = tmp.std_error;
  out.samples = tmp.samples;
  return out;
}

}  // namespace chordgeom
