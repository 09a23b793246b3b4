#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "chordgeom/body.hpp"
#include "chordgeom/dual_quermass.hpp"
#include "chordgeom/projection.hpp"

namespace chordgeom {

enum class ChordMethod { LineMC, VolumeForm, RieszDouble, ClosedForm, ProjectionQuadrature };

const char* method_name(ChordMethod m);
ChordMethod parse_method(const std::string& s);

struct ChordEstimate {
  double value = 0.0;
  double std_error = 0.0;
  ChordMethod method = ChordMethod::ClosedForm;
  long samples = 0;
  double q = 0.0;
  std::uint64_t seed = 0;
  bool variance_blowup = false;
  long resampled = 0;
};

struct LineSample {
  Vec direction;
  Vec base;
  double chord = 0.0;
};

// 10^{5 + n/2}, rounded.
long default_line_samples(int n);

// Uniform line through the disk of radius R about c, orthogonal to a random direction.
LineSample sample_line(const Body& K, const Vec& c, double R, std::mt19937_64& g);

ChordEstimate chord_line_mc(const Body& K, double q, long N, std::uint64_t seed);
ChordEstimate chord_volume_form(const Body& K, double q, long vol_N, const SphereQuadrature& quad, std::uint64_t seed);
ChordEstimate chord_riesz_double(const Body& K, double q, long N, std::uint64_t seed);
std::optional<ChordEstimate> chord_closed(const Body& K, double q);
// Polytopes with n in {2, 3}; std_error is the difference to a half-resolution grid.
ChordEstimate chord_projection(const HPolytope& P, double q, const ProjectionConfig& cfg = {});

// int_{K|u^perp} X_K(x, u)^q dx over the projection disk.
MCValue chord_directional(const Body& K, const Vec& u, double q, long M, std::uint64_t seed);

// I_q(B^n) for the unit ball.
double ball_chord_integral(int n, double q);

}  // namespace chordgeom
