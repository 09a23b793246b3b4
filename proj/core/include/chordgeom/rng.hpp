#pragma once

#include <cstdint>
#include <random>

#include "chordgeom/common.hpp"

namespace chordgeom {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Named substreams: every estimator keys its generator by (seed, stream tag, block).
inline std::mt19937_64 substream(std::uint64_t seed, std::uint64_t tag, std::uint64_t block) {
  std::uint64_t s = splitmix64(seed ^ splitmix64(tag));
  s = splitmix64(s ^ splitmix64(block + 0x632be59bd9b4e019ULL));
  return std::mt19937_64(s);
}

namespace stream {
constexpr std::uint64_t line_mc = 0x11;
constexpr std::uint64_t volume_form = 0x12;
constexpr std::uint64_t riesz = 0x13;
constexpr std::uint64_t directional = 0x14;
constexpr std::uint64_t sphere_mc = 0x15;
constexpr std::uint64_t riesz_dual = 0x16;
constexpr std::uint64_t signed_dual = 0x17;
constexpr std::uint64_t corpus = 0x21;
}  // namespace stream

inline Vec random_direction(int n, std::mt19937_64& g) {
  std::normal_distribution<double> N(0.0, 1.0);
  Vec u(n);
  double r = 0.0;
  do {
    for (int i = 0; i < n; ++i) u[i] = N(g);
    r = u.norm();
  } while (r < 1e-12);
  return u / r;
}

inline double uniform01(std::mt19937_64& g) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(g);
}

}  // namespace chordgeom
