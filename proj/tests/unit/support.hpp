#pragma once

#include <initializer_list>

#include "chordgeom/common.hpp"

namespace chordgeom::test {

inline Vec v(std::initializer_list<double> xs) {
  Vec r(static_cast<Eigen::Index>(xs.size()));
  int i = 0;
  for (double x : xs) r[i++] = x;
  return r;
}

inline double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace chordgeom::test

// Expect an Error carrying a given code.
#define EXPECT_CODE(stmt, c)                                   \
  do {                                                         \
    try {                                                      \
      stmt;                                                    \
      ADD_FAILURE() << "no error thrown by " #stmt;            \
    } catch (const ::chordgeom::Error& e__) {                  \
      EXPECT_EQ(e__.code(), ::chordgeom::ErrorCode::c) << e__.what(); \
    }                                                          \
  } while (0)
