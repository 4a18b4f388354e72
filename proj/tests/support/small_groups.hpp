#pragma once

// Regular permutation representations of a few groups of order 16, built from
// their multiplication rules on normal forms x^i y^j.

#include <functional>
#include <vector>

#include "mgl/permgroup.hpp"

namespace mgl::test {

struct Pair16 {
  perm::Permutation x, y;
};

/// Elements x^i y^j (0 <= i < 8, j in {0,1}) with y^-1 x y = x^twist and
/// y^2 = x^square, index i + 8j. Right multiplication by x and by y.
inline Pair16 metacyclic16(int twist, int square) {
  auto index = [](int i, int j) { return static_cast<perm::Point>(((i % 8 + 8) % 8) + 8 * j); };
  std::vector<perm::Point> rx(16), ry(16);
  for (int j = 0; j < 2; ++j) {
    for (int i = 0; i < 8; ++i) {
      // x^i y^j x = x^(i + twist^j) y^j
      rx[index(i, j)] = index(i + (j ? twist : 1), j);
      ry[index(i, j)] = j ? index(i + square, 0) : index(i, 1);
    }
  }
  return {perm::Permutation(rx), perm::Permutation(ry)};
}

inline Pair16 quaternion16() { return metacyclic16(-1, 4); }
inline Pair16 dihedral16() { return metacyclic16(-1, 0); }

/// C16 on 16 points: x a 16-cycle, y = x^3.
inline Pair16 cyclic16() {
  std::vector<perm::Point> r(16);
  for (perm::Point i = 0; i < 16; ++i) r[i] = (i + 1) % 16;
  perm::Permutation x(r);
  return {x, x * x * x};
}

/// Generators of D8 x C2 on 6 points: D8 on {0..3}, C2 swapping {4,5}.
inline std::vector<perm::Permutation> d8_times_c2() {
  return {perm::Permutation::from_cycles(6, {{0, 1, 2, 3}}), perm::Permutation::from_cycles(6, {{0, 2}}),
          perm::Permutation::from_cycles(6, {{4, 5}})};
}

}  // namespace mgl::test
