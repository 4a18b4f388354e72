#pragma once

// Smith normal form over arbitrary-precision integers, and the abelian seed
// groups <x, y, z> whose orders anchor the two large-exponent families.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mgl/bigint.hpp"

namespace mgl::snf {

class IntMatrix {
 public:
  IntMatrix(std::size_t rows, std::size_t cols);
  /// Row-major entries. DomainError when the count does not match.
  IntMatrix(std::size_t rows, std::size_t cols, std::vector<BigInt> entries);
  IntMatrix(std::initializer_list<std::initializer_list<BigInt>> rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  BigInt& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
  const BigInt& operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

  std::string to_string() const;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<BigInt> a_;
};

/// Nonzero invariant factors d_1 | d_2 | ... | d_r, all positive.
std::vector<BigInt> smith_normal_form(IntMatrix m);

/// Order of Z^n / (column span), n = rows. nullopt when the quotient is infinite.
std::optional<BigInt> abelian_order(const IntMatrix& relations);

/// p-part of x (x != 0).
BigInt p_part(const BigInt& x, std::uint64_t p);

struct SeedCheck {
  IntMatrix matrix;
  std::optional<BigInt> order;  // abelian_order(matrix)
  BigInt claimed;               // the order the construction predicts
  std::uint64_t p = 0;
  bool agrees = false;          // p-parts of order and claim coincide
};

/// Seed group of the odd-prime family with m even and 2 ell = 3m:
///   [ p^(ell+q)  p^m w_a      p^ell  2 p^ell k ]
///   [ 0          p^(m/2) w_b  -p^m   0         ]
///   [ 0          -p^(m/2) k   0      -p^m u    ]
/// with 2w = u^2 (mod p^m), corrected to u^2 - 2*3^(m-1) u when p = 3.
/// Claimed order p^(3m+q). When q is given it must equal min(s, m/2) for
/// s = v_p(2k^2 - u^3); otherwise that value is used. DomainError on
/// inadmissible parameters.
SeedCheck teo5_seed(std::uint64_t p, unsigned m, unsigned ell, const BigInt& k, const BigInt& u,
                    const BigInt& v, std::optional<unsigned> q = std::nullopt);

/// Seed group of the p = 2 family with m odd >= 5 and 2 ell + 2 = 3m + 1:
///   [ 2^(ell+q+1)  2^(m-1) u^2      2^ell       2^ell t k ]
///   [ 0            2^(m-q-1) v^2    -2^(ell-q)  0         ]
///   [ 0            -2^(ell-m+1) k   0           -2^m u    ]
/// with r = (m-3)/2, t = 1 - 2^r, q = min(s, r), s = v_2(k^2 - u^3).
/// Claimed order 2^((7m-1)/2).
SeedCheck teo17_seed(unsigned m, unsigned ell, const BigInt& k, const BigInt& u, const BigInt& v,
                     std::optional<unsigned> q = std::nullopt);

}  // namespace mgl::snf
