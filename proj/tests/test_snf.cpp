#include "doctest.h"

#include <functional>

#include "mgl/errors.hpp"
#include "mgl/padic.hpp"
#include "mgl/snf.hpp"
#include "support/oracles.hpp"
#include "support/test_support.hpp"

using namespace mgl;
using namespace mgl::snf;
using test::Dense;
using test::det;
using test::determinantal;
using test::parallelepiped_points;

namespace {

IntMatrix to_matrix(const Dense& a) {
  IntMatrix m(a.size(), a[0].size());
  for (std::size_t r = 0; r < a.size(); ++r)
    for (std::size_t c = 0; c < a[0].size(); ++c) m(r, c) = a[r][c];
  return m;
}

Dense random_dense(std::mt19937_64& rng, std::size_t rows, std::size_t cols) {
  std::uniform_int_distribution<std::int64_t> d(-20, 20);
  Dense a(rows, std::vector<std::int64_t>(cols));
  for (auto& row : a)
    for (auto& x : row) x = d(rng);
  return a;
}

}  // namespace

TEST_CASE("Smith normal form examples") {
  using V = std::vector<BigInt>;
  CHECK(smith_normal_form(IntMatrix{{2, 0}, {0, 3}}) == V{1, 6});
  CHECK(smith_normal_form(IntMatrix(3, 2)).empty());
  CHECK(smith_normal_form(IntMatrix{{4, 0}, {0, 6}}) == V{2, 12});
  CHECK(smith_normal_form(IntMatrix{{-5}}) == V{5});
  CHECK(smith_normal_form(IntMatrix{{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}}) == V{2, 6, 12});

  const BigInt p = 5;
  CHECK(abelian_order(IntMatrix{{big_pow(p, 3), 0}, {0, big_pow(p, 4)}}) == big_pow(p, 7));
  CHECK_FALSE(abelian_order(IntMatrix{{0}, {0}}));
  CHECK_FALSE(abelian_order(IntMatrix{{2, 4}, {3, 6}}));
  CHECK(abelian_order(IntMatrix(0, 0)) == 1);
  CHECK_THROWS_AS(IntMatrix(2, 2, std::vector<BigInt>{1, 2, 3}), DomainError);
  CHECK(p_part(BigInt(-2 * 2 * 2 * 3 * 5), 2) == 8);
  CHECK_THROWS_AS(p_part(0, 3), DomainError);
}

TEST_CASE("huge entries") {
  const BigInt big = big_pow(BigInt(7), 60);
  const auto d = smith_normal_form(IntMatrix{{big * 3, big * 6}, {big * 2, big * 5}});
  REQUIRE(d.size() == 2);
  CHECK(d[0] == big);
  CHECK(d[1] == big * 3);
}

TEST_CASE("orders agree with brute-force coset counting") {
  auto rng = test::rng("snf-bruteforce");
  int checked = 0;
  for (int trial = 0; trial < 4000; ++trial) {
    const std::size_t n = 2 + trial % 2;
    const auto a = random_dense(rng, n, n);
    const auto d = det(a);
    if (d == 0) {
      CHECK_FALSE(abelian_order(to_matrix(a)));
      continue;
    }
    if (std::abs(d) > 10000) continue;
    CHECK(abelian_order(to_matrix(a)) == std::abs(d));
    CHECK(parallelepiped_points(a) == std::abs(d));
    ++checked;
  }
  CHECK(checked > 500);
}

TEST_CASE("invariant factors match determinantal divisors") {
  auto rng = test::rng("snf-determinantal");
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t rows = 1 + rng() % 3, cols = 1 + rng() % 4;
    auto a = random_dense(rng, rows, cols);
    if (trial % 3 == 0) {
      // Low-rank input: a row that is a combination of the others.
      for (std::size_t c = 0; c < cols; ++c) a[rows - 1][c] = rows > 1 ? 2 * a[0][c] : 0;
    }
    const auto f = smith_normal_form(to_matrix(a));
    INFO("trial " << trial);
    for (std::size_t i = 1; i < f.size(); ++i) CHECK(f[i] % f[i - 1] == 0);
    std::int64_t prev = 1;
    std::size_t rank = 0;
    for (std::size_t k = 1; k <= std::min(rows, cols); ++k) {
      const auto dk = determinantal(a, k);
      if (dk == 0) break;
      rank = k;
      REQUIRE(k <= f.size());
      CHECK(f[k - 1] == dk / prev);
      prev = dk;
    }
    CHECK(f.size() == rank);
  }
}

TEST_CASE("odd-prime seed group") {
  auto r = teo5_seed(5, 2, 3, 1, 1, 6, 0);
  REQUIRE(r.order);
  CHECK(p_part(*r.order, 5) == big_pow(BigInt(5), 6));
  CHECK(r.claimed == big_pow(BigInt(5), 6));
  CHECK(r.agrees);
  r = teo5_seed(5, 2, 3, 1, 3, 8, 1);
  CHECK(r.claimed == big_pow(BigInt(5), 7));
  CHECK(r.agrees);
  r = teo5_seed(7, 2, 3, 1, 2, 9);  // 2 - 8 = -6: s = 0
  CHECK(r.agrees);

  CHECK_THROWS_AS(teo5_seed(5, 2, 3, 1, 5, 10), DomainError);
  CHECK_THROWS_AS(teo5_seed(5, 3, 3, 1, 1, 6), DomainError);
  CHECK_THROWS_AS(teo5_seed(5, 2, 4, 1, 1, 6), DomainError);
  CHECK_THROWS_AS(teo5_seed(5, 2, 3, 1, 1, 2), DomainError);
  CHECK_THROWS_AS(teo5_seed(5, 2, 3, 1, 1, 6, 1), DomainError);
  CHECK_THROWS_AS(teo5_seed(2, 2, 3, 1, 1, 3), DomainError);
}

TEST_CASE("odd-prime seed grid, both q branches") {
  for (std::uint64_t p : {5, 7, 11}) {
    for (unsigned m : {2u, 4u}) {
      const unsigned ell = 3 * m / 2;
      const BigInt pm = big_pow(BigInt(p), m);
      bool low = false, high = false;
      for (std::int64_t u = 1; u < 60 && !(low && high); ++u) {
        for (std::int64_t k = 1; k < 400 && !(low && high); ++k) {
          if (u % static_cast<std::int64_t>(p) == 0 || k % static_cast<std::int64_t>(p) == 0) continue;
          const auto s = padic::valuation(2 * BigInt(k) * k - BigInt(u) * u * u, p);
          const bool is_high = s >= m / 2;
          if (is_high ? high : low) continue;
          const BigInt v = u + big_pow(BigInt(p), ell - m);
          const auto r = teo5_seed(p, m, ell, k, u, v);
          INFO("p=" << p << " m=" << m << " k=" << k << " u=" << u);
          REQUIRE(r.order);
          const unsigned q = is_high ? m / 2 : s.value();
          CHECK(r.claimed == big_pow(BigInt(p), 3 * m + q));
          CHECK(p_part(*r.order, p) == r.claimed);
          CHECK(r.agrees);
          (is_high ? high : low) = true;
        }
      }
      CHECK(low);
      CHECK(high);
    }
  }
}

TEST_CASE("2-adic seed group") {
  auto r = teo17_seed(5, 7, 1, 1, 1);
  REQUIRE(r.order);
  CHECK(r.claimed == big_pow(BigInt(2), 17));
  CHECK(p_part(*r.order, 2) == r.claimed);
  CHECK(r.agrees);
  CHECK_THROWS_AS(teo17_seed(4, 7, 1, 1, 1), DomainError);
  CHECK_THROWS_AS(teo17_seed(3, 4, 1, 1, 1), DomainError);
  CHECK_THROWS_AS(teo17_seed(5, 8, 1, 1, 1), DomainError);
  CHECK_THROWS_AS(teo17_seed(5, 7, 2, 1, 1), DomainError);
  CHECK_THROWS_AS(teo17_seed(5, 7, 1, 1, 3), DomainError);
}

TEST_CASE("2-adic seed grid, both q branches where they exist") {
  for (unsigned m : {5u, 7u, 9u}) {
    const unsigned ell = (3 * m - 1) / 2;
    const unsigned r = (m - 3) / 2;
    bool low = false, high = false;
    for (std::int64_t u = 1; u < 200 && !(low && high); u += 2) {
      for (std::int64_t k = 1; k < 200 && !(low && high); k += 2) {
        const auto s = padic::valuation(BigInt(k) * k - BigInt(u) * u * u, 2);
        const bool is_high = s >= r;
        if (is_high ? high : low) continue;
        const BigInt v = u + big_pow(BigInt(2), ell - m);
        const auto c = teo17_seed(m, ell, k, u, v);
        INFO("m=" << m << " k=" << k << " u=" << u);
        REQUIRE(c.order);
        CHECK(c.claimed == big_pow(BigInt(2), (7 * m - 1) / 2));
        CHECK(p_part(*c.order, 2) == c.claimed);
        CHECK(c.agrees);
        (is_high ? high : low) = true;
      }
    }
    CHECK(high);
    // s >= 1 always (k, u odd), so the low branch needs r >= 2.
    CHECK(low == (r >= 2));
  }
}
