#include "doctest.h"

#include "mgl/errors.hpp"
#include "mgl/padic.hpp"
#include "support/oracles.hpp"
#include "support/test_support.hpp"

using namespace mgl;
using namespace mgl::padic;
using test::naive_geo;
using test::naive_weighted;

namespace {

// Exact delta_a, gamma_a and mu_a straight from their definitions.
BigInt exact_delta(std::int64_t a) {
  BigInt s = 0, t = 1;
  for (std::int64_t i = 1; i < a; ++i) {
    t *= a;
    s += BigInt(i) * t;
  }
  return BigInt(a - 1) * s;
}

BigInt exact_gamma(std::int64_t a) {
  BigInt s = 0, t = 1;
  for (std::int64_t i = 0; i < a; ++i, t *= a) s += t;
  return t - s;  // t = a^a here
}

}  // namespace

TEST_CASE("split separates valuation and signed unit") {
  auto s = split(54, 3);
  CHECK(s.valuation == Valuation(3));
  CHECK(s.unit == 2);
  s = split(-27, 3);
  CHECK(s.valuation == Valuation(3));
  CHECK(s.unit == -1);
  s = split(20, 5);
  CHECK(s.valuation == Valuation(1));
  CHECK(s.unit == 4);
  s = split(0, 7);
  CHECK(s.valuation.is_infinite());
  CHECK(s.valuation > 1000000);
  CHECK_THROWS_AS(split(5, 1), DomainError);
}

TEST_CASE("geometric and weighted sums: fixed values") {
  CHECK(geo_sum(7, 0, ModulusContext(1000)) == 0);
  CHECK(geo_sum(7, 7, ModulusContext(1000000000)) == 137257);
  CHECK(geo_sum(2, 10, ModulusContext(1024)) == 1023);
  CHECK(weighted_sum(5, 1, ModulusContext(1000)) == 0);
  CHECK(weighted_sum(2, 2, ModulusContext(1000)) == 2);
  CHECK(weighted_sum(3, 4, ModulusContext(1000000)) == 102);
}

TEST_CASE("geometric and weighted sums agree with naive loops") {
  auto rng = test::rng("padic-sums");
  std::uniform_int_distribution<std::int64_t> base(-300, 300);
  std::uniform_int_distribution<std::uint64_t> count(0, 10000);
  std::uniform_int_distribution<std::int64_t> mod(2, 1000000007);
  for (int i = 0; i < 1000; ++i) {
    const BigInt a = base(rng);
    const std::uint64_t n = i < 20 ? static_cast<std::uint64_t>(i) : count(rng) % (i < 500 ? 64 : 10001);
    const BigInt m = mod(rng);
    const ModulusContext ctx(m);
    INFO("a=" << a << " n=" << n << " m=" << m);
    CHECK(geo_sum(a, n, ctx) == naive_geo(a, n, m));
    CHECK(weighted_sum(a, n, ctx) == naive_weighted(a, n, m));
  }
}

TEST_CASE("delta, gamma, mu, lambda: fixed values") {
  CHECK(delta_mod(2, ModulusContext(1000000)) == 2);
  CHECK(gamma_mod(2, ModulusContext(1000)) == 1);
  CHECK(mu_mod(0, ModulusContext(97)) == 0);
  CHECK(mu_mod(1, ModulusContext(97)) == 0);
  CHECK(mu_mod(-1, ModulusContext(97)) == 0);
  CHECK(mu_mod(2, ModulusContext(1000000000)) == 34);
  CHECK(lambda_mod(2, ModulusContext(1000000000)) == 2);
  CHECK_THROWS_AS(delta_mod(1, ModulusContext(10)), DomainError);
  CHECK_THROWS_AS(gamma_mod(0, ModulusContext(10)), DomainError);
  CHECK_THROWS_AS(lambda_mod(20000, ModulusContext(10)), ResourceError);
  CHECK_THROWS_AS(ModulusContext(1), DomainError);

  const BigInt m = big_pow(BigInt(3), 12);
  CHECK(delta_mod(7, ModulusContext(m)) == mod_floor(exact_delta(7), m));
  CHECK(valuation(exact_delta(7), 3) == Valuation(3));
  CHECK(delta_exact(7) == exact_delta(7));
}

TEST_CASE("delta = a * gamma modulo M") {
  auto rng = test::rng("padic-lomismo");
  std::uniform_int_distribution<std::int64_t> base(2, 200);
  std::uniform_int_distribution<std::int64_t> mod(2, 1000000000);
  for (int i = 0; i < 300; ++i) {
    const BigInt a = base(rng);
    const ModulusContext ctx(mod(rng));
    CHECK(delta_mod(a, ctx) == ctx.mul(a, gamma_mod(a, ctx)));
  }
  for (std::int64_t a = 2; a <= 40; ++a) {
    CHECK(exact_delta(a) == a * exact_gamma(a));
    const ModulusContext ctx(1000003);
    CHECK(gamma_mod(a, ctx) == ctx.reduce(exact_gamma(a)));
  }
}

TEST_CASE("lambda valuations") {
  for (std::int64_t a : {3, 5, 9}) {
    const unsigned n = valuation(BigInt(a - 1), 2).value();
    const auto r = adaptive_valuation([a](const ModulusContext& c) { return lambda_mod(a, c); }, 2, 3 * n - 2);
    CHECK_FALSE(r.lower_bound);
    CHECK(r.value == 3 * n - 2);
  }
  const auto r6 = adaptive_valuation([](const ModulusContext& c) { return lambda_mod(6, c); }, 5, 3);
  CHECK(r6.value >= 3);
}

TEST_CASE("valuation laws for (a-1) gamma_a") {
  auto rng = test::rng("padic-valuation-laws");
  const std::uint64_t primes[] = {5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  std::uniform_int_distribution<int> pick(0, 9);
  std::uniform_int_distribution<std::int64_t> unit(1, 400);
  for (int i = 0; i < 100; ++i) {
    const std::uint64_t p = primes[pick(rng)];
    const unsigned m = 1 + static_cast<unsigned>(rng() % 2);
    std::int64_t u = unit(rng);
    while (u % static_cast<std::int64_t>(p) == 0) ++u;
    const BigInt a = 1 + big_pow(BigInt(p), m) * u;
    const auto r = adaptive_valuation([&](const ModulusContext& c) { return c.mul(a - 1, gamma_mod(a, c)); }, p, 3 * m);
    INFO("a=" << a << " p=" << p);
    CHECK_FALSE(r.lower_bound);
    CHECK(r.value == 3 * m);
  }
  for (std::int64_t a = 3; a < 400; a += 2) {
    const unsigned v = valuation(BigInt(a - 1), 2).value();
    const auto r = adaptive_valuation([a](const ModulusContext& c) { return c.mul(a - 1, gamma_mod(a, c)); }, 2, 3 * v - 1);
    INFO("a=" << a);
    CHECK(r.value == 3 * v - 1);
  }
  for (std::int64_t a = 7; a < 700; a += 9) {
    const auto g = adaptive_valuation([a](const ModulusContext& c) { return c.mul(a - 1, gamma_mod(a, c)); }, 3, 4);
    const auto mu = adaptive_valuation([a](const ModulusContext& c) { return c.mul(a - 1, mu_mod(a, c)); }, 3, 4);
    INFO("a=" << a);
    CHECK((g.value == 4 || mu.value == 4));
  }
}

TEST_CASE("valuation read-off never overstates") {
  const BigInt m = big_pow(BigInt(5), 4);
  auto r = valuation_of_residue(0, 5, 4);
  CHECK(r.lower_bound);
  CHECK(r.value == 4);
  r = valuation_of_residue(mod_floor(BigInt(250), m), 5, 4);
  CHECK_FALSE(r.lower_bound);
  CHECK(r.value == 3);
}

TEST_CASE("epsilon and modular inverse") {
  CHECK(epsilon(7, 34) == 3);
  CHECK(epsilon(4, 6) == 1);
  CHECK(epsilon(-2, 7) == 3);
  CHECK_THROWS_AS(epsilon(1, 5), DomainError);
  auto rng = test::rng("padic-inverse");
  for (int i = 0; i < 200; ++i) {
    const BigInt m = 2 + rng() % 100000;
    BigInt x = rng() % 1000000;
    if (boost::multiprecision::gcd(x, m) != 1) continue;
    CHECK(mod_floor(x * modular_inverse(x, m), m) == 1 % m);
  }
}
