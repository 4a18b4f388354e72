#pragma once

// p-adic valuations and modular evaluation of the auxiliary integers
// delta_a, gamma_a, lambda_a and mu_a attached to a Macdonald parameter a.

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>

#include "mgl/bigint.hpp"

namespace mgl::padic {

/// Non-negative integer valuation or +infinity (the valuation of 0).
class Valuation {
 public:
  constexpr Valuation() = default;
  constexpr explicit Valuation(unsigned v) : value_(v) {}

  static constexpr Valuation infinity() {
    Valuation v;
    v.infinite_ = true;
    return v;
  }

  constexpr bool is_infinite() const { return infinite_; }
  constexpr bool is_finite() const { return !infinite_; }
  /// Only meaningful when finite.
  constexpr unsigned value() const { return value_; }

  constexpr std::strong_ordering operator<=>(const Valuation& o) const {
    if (infinite_ || o.infinite_) return infinite_ <=> o.infinite_;
    return value_ <=> o.value_;
  }
  constexpr bool operator==(const Valuation& o) const = default;

  constexpr std::strong_ordering operator<=>(long long x) const {
    if (infinite_) return std::strong_ordering::greater;
    return static_cast<long long>(value_) <=> x;
  }
  constexpr bool operator==(long long x) const { return !infinite_ && value_ == x; }

 private:
  unsigned value_ = 0;
  bool infinite_ = false;
};

std::ostream& operator<<(std::ostream& os, const Valuation& v);

/// x = p^valuation * unit with p not dividing unit; the sign lives in unit.
/// For x = 0 the valuation is infinite and unit is 0.
struct PAdicSplit {
  std::uint64_t p = 0;
  Valuation valuation;
  BigInt unit;
};

/// Residue arithmetic modulo a fixed modulus >= 2.
class ModulusContext {
 public:
  explicit ModulusContext(BigInt modulus);

  const BigInt& modulus() const { return modulus_; }
  BigInt reduce(const BigInt& x) const { return mod_floor(x, modulus_); }
  BigInt mul(const BigInt& x, const BigInt& y) const { return reduce(x * y); }
  BigInt pow(const BigInt& base, const BigInt& exponent) const;

 private:
  BigInt modulus_;
};

PAdicSplit split(const BigInt& x, std::uint64_t p);
inline Valuation valuation(const BigInt& x, std::uint64_t p) { return split(x, p).valuation; }

/// sum_{i=0}^{count-1} a^i mod M, O(log count) steps.
BigInt geo_sum(const BigInt& a, const BigInt& count, const ModulusContext& ctx);

/// sum_{i=1}^{count-1} i * a^i mod M, O(log count) steps.
BigInt weighted_sum(const BigInt& a, const BigInt& count, const ModulusContext& ctx);

/// delta_a = (a-1)(a + 2a^2 + ... + (a-1)a^{a-1}) mod M. Requires a > 1.
BigInt delta_mod(const BigInt& a, const ModulusContext& ctx);

/// gamma_a = a^a - (1 + a + ... + a^{a-1}) mod M. Requires a > 1.
BigInt gamma_mod(const BigInt& a, const ModulusContext& ctx);

/// mu_a = a^{a^2+2} - a(1 + a + ... + a^{a^2-1}) mod M; zero for a in {-1, 0, 1}.
BigInt mu_mod(const BigInt& a, const ModulusContext& ctx);

inline constexpr std::uint64_t kDefaultLambdaBound = 10'000;

/// Exact delta_a as a big integer (a > 1, a <= bound).
BigInt delta_exact(const BigInt& a, std::uint64_t bound = kDefaultLambdaBound);

/// lambda_a = (a-1)(a + 2a^2 + ... + (delta_a - 1)a^{delta_a - 1}) mod M.
/// The count delta_a is formed exactly, so a is capped by `bound`
/// (ResourceError above it).
BigInt lambda_mod(const BigInt& a, const ModulusContext& ctx,
                  std::uint64_t bound = kDefaultLambdaBound);

/// gcd(|alpha-1|, |beta-1|). DomainError when alpha = 1 or beta = 1.
BigInt epsilon(const BigInt& alpha, const BigInt& beta);

/// Valuation read off a residue known only modulo p^precision.
struct ResidueValuation {
  unsigned value = 0;
  /// True when the residue vanished: the true valuation is >= value (= precision).
  bool lower_bound = false;
};

ResidueValuation valuation_of_residue(const BigInt& residue, std::uint64_t p, unsigned precision);

/// Valuation of a quantity available only through its residues. Evaluates
/// `residue_of` modulo p^N with N = expected + 4, doubling N while the residue
/// is zero, up to max_precision. Returns a lower bound if the cap is reached.
ResidueValuation adaptive_valuation(const std::function<BigInt(const ModulusContext&)>& residue_of,
                                    std::uint64_t p, unsigned expected,
                                    unsigned max_precision = 4096);

BigInt modular_inverse(const BigInt& x, const BigInt& modulus);

}  // namespace mgl::padic
