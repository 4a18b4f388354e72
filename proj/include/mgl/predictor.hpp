#pragma once

// Closed-form structure of the Sylow subgroups of the Macdonald group
//   G(alpha, beta) = < A, B | A^[A,B] = A^alpha, B^[B,A] = B^beta >.
// For each prime p dividing (alpha-1)(beta-1) the Sylow p-subgroup G_p is
// classified by valuations and congruences of alpha, beta into one of 22
// tags, each carrying |G_p|, the nilpotency class and the orders of the
// images of A, B and C = [A, B].

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "mgl/bigint.hpp"
#include "mgl/padic.hpp"

namespace mgl::predictor {

using padic::Valuation;

struct GroupParams {
  std::int64_t alpha = 0;
  std::int64_t beta = 0;
  BigInt epsilon;  // gcd(alpha-1, beta-1)

  /// DomainError when alpha = 1 or beta = 1 (the group is infinite).
  static GroupParams make(std::int64_t alpha, std::int64_t beta);
};

/// Per-prime data after normalization. (alpha', beta') is (alpha, beta),
/// or (beta, alpha) when `swapped`.
struct LocalInvariants {
  std::uint64_t p = 0;
  unsigned m = 0;  // v_p(alpha' - 1)
  unsigned n = 0;  // v_p(beta' - 1)
  BigInt u;        // (alpha' - 1) / p^m
  BigInt v;        // (beta' - 1) / p^n
  Valuation ell;   // v_p(alpha' - beta'), infinite iff alpha = beta
  std::optional<BigInt> k;  // (alpha' - beta') / p^ell, absent when ell is infinite
  /// v_p(2k^2 - u^3) (p odd) or v_2(k^2 - u^3), only in the two branches that need it.
  std::optional<Valuation> s;
  bool swapped = false;

  std::int64_t alpha_n = 0;  // alpha'
  std::int64_t beta_n = 0;   // beta'
};

enum class CaseId {
  Cyclic,
  T1, T2, T3, T4, T5a, T5b, T6, T7, T8, T9, T10,
  T11, T12, T13, T14, T15, T16, T17a, T17b, T18, T19,
};

std::string_view case_name(CaseId id);
std::optional<CaseId> case_from_name(std::string_view name);

/// o(A) = p^vA, o(B) = p^vB, o(C) = p^vC for the original generators.
struct StructureReport {
  std::uint64_t p = 0;
  unsigned e = 0;  // v_p(|G_p|)
  unsigned f = 0;  // nilpotency class
  unsigned vA = 0;
  unsigned vB = 0;
  unsigned vC = 0;
  CaseId case_id = CaseId::Cyclic;
};

inline constexpr std::uint64_t kDefaultTrialBound = 1'000'000;

/// Sorted distinct primes dividing (alpha-1)(beta-1). Trial division up to
/// `trial_bound`; a leftover cofactor below trial_bound^2 is prime, anything
/// larger raises ResourceError naming the cofactor.
std::vector<std::uint64_t> prime_support(const GroupParams& params,
                                         std::uint64_t trial_bound = kDefaultTrialBound);

LocalInvariants local_invariants(const GroupParams& params, std::uint64_t p);

CaseId classify(const LocalInvariants& inv, const GroupParams& params);

StructureReport predict(const GroupParams& params, std::uint64_t p);

struct GroupPrediction {
  std::vector<StructureReport> sylow;
  BigInt order;  // prod p^e
};

GroupPrediction predict_all(const GroupParams& params,
                            std::uint64_t trial_bound = kDefaultTrialBound);

struct CyclicCheck {
  bool cyclic = false;
  BigInt order;  // |(alpha-1)(beta-1)| when cyclic, else 0
};

CyclicCheck is_cyclic(const GroupParams& params);

/// p^v as a big integer.
BigInt prime_power(std::uint64_t p, unsigned v);

}  // namespace mgl::predictor
