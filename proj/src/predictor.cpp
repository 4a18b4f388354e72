#include "mgl/predictor.hpp"

#include <algorithm>
#include <array>
#include <string>
#include <utility>

#include "mgl/errors.hpp"

namespace mgl::predictor {

namespace {

constexpr std::array<std::pair<CaseId, std::string_view>, 22> kCaseNames{{
    {CaseId::Cyclic, "CYCLIC"}, {CaseId::T1, "T1"},     {CaseId::T2, "T2"},
    {CaseId::T3, "T3"},         {CaseId::T4, "T4"},     {CaseId::T5a, "T5a"},
    {CaseId::T5b, "T5b"},       {CaseId::T6, "T6"},     {CaseId::T7, "T7"},
    {CaseId::T8, "T8"},         {CaseId::T9, "T9"},     {CaseId::T10, "T10"},
    {CaseId::T11, "T11"},       {CaseId::T12, "T12"},   {CaseId::T13, "T13"},
    {CaseId::T14, "T14"},       {CaseId::T15, "T15"},   {CaseId::T16, "T16"},
    {CaseId::T17a, "T17a"},     {CaseId::T17b, "T17b"}, {CaseId::T18, "T18"},
    {CaseId::T19, "T19"},
}};

int mod9(std::int64_t x) {
  const int r = static_cast<int>(x % 9);
  return r < 0 ? r + 9 : r;
}

bool is_seven_mod_nine(std::int64_t x) { return mod9(x) == 7; }

std::uint64_t abs_u64(const BigInt& x) { return static_cast<std::uint64_t>(abs(x)); }

void factor_into(std::uint64_t x, std::uint64_t trial_bound, std::vector<std::uint64_t>& out) {
  for (std::uint64_t d = 2; d <= trial_bound && d <= x / d; d += (d == 2 ? 1 : 2)) {
    if (x % d != 0) continue;
    out.push_back(d);
    while (x % d == 0) x /= d;
  }
  if (x == 1) return;
  // Every prime below min(trial_bound, sqrt(x)) has been removed.
  const unsigned __int128 bound_sq = static_cast<unsigned __int128>(trial_bound) * trial_bound;
  if (static_cast<unsigned __int128>(x) < bound_sq || x / (trial_bound + 1) < trial_bound + 1) {
    out.push_back(x);
    return;
  }
  throw ResourceError("factorization budget exhausted: cofactor " + std::to_string(x) +
                      " has no prime factor below " + std::to_string(trial_bound));
}

bool is_seven_branch(const LocalInvariants& inv) {
  return inv.p == 3 && (is_seven_mod_nine(inv.alpha_n) || is_seven_mod_nine(inv.beta_n));
}

}  // namespace

std::string_view case_name(CaseId id) {
  for (const auto& [c, name] : kCaseNames)
    if (c == id) return name;
  throw InternalError("unknown case id");
}

std::optional<CaseId> case_from_name(std::string_view name) {
  for (const auto& [c, n] : kCaseNames)
    if (n == name) return c;
  return std::nullopt;
}

GroupParams GroupParams::make(std::int64_t alpha, std::int64_t beta) {
  if (alpha == 1 || beta == 1) {
    throw DomainError("G(alpha, beta) requires alpha != 1 and beta != 1 (got alpha=" +
                      std::to_string(alpha) + ", beta=" + std::to_string(beta) + ")");
  }
  return GroupParams{alpha, beta, padic::epsilon(alpha, beta)};
}

BigInt prime_power(std::uint64_t p, unsigned v) { return big_pow(BigInt(p), v); }

std::vector<std::uint64_t> prime_support(const GroupParams& params, std::uint64_t trial_bound) {
  std::vector<std::uint64_t> primes;
  factor_into(abs_u64(BigInt(params.alpha) - 1), trial_bound, primes);
  factor_into(abs_u64(BigInt(params.beta) - 1), trial_bound, primes);
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  return primes;
}

LocalInvariants local_invariants(const GroupParams& params, std::uint64_t p) {
  const padic::PAdicSplit sa = padic::split(BigInt(params.alpha) - 1, p);
  const padic::PAdicSplit sb = padic::split(BigInt(params.beta) - 1, p);
  const unsigned m0 = sa.valuation.value();
  const unsigned n0 = sb.valuation.value();

  bool swap = m0 < n0;
  if (p == 3 && std::min(m0, n0) > 0) {
    const bool a7 = is_seven_mod_nine(params.alpha);
    const bool b7 = is_seven_mod_nine(params.beta);
    if (a7 != b7) swap = b7;
  }

  LocalInvariants inv;
  inv.p = p;
  inv.swapped = swap;
  inv.alpha_n = swap ? params.beta : params.alpha;
  inv.beta_n = swap ? params.alpha : params.beta;
  inv.m = swap ? n0 : m0;
  inv.n = swap ? m0 : n0;
  inv.u = swap ? sb.unit : sa.unit;
  inv.v = swap ? sa.unit : sb.unit;

  const padic::PAdicSplit sd = padic::split(BigInt(inv.alpha_n) - BigInt(inv.beta_n), p);
  inv.ell = sd.valuation;
  if (sd.valuation.is_finite()) inv.k = sd.unit;

  if (inv.n == 0 || inv.ell.is_infinite() || inv.m != inv.n) return inv;
  const unsigned m = inv.m;
  const unsigned ell = inv.ell.value();
  const BigInt& k = *inv.k;
  const BigInt u3 = inv.u * inv.u * inv.u;
  if (p != 2 && !is_seven_branch(inv)) {
    if (2 * ell == 3 * m) inv.s = padic::valuation(2 * k * k - u3, p);
  } else if (p == 2 && m > 1) {
    if (ell > m && ell + 3 <= 2 * m && 2 * ell + 2 == 3 * m + 1)
      inv.s = padic::valuation(k * k - u3, 2);
  }
  return inv;
}

CaseId classify(const LocalInvariants& inv, const GroupParams& params) {
  (void)params;
  const unsigned m = inv.m;
  const unsigned n = inv.n;
  if (n == 0) return CaseId::Cyclic;

  if (inv.p == 2) {
    if (n == 1) {
      if (m == 1) return CaseId::T10;
      if (m == 2) return CaseId::T12;
      return CaseId::T11;
    }
    if (m > n) return CaseId::T13;
    if (inv.ell >= 2LL * m) return CaseId::T14;
    const long long ell = inv.ell.value();
    if (ell == 2LL * m - 1) return CaseId::T15;
    if (ell == 2LL * m - 2) return CaseId::T16;
    if (ell <= m) throw InternalError("p = 2 with m = n requires ell > m");
    if (2 * ell + 2 == 3LL * m + 1) {
      if (!inv.s) throw InternalError("T17 branch without s");
      return *inv.s < (static_cast<long long>(m) - 3) / 2 ? CaseId::T17a : CaseId::T17b;
    }
    if (2 * ell + 2 > 3LL * m + 1) return CaseId::T18;
    return CaseId::T19;
  }

  if (is_seven_branch(inv)) {
    const bool a7 = is_seven_mod_nine(inv.alpha_n);
    const bool b7 = is_seven_mod_nine(inv.beta_n);
    if (a7 && b7) {
      if (inv.ell >= 3) return CaseId::T6;
      if (inv.ell == 2) return CaseId::T7;
      throw InternalError("alpha, beta = 7 mod 9 forces v_3(alpha - beta) >= 2");
    }
    if (!a7) throw InternalError("p = 3 normalization must place the 7 (mod 9) parameter first");
    switch (mod9(inv.beta_n)) {
      case 4: return CaseId::T8;
      case 1: return CaseId::T9;
      default: throw InternalError("beta' must be 1 or 4 mod 9 in the mixed p = 3 branch");
    }
  }

  if (inv.ell == static_cast<long long>(n)) return CaseId::T1;
  if (m != n) throw InternalError("ell > n forces m = n");
  if (inv.ell >= 2LL * m) return CaseId::T2;
  const long long ell = inv.ell.value();
  if (2 * ell < 3LL * m) return CaseId::T3;
  if (2 * ell > 3LL * m) return CaseId::T4;
  if (!inv.s) throw InternalError("T5 branch without s");
  return *inv.s < static_cast<long long>(m / 2) ? CaseId::T5a : CaseId::T5b;
}

StructureReport predict(const GroupParams& params, std::uint64_t p) {
  const LocalInvariants inv = local_invariants(params, p);
  if (inv.m == 0 && inv.n == 0) {
    throw DomainError("prime " + std::to_string(p) + " does not divide (alpha-1)(beta-1)");
  }
  const CaseId id = classify(inv, params);
  const unsigned m = inv.m;
  const unsigned n = inv.n;
  const unsigned ell = inv.ell.is_finite() ? inv.ell.value() : 0;
  const unsigned s = inv.s && inv.s->is_finite() ? inv.s->value() : 0;

  StructureReport r;
  r.p = p;
  r.case_id = id;
  auto set = [&r](unsigned e, unsigned f, unsigned va, unsigned vb, unsigned vc) {
    r.e = e;
    r.f = f;
    r.vA = va;
    r.vB = vb;
    r.vC = vc;
  };
  switch (id) {
    case CaseId::Cyclic: set(m, m > 0 ? 1 : 0, m, 0, 0); break;
    case CaseId::T1: set(4 * n + m, 3, m + n, 2 * n, n); break;
    case CaseId::T2: set(7 * m, 5, 3 * m, 3 * m, 2 * m); break;
    case CaseId::T3: set(2 * m + 3 * ell, 5, m + ell, m + ell, 2 * ell - m); break;
    case CaseId::T4: set(5 * m + ell, 5, m + ell, m + ell, 2 * m); break;
    case CaseId::T5a:
      set(s + 13 * m / 2, s == 0 ? 5 : 6, s + 5 * m / 2, s + 5 * m / 2, 2 * m + s);
      break;
    case CaseId::T5b: set(7 * m, 6, 3 * m, 3 * m, 5 * m / 2); break;
    case CaseId::T6: set(10, 7, 4, 4, 3); break;
    case CaseId::T7: set(8, 5, 3, 3, 2); break;
    case CaseId::T8: set(5, 3, 2, 2, 1); break;
    case CaseId::T9: set(n + 4, 3, 2, n + 1, 1); break;
    case CaseId::T10: set(4, 3, 2, 2, 2); break;
    // Normalized so the valuation-1 parameter is beta'.
    case CaseId::T11: set(m + 4, 3, m + 1, 2, 2); break;
    // The valuation-2 generator has order 16, not 8: its fourth power Y
    // satisfies Y^2 = X^2 Z^2 != 1. Both enumeration engines agree.
    case CaseId::T12: set(7, 4, 4, 2, 2); break;
    case CaseId::T13: set(m + 4 * n, 3, m + n, 2 * n, n + 1); break;
    case CaseId::T14:
    case CaseId::T15: set(7 * m - 3, 5, 3 * m - 1, 3 * m - 1, 2 * m); break;
    case CaseId::T16: set(7 * m - 3, 5, 3 * m - 1, 3 * m - 1, 2 * m - 1); break;
    case CaseId::T17a:
      set((13 * m + 2 * s - 3) / 2, 6, (5 * m + 2 * s + 1) / 2, (5 * m + 2 * s + 1) / 2, 2 * m + s);
      break;
    case CaseId::T17b: set(7 * m - 3, 6, 3 * m - 1, 3 * m - 1, (5 * m - 3) / 2); break;
    case CaseId::T18: set(5 * m + ell - 1, 5, ell + m + 1, ell + m + 1, 2 * m); break;
    case CaseId::T19: set(2 * m + 3 * ell, 5, ell + m, ell + m, 2 * ell - m + 1); break;
  }
  if (inv.swapped) std::swap(r.vA, r.vB);
  return r;
}

GroupPrediction predict_all(const GroupParams& params, std::uint64_t trial_bound) {
  GroupPrediction out;
  out.order = 1;
  for (const std::uint64_t p : prime_support(params, trial_bound)) {
    out.sylow.push_back(predict(params, p));
    out.order *= prime_power(p, out.sylow.back().e);
  }
  return out;
}

CyclicCheck is_cyclic(const GroupParams& params) {
  CyclicCheck out;
  out.cyclic = params.epsilon == 1;
  out.order = out.cyclic ? BigInt(abs((BigInt(params.alpha) - 1) * (BigInt(params.beta) - 1))) : BigInt(0);
  return out;
}

}  // namespace mgl::predictor
