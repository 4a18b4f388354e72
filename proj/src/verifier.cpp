#include "mgl/verifier.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <limits>
#include <string>
#include <utility>

#include "mgl/errors.hpp"
#include "mgl/padic.hpp"
#include "mgl/pquotient.hpp"

namespace mgl::verify {

using perm::Permutation;

std::string_view engine_name(Engine e) {
  switch (e) {
    case Engine::Auto: return "auto";
    case Engine::ToddCoxeter: return "tc";
    case Engine::PQuotient: return "pq";
  }
  return "auto";
}

std::optional<Engine> engine_from_name(std::string_view name) {
  if (name == "auto") return Engine::Auto;
  if (name == "tc") return Engine::ToddCoxeter;
  if (name == "pq") return Engine::PQuotient;
  return std::nullopt;
}

std::string_view status_name(Status s) {
  switch (s) {
    case Status::Match: return "MATCH";
    case Status::Mismatch: return "MISMATCH";
    case Status::SkippedResource: return "SKIPPED_RESOURCE";
    case Status::Error: return "ERROR";
  }
  return "ERROR";
}

std::size_t default_max_cosets() {
  const char* env = std::getenv("MGL_MAX_COSETS");
  if (env == nullptr || *env == '\0') return fp::kDefaultMaxCosets;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (*end != '\0' || v == 0 || env[0] == '-') {
    throw DomainError(std::string("MGL_MAX_COSETS must be a positive integer, got '") + env + "'");
  }
  return static_cast<std::size_t>(v);
}

namespace {

// x^E where E is known modulo o(x) only through `exponent_mod`.
Permutation power_reduced(const Permutation& x, const BigInt& order,
                          const std::function<BigInt(const padic::ModulusContext&)>& exponent_mod) {
  if (order == 1) return Permutation::identity(x.degree());
  return x.pow(exponent_mod(padic::ModulusContext(order)));
}

// base^t mod M for any integer t; base must be a unit mod M.
BigInt unit_pow(const BigInt& base, const BigInt& t, const padic::ModulusContext& ctx) {
  if (t >= 0) return ctx.pow(base, t);
  return ctx.pow(padic::modular_inverse(base, ctx.modulus()), -t);
}

bool commutes(const Permutation& x, const Permutation& y) { return x * y == y * x; }

}  // namespace

std::vector<RelationResult> relation_checks(const Permutation& a, const Permutation& b, std::int64_t alpha,
                                            std::int64_t beta, const BigInt& group_order) {
  const BigInt oa = perm::element_order(a);
  const BigInt ob = perm::element_order(b);
  const Permutation c = perm::commutator(a, b);
  const BigInt oc = perm::element_order(c);
  std::vector<RelationResult> out;

  if (alpha > 1 && beta > 1) {
    const BigInt al(alpha), be(beta);
    const BigInt eps = padic::epsilon(al, be);

    // R1: A^(delta_a (a-1)) = B^(delta_b (b-1)), and it is central.
    const Permutation x1 = power_reduced(a, oa, [&](const auto& ctx) { return ctx.mul(padic::delta_mod(al, ctx), al - 1); });
    const Permutation y1 = power_reduced(b, ob, [&](const auto& ctx) { return ctx.mul(padic::delta_mod(be, ctx), be - 1); });
    out.push_back({"R1", x1 == y1 && commutes(x1, a) && commutes(x1, b)});

    // R2: A^(eps (a-1) mu_a) = 1 = B^(eps (b-1) mu_b).
    const Permutation x2 = power_reduced(a, oa, [&](const auto& ctx) { return ctx.mul(padic::mu_mod(al, ctx), eps * (al - 1)); });
    const Permutation y2 = power_reduced(b, ob, [&](const auto& ctx) { return ctx.mul(padic::mu_mod(be, ctx), eps * (be - 1)); });
    out.push_back({"R2", x2.is_identity() && y2.is_identity()});

    // R3: A^((a-1) mu_a) = B^((b-1) mu_b).
    const Permutation x3 = power_reduced(a, oa, [&](const auto& ctx) { return ctx.mul(padic::mu_mod(al, ctx), al - 1); });
    const Permutation y3 = power_reduced(b, ob, [&](const auto& ctx) { return ctx.mul(padic::mu_mod(be, ctx), be - 1); });
    out.push_back({"R3", x3 == y3});

    // R4: A^(a^((a-b)(b-1)) - 1) = 1 and B^(b^((b-a)(a-1)) - 1) = 1.
    const Permutation x4 = power_reduced(a, oa, [&](const auto& ctx) { return unit_pow(al, (al - be) * (be - 1), ctx) - 1; });
    const Permutation y4 = power_reduced(b, ob, [&](const auto& ctx) { return unit_pow(be, (be - al) * (al - 1), ctx) - 1; });
    out.push_back({"R4", x4.is_identity() && y4.is_identity()});

    // R5: b^(b0^(b+1) delta_b) a^(delta_a) = c^(a-b), b b0 = 1 mod o(b).
    const Permutation x5 = power_reduced(b, ob, [&](const auto& ctx) {
      const BigInt b0 = padic::modular_inverse(be, ctx.modulus());
      return ctx.mul(ctx.pow(b0, be + 1), padic::delta_mod(be, ctx));
    });
    const Permutation y5 = power_reduced(a, oa, [&](const auto& ctx) { return padic::delta_mod(al, ctx); });
    out.push_back({"R5", x5 * y5 == c.pow(al - be)});
  } else {
    for (const char* id : {"R1", "R2", "R3", "R4", "R5"}) out.push_back({id, std::nullopt});
  }

  // R6: G_p = <a><b><c>, read as |<a>||<b>||<c>| >= |G_p| and o(c) | gcd(o(a), o(b)).
  out.push_back({"R6", oa * ob * oc >= group_order && oa % oc == 0 && ob % oc == 0});
  return out;
}

bool q16_fingerprint(const perm::PermGroup& g) {
  if (g.order() != 16) throw DomainError("the quaternion fingerprint needs a group of order 16");
  const std::vector<Permutation> all = perm::elements(g);
  std::size_t involutions = 0;
  bool order_eight = false;
  for (const Permutation& x : all) {
    const BigInt o = perm::element_order(x);
    involutions += o == 2;
    order_eight = order_eight || o == 8;
  }
  bool abelian = true;
  const auto& gens = g.generators();
  for (std::size_t i = 0; i < gens.size() && abelian; ++i) {
    for (std::size_t j = i + 1; j < gens.size(); ++j) abelian = abelian && commutes(gens[i], gens[j]);
  }
  return !abelian && involutions == 1 && order_eight;
}

namespace {

struct Realization {
  std::vector<Permutation> gens;
  std::string engine;
  std::size_t cosets = 0;
};

Realization by_enumeration(const fp::Presentation& pres, std::size_t cap, fp::Strategy strategy) {
  fp::EnumerationLimits lim;
  lim.max_cosets = cap;
  lim.strategy = strategy;
  const fp::CosetTable table = fp::todd_coxeter(pres, {}, lim);
  return {fp::to_permutations(table), "todd-coxeter", table.stats().high_water};
}

Realization by_p_quotient(const fp::Presentation& pres, std::uint64_t p, std::size_t cap) {
  fp::PQuotientLimits lim;
  lim.max_order = cap;
  const fp::PcPresentation pc = fp::p_quotient(pres, p, lim);
  Realization r{fp::regular_representation(pc), "p-quotient", 0};
  r.cosets = r.gens.front().degree();
  return r;
}

Realization realize(const fp::Presentation& pres, std::uint64_t p, bool sylow, const VerifyLimits& limits) {
  // Enumerating the full presentation would produce all of G, not G_p.
  if (!sylow || limits.engine == Engine::PQuotient) return by_p_quotient(pres, p, limits.max_cosets);
  if (limits.engine == Engine::ToddCoxeter) return by_enumeration(pres, limits.max_cosets, limits.strategy);
  try {
    return by_enumeration(pres, std::min(limits.max_cosets, limits.probe_cosets), limits.strategy);
  } catch (const EnumerationLimitError&) {
    return by_p_quotient(pres, p, limits.max_cosets);
  }
}

bool matches(const predictor::StructureReport& pred, const MeasuredStructure& m, std::uint64_t p) {
  const auto pp = [p](unsigned v) { return predictor::prime_power(p, v); };
  return m.order == pp(pred.e) && m.cls == pred.f && m.ord_a == pp(pred.vA) && m.ord_b == pp(pred.vB) &&
         m.ord_c == pp(pred.vC);
}

}  // namespace

VerificationReport verify(std::int64_t alpha, std::int64_t beta, std::uint64_t p, const VerifyLimits& limits) {
  const auto start = std::chrono::steady_clock::now();
  VerificationReport r;
  r.alpha = alpha;
  r.beta = beta;
  r.prime = p;
  try {
    const auto params = predictor::GroupParams::make(alpha, beta);
    const auto support = predictor::prime_support(params);
    if (std::find(support.begin(), support.end(), p) == support.end()) {
      throw DomainError(std::to_string(p) + " is not a prime dividing (alpha-1)(beta-1)");
    }
    r.predicted = predictor::predict(params, p);
    const bool sylow = r.predicted->case_id != predictor::CaseId::Cyclic;
    const fp::Presentation pres = sylow ? fp::sylow_presentation(alpha, beta, p)
                                        : fp::macdonald_presentation(alpha, beta);
    const Realization rz = realize(pres, p, sylow, limits);
    r.engine = rz.engine;
    r.cosets = rz.cosets;

    const Permutation& a = rz.gens[0];
    const Permutation& b = rz.gens[1];
    const auto g = perm::PermGroup::generated_by(rz.gens, a.degree());
    const auto lcs = perm::lower_central_series(g);
    if (!lcs.nilpotent) throw InternalError("a Sylow subgroup came out non-nilpotent");
    MeasuredStructure m;
    m.order = g.order();
    m.cls = lcs.nilpotency_class;
    m.ord_a = perm::element_order(a);
    m.ord_b = perm::element_order(b);
    m.ord_c = perm::element_order(perm::commutator(a, b));
    m.abelianization = m.order / (lcs.orders.size() > 1 ? lcs.orders[1] : m.order);
    r.relations = relation_checks(a, b, alpha, beta, m.order);
    if (m.order == 16) r.q16 = q16_fingerprint(g);

    bool ok = matches(*r.predicted, m, p);
    for (const RelationResult& rel : r.relations) ok = ok && rel.holds.value_or(true);
    r.measured = std::move(m);
    r.status = ok ? Status::Match : Status::Mismatch;
  } catch (const ResourceError& e) {
    r.status = Status::SkippedResource;
    r.diagnostic = e.what();
  } catch (const std::exception& e) {
    r.status = Status::Error;
    r.diagnostic = e.what();
  }
  r.millis = static_cast<std::uint64_t>(
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count());
  return r;
}

CorpusSummary summarize(const std::vector<VerificationReport>& reports) {
  CorpusSummary s;
  for (const VerificationReport& r : reports) {
    switch (r.status) {
      case Status::Match: ++s.match; break;
      case Status::Mismatch: ++s.mismatch; break;
      case Status::SkippedResource: ++s.skipped; break;
      case Status::Error: ++s.error; break;
    }
  }
  return s;
}

namespace {

nlohmann::json big(const BigInt& x) {
  if (x >= 0 && x <= std::numeric_limits<std::uint64_t>::max()) return static_cast<std::uint64_t>(x);
  return x.str();
}

}  // namespace

nlohmann::json to_json(const VerificationReport& r) {
  nlohmann::json j;
  j["alpha"] = r.alpha;
  j["beta"] = r.beta;
  j["prime"] = r.prime;
  if (r.predicted) {
    const auto& p = *r.predicted;
    j["predicted"] = {{"e", p.e}, {"f", p.f}, {"vA", p.vA}, {"vB", p.vB}, {"vC", p.vC},
                      {"case", std::string(predictor::case_name(p.case_id))}};
  } else {
    j["predicted"] = nullptr;
  }
  if (r.measured) {
    const auto& m = *r.measured;
    j["measured"] = {{"order", big(m.order)}, {"class", m.cls}, {"ordA", big(m.ord_a)},
                     {"ordB", big(m.ord_b)}, {"ordC", big(m.ord_c)}, {"abelianization", big(m.abelianization)}};
  } else {
    j["measured"] = nullptr;
  }
  j["relations"] = nlohmann::json::array();
  for (const RelationResult& rel : r.relations) {
    nlohmann::json e = {{"id", rel.id}};
    e["holds"] = rel.holds ? nlohmann::json(*rel.holds) : nlohmann::json(nullptr);
    j["relations"].push_back(std::move(e));
  }
  if (r.q16) j["q16"] = *r.q16;
  j["status"] = std::string(status_name(r.status));
  j["engine"] = r.engine;
  j["cosets"] = r.cosets;
  j["millis"] = r.millis;
  if (!r.diagnostic.empty()) j["diagnostic"] = r.diagnostic;
  return j;
}

}  // namespace mgl::verify
