#include "mgl/padic.hpp"

#include <string>

#include "mgl/errors.hpp"

namespace mgl::padic {

std::ostream& operator<<(std::ostream& os, const Valuation& v) {
  if (v.is_infinite()) return os << "inf";
  return os << v.value();
}

ModulusContext::ModulusContext(BigInt modulus) : modulus_(std::move(modulus)) {
  if (modulus_ < 2) throw DomainError("modulus must be at least 2, got " + modulus_.str());
}

BigInt ModulusContext::pow(const BigInt& base, const BigInt& exponent) const {
  if (exponent < 0) throw DomainError("negative exponent in modular power");
  return boost::multiprecision::powm(reduce(base), exponent, modulus_);
}

PAdicSplit split(const BigInt& x, std::uint64_t p) {
  if (p < 2) throw DomainError("p must be prime");
  PAdicSplit out;
  out.p = p;
  if (x == 0) {
    out.valuation = Valuation::infinity();
    out.unit = 0;
    return out;
  }
  unsigned v = 0;
  BigInt unit = x;
  const BigInt bp = p;
  for (;;) {
    BigInt q, r;
    boost::multiprecision::divide_qr(unit, bp, q, r);
    if (r != 0) break;
    unit = std::move(q);
    ++v;
  }
  out.valuation = Valuation(v);
  out.unit = std::move(unit);
  return out;
}

namespace {

// Walks the bits of count from the top, maintaining t, a^t, S(t) and W(t):
//   S(2t) = S(t)(1 + a^t)            S(t+1) = S(t) + a^t
//   W(2t) = W(t) + a^t (W(t) + t S(t))   W(t+1) = W(t) + t a^t
struct GeoState {
  BigInt power = 1;  // a^t
  BigInt geo = 0;    // S(t)
  BigInt weighted = 0;  // W(t)
};

GeoState geo_walk(const BigInt& a, const BigInt& count, const ModulusContext& ctx, bool want_weighted) {
  if (count < 0) throw DomainError("negative term count");
  GeoState st;
  const BigInt ar = ctx.reduce(a);
  BigInt t = 0;
  const unsigned bits = count == 0 ? 0u : static_cast<unsigned>(boost::multiprecision::msb(count)) + 1u;
  for (unsigned i = bits; i-- > 0;) {
    if (t != 0) {
      if (want_weighted) {
        const BigInt tr = ctx.reduce(t);
        st.weighted = ctx.reduce(st.weighted + st.power * ctx.reduce(st.weighted + tr * st.geo));
      }
      st.geo = ctx.mul(st.geo, 1 + st.power);
      st.power = ctx.mul(st.power, st.power);
      t <<= 1;
    }
    if (boost::multiprecision::bit_test(count, i)) {
      if (want_weighted) st.weighted = ctx.reduce(st.weighted + ctx.reduce(t) * st.power);
      st.geo = ctx.reduce(st.geo + st.power);
      st.power = ctx.mul(st.power, ar);
      t += 1;
    }
  }
  return st;
}

void require_above_one(const BigInt& a, const char* name) {
  if (a <= 1) throw DomainError(std::string(name) + " is defined only for a > 1, got " + a.str());
}

}  // namespace

BigInt geo_sum(const BigInt& a, const BigInt& count, const ModulusContext& ctx) {
  return geo_walk(a, count, ctx, false).geo;
}

BigInt weighted_sum(const BigInt& a, const BigInt& count, const ModulusContext& ctx) {
  return geo_walk(a, count, ctx, true).weighted;
}

BigInt delta_mod(const BigInt& a, const ModulusContext& ctx) {
  require_above_one(a, "delta");
  return ctx.mul(a - 1, weighted_sum(a, a, ctx));
}

BigInt gamma_mod(const BigInt& a, const ModulusContext& ctx) {
  require_above_one(a, "gamma");
  return ctx.reduce(ctx.pow(a, a) - geo_sum(a, a, ctx));
}

BigInt mu_mod(const BigInt& a, const ModulusContext& ctx) {
  if (a >= -1 && a <= 1) return 0;
  const BigInt sq = a * a;
  return ctx.reduce(ctx.pow(a, sq + 2) - ctx.mul(a, geo_sum(a, sq, ctx)));
}

BigInt delta_exact(const BigInt& a, std::uint64_t bound) {
  require_above_one(a, "delta");
  if (a > bound) {
    throw ResourceError("exact delta_a requested for a = " + a.str() + " above the bound " +
                        std::to_string(bound));
  }
  // Horner: sum_{i=1}^{a-1} i a^i = (((a-1)a + (a-2))a + ... + 1)a
  const auto n = static_cast<std::uint64_t>(a);
  BigInt acc = 0;
  for (std::uint64_t i = n - 1; i >= 1; --i) acc = (acc + i) * a;
  return (a - 1) * acc;
}

BigInt lambda_mod(const BigInt& a, const ModulusContext& ctx, std::uint64_t bound) {
  const BigInt delta = delta_exact(a, bound);
  return ctx.mul(a - 1, weighted_sum(a, delta, ctx));
}

BigInt epsilon(const BigInt& alpha, const BigInt& beta) {
  if (alpha == 1 || beta == 1) throw DomainError("epsilon needs alpha != 1 and beta != 1");
  return boost::multiprecision::gcd(abs(alpha - 1), abs(beta - 1));
}

ResidueValuation valuation_of_residue(const BigInt& residue, std::uint64_t p, unsigned precision) {
  const BigInt modulus = big_pow(BigInt(p), precision);
  const BigInt r = mod_floor(residue, modulus);
  if (r == 0) return {precision, true};
  return {split(r, p).valuation.value(), false};
}

ResidueValuation adaptive_valuation(const std::function<BigInt(const ModulusContext&)>& residue_of,
                                    std::uint64_t p, unsigned expected, unsigned max_precision) {
  unsigned precision = expected + 4;
  for (;;) {
    const ModulusContext ctx(big_pow(BigInt(p), precision));
    const ResidueValuation rv = valuation_of_residue(residue_of(ctx), p, precision);
    if (!rv.lower_bound || precision >= max_precision) return rv;
    precision = std::min(2 * precision, max_precision);
  }
}

BigInt modular_inverse(const BigInt& x, const BigInt& modulus) {
  if (modulus == 1) return 0;
  BigInt old_r = mod_floor(x, modulus), r = modulus;
  BigInt old_s = 1, s = 0;
  while (r != 0) {
    const BigInt q = old_r / r;
    BigInt tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
  }
  if (old_r != 1) throw DomainError(x.str() + " is not invertible modulo " + modulus.str());
  return mod_floor(old_s, modulus);
}

}  // namespace mgl::padic
