#include "mgl/pquotient.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <string>
#include <utility>

#include "mgl/errors.hpp"

namespace mgl::fp {

namespace {

using u64 = std::uint64_t;

constexpr std::size_t kMaxPcGenerators = 64;

u64 mulmod(u64 a, u64 b, u64 p) {
  return static_cast<u64>(static_cast<unsigned __int128>(a) * b % p);
}

u64 powmod(u64 a, u64 e, u64 p) {
  u64 r = 1 % p;
  for (a %= p; e; e >>= 1, a = mulmod(a, a, p)) {
    if (e & 1) r = mulmod(r, a, p);
  }
  return r;
}

bool is_small_prime(u64 p) {
  if (p < 2) return false;
  for (u64 d = 2; d <= p / d; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

// Element of a central extension by t elementary abelian tails: a normal
// word in the pc generators and a tail vector over F_p.
struct Elem {
  PcVector e;
  std::vector<u64> t;
};

// Collection from the left. Relations may carry tails; with no tails this is
// plain collection in a pc presentation.
class Collector {
 public:
  Collector(u64 p, std::size_t n, std::size_t tails)
      : p_(p), n_(n), tails_(tails), power_(n, identity()), conj_(n) {
    for (std::size_t j = 0; j < n; ++j) {
      conj_[j].assign(j, identity());
      for (std::size_t i = 0; i < j; ++i) conj_[j][i].e[j] = 1;
    }
  }

  Elem identity() const { return {PcVector(n_, 0), std::vector<u64>(tails_, 0)}; }
  Elem generator(std::size_t i, u64 k = 1) const {
    Elem g = identity();
    g.e[i] = k % p_;
    return g;
  }

  Elem& power(std::size_t i) { return power_[i]; }
  Elem& conj(std::size_t j, std::size_t i) { return conj_[j][i]; }

  // x <- x * g_i^k with 0 < k < p.
  void mul_gen(Elem& x, std::size_t i, u64 k) const {
    std::size_t last = n_;
    while (last > i + 1 && x.e[last - 1] == 0) --last;
    if (last == i + 1) {
      x.e[i] += k;
      if (x.e[i] >= p_) {
        x.e[i] -= p_;
        mul(x, power_[i]);
      }
      return;
    }
    // x = u g_i^e r with r in the later generators, and r g_i = g_i r^(g_i).
    std::array<std::pair<std::uint32_t, u64>, kMaxPcGenerators> right;
    for (u64 step = 0; step < k; ++step) {
      std::size_t count = 0;
      for (std::size_t j = i + 1; j < n_; ++j) {
        if (x.e[j] != 0) {
          right[count++] = {static_cast<std::uint32_t>(j), x.e[j]};
          x.e[j] = 0;
        }
      }
      if (++x.e[i] == p_) {
        x.e[i] = 0;
        mul(x, power_[i]);
      }
      for (std::size_t c = 0; c < count; ++c) {
        const Elem& w = conj_[right[c].first][i];
        for (u64 r = 0; r < right[c].second; ++r) mul(x, w);
      }
    }
  }

  // x <- x * y.
  void mul(Elem& x, const Elem& y) const {
    for (std::size_t i = 0; i < n_; ++i) {
      if (y.e[i] != 0) mul_gen(x, i, y.e[i]);
    }
    add_tails(x, y.t, 1);
  }

  Elem inverse(const Elem& x) const {
    Elem w = x;
    Elem r = identity();
    for (std::size_t i = 0; i < n_; ++i) {
      if (w.e[i] == 0) continue;
      const u64 k = p_ - w.e[i];
      mul_gen(w, i, k);
      mul_gen(r, i, k);
    }
    // x r = w is central now.
    add_tails(r, w.t, p_ - 1);
    return r;
  }

  Elem pow(Elem base, BigInt e) const {
    if (e < 0) {
      base = inverse(base);
      e = -e;
    }
    Elem r = identity();
    while (e != 0) {
      if ((e & 1) != 0) mul(r, base);
      e >>= 1;
      if (e != 0) {
        const Elem b = base;
        mul(base, b);
      }
    }
    return r;
  }

  Elem evaluate(const Word& w, const std::vector<Elem>& images) const {
    Elem r = identity();
    for (const Syllable& s : w.syllables()) mul(r, pow(images.at(s.gen), BigInt(s.exp)));
    return r;
  }

 private:
  void add_tails(Elem& x, const std::vector<u64>& t, u64 scale) const {
    for (std::size_t k = 0; k < tails_; ++k) {
      if (t[k] != 0) x.t[k] = (x.t[k] + mulmod(t[k], scale, p_)) % p_;
    }
  }

  u64 p_;
  std::size_t n_;
  std::size_t tails_;
  std::vector<Elem> power_;
  std::vector<std::vector<Elem>> conj_;
};

Collector collector_of(const PcPresentation& pc) {
  Collector c(pc.p, pc.n, 0);
  for (std::size_t i = 0; i < pc.n; ++i) {
    c.power(i).e = pc.power[i];
    for (std::size_t j = i + 1; j < pc.n; ++j) c.conj(j, i).e = pc.conj[j][i];
  }
  return c;
}

std::vector<Elem> images_of(const PcPresentation& pc) {
  std::vector<Elem> out;
  for (const PcVector& v : pc.images) out.push_back({v, {}});
  return out;
}

// Reduced row echelon form over F_p; returns the pivot column of each row.
std::vector<std::size_t> echelonize(std::vector<std::vector<u64>>& rows, std::size_t cols, u64 p) {
  std::vector<std::size_t> pivots;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t r = rank;
    while (r < rows.size() && rows[r][c] == 0) ++r;
    if (r == rows.size()) continue;
    std::swap(rows[rank], rows[r]);
    const u64 inv = powmod(rows[rank][c], p - 2, p);
    for (u64& x : rows[rank]) x = mulmod(x, inv, p);
    for (std::size_t o = 0; o < rows.size(); ++o) {
      if (o == rank || rows[o][c] == 0) continue;
      const u64 f = p - rows[o][c];
      for (std::size_t k = c; k < cols; ++k) {
        if (rows[rank][k] != 0) rows[o][k] = (rows[o][k] + mulmod(f, rows[rank][k], p)) % p;
      }
    }
    pivots.push_back(c);
    ++rank;
  }
  rows.resize(rank);
  return pivots;
}

void record_difference(const Elem& lhs, const Elem& rhs, u64 p, std::vector<std::vector<u64>>& eqs) {
  if (lhs.e != rhs.e) throw InternalError("p-quotient: inconsistent power-commutator presentation");
  std::vector<u64> d(lhs.t.size());
  bool nonzero = false;
  for (std::size_t k = 0; k < d.size(); ++k) {
    d[k] = (lhs.t[k] + p - rhs.t[k]) % p;
    nonzero = nonzero || d[k] != 0;
  }
  if (nonzero) eqs.push_back(std::move(d));
}

BigInt capped_order(u64 p, std::size_t n) { return big_pow(BigInt(p), static_cast<unsigned>(n)); }

// One layer: presentation of G / P_{c+1} from that of G / P_c. Returns false
// when the new layer is trivial.
bool extend(PcPresentation& pc, const Presentation& pres, unsigned layer, const PQuotientLimits& limits) {
  const u64 p = pc.p;
  const std::size_t n = pc.n;
  const std::size_t d = pres.generator_count;

  std::vector<bool> power_defines(n, false);
  std::vector<std::vector<bool>> conj_defines(n, std::vector<bool>(n, false));
  std::vector<bool> image_defines(d, false);
  for (const PcDefinition& def : pc.definitions) {
    switch (def.kind) {
      case PcDefinition::Kind::Image: image_defines[def.first] = true; break;
      case PcDefinition::Kind::Power: power_defines[def.first] = true; break;
      case PcDefinition::Kind::Commutator: conj_defines[def.first][def.second] = true; break;
    }
  }

  // A tail for every relation that is not a definition.
  std::vector<PcDefinition> origin;
  std::vector<long> power_tail(n, -1);
  std::vector<std::vector<long>> conj_tail(n, std::vector<long>(n, -1));
  std::vector<long> image_tail(d, -1);
  for (std::size_t i = 0; i < n; ++i) {
    if (power_defines[i]) continue;
    power_tail[i] = static_cast<long>(origin.size());
    origin.push_back({PcDefinition::Kind::Power, static_cast<std::uint32_t>(i), 0});
  }
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      if (conj_defines[j][i]) continue;
      conj_tail[j][i] = static_cast<long>(origin.size());
      origin.push_back({PcDefinition::Kind::Commutator, static_cast<std::uint32_t>(j), static_cast<std::uint32_t>(i)});
    }
  }
  for (std::size_t k = 0; k < d; ++k) {
    if (image_defines[k]) continue;
    image_tail[k] = static_cast<long>(origin.size());
    origin.push_back({PcDefinition::Kind::Image, static_cast<std::uint32_t>(k), 0});
  }
  const std::size_t tails = origin.size();

  Collector col(p, n, tails);
  auto with_tail = [&](const PcVector& e, long tail) {
    Elem x{e, std::vector<u64>(tails, 0)};
    if (tail >= 0) x.t[static_cast<std::size_t>(tail)] = 1;
    return x;
  };
  for (std::size_t i = 0; i < n; ++i) {
    col.power(i) = with_tail(pc.power[i], power_tail[i]);
    for (std::size_t j = i + 1; j < n; ++j) col.conj(j, i) = with_tail(pc.conj[j][i], conj_tail[j][i]);
  }
  std::vector<Elem> images;
  for (std::size_t k = 0; k < d; ++k) images.push_back(with_tail(pc.images[k], image_tail[k]));

  // Overlaps of the rewriting rules g_j g_i -> g_i g_j^(g_i) and g_i^p -> w_i.
  std::vector<std::vector<u64>> eqs;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t k = j + 1; k < n; ++k) {
        Elem lhs = col.generator(k);
        col.mul_gen(lhs, j, 1);
        col.mul_gen(lhs, i, 1);
        Elem ji = col.generator(j);
        col.mul_gen(ji, i, 1);
        Elem rhs = col.generator(k);
        col.mul(rhs, ji);
        record_difference(lhs, rhs, p, eqs);
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      Elem lhs = col.power(j);
      col.mul_gen(lhs, i, 1);
      Elem ji = col.generator(j);
      col.mul_gen(ji, i, 1);
      Elem rhs = col.generator(j, p - 1);
      col.mul(rhs, ji);
      record_difference(lhs, rhs, p, eqs);

      Elem lhs2 = col.generator(j);
      col.mul(lhs2, col.power(i));
      Elem rhs2 = col.generator(j);
      col.mul_gen(rhs2, i, 1);
      if (p > 2) col.mul_gen(rhs2, i, p - 1);
      else col.mul_gen(rhs2, i, 1);
      record_difference(lhs2, rhs2, p, eqs);
    }
    Elem lhs = col.power(i);
    col.mul_gen(lhs, i, 1);
    Elem rhs = col.generator(i);
    col.mul(rhs, col.power(i));
    record_difference(lhs, rhs, p, eqs);
  }
  const Elem one = col.identity();
  for (const Word& r : pres.relators) record_difference(col.evaluate(r, images), one, p, eqs);

  const std::vector<std::size_t> pivots = echelonize(eqs, tails, p);
  std::vector<long> pivot_row(tails, -1);
  for (std::size_t r = 0; r < pivots.size(); ++r) pivot_row[pivots[r]] = static_cast<long>(r);
  std::vector<long> new_index(tails, -1);
  std::size_t fresh = 0;
  for (std::size_t t = 0; t < tails; ++t) {
    if (pivot_row[t] < 0) new_index[t] = static_cast<long>(n + fresh++);
  }
  if (fresh == 0) return false;

  const std::size_t total = n + fresh;
  if (total > kMaxPcGenerators || capped_order(p, total) > BigInt(limits.max_order)) {
    const BigInt order = capped_order(p, total);
    const std::size_t hw = order > BigInt(std::numeric_limits<std::size_t>::max())
                               ? std::numeric_limits<std::size_t>::max()
                               : static_cast<std::size_t>(order);
    throw EnumerationLimitError("p-quotient exceeded " + std::to_string(limits.max_order) + " elements (order " +
                                    order.str() + " reached at layer " + std::to_string(layer) + ")",
                                hw);
  }

  // Rewrite a tail in terms of the surviving ones.
  auto extended = [&](const PcVector& old, long tail) {
    PcVector out = old;
    out.resize(total, 0);
    if (tail < 0) return out;
    const auto t = static_cast<std::size_t>(tail);
    if (new_index[t] >= 0) {
      out[static_cast<std::size_t>(new_index[t])] = 1;
      return out;
    }
    const std::vector<u64>& row = eqs[static_cast<std::size_t>(pivot_row[t])];
    for (std::size_t f = 0; f < tails; ++f) {
      if (new_index[f] >= 0 && row[f] != 0) out[static_cast<std::size_t>(new_index[f])] = p - row[f];
    }
    return out;
  };

  PcPresentation next;
  next.p = p;
  next.n = total;
  next.weight = pc.weight;
  next.weight.resize(total, layer);
  next.definitions = pc.definitions;
  for (std::size_t t = 0; t < tails; ++t) {
    if (new_index[t] >= 0) next.definitions.push_back(origin[t]);
  }
  next.power.resize(total, PcVector(total, 0));
  next.conj.resize(total);
  for (std::size_t j = 0; j < total; ++j) {
    next.conj[j].resize(j);
    for (std::size_t i = 0; i < j; ++i) {
      if (j < n) {
        next.conj[j][i] = extended(pc.conj[j][i], conj_tail[j][i]);
      } else {
        next.conj[j][i].assign(total, 0);
        next.conj[j][i][j] = 1;
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) next.power[i] = extended(pc.power[i], power_tail[i]);
  for (std::size_t k = 0; k < d; ++k) next.images.push_back(extended(pc.images[k], image_tail[k]));
  pc = std::move(next);
  return true;
}

}  // namespace

BigInt PcPresentation::order() const { return capped_order(p, n); }

PcVector PcPresentation::multiply(const PcVector& x, const PcVector& y) const {
  const Collector c = collector_of(*this);
  Elem r{x, {}};
  c.mul(r, Elem{y, {}});
  return r.e;
}

PcVector PcPresentation::inverse(const PcVector& x) const { return collector_of(*this).inverse({x, {}}).e; }

PcVector PcPresentation::pow(const PcVector& x, const BigInt& e) const {
  return collector_of(*this).pow({x, {}}, e).e;
}

PcVector PcPresentation::evaluate(const Word& w) const {
  return collector_of(*this).evaluate(w, images_of(*this)).e;
}

PcPresentation p_quotient(const Presentation& pres, std::uint64_t p, const PQuotientLimits& limits) {
  pres.validate();
  if (!is_small_prime(p)) throw DomainError("p-quotient needs a prime p, got " + std::to_string(p));
  PcPresentation pc;
  pc.p = p;
  pc.images.assign(pres.generator_count, PcVector{});
  for (unsigned layer = 1; layer <= limits.max_class; ++layer) {
    if (!extend(pc, pres, layer, limits)) return pc;
  }
  throw ResourceError("p-quotient did not terminate within " + std::to_string(limits.max_class) + " layers");
}

std::uint64_t pc_index(const PcPresentation& pc, const PcVector& x) {
  std::uint64_t idx = 0;
  for (std::size_t i = pc.n; i-- > 0;) idx = idx * pc.p + x[i];
  return idx;
}

std::vector<perm::Permutation> regular_representation(const PcPresentation& pc) {
  const BigInt order = pc.order();
  if (order > BigInt(std::numeric_limits<perm::Point>::max())) {
    throw ResourceError("regular representation of order " + order.str() + " does not fit 32-bit points");
  }
  const auto degree = static_cast<std::size_t>(order);
  const Collector c = collector_of(pc);
  const std::vector<Elem> images = images_of(pc);
  std::vector<perm::Permutation> out;
  for (const Elem& g : images) {
    std::vector<perm::Point> img(degree);
    Elem x = c.identity();
    for (std::size_t idx = 0; idx < degree; ++idx) {
      // x runs through the elements in index order (mixed-radix counter).
      Elem y = x;
      c.mul(y, g);
      img[idx] = static_cast<perm::Point>(pc_index(pc, y.e));
      for (std::size_t i = 0; i < pc.n; ++i) {
        if (++x.e[i] < pc.p) break;
        x.e[i] = 0;
      }
    }
    out.emplace_back(std::move(img));
  }
  return out;
}

}  // namespace mgl::fp
