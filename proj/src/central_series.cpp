#include <set>

#include "mgl/errors.hpp"
#include "mgl/permgroup.hpp"

namespace mgl::perm {

namespace {

// Incrementally maintained orbit of 0 under a growing generating set; for a
// semiregular group this orbit is in bijection with the group.
class SemiregularOrbit {
 public:
  explicit SemiregularOrbit(std::size_t degree) : in_orbit_(degree, false) {
    if (degree > 0) {
      in_orbit_[0] = true;
      list_.push_back(0);
    }
  }

  bool contains(const Permutation& x) const { return in_orbit_[x[0]]; }

  void add(Permutation g) {
    gens_.push_back(std::move(g));
    const std::size_t old_size = list_.size();
    for (std::size_t i = 0; i < old_size; ++i) visit(gens_.back()[list_[i]]);
    for (std::size_t i = old_size; i < list_.size(); ++i) {
      for (const auto& h : gens_) visit(h[list_[i]]);
    }
  }

  std::vector<Permutation>& generators() { return gens_; }

 private:
  void visit(Point y) {
    if (!in_orbit_[y]) {
      in_orbit_[y] = true;
      list_.push_back(y);
    }
  }

  std::vector<bool> in_orbit_;
  std::vector<Point> list_;
  std::vector<Permutation> gens_;
};

PermGroup semiregular_closure(const PermGroup& g, std::span<const Permutation> seeds) {
  SemiregularOrbit n(g.degree());
  for (const auto& s : seeds) {
    if (!n.contains(s)) n.add(s);
  }
  // N is normal iff every conjugate of a generator of N by a generator of g
  // lies in N; the generator list grows while we scan it.
  for (std::size_t i = 0; i < n.generators().size(); ++i) {
    for (const auto& t : g.generators()) {
      Permutation c = conjugate(n.generators()[i], t);
      if (!n.contains(c)) n.add(std::move(c));
    }
  }
  return PermGroup::semiregular(std::move(n.generators()), g.degree());
}

PermGroup general_closure(const PermGroup& g, std::span<const Permutation> seeds) {
  std::vector<Permutation> gens;
  PermGroup n = PermGroup::generated_by({}, g.degree());
  for (const auto& s : seeds) {
    if (!n.contains(s)) {
      gens.push_back(s);
      n = PermGroup::generated_by(gens, g.degree());
    }
  }
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (const auto& t : g.generators()) {
      Permutation c = conjugate(gens[i], t);
      if (!n.contains(c)) {
        gens.push_back(std::move(c));
        n = PermGroup::generated_by(gens, g.degree());
      }
    }
  }
  return n;
}

}  // namespace

PermGroup normal_closure(const PermGroup& g, std::span<const Permutation> seeds) {
  for (const auto& s : seeds) {
    if (s.degree() != g.degree()) throw DomainError("seed degree does not match group degree");
  }
  return g.is_semiregular() ? semiregular_closure(g, seeds) : general_closure(g, seeds);
}

PermGroup derived_subgroup(const PermGroup& g) {
  std::vector<Permutation> seeds;
  const auto& gens = g.generators();
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (std::size_t j = i + 1; j < gens.size(); ++j) seeds.push_back(commutator(gens[i], gens[j]));
  }
  return normal_closure(g, seeds);
}

CentralSeriesReport lower_central_series(const PermGroup& g) {
  CentralSeriesReport report;
  report.terms.push_back(g);
  report.orders.push_back(g.order());
  while (!report.terms.back().is_trivial()) {
    const PermGroup& current = report.terms.back();
    std::vector<Permutation> seeds;
    for (const auto& s : current.generators()) {
      for (const auto& t : g.generators()) seeds.push_back(commutator(s, t));
    }
    PermGroup next = normal_closure(g, seeds);
    BigInt next_order = next.order();
    if (next_order == report.orders.back()) {
      report.nilpotent = false;
      break;
    }
    report.terms.push_back(std::move(next));
    report.orders.push_back(std::move(next_order));
  }
  // Class is the index of the last nontrivial term; for a stalled series it
  // counts the strictly decreasing part.
  report.nilpotency_class = static_cast<unsigned>(report.terms.size());
  if (report.nilpotent) --report.nilpotency_class;
  return report;
}

std::vector<Permutation> elements(const PermGroup& g, std::size_t limit) {
  std::set<std::vector<Point>> seen;
  std::vector<Permutation> out{Permutation::identity(g.degree())};
  seen.emplace(out[0].images().begin(), out[0].images().end());
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (const auto& s : g.generators()) {
      Permutation y = out[i] * s;
      if (seen.emplace(y.images().begin(), y.images().end()).second) {
        if (out.size() >= limit) throw ResourceError("group has more than " + std::to_string(limit) + " elements");
        out.push_back(std::move(y));
      }
    }
  }
  return out;
}

}  // namespace mgl::perm
