#include <algorithm>

#include "mgl/errors.hpp"
#include "mgl/permgroup.hpp"

namespace mgl::perm {

namespace {

std::vector<Permutation> drop_identities(std::vector<Permutation> gens, std::size_t degree) {
  std::vector<Permutation> out;
  out.reserve(gens.size());
  for (auto& g : gens) {
    if (g.degree() != degree) throw DomainError("generator degree does not match group degree");
    if (!g.is_identity()) out.push_back(std::move(g));
  }
  return out;
}

}  // namespace

void PermGroup::rebuild_level(std::size_t level) {
  StabilizerLevel& lv = levels_[level];
  lv.orbit.clear();
  lv.schreier.assign(degree_, -1);
  lv.schreier[lv.base_point] = -2;
  lv.orbit.push_back(lv.base_point);
  for (std::size_t i = 0; i < lv.orbit.size(); ++i) {
    const Point x = lv.orbit[i];
    for (std::size_t j = 0; j < lv.generators.size(); ++j) {
      const Point y = strong_[lv.generators[j]][x];
      if (lv.schreier[y] == -1) {
        lv.schreier[y] = static_cast<std::int32_t>(j);
        lv.orbit.push_back(y);
      }
    }
  }
}

Permutation PermGroup::transversal(std::size_t level, Point point) const {
  const StabilizerLevel& lv = levels_.at(level);
  if (lv.schreier.at(point) == -1) throw DomainError("point is not in the basic orbit");
  // Walk back to the base point collecting generators, then multiply forwards.
  std::vector<std::size_t> path;
  for (Point x = point; lv.schreier[x] != -2;) {
    const std::size_t g = lv.generators[static_cast<std::size_t>(lv.schreier[x])];
    path.push_back(g);
    x = strong_inv_[g][x];
  }
  Permutation u = Permutation::identity(degree_);
  for (auto it = path.rbegin(); it != path.rend(); ++it) u = u * strong_[*it];
  return u;
}

std::pair<Permutation, std::size_t> PermGroup::strip(Permutation x, std::size_t from_level) const {
  for (std::size_t l = from_level; l < levels_.size(); ++l) {
    const StabilizerLevel& lv = levels_[l];
    Point b = x[lv.base_point];
    if (lv.schreier[b] == -1) return {std::move(x), l};
    while (lv.schreier[b] != -2) {
      const std::size_t g = lv.generators[static_cast<std::size_t>(lv.schreier[b])];
      x = x * strong_inv_[g];
      b = strong_inv_[g][b];
    }
  }
  return {std::move(x), levels_.size()};
}

// Deterministic Schreier-Sims: every Schreier generator of every level is
// sifted; a failing residue becomes a new strong generator and processing
// resumes at the level where it was added.
void PermGroup::schreier_sims() {
  for (const auto& g : generators_) {
    bool fixes_base = true;
    for (const auto& lv : levels_) fixes_base = fixes_base && g[lv.base_point] == lv.base_point;
    if (fixes_base) {
      StabilizerLevel lv;
      lv.base_point = static_cast<Point>(g.first_moved());
      levels_.push_back(std::move(lv));
    }
    strong_.push_back(g);
    strong_inv_.push_back(g.inverse());
  }
  auto assign_generators = [this](std::size_t level) {
    auto& lv = levels_[level];
    lv.generators.clear();
    for (std::size_t s = 0; s < strong_.size(); ++s) {
      bool fixes = true;
      for (std::size_t l = 0; l < level && fixes; ++l) fixes = strong_[s][levels_[l].base_point] == levels_[l].base_point;
      if (fixes) lv.generators.push_back(s);
    }
    rebuild_level(level);
  };
  for (std::size_t l = 0; l < levels_.size(); ++l) assign_generators(l);

  std::size_t i = levels_.size();
  while (i-- > 0) {
  restart:
    const StabilizerLevel& lv = levels_[i];
    for (std::size_t oi = 0; oi < lv.orbit.size(); ++oi) {
      const Permutation u = transversal(i, lv.orbit[oi]);
      for (std::size_t j = 0; j < lv.generators.size(); ++j) {
        auto [residue, stop] = strip(u * strong_[lv.generators[j]], i);
        if (stop == levels_.size() && residue.is_identity()) continue;
        if (stop == levels_.size()) {
          StabilizerLevel fresh;
          fresh.base_point = static_cast<Point>(residue.first_moved());
          levels_.push_back(std::move(fresh));
        }
        strong_inv_.push_back(residue.inverse());
        strong_.push_back(std::move(residue));
        const std::size_t top = std::min(stop, levels_.size() - 1);
        for (std::size_t l = i + 1; l <= top; ++l) assign_generators(l);
        i = top;
        goto restart;
      }
    }
  }
}

PermGroup PermGroup::generated_by(std::vector<Permutation> generators, std::size_t degree) {
  PermGroup g;
  g.degree_ = degree;
  g.generators_ = drop_identities(std::move(generators), degree);
  if (g.generators_.empty()) return g;
  if (is_regular_action(g.generators_, degree)) return semiregular(std::move(g.generators_), degree);
  g.schreier_sims();
  return g;
}

PermGroup PermGroup::semiregular(std::vector<Permutation> generators, std::size_t degree) {
  PermGroup g;
  g.degree_ = degree;
  g.generators_ = drop_identities(std::move(generators), degree);
  g.semiregular_ = true;
  if (g.generators_.empty()) return g;
  g.strong_ = g.generators_;
  for (const auto& s : g.strong_) g.strong_inv_.push_back(s.inverse());
  // Nonidentity elements of a semiregular group move every point.
  StabilizerLevel lv;
  lv.base_point = 0;
  for (std::size_t s = 0; s < g.strong_.size(); ++s) lv.generators.push_back(s);
  g.levels_.push_back(std::move(lv));
  g.rebuild_level(0);
  return g;
}

std::vector<Point> PermGroup::base() const {
  std::vector<Point> out;
  for (const auto& lv : levels_) out.push_back(lv.base_point);
  return out;
}

BigInt PermGroup::order() const {
  BigInt out = 1;
  for (const auto& lv : levels_) out *= lv.orbit.size();
  return out;
}

bool PermGroup::contains(const Permutation& x) const {
  if (x.degree() != degree_) throw DomainError("degree mismatch in membership test");
  auto [residue, stop] = strip(x, 0);
  return stop == levels_.size() && residue.is_identity();
}

bool PermGroup::contains_within_semiregular(const Permutation& x) const {
  if (!semiregular_) return contains(x);
  if (x.degree() != degree_) throw DomainError("degree mismatch in membership test");
  if (levels_.empty()) return x.is_identity();
  return levels_[0].schreier[x[levels_[0].base_point]] != -1;
}

bool is_regular_action(std::span<const Permutation> generators, std::size_t degree) {
  if (degree == 0) return false;
  if (degree == 1) return true;
  // Breadth-first Schreier tree from 0; also the transitivity test.
  std::vector<std::int64_t> via(degree, -1);
  std::vector<Point> parent(degree, 0);
  std::vector<Point> order{0};
  via[0] = -2;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const Point x = order[i];
    for (std::size_t j = 0; j < generators.size(); ++j) {
      const Point y = generators[j][x];
      if (via[y] == -1) {
        via[y] = static_cast<std::int64_t>(j);
        parent[y] = x;
        order.push_back(y);
      }
    }
  }
  if (order.size() != degree) return false;

  // For each target beta, the only candidate centralizer element with
  // 0 -> beta is forced along the tree; G is regular iff all candidates
  // exist, and it suffices to reach every beta from the found ones.
  std::vector<std::vector<Point>> found;
  std::vector<bool> reached(degree, false);
  std::vector<Point> reached_list{0};
  reached[0] = true;
  std::vector<Point> c(degree);
  for (Point beta = 1; beta < degree; ++beta) {
    if (reached[beta]) continue;
    c[0] = beta;
    for (std::size_t i = 1; i < degree; ++i) {
      const Point y = order[i];
      c[y] = generators[static_cast<std::size_t>(via[y])][c[parent[y]]];
    }
    for (std::size_t x = 0; x < degree; ++x) {
      for (const auto& g : generators) {
        if (c[g[x]] != g[c[x]]) return false;
      }
    }
    found.push_back(c);
    // Orbit of 0 under the centralizer elements found so far.
    for (std::size_t i = 0; i < reached_list.size(); ++i) {
      for (const auto& z : found) {
        const Point y = z[reached_list[i]];
        if (!reached[y]) {
          reached[y] = true;
          reached_list.push_back(y);
        }
      }
    }
  }
  return true;
}

}  // namespace mgl::perm
