#pragma once

// Permutation groups: deterministic Schreier-Sims, membership, normal
// closures and the lower central series.
//
// Conventions: points are 0-based and act on the right, so x * y means
// "apply x, then y" and the commutator is [x, y] = x^-1 y^-1 x y.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include "mgl/bigint.hpp"
#include "mgl/perm_kernels.hpp"

namespace mgl::perm {

using Point = kernels::Point;

class Permutation {
 public:
  Permutation() = default;
  /// DomainError unless `images` is a bijection on {0, ..., size-1}.
  explicit Permutation(std::vector<Point> images);

  static Permutation identity(std::size_t degree);
  /// Product of the given cycles (each a list of points) on `degree` points.
  static Permutation from_cycles(std::size_t degree,
                                 std::initializer_list<std::initializer_list<Point>> cycles);

  std::size_t degree() const { return images_.size(); }
  Point operator[](Point x) const { return images_[x]; }
  std::span<const Point> images() const { return images_; }

  bool is_identity() const;
  /// Smallest moved point, or degree() for the identity.
  std::size_t first_moved() const;

  Permutation operator*(const Permutation& rhs) const;
  Permutation inverse() const;
  /// x^e for any integer e (negative exponents use the inverse).
  Permutation pow(const BigInt& exponent) const;

  bool operator==(const Permutation& rhs) const;

 private:
  struct Unchecked {};
  Permutation(std::vector<Point> images, Unchecked) : images_(std::move(images)) {}

  std::vector<Point> images_;
};

Permutation commutator(const Permutation& x, const Permutation& y);
/// by^-1 * x * by
Permutation conjugate(const Permutation& x, const Permutation& by);

/// lcm of the cycle lengths.
BigInt element_order(const Permutation& x);

/// One level of the stabilizer chain: the orbit of `base_point` under the
/// strong generators fixing all earlier base points, as a Schreier vector.
struct StabilizerLevel {
  Point base_point = 0;
  std::vector<std::size_t> generators;  // indices into the strong generating set
  std::vector<Point> orbit;             // in discovery order
  /// Per point: -1 outside the orbit, -2 at the base point, otherwise the
  /// local index of the generator that first reached it.
  std::vector<std::int32_t> schreier;
};

class PermGroup {
 public:
  /// Deterministic Schreier-Sims. Transitive groups are first tested for
  /// regularity, which gives a one-level chain without sifting.
  static PermGroup generated_by(std::vector<Permutation> generators, std::size_t degree);

  /// Group generated by elements of a group already known to act
  /// semiregularly (every point stabilizer trivial), for example any subgroup
  /// of a regular representation. The chain then has a single level and the
  /// order is one orbit length. The precondition is not re-verified.
  static PermGroup semiregular(std::vector<Permutation> generators, std::size_t degree);

  std::size_t degree() const { return degree_; }
  const std::vector<Permutation>& generators() const { return generators_; }
  const std::vector<Permutation>& strong_generators() const { return strong_; }
  const std::vector<StabilizerLevel>& levels() const { return levels_; }
  std::vector<Point> base() const;

  BigInt order() const;
  bool is_trivial() const { return levels_.empty(); }
  /// Known to act semiregularly (set for regular groups and their subgroups).
  bool is_semiregular() const { return semiregular_; }

  /// Exact sifting. DomainError on degree mismatch.
  bool contains(const Permutation& x) const;

  /// Membership for x already known to lie in a semiregular overgroup of
  /// this (semiregular) group: then x belongs iff it maps the base point into
  /// the base orbit. Falls back to contains() otherwise.
  bool contains_within_semiregular(const Permutation& x) const;

  /// Transversal element mapping the base point of `level` to `point`.
  Permutation transversal(std::size_t level, Point point) const;

 private:
  PermGroup() = default;

  void rebuild_level(std::size_t level);
  /// Sifts x from `from_level`; returns the residue and the level where it stopped.
  std::pair<Permutation, std::size_t> strip(Permutation x, std::size_t from_level) const;
  void schreier_sims();

  std::size_t degree_ = 0;
  std::vector<Permutation> generators_;
  std::vector<Permutation> strong_;
  std::vector<Permutation> strong_inv_;
  std::vector<StabilizerLevel> levels_;
  bool semiregular_ = false;
};

/// Exact test: transitive and point stabilizer trivial. Uses the fact that a
/// transitive group is regular iff its centralizer in Sym(n) is transitive.
bool is_regular_action(std::span<const Permutation> generators, std::size_t degree);

inline bool membership(const PermGroup& g, const Permutation& x) { return g.contains(x); }
inline BigInt order(const PermGroup& g) { return g.order(); }

/// Smallest normal subgroup of g containing seeds (seeds must lie in g).
PermGroup normal_closure(const PermGroup& g, std::span<const Permutation> seeds);

/// Normal closure of the commutators of pairs of generators.
PermGroup derived_subgroup(const PermGroup& g);

struct CentralSeriesReport {
  std::vector<PermGroup> terms;  // gamma_1 = g, gamma_2, ..., ending at the trivial or stable term
  std::vector<BigInt> orders;
  unsigned nilpotency_class = 0;
  /// False when the series stabilized at a nontrivial term.
  bool nilpotent = true;
};

CentralSeriesReport lower_central_series(const PermGroup& g);

/// All elements, breadth first from the identity. ResourceError past `limit`.
std::vector<Permutation> elements(const PermGroup& g, std::size_t limit = 1u << 16);

}  // namespace mgl::perm
