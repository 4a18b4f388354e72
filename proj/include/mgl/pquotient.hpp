#pragma once

// Largest finite p-quotient of a finitely presented group, computed along
// the lower exponent-p central series, as a consistent power-commutator
// presentation. For a finite nilpotent group this is its Sylow p-subgroup,
// and its regular representation is built by collection.
//
// Each step forms the p-covering group: every non-defining relation of the
// current presentation receives a new central tail of order p, consistency
// of the overlaps and the group's relators give linear conditions on the
// tails over F_p, and the free tails become the generators of the next layer.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "mgl/bigint.hpp"
#include "mgl/fpgroup.hpp"
#include "mgl/permgroup.hpp"

namespace mgl::fp {

/// Exponent vector of a normal word g_0^e_0 ... g_{n-1}^e_{n-1}, 0 <= e_i < p.
using PcVector = std::vector<std::uint64_t>;

struct PcDefinition {
  enum class Kind { Image, Power, Commutator };
  Kind kind = Kind::Image;
  std::uint32_t first = 0;   // fp generator (Image), i (Power) or j (Commutator [g_j, g_i])
  std::uint32_t second = 0;  // i for Commutator
};

/// Consistent pc presentation with all relative orders p.
struct PcPresentation {
  std::uint64_t p = 0;
  std::size_t n = 0;
  std::vector<unsigned> weight;            // layer of the lower exponent-p central series
  std::vector<PcDefinition> definitions;
  std::vector<PcVector> power;             // g_i^p
  std::vector<std::vector<PcVector>> conj; // conj[j][i] = g_j^(g_i) for j > i
  std::vector<PcVector> images;            // images of the fp generators

  BigInt order() const;
  PcVector identity() const { return PcVector(n, 0); }
  PcVector multiply(const PcVector& x, const PcVector& y) const;
  PcVector inverse(const PcVector& x) const;
  PcVector pow(const PcVector& x, const BigInt& e) const;
  PcVector evaluate(const Word& w) const;
  unsigned p_class() const { return weight.empty() ? 0 : weight.back(); }
};

struct PQuotientLimits {
  /// Stop with EnumerationLimitError once p^n would exceed this.
  std::size_t max_order = kDefaultMaxCosets;
  /// Safety bound on the number of layers.
  unsigned max_class = 256;
};

/// Largest p-quotient of the group presented by `pres`. ResourceError
/// (EnumerationLimitError) when it outgrows the limits.
PcPresentation p_quotient(const Presentation& pres, std::uint64_t p, const PQuotientLimits& limits = {});

/// Right regular action on the p^n elements (indexed in mixed radix p,
/// g_0 least significant): one permutation per fp generator.
std::vector<perm::Permutation> regular_representation(const PcPresentation& pc);

/// Mixed-radix index of an exponent vector.
std::uint64_t pc_index(const PcPresentation& pc, const PcVector& x);

}  // namespace mgl::fp
