#pragma once

// Finite presentations and Todd-Coxeter coset enumeration.
//
// Words are stored as syllables x^e so that power relators such as a^(3^5)
// or a^(5^8) cost O(1) space. The enumerator treats single-syllable relators
// x^E specially: a closed x-cycle of length L satisfies x^E exactly when L | E,
// and otherwise forces c = c * x^gcd(L, E).

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mgl/permgroup.hpp"

namespace mgl::fp {

struct Syllable {
  std::uint32_t gen = 0;
  std::int64_t exp = 0;  // nonzero

  bool operator==(const Syllable&) const = default;
};

/// Freely reduced word: adjacent syllables never share a generator.
class Word {
 public:
  Word() = default;
  /// Reduces the given syllables (merging neighbours, dropping zero powers).
  Word(std::initializer_list<Syllable> syllables);
  explicit Word(std::vector<Syllable> syllables);

  static Word power(std::uint32_t gen, std::int64_t exp) { return Word({Syllable{gen, exp}}); }

  const std::vector<Syllable>& syllables() const { return syl_; }
  bool empty() const { return syl_.empty(); }
  /// Number of letters, sum of |exp|.
  std::uint64_t length() const;

  Word inverse() const;
  Word operator*(const Word& rhs) const;
  bool operator==(const Word&) const = default;

  /// Letters as (generator, +1/-1) pairs. ResourceError above `limit` letters.
  std::vector<std::pair<std::uint32_t, int>> letters(std::uint64_t limit = 1u << 24) const;

 private:
  void append(Syllable s);
  std::vector<Syllable> syl_;
};

/// x^-1 y^-1 x y
Word commutator(const Word& x, const Word& y);

struct Presentation {
  std::size_t generator_count = 0;
  std::vector<Word> relators;
  std::vector<std::string> names;

  /// DomainError on out-of-range generators or a name/count mismatch.
  void validate() const;
  std::string to_string() const;
};

/// <a, b | a^[a,b] = a^alpha, b^[b,a] = b^beta>, relators
/// [a,b]^-1 a [a,b] a^-alpha and [b,a]^-1 b [b,a] b^-beta.
Presentation macdonald_presentation(std::int64_t alpha, std::int64_t beta);

/// Exponents E_a, E_b of the power relators added for the Sylow p-subgroup.
struct SylowExponents {
  std::int64_t a = 0;
  std::int64_t b = 0;
};

/// p > 3: p^(4m), p^(4n); p = 2: 2^(4m-1), 2^(4n-1); p = 3: 3^5 for a
/// generator whose parameter is 7 mod 9, else 3^(4v) with v its own valuation.
/// DomainError when m = 0 or n = 0 (the cyclic branch is not enumerated).
SylowExponents sylow_exponents(std::int64_t alpha, std::int64_t beta, std::uint64_t p);

Presentation sylow_presentation(std::int64_t alpha, std::int64_t beta, std::uint64_t p);

/// Exponent-sum row of a word over `generator_count` generators.
std::vector<std::int64_t> exponent_sums(const Word& w, std::size_t generator_count);

enum class Strategy { HLT, Felsch };

std::string_view strategy_name(Strategy s);
std::optional<Strategy> strategy_from_name(std::string_view name);

inline constexpr std::size_t kDefaultMaxCosets = 5'000'000;

struct EnumerationLimits {
  std::size_t max_cosets = kDefaultMaxCosets;
  Strategy strategy = Strategy::HLT;
  std::optional<std::chrono::duration<double>> time_budget;
  /// HLT only: power relators x^E with E up to this bound are scanned letter
  /// by letter and may define cosets; larger ones only yield consequences.
  /// Scanning them tends to flood the table, hence the default of 0.
  std::int64_t power_define_bound = 0;

  void validate() const;
};

struct EnumerationStats {
  std::size_t high_water = 0;     // most live cosets at any time
  std::size_t total_defined = 0;  // cosets ever defined
  std::size_t compactions = 0;
  std::size_t verification_passes = 0;
};

/// Complete, standardized coset table. Column 2g is generator g, column
/// 2g+1 its inverse; coset 0 is the subgroup.
class CosetTable {
 public:
  CosetTable(std::size_t generator_count, std::size_t coset_count, std::vector<std::uint32_t> entries,
             EnumerationStats stats);

  std::size_t generator_count() const { return gens_; }
  std::size_t coset_count() const { return cosets_; }
  const EnumerationStats& stats() const { return stats_; }

  static std::size_t column(std::uint32_t gen, int sign) { return 2 * gen + (sign < 0 ? 1 : 0); }
  std::uint32_t at(std::size_t coset, std::size_t col) const { return entries_[coset * 2 * gens_ + col]; }

 private:
  std::size_t gens_;
  std::size_t cosets_;
  std::vector<std::uint32_t> entries_;
  EnumerationStats stats_;
};

/// Cosets of the subgroup generated by `subgroup` (trivial by default).
/// EnumerationLimitError (a ResourceError) when the coset cap or time budget
/// is exhausted.
CosetTable todd_coxeter(const Presentation& pres, const std::vector<Word>& subgroup = {},
                        const EnumerationLimits& limits = {});

/// One permutation per generator: coset -> coset * g.
std::vector<perm::Permutation> to_permutations(const CosetTable& table);

/// Image of `start` under w. Long syllables are reduced modulo the cycle length.
std::uint32_t trace_word(const CosetTable& table, const Word& w, std::uint32_t start);

/// True iff every relator fixes every coset.
bool relators_hold(const CosetTable& table, const Presentation& pres);

/// Header line naming each generator and its inverse, then one line per
/// coset with its 1-based images in those columns, tab separated.
void write_table(std::ostream& os, const CosetTable& table, const Presentation& pres);

}  // namespace mgl::fp
