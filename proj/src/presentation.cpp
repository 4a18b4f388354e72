#include <cstdlib>
#include <limits>
#include <sstream>

#include "mgl/errors.hpp"
#include "mgl/fpgroup.hpp"
#include "mgl/padic.hpp"

namespace mgl::fp {

Word::Word(std::initializer_list<Syllable> syllables) {
  for (const Syllable& s : syllables) append(s);
}

Word::Word(std::vector<Syllable> syllables) {
  for (const Syllable& s : syllables) append(s);
}

void Word::append(Syllable s) {
  if (s.exp == 0) return;
  if (!syl_.empty() && syl_.back().gen == s.gen) {
    syl_.back().exp += s.exp;
    if (syl_.back().exp == 0) syl_.pop_back();
    return;
  }
  syl_.push_back(s);
}

std::uint64_t Word::length() const {
  std::uint64_t n = 0;
  for (const Syllable& s : syl_) n += static_cast<std::uint64_t>(std::llabs(s.exp));
  return n;
}

Word Word::inverse() const {
  Word out;
  for (auto it = syl_.rbegin(); it != syl_.rend(); ++it) out.syl_.push_back({it->gen, -it->exp});
  return out;
}

Word Word::operator*(const Word& rhs) const {
  Word out = *this;
  for (const Syllable& s : rhs.syl_) out.append(s);
  return out;
}

std::vector<std::pair<std::uint32_t, int>> Word::letters(std::uint64_t limit) const {
  if (length() > limit) {
    throw ResourceError("word of length " + std::to_string(length()) + " is too long to expand");
  }
  std::vector<std::pair<std::uint32_t, int>> out;
  out.reserve(length());
  for (const Syllable& s : syl_) {
    const int sign = s.exp > 0 ? 1 : -1;
    for (std::int64_t i = 0; i < std::llabs(s.exp); ++i) out.emplace_back(s.gen, sign);
  }
  return out;
}

Word commutator(const Word& x, const Word& y) { return x.inverse() * y.inverse() * x * y; }

void Presentation::validate() const {
  if (generator_count == 0) throw DomainError("a presentation needs at least one generator");
  if (!names.empty() && names.size() != generator_count) {
    throw DomainError("generator names do not match the generator count");
  }
  for (const Word& r : relators) {
    for (const Syllable& s : r.syllables()) {
      if (s.gen >= generator_count) throw DomainError("relator uses an unknown generator");
    }
  }
}

std::string Presentation::to_string() const {
  auto name = [this](std::uint32_t g) {
    return g < names.size() ? names[g] : "x" + std::to_string(g);
  };
  std::ostringstream os;
  os << '<';
  for (std::size_t g = 0; g < generator_count; ++g) os << (g ? ", " : "") << name(static_cast<std::uint32_t>(g));
  os << " | ";
  for (std::size_t i = 0; i < relators.size(); ++i) {
    if (i) os << ", ";
    const auto& syl = relators[i].syllables();
    if (syl.empty()) os << '1';
    for (std::size_t j = 0; j < syl.size(); ++j) {
      os << (j ? "*" : "") << name(syl[j].gen);
      if (syl[j].exp != 1) os << '^' << syl[j].exp;
    }
  }
  os << '>';
  return os.str();
}

Presentation macdonald_presentation(std::int64_t alpha, std::int64_t beta) {
  if (alpha == 1 || beta == 1) throw DomainError("G(alpha, beta) is infinite when alpha or beta is 1");
  const Word a = Word::power(0, 1);
  const Word b = Word::power(1, 1);
  const Word ab = commutator(a, b);
  const Word ba = commutator(b, a);
  Presentation pres;
  pres.generator_count = 2;
  pres.names = {"a", "b"};
  pres.relators.push_back(ab.inverse() * a * ab * Word::power(0, -alpha));
  pres.relators.push_back(ba.inverse() * b * ba * Word::power(1, -beta));
  return pres;
}

namespace {

std::int64_t checked_power(std::uint64_t p, unsigned e) {
  const BigInt v = big_pow(BigInt(p), e);
  if (v > std::numeric_limits<std::int64_t>::max()) {
    throw ResourceError("power relator exponent " + std::to_string(p) + "^" + std::to_string(e) +
                        " does not fit in 64 bits");
  }
  return static_cast<std::int64_t>(v);
}

std::int64_t generator_exponent(std::int64_t param, std::uint64_t p) {
  const unsigned v = padic::valuation(BigInt(param) - 1, p).value();
  if (p == 2) return checked_power(2, 4 * v - 1);
  if (p == 3) {
    if (mod_floor(BigInt(param), 9) == 7) return 243;
    return checked_power(3, 4 * v);
  }
  return checked_power(p, 4 * v);
}

}  // namespace

SylowExponents sylow_exponents(std::int64_t alpha, std::int64_t beta, std::uint64_t p) {
  if (alpha == 1 || beta == 1) throw DomainError("G(alpha, beta) is infinite when alpha or beta is 1");
  if (p < 2) throw DomainError("p must be prime");
  const BigInt bp(p);
  if ((BigInt(alpha) - 1) % bp != 0 || (BigInt(beta) - 1) % bp != 0) {
    throw DomainError("p must divide both alpha-1 and beta-1; otherwise the Sylow " +
                      std::to_string(p) + "-subgroup is cyclic and is predicted directly");
  }
  return {generator_exponent(alpha, p), generator_exponent(beta, p)};
}

Presentation sylow_presentation(std::int64_t alpha, std::int64_t beta, std::uint64_t p) {
  const SylowExponents ex = sylow_exponents(alpha, beta, p);
  Presentation pres = macdonald_presentation(alpha, beta);
  pres.relators.push_back(Word::power(0, ex.a));
  pres.relators.push_back(Word::power(1, ex.b));
  return pres;
}

std::vector<std::int64_t> exponent_sums(const Word& w, std::size_t generator_count) {
  std::vector<std::int64_t> out(generator_count, 0);
  for (const Syllable& s : w.syllables()) {
    if (s.gen >= generator_count) throw DomainError("word uses an unknown generator");
    out[s.gen] += s.exp;
  }
  return out;
}

std::string_view strategy_name(Strategy s) { return s == Strategy::HLT ? "hlt" : "felsch"; }

std::optional<Strategy> strategy_from_name(std::string_view name) {
  if (name == "hlt") return Strategy::HLT;
  if (name == "felsch") return Strategy::Felsch;
  return std::nullopt;
}

void EnumerationLimits::validate() const {
  if (max_cosets < 1) throw DomainError("max_cosets must be at least 1");
  if (max_cosets > std::numeric_limits<std::uint32_t>::max() / 2) {
    throw DomainError("max_cosets exceeds the 32-bit coset numbering");
  }
  if (power_define_bound < 0) throw DomainError("power_define_bound must be non-negative");
}

}  // namespace mgl::fp
