#include "doctest.h"

#include <sstream>

#include "mgl/errors.hpp"
#include "mgl/fpgroup.hpp"
#include "mgl/padic.hpp"
#include "mgl/snf.hpp"
#include "support/oracles.hpp"

using namespace mgl;
using namespace mgl::fp;
using test::presentation;
using test::textbook;
using test::word;

TEST_CASE("words") {
  const Word w{{0, 2}, {0, -2}, {1, 1}};
  CHECK(w.syllables().size() == 1);
  CHECK(w == Word::power(1, 1));
  CHECK(Word{{0, 0}}.empty());
  const auto c = commutator(word("a"), word("b"));
  CHECK(c == word("ABab"));
  CHECK(c.inverse() == word("BAba"));
  CHECK((c * c.inverse()).empty());
  CHECK(word("aaaB").length() == 4);
  const auto letters = word("aB").letters();
  REQUIRE(letters.size() == 2);
  CHECK(letters[1] == std::pair<std::uint32_t, int>{1, -1});
  CHECK_THROWS_AS(Word::power(0, 1000).letters(10), ResourceError);
  CHECK(exponent_sums(word("aabABBB"), 2) == std::vector<std::int64_t>{1, -2});
}

TEST_CASE("Macdonald presentations") {
  auto p = macdonald_presentation(3, 3);
  REQUIRE(p.relators.size() == 2);
  // [a,b]^-1 a [a,b] a^-3 freely reduces to b^-1 a^-1 b a b^-1 a b a^-3.
  CHECK(p.relators[0] == word("BAbaBab") * Word::power(0, -3));
  CHECK(p.relators[0].length() == 7 + 3);
  CHECK(p.relators[1].length() == 7 + 3);
  CHECK(p.relators[1] == word("ABabAba") * Word::power(1, -3));

  p = macdonald_presentation(-2, 7);
  CHECK(p.relators[0].syllables().back() == Syllable{0, 2});
  CHECK(p.relators[1].syllables().back() == Syllable{1, -7});

  p = macdonald_presentation(7, 34);
  CHECK(p.relators[0].syllables().back() == Syllable{0, -7});
  CHECK(p.relators[1].syllables().back() == Syllable{1, -34});
  CHECK_NOTHROW(p.validate());
  CHECK_THROWS_AS(macdonald_presentation(1, 3), DomainError);
}

TEST_CASE("Sylow presentations") {
  auto e = sylow_exponents(3, 3, 2);
  CHECK(e.a == 8);
  CHECK(e.b == 8);
  e = sylow_exponents(7, 34, 3);
  CHECK(e.a == 243);
  CHECK(e.b == 243);
  e = sylow_exponents(26, 6, 5);
  CHECK(e.a == 390625);
  CHECK(e.b == 625);
  e = sylow_exponents(7, 10, 3);
  CHECK(e.a == 243);
  CHECK(e.b == 6561);

  const auto p = sylow_presentation(3, 3, 2);
  REQUIRE(p.relators.size() == 4);
  CHECK(p.relators[2] == Word::power(0, 8));
  CHECK(p.relators[3] == Word::power(1, 8));
  CHECK_THROWS_AS(sylow_exponents(4, 6, 5), DomainError);
  CHECK_THROWS_AS(sylow_presentation(4, 6, 3), DomainError);
}

TEST_CASE("Todd-Coxeter on textbook presentations") {
  for (const auto& t : textbook()) {
    INFO(t.name);
    for (auto s : {Strategy::HLT, Strategy::Felsch}) {
      EnumerationLimits lim;
      lim.strategy = s;
      lim.max_cosets = 200000;
      const auto table = todd_coxeter(t.pres, {}, lim);
      CHECK(table.coset_count() == t.order);
      CHECK(relators_hold(table, t.pres));
      if (t.order > 1) {
        const auto perms = to_permutations(table);
        CHECK(perm::PermGroup::generated_by(perms, table.coset_count()).order() == t.order);
      }
    }
  }
}

TEST_CASE("strategies agree and tables are standardized") {
  for (const auto& t : textbook()) {
    EnumerationLimits hlt, felsch;
    felsch.strategy = Strategy::Felsch;
    const auto a = todd_coxeter(t.pres, {}, hlt);
    const auto b = todd_coxeter(t.pres, {}, felsch);
    CHECK(a.coset_count() == b.coset_count());
    // Breadth-first numbering: each coset first appears as the image of a smaller one.
    std::uint32_t next = 1;
    for (std::size_t c = 0; c < a.coset_count(); ++c) {
      for (std::size_t col = 0; col < 2 * a.generator_count(); ++col) {
        const auto img = a.at(c, col);
        CHECK(img <= next);
        if (img == next) ++next;
      }
    }
    // Deterministic: a second run gives the identical table.
    const auto again = todd_coxeter(t.pres, {}, hlt);
    bool same = again.coset_count() == a.coset_count();
    for (std::size_t c = 0; same && c < a.coset_count(); ++c)
      for (std::size_t col = 0; col < 2 * a.generator_count(); ++col) same = same && a.at(c, col) == again.at(c, col);
    CHECK(same);
  }
}

TEST_CASE("subgroup enumeration") {
  // Cosets of <a> in S4 = <a, b | a^2, b^3, (ab)^4>.
  const auto s4 = presentation(2, {Word::power(0, 2), Word::power(1, 3), word("abababab")});
  const auto t = todd_coxeter(s4, {word("a")});
  CHECK(t.coset_count() == 12);
  CHECK(trace_word(t, word("a"), 0) == 0);
  CHECK(todd_coxeter(s4, {word("b")}).coset_count() == 8);
}

TEST_CASE("tracing words") {
  const auto q = sylow_presentation(3, 3, 2);
  const auto t = todd_coxeter(q);
  REQUIRE(t.coset_count() == 16);
  const auto perms = to_permutations(t);
  CHECK(perm::element_order(perms[0]) == 4);
  CHECK(perm::element_order(perms[1]) == 4);
  for (std::uint32_t c = 0; c < 16; ++c) {
    CHECK(trace_word(t, Word(), c) == c);
    CHECK(trace_word(t, Word::power(0, 4), c) == c);
    CHECK(trace_word(t, Word::power(0, 4000000001ll), c) == trace_word(t, word("a"), c));
    for (const auto& r : q.relators) CHECK(trace_word(t, r, c) == c);
    CHECK(trace_word(t, word("abAB"), c) == test::evaluate(word("abAB"), perms)[c]);
  }
  const auto s3 = to_permutations(todd_coxeter(presentation(2, {Word::power(0, 2), Word::power(1, 2), word("ababab")})));
  CHECK(perm::element_order(s3[0]) == 2);
  CHECK(perm::is_regular_action(s3, 6));
  const auto c6 = to_permutations(todd_coxeter(presentation(1, {Word::power(0, 6)})));
  CHECK(perm::element_order(c6[0]) == 6);
}

TEST_CASE("coset cap and invalid limits") {
  const auto a5 = presentation(2, {Word::power(0, 2), Word::power(1, 3), word("ababababab")});
  EnumerationLimits lim;
  lim.max_cosets = 20;
  try {
    todd_coxeter(a5, {}, lim);
    FAIL("cap not enforced");
  } catch (const EnumerationLimitError& e) {
    CHECK(e.high_water() >= 20);
  }
  lim.max_cosets = 0;
  CHECK_THROWS_AS(lim.validate(), DomainError);
  // Free group: never completes.
  EnumerationLimits small;
  small.max_cosets = 1000;
  CHECK_THROWS_AS(todd_coxeter(presentation(2, {}), {}, small), EnumerationLimitError);
  CHECK(strategy_from_name("felsch") == Strategy::Felsch);
  CHECK(strategy_from_name("hlt") == Strategy::HLT);
  CHECK_FALSE(strategy_from_name("lookahead"));
}

TEST_CASE("table dump") {
  const auto s3 = presentation(2, {Word::power(0, 2), Word::power(1, 2), word("ababab")});
  const auto t = todd_coxeter(s3);
  std::ostringstream os;
  write_table(os, t, s3);
  std::istringstream in(os.str());
  std::string line;
  std::getline(in, line);
  CHECK(line.find('a') != std::string::npos);
  CHECK(line.find('b') != std::string::npos);
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    std::istringstream cells(line);
    std::string cell;
    std::size_t n = 0;
    while (std::getline(cells, cell, '\t')) ++n;
    CHECK(n >= 4);
    ++rows;
  }
  CHECK(rows == 6);
  std::ostringstream again;
  write_table(again, todd_coxeter(s3), s3);
  CHECK(again.str() == os.str());
}

TEST_CASE("abelianized Sylow presentations have order p^(m+n)") {
  struct Case {
    std::int64_t a, b;
    std::uint64_t p;
  };
  for (const auto& c : {Case{7, 34, 3}, Case{3, 3, 2}, Case{7, 13, 3}, Case{7, 10, 3}, Case{7, 16, 3},
                        Case{26, 6, 5}, Case{6, 6, 5}, Case{3, 5, 2}, Case{3, 17, 2}, Case{9, 5, 2},
                        Case{5, 5, 2}, Case{5, 13, 2}, Case{9, 25, 2}, Case{-2, 7, 3}}) {
    const auto pres = sylow_presentation(c.a, c.b, c.p);
    snf::IntMatrix m(2, pres.relators.size());
    for (std::size_t j = 0; j < pres.relators.size(); ++j) {
      const auto row = exponent_sums(pres.relators[j], 2);
      m(0, j) = row[0];
      m(1, j) = row[1];
    }
    const auto order = snf::abelian_order(m);
    REQUIRE(order);
    const auto mm = padic::valuation(BigInt(c.a - 1), c.p).value();
    const auto nn = padic::valuation(BigInt(c.b - 1), c.p).value();
    CHECK(*order == boost::multiprecision::pow(BigInt(c.p), mm + nn));
  }
}
