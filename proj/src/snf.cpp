#include "mgl/snf.hpp"

#include <sstream>
#include <utility>

#include "mgl/errors.hpp"
#include "mgl/padic.hpp"

namespace mgl::snf {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols, std::vector<BigInt> entries)
    : rows_(rows), cols_(cols), a_(std::move(entries)) {
  if (a_.size() != rows_ * cols_) throw DomainError("matrix entry count does not match its dimensions");
}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<BigInt>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  for (const auto& r : rows) {
    if (r.size() != cols_) throw DomainError("ragged matrix rows");
    a_.insert(a_.end(), r.begin(), r.end());
  }
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  for (std::size_t r = 0; r < rows_; ++r) {
    os << '[';
    for (std::size_t c = 0; c < cols_; ++c) os << (c ? " " : "") << (*this)(r, c);
    os << "]\n";
  }
  return os.str();
}

namespace {

void swap_rows(IntMatrix& m, std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(i, c), m(j, c));
}

void swap_cols(IntMatrix& m, std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t r = 0; r < m.rows(); ++r) std::swap(m(r, i), m(r, j));
}

// Position of the nonzero entry of least absolute value in the block
// [from.., from..], or nullopt when the block vanishes.
std::optional<std::pair<std::size_t, std::size_t>> min_entry(const IntMatrix& m, std::size_t from) {
  std::optional<std::pair<std::size_t, std::size_t>> best;
  BigInt best_abs;
  for (std::size_t r = from; r < m.rows(); ++r) {
    for (std::size_t c = from; c < m.cols(); ++c) {
      if (m(r, c) == 0) continue;
      const BigInt a = abs(m(r, c));
      if (!best || a < best_abs) {
        best = {r, c};
        best_abs = a;
      }
    }
  }
  return best;
}

}  // namespace

std::vector<BigInt> smith_normal_form(IntMatrix m) {
  std::vector<BigInt> out;
  const std::size_t limit = std::min(m.rows(), m.cols());
  for (std::size_t t = 0; t < limit; ++t) {
    auto pos = min_entry(m, t);
    if (!pos) break;
    swap_rows(m, t, pos->first);
    swap_cols(m, t, pos->second);
    for (;;) {
      const BigInt pivot = m(t, t);
      bool dirty = false;
      for (std::size_t r = t + 1; r < m.rows(); ++r) {
        if (m(r, t) == 0) continue;
        const BigInt q = m(r, t) / pivot;
        for (std::size_t c = t; c < m.cols(); ++c) m(r, c) -= q * m(t, c);
        dirty = dirty || m(r, t) != 0;
      }
      for (std::size_t c = t + 1; c < m.cols(); ++c) {
        if (m(t, c) == 0) continue;
        const BigInt q = m(t, c) / pivot;
        for (std::size_t r = t; r < m.rows(); ++r) m(r, c) -= q * m(r, t);
        dirty = dirty || m(t, c) != 0;
      }
      if (dirty) {
        // A remainder smaller than the pivot survived: make it the pivot.
        std::pair<std::size_t, std::size_t> best{t, t};
        BigInt best_abs = abs(m(t, t));
        for (std::size_t r = t + 1; r < m.rows(); ++r) {
          if (m(r, t) != 0 && abs(m(r, t)) < best_abs) {
            best = {r, t};
            best_abs = abs(m(r, t));
          }
        }
        for (std::size_t c = t + 1; c < m.cols(); ++c) {
          if (m(t, c) != 0 && abs(m(t, c)) < best_abs) {
            best = {t, c};
            best_abs = abs(m(t, c));
          }
        }
        swap_rows(m, t, best.first);
        swap_cols(m, t, best.second);
        continue;
      }
      // Row and column are clear; enforce divisibility of the remaining block.
      bool fixed = true;
      for (std::size_t r = t + 1; r < m.rows() && fixed; ++r) {
        for (std::size_t c = t + 1; c < m.cols(); ++c) {
          if (m(r, c) % pivot != 0) {
            for (std::size_t k = t; k < m.cols(); ++k) m(t, k) += m(r, k);
            fixed = false;
            break;
          }
        }
      }
      if (fixed) break;
    }
    out.push_back(abs(m(t, t)));
  }
  return out;
}

std::optional<BigInt> abelian_order(const IntMatrix& relations) {
  const std::vector<BigInt> d = smith_normal_form(relations);
  if (d.size() < relations.rows()) return std::nullopt;
  BigInt order = 1;
  for (const BigInt& x : d) order *= x;
  return order;
}

BigInt p_part(const BigInt& x, std::uint64_t p) {
  if (x == 0) throw DomainError("the p-part of 0 is undefined");
  return big_pow(BigInt(p), padic::valuation(x, p).value());
}

namespace {

bool divides(std::uint64_t p, const BigInt& x) { return x % BigInt(p) == 0; }

unsigned checked_q(std::optional<unsigned> q, const padic::Valuation& s, unsigned cap, const char* cap_name) {
  const unsigned expected = s.is_infinite() ? cap : std::min<unsigned>(s.value(), cap);
  if (q && *q != expected) {
    throw DomainError("q must equal min(s, " + std::string(cap_name) + ") = " + std::to_string(expected));
  }
  return expected;
}

SeedCheck finish(IntMatrix m, BigInt claimed, std::uint64_t p) {
  SeedCheck out{std::move(m), std::nullopt, std::move(claimed), p, false};
  out.order = abelian_order(out.matrix);
  out.agrees = out.order && *out.order != 0 && p_part(*out.order, p) == p_part(out.claimed, p);
  return out;
}

}  // namespace

SeedCheck teo5_seed(std::uint64_t p, unsigned m, unsigned ell, const BigInt& k, const BigInt& u,
                    const BigInt& v, std::optional<unsigned> q) {
  if (p < 3) throw DomainError("this seed group needs an odd prime");
  if (m == 0 || m % 2 != 0) throw DomainError("m must be even and positive");
  if (2 * ell != 3 * m) throw DomainError("ell must satisfy 2 ell = 3m");
  if (divides(p, u) || divides(p, v) || divides(p, k)) throw DomainError("u, v and k must be units mod p");
  const BigInt pm = big_pow(BigInt(p), m);
  if ((u - v) % big_pow(BigInt(p), ell - m) != 0) throw DomainError("u and v must agree mod p^(ell-m)");
  const padic::Valuation s = padic::valuation(2 * k * k - u * u * u, p);
  const unsigned qq = checked_q(q, s, m / 2, "m/2");

  const BigInt half = padic::modular_inverse(2, pm);
  auto w_of = [&](const BigInt& x) {
    BigInt rhs = x * x;
    if (p == 3) rhs -= 2 * big_pow(BigInt(3), m - 1) * x;
    return mod_floor(rhs * half, pm);
  };
  const BigInt wa = w_of(u);
  const BigInt wb = w_of(v);
  const BigInt pl = big_pow(BigInt(p), ell);
  const BigInt ph = big_pow(BigInt(p), m / 2);
  IntMatrix mat{{big_pow(BigInt(p), ell + qq), pm * wa, pl, 2 * pl * k},
                {0, ph * wb, -pm, 0},
                {0, -ph * k, 0, -pm * u}};
  return finish(std::move(mat), big_pow(BigInt(p), 3 * m + qq), p);
}

SeedCheck teo17_seed(unsigned m, unsigned ell, const BigInt& k, const BigInt& u, const BigInt& v,
                     std::optional<unsigned> q) {
  if (m < 5 || m % 2 == 0) throw DomainError("m must be odd and at least 5");
  if (2 * ell + 2 != 3 * m + 1) throw DomainError("ell must satisfy 2 ell + 2 = 3m + 1");
  if (divides(2, u) || divides(2, v) || divides(2, k)) throw DomainError("u, v and k must be odd");
  if ((u - v) % big_pow(BigInt(2), ell - m) != 0) throw DomainError("u and v must agree mod 2^(ell-m)");
  const unsigned r = (m - 3) / 2;
  const padic::Valuation s = padic::valuation(k * k - u * u * u, 2);
  const unsigned qq = checked_q(q, s, r, "(m-3)/2");
  const BigInt two = 2;
  const BigInt t = 1 - big_pow(two, r);
  const BigInt pl = big_pow(two, ell);
  IntMatrix mat{{big_pow(two, ell + qq + 1), big_pow(two, m - 1) * u * u, pl, pl * t * k},
                {0, big_pow(two, m - qq - 1) * v * v, -big_pow(two, ell - qq), 0},
                {0, -big_pow(two, ell - m + 1) * k, 0, -big_pow(two, m) * u}};
  return finish(std::move(mat), big_pow(two, (7 * m - 1) / 2), 2);
}

}  // namespace mgl::snf
