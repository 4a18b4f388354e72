#include <algorithm>
#include <numeric>
#include <ostream>

#include "mgl/errors.hpp"
#include "mgl/fpgroup.hpp"

namespace mgl::fp {

namespace {

using Coset = std::uint32_t;
constexpr Coset kUndef = 0xFFFFFFFFu;

// Relator letters as table columns, stored twice so every cyclic rotation is
// a contiguous window.
struct ScanRelator {
  std::vector<std::uint32_t> cols;
  std::size_t len = 0;
};

struct PowerRelator {
  std::uint32_t gen = 0;
  std::uint64_t exp = 0;
};

std::vector<std::uint32_t> to_columns(const Word& w) {
  std::vector<std::uint32_t> out;
  for (const auto& [g, sign] : w.letters()) out.push_back(static_cast<std::uint32_t>(CosetTable::column(g, sign)));
  return out;
}

// Cyclically reduced conjugate: scanning is blind to cancelling ends.
Word cyclic_reduction(const Word& w) {
  std::vector<Syllable> syl = w.syllables();
  while (syl.size() >= 2 && syl.front().gen == syl.back().gen) {
    syl.front().exp += syl.back().exp;
    syl.pop_back();
    if (syl.front().exp == 0) syl.erase(syl.begin());
  }
  return Word(std::move(syl));
}

enum class Status { Ok, NoSpace };

class Enumerator {
 public:
  Enumerator(const Presentation& pres, const std::vector<Word>& subgroup, const EnumerationLimits& limits)
      : limits_(limits), ncols_(2 * pres.generator_count), start_(std::chrono::steady_clock::now()) {
    pres.validate();
    limits.validate();
    for (const Word& raw : pres.relators) {
      const Word r = cyclic_reduction(raw);
      if (r.empty()) continue;
      const auto& syl = r.syllables();
      const bool power = syl.size() == 1;
      const auto e = static_cast<std::uint64_t>(power ? std::llabs(syl[0].exp) : 0);
      if (power && (limits.strategy == Strategy::Felsch ||
                    e > static_cast<std::uint64_t>(limits.power_define_bound))) {
        powers_.push_back({syl[0].gen, e});
        continue;
      }
      add_scan_relator(r);
    }
    for (const Word& h : subgroup) {
      for (const Syllable& s : h.syllables()) {
        if (s.gen >= pres.generator_count) throw DomainError("subgroup generator uses an unknown generator");
      }
      if (!h.empty()) subgroup_.push_back(to_columns(h));
    }
    if (limits.strategy == Strategy::Felsch) {
      conjugates_.resize(ncols_);
      for (std::size_t r = 0; r < rels_.size(); ++r) {
        for (std::size_t i = 0; i < rels_[r].len; ++i) conjugates_[rels_[r].cols[i]].push_back({r, i});
      }
    }
    power_of_gen_.assign(pres.generator_count, {});
    for (std::size_t i = 0; i < powers_.size(); ++i) power_of_gen_[powers_[i].gen].push_back(i);
  }

  CosetTable run() {
    new_coset();  // the subgroup coset
    if (limits_.strategy == Strategy::HLT) {
      hlt();
    } else {
      felsch();
    }
    while (!verify_pass()) {
      ++stats_.verification_passes;
      if (limits_.strategy == Strategy::Felsch) {
        felsch();
      } else {
        hlt();
      }
    }
    ++stats_.verification_passes;
    return standardize();
  }

 private:
  // ---- storage -------------------------------------------------------------

  Coset& entry(Coset c, std::size_t col) { return table_[static_cast<std::size_t>(c) * ncols_ + col]; }
  bool live(Coset c) const { return fwd_[c] == c; }

  Coset rep(Coset c) {
    Coset r = c;
    while (fwd_[r] != r) r = fwd_[r];
    while (fwd_[c] != r) {
      const Coset next = fwd_[c];
      fwd_[c] = r;
      c = next;
    }
    return r;
  }

  Coset new_coset() {
    const auto c = static_cast<Coset>(rows_++);
    if (table_.size() < rows_ * ncols_) table_.resize(std::max(rows_ * ncols_, table_.size() * 2), kUndef);
    std::fill_n(table_.begin() + static_cast<std::ptrdiff_t>(c) * ncols_, ncols_, kUndef);
    if (fwd_.size() < rows_) fwd_.resize(std::max(rows_, fwd_.size() * 2));
    fwd_[c] = c;
    ++live_;
    ++stats_.total_defined;
    stats_.high_water = std::max(stats_.high_water, live_);
    if ((stats_.total_defined & 0xFFF) == 0) check_time();
    return c;
  }

  void check_time() const {
    if (!limits_.time_budget) return;
    if (std::chrono::steady_clock::now() - start_ > *limits_.time_budget) {
      throw EnumerationLimitError("coset enumeration exceeded its time budget", stats_.high_water);
    }
  }

  bool full() const { return rows_ >= limits_.max_cosets; }

  [[noreturn]] void overflow() const {
    throw EnumerationLimitError("coset enumeration exceeded " + std::to_string(limits_.max_cosets) + " cosets",
                                stats_.high_water);
  }

  Status define(Coset c, std::size_t col) {
    if (full()) return Status::NoSpace;
    const Coset d = new_coset();
    entry(c, col) = d;
    entry(d, col ^ 1) = c;
    push_deduction(c, col);
    return Status::Ok;
  }

  void push_deduction(Coset c, std::size_t col) {
    if (limits_.strategy == Strategy::Felsch) deductions_.emplace_back(c, static_cast<std::uint32_t>(col));
  }

  // Renumbers live cosets contiguously, preserving order. Returns old -> new
  // (kUndef for dead cosets).
  std::vector<Coset> compact() {
    std::vector<Coset> map(rows_, kUndef);
    Coset next = 0;
    for (std::size_t c = 0; c < rows_; ++c) {
      if (live(static_cast<Coset>(c))) map[c] = next++;
    }
    for (std::size_t c = 0; c < rows_; ++c) {
      if (map[c] == kUndef) continue;
      for (std::size_t col = 0; col < ncols_; ++col) {
        const Coset d = table_[c * ncols_ + col];
        table_[map[c] * static_cast<std::size_t>(ncols_) + col] = d == kUndef ? kUndef : map[d];
      }
    }
    rows_ = next;
    for (Coset c = 0; c < next; ++c) fwd_[c] = c;
    std::vector<std::pair<Coset, std::uint32_t>> kept;
    for (const auto& [c, col] : deductions_) {
      if (c < map.size() && map[c] != kUndef) kept.emplace_back(map[c], col);
    }
    deductions_ = std::move(kept);
    ++stats_.compactions;
    return map;
  }

  // ---- coincidences --------------------------------------------------------

  void merge(Coset k, Coset l, std::vector<Coset>& queue) {
    const Coset a = rep(k);
    const Coset b = rep(l);
    if (a == b) return;
    const Coset lo = std::min(a, b);
    const Coset hi = std::max(a, b);
    fwd_[hi] = lo;
    --live_;
    queue.push_back(hi);
  }

  void coincidence(Coset a, Coset b) {
    std::vector<Coset> queue;
    merge(a, b, queue);
    for (std::size_t i = 0; i < queue.size(); ++i) {
      const Coset g = queue[i];
      for (std::size_t col = 0; col < ncols_; ++col) {
        const Coset d = entry(g, col);
        if (d == kUndef) continue;
        entry(d, col ^ 1) = kUndef;
        const Coset mu = rep(g);
        const Coset nu = rep(d);
        if (entry(mu, col) != kUndef) {
          merge(nu, entry(mu, col), queue);
        } else if (entry(nu, col ^ 1) != kUndef) {
          merge(mu, entry(nu, col ^ 1), queue);
        } else {
          entry(mu, col) = nu;
          entry(nu, col ^ 1) = mu;
          push_deduction(mu, col);
        }
      }
    }
    ++coincidences_;
  }

  // ---- scanning ------------------------------------------------------------

  // Scans w (a window of relator columns) from coset c. With `fill`, defines
  // cosets until the scan completes; otherwise only deduces.
  Status scan(Coset c, const std::uint32_t* w, std::size_t len, bool fill) {
    Coset f = c;
    Coset b = c;
    std::size_t i = 0;
    std::size_t j = len;
    for (;;) {
      while (i < j) {
        const Coset next = entry(f, w[i]);
        if (next == kUndef) break;
        f = next;
        ++i;
      }
      if (i == j) {
        if (f != b) coincidence(f, b);
        return Status::Ok;
      }
      while (j > i) {
        const Coset prev = entry(b, w[j - 1] ^ 1);
        if (prev == kUndef) break;
        b = prev;
        --j;
      }
      if (i == j) {
        coincidence(f, b);
        return Status::Ok;
      }
      if (j == i + 1) {
        entry(f, w[i]) = b;
        entry(b, w[i] ^ 1) = f;
        push_deduction(f, w[i]);
        return Status::Ok;
      }
      if (!fill) return Status::Ok;
      if (define(f, w[i]) == Status::NoSpace) return Status::NoSpace;
    }
  }

  // x^E at coset c without definitions: a closed cycle of length L must
  // divide E; an open x-path of length >= E - 1 is forced shut or collapsed.
  void scan_power(Coset c, const PowerRelator& pr) {
    const std::size_t fcol = 2 * pr.gen;
    const std::size_t bcol = fcol + 1;
    Coset x = c;
    std::uint64_t i = 0;
    while (i < pr.exp) {
      const Coset next = entry(x, fcol);
      if (next == kUndef) break;
      x = next;
      ++i;
      if (x == c) {
        if (pr.exp % i != 0) {
          Coset z = c;
          for (std::uint64_t t = std::gcd(i, pr.exp); t > 0; --t) z = entry(z, fcol);
          coincidence(c, z);
        }
        return;
      }
    }
    if (i == pr.exp) {
      coincidence(c, x);
      return;
    }
    Coset y = c;
    std::uint64_t j = 0;
    while (i + j < pr.exp) {
      const Coset prev = entry(y, bcol);
      if (prev == kUndef) break;
      y = prev;
      ++j;
    }
    if (i + j == pr.exp) {
      coincidence(y, x);
    } else if (i + j + 1 == pr.exp) {
      entry(x, fcol) = y;
      entry(y, bcol) = x;
      push_deduction(x, fcol);
    }
  }

  void add_scan_relator(const Word& r) {
    ScanRelator sr;
    sr.cols = to_columns(r);
    sr.len = sr.cols.size();
    sr.cols.insert(sr.cols.end(), sr.cols.begin(), sr.cols.end());
    rels_.push_back(std::move(sr));
  }

  // ---- HLT -----------------------------------------------------------------

  // Relator-based enumeration. When storage is exhausted, a lookahead pass
  // scans every relator at every coset without defining, then dead rows are
  // compacted away.
  void hlt() {
    for (;;) {
      bool ok = true;
      for (const auto& h : subgroup_) {
        if (scan(rep(0), h.data(), h.size(), true) == Status::NoSpace) {
          ok = false;
          break;
        }
      }
      if (ok) break;
      make_room(nullptr);
    }
    Coset c = 0;
    while (c < rows_) {
      if (!live(c)) {
        ++c;
        continue;
      }
      if (hlt_row(c) == Status::NoSpace) {
        make_room(&c);
        continue;
      }
      ++c;
    }
  }

  Status hlt_row(Coset c) {
    for (const auto& r : rels_) {
      if (scan(c, r.cols.data(), r.len, true) == Status::NoSpace) return Status::NoSpace;
      if (!live(c)) return Status::Ok;
    }
    for (const auto& pr : powers_) {
      scan_power(c, pr);
      if (!live(c)) return Status::Ok;
    }
    for (std::size_t col = 0; col < ncols_; ++col) {
      if (entry(c, col) == kUndef && define(c, col) == Status::NoSpace) return Status::NoSpace;
    }
    return Status::Ok;
  }

  // Frees storage or throws. `cursor` is remapped to the first surviving
  // coset at or after it.
  void make_room(Coset* cursor) {
    if (live_ == rows_) lookahead();
    if (live_ == rows_) overflow();
    const std::vector<Coset> map = compact();
    if (cursor) {
      Coset c = *cursor;
      while (c < map.size() && map[c] == kUndef) ++c;
      *cursor = c < map.size() ? map[c] : static_cast<Coset>(rows_);
    }
  }

  void lookahead() {
    for (Coset c = 0; c < rows_; ++c) {
      for (const auto& r : rels_) {
        if (!live(c)) break;
        scan(c, r.cols.data(), r.len, false);
      }
      for (const auto& pr : powers_) {
        if (!live(c)) break;
        scan_power(c, pr);
      }
    }
    check_time();
  }

  // ---- Felsch --------------------------------------------------------------

  // Table-based enumeration: always fill the first undefined entry, then
  // chase every consequence through all relator rotations.
  void felsch() {
    for (const auto& h : subgroup_) {
      while (scan(rep(0), h.data(), h.size(), true) == Status::NoSpace) make_room(nullptr);
      process_deductions();
    }
    process_deductions();
    Coset c = 0;
    std::size_t col = 0;
    for (;;) {
      while (c < rows_ && (!live(c) || col == ncols_ || entry(c, col) != kUndef)) {
        if (!live(c) || col == ncols_) {
          ++c;
          col = 0;
        } else {
          ++col;
        }
      }
      if (c >= rows_) return;
      if (define(c, col) == Status::NoSpace) {
        if (live_ == rows_) overflow();
        make_room(&c);
        col = 0;
        continue;
      }
      process_deductions();
    }
  }

  void process_deductions() {
    while (!deductions_.empty()) {
      const auto [c0, col] = deductions_.back();
      deductions_.pop_back();
      if (!live(c0) || entry(c0, col) == kUndef) continue;
      for (const auto& [r, off] : conjugates_[col]) {
        if (!live(c0)) break;
        scan(c0, rels_[r].cols.data() + off, rels_[r].len, false);
      }
      for (const auto& [r, off] : conjugates_[col ^ 1]) {
        if (!live(c0) || entry(c0, col) == kUndef) break;
        scan(entry(c0, col), rels_[r].cols.data() + off, rels_[r].len, false);
      }
      for (const std::size_t k : power_of_gen_[col / 2]) {
        if (!live(c0)) break;
        scan_power(c0, powers_[k]);
      }
    }
  }

  // ---- completion ----------------------------------------------------------

  // Every relator from every coset, no definitions. True when nothing changed.
  bool verify_pass() {
    const std::size_t before = coincidences_;
    for (const auto& h : subgroup_) scan(rep(0), h.data(), h.size(), false);
    for (Coset c = 0; c < rows_; ++c) {
      for (const auto& r : rels_) {
        if (!live(c)) break;
        scan(c, r.cols.data(), r.len, false);
      }
      for (const auto& pr : powers_) {
        if (!live(c)) break;
        scan_power(c, pr);
      }
    }
    for (Coset c = 0; c < rows_; ++c) {
      if (!live(c)) continue;
      for (std::size_t col = 0; col < ncols_; ++col) {
        if (entry(c, col) == kUndef) return false;
      }
    }
    return coincidences_ == before && deductions_.empty();
  }

  CosetTable standardize() {
    std::vector<Coset> number(rows_, kUndef);
    std::vector<Coset> order;
    order.reserve(live_);
    const Coset root = rep(0);
    number[root] = 0;
    order.push_back(root);
    for (std::size_t i = 0; i < order.size(); ++i) {
      for (std::size_t col = 0; col < ncols_; ++col) {
        const Coset d = entry(order[i], col);
        if (d == kUndef || !live(d)) throw InternalError("coset table incomplete after enumeration");
        if (number[d] == kUndef) {
          number[d] = static_cast<Coset>(order.size());
          order.push_back(d);
        }
      }
    }
    if (order.size() != live_) throw InternalError("live cosets unreachable from the subgroup coset");
    std::vector<std::uint32_t> entries(order.size() * ncols_);
    for (std::size_t i = 0; i < order.size(); ++i) {
      for (std::size_t col = 0; col < ncols_; ++col) entries[i * ncols_ + col] = number[entry(order[i], col)];
    }
    return CosetTable(ncols_ / 2, order.size(), std::move(entries), stats_);
  }

  EnumerationLimits limits_;
  std::size_t ncols_;
  std::chrono::steady_clock::time_point start_;
  std::vector<ScanRelator> rels_;
  std::vector<PowerRelator> powers_;
  std::vector<std::vector<std::size_t>> power_of_gen_;
  std::vector<std::vector<std::uint32_t>> subgroup_;
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> conjugates_;

  std::vector<Coset> table_;
  std::vector<Coset> fwd_;
  std::size_t rows_ = 0;
  std::size_t live_ = 0;
  std::size_t coincidences_ = 0;
  std::vector<std::pair<Coset, std::uint32_t>> deductions_;
  EnumerationStats stats_;
};

}  // namespace

CosetTable::CosetTable(std::size_t generator_count, std::size_t coset_count, std::vector<std::uint32_t> entries,
                       EnumerationStats stats)
    : gens_(generator_count), cosets_(coset_count), entries_(std::move(entries)), stats_(stats) {
  if (entries_.size() != 2 * gens_ * cosets_) throw DomainError("coset table has the wrong number of entries");
  for (const auto e : entries_) {
    if (e >= cosets_) throw DomainError("coset table is incomplete");
  }
}

CosetTable todd_coxeter(const Presentation& pres, const std::vector<Word>& subgroup,
                        const EnumerationLimits& limits) {
  return Enumerator(pres, subgroup, limits).run();
}

std::vector<perm::Permutation> to_permutations(const CosetTable& table) {
  std::vector<perm::Permutation> out;
  for (std::uint32_t g = 0; g < table.generator_count(); ++g) {
    std::vector<perm::Point> images(table.coset_count());
    for (std::size_t c = 0; c < table.coset_count(); ++c) images[c] = table.at(c, CosetTable::column(g, 1));
    out.emplace_back(std::move(images));
  }
  return out;
}

std::uint32_t trace_word(const CosetTable& table, const Word& w, std::uint32_t start) {
  if (start >= table.coset_count()) throw DomainError("start coset out of range");
  std::uint32_t c = start;
  for (const Syllable& s : w.syllables()) {
    if (s.gen >= table.generator_count()) throw DomainError("word uses an unknown generator");
    const std::size_t col = CosetTable::column(s.gen, s.exp > 0 ? 1 : -1);
    auto steps = static_cast<std::uint64_t>(std::llabs(s.exp));
    // Walk until the cycle through c closes, then reduce the exponent.
    std::uint32_t x = c;
    std::uint64_t len = 0;
    while (len < steps) {
      x = table.at(x, col);
      ++len;
      if (x == c) break;
    }
    if (len == steps) {
      c = x;
      continue;
    }
    steps %= len;
    for (; steps > 0; --steps) c = table.at(c, col);
  }
  return c;
}

bool relators_hold(const CosetTable& table, const Presentation& pres) {
  for (const Word& r : pres.relators) {
    for (std::uint32_t c = 0; c < table.coset_count(); ++c) {
      if (trace_word(table, r, c) != c) return false;
    }
  }
  return true;
}

void write_table(std::ostream& os, const CosetTable& table, const Presentation& pres) {
  auto name = [&](std::size_t g) { return g < pres.names.size() ? pres.names[g] : "x" + std::to_string(g); };
  os << "coset";
  for (std::size_t g = 0; g < table.generator_count(); ++g) os << '\t' << name(g) << '\t' << name(g) << "^-1";
  os << '\n';
  for (std::size_t c = 0; c < table.coset_count(); ++c) {
    os << c + 1;
    for (std::size_t col = 0; col < 2 * table.generator_count(); ++col) os << '\t' << table.at(c, col) + 1;
    os << '\n';
  }
}

}  // namespace mgl::fp
