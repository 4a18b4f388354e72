#include <atomic>
#include <charconv>
#include <istream>
#include <string>
#include <thread>

#include "mgl/errors.hpp"
#include "mgl/verifier.hpp"

namespace mgl::verify {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_cells(const std::string& line) {
  std::vector<std::string> cells;
  std::size_t from = 0;
  for (;;) {
    const auto comma = line.find(',', from);
    cells.push_back(trim(std::string_view(line).substr(from, comma - from)));
    if (comma == std::string::npos) return cells;
    from = comma + 1;
  }
}

template <class T>
T parse_number(const std::string& cell, std::size_t line_no, const char* field) {
  T v{};
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (ec != std::errc() || ptr != cell.data() + cell.size()) {
    throw DomainError("corpus line " + std::to_string(line_no) + ": bad " + field + " '" + cell + "'");
  }
  return v;
}

}  // namespace

std::vector<CorpusEntry> parse_corpus(std::istream& in) {
  std::vector<CorpusEntry> out;
  std::string line;
  std::size_t line_no = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const std::vector<std::string> cells = split_cells(t);
    if (!header) {
      if (cells != std::vector<std::string>{"alpha", "beta", "prime", "max_cosets"}) {
        throw DomainError("corpus line " + std::to_string(line_no) + ": expected header alpha,beta,prime,max_cosets");
      }
      header = true;
      continue;
    }
    if (cells.size() < 2 || cells.size() > 4) {
      throw DomainError("corpus line " + std::to_string(line_no) + ": expected 2 to 4 cells");
    }
    CorpusEntry e;
    e.alpha = parse_number<std::int64_t>(cells[0], line_no, "alpha");
    e.beta = parse_number<std::int64_t>(cells[1], line_no, "beta");
    if (cells.size() > 2 && !cells[2].empty()) e.prime = parse_number<std::uint64_t>(cells[2], line_no, "prime");
    if (cells.size() > 3 && !cells[3].empty()) {
      e.max_cosets = parse_number<std::size_t>(cells[3], line_no, "max_cosets");
      if (*e.max_cosets == 0) throw DomainError("corpus line " + std::to_string(line_no) + ": max_cosets must be positive");
    }
    out.push_back(e);
  }
  if (!header) throw DomainError("corpus has no header line");
  return out;
}

std::vector<VerificationReport> run_corpus(const std::vector<CorpusEntry>& entries, const VerifyLimits& limits,
                                           unsigned jobs) {
  struct Task {
    CorpusEntry entry;
    std::uint64_t prime = 0;
    std::string error;  // set when the entry could not be expanded
  };
  std::vector<Task> tasks;
  for (const CorpusEntry& e : entries) {
    if (e.prime) {
      tasks.push_back({e, *e.prime, {}});
      continue;
    }
    try {
      const auto params = predictor::GroupParams::make(e.alpha, e.beta);
      for (std::uint64_t p : predictor::prime_support(params)) tasks.push_back({e, p, {}});
    } catch (const std::exception& ex) {
      tasks.push_back({e, 0, ex.what()});
    }
  }

  std::vector<VerificationReport> reports(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      const Task& t = tasks[i];
      if (!t.error.empty()) {
        VerificationReport& r = reports[i];
        r.alpha = t.entry.alpha;
        r.beta = t.entry.beta;
        r.status = Status::Error;
        r.diagnostic = t.error;
        continue;
      }
      VerifyLimits lim = limits;
      if (t.entry.max_cosets) lim.max_cosets = *t.entry.max_cosets;
      reports[i] = verify(t.entry.alpha, t.entry.beta, t.prime, lim);
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(tasks.size())));
  std::vector<std::thread> pool;
  for (unsigned k = 1; k < n; ++k) pool.emplace_back(worker);
  worker();
  for (std::thread& th : pool) th.join();
  return reports;
}

}  // namespace mgl::verify
