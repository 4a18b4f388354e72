// mgl: predict and verify the Sylow structure of Macdonald groups.
//
//   mgl predict   --alpha A --beta B [--prime p] [--json]
//   mgl verify    --alpha A --beta B --prime p [--max-cosets N] [--strategy hlt|felsch]
//                 [--engine auto|tc|pq] [--relations] [--json]
//   mgl corpus    --file corpus.csv [--out reports.jsonl] [--jobs N]
//   mgl snf-check --case teo5|teo17 [--p P] --m M --ell L --k K --u U --v V [--q Q]
//
// Exit codes: 0 success / MATCH, 1 MISMATCH (or seed disagreement),
// 2 resource limit exceeded, 3 input error.

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mgl/errors.hpp"
#include "mgl/predictor.hpp"
#include "mgl/snf.hpp"
#include "mgl/verifier.hpp"

namespace {

using namespace mgl;

constexpr int kOk = 0;
constexpr int kMismatch = 1;
constexpr int kResource = 2;
constexpr int kInput = 3;

std::string order_of(std::uint64_t p, unsigned v) { return predictor::prime_power(p, v).str(); }

void print_prediction_table(std::ostream& os, const std::vector<predictor::StructureReport>& rows) {
  os << std::left << std::setw(8) << "p" << std::setw(7) << "case" << std::right << std::setw(4) << "e"
     << std::setw(4) << "f" << std::setw(12) << "o(A)" << std::setw(12) << "o(B)" << std::setw(12) << "o(C)" << '\n';
  for (const auto& r : rows) {
    os << std::left << std::setw(8) << r.p << std::setw(7) << predictor::case_name(r.case_id) << std::right
       << std::setw(4) << r.e << std::setw(4) << r.f << std::setw(12) << order_of(r.p, r.vA) << std::setw(12)
       << order_of(r.p, r.vB) << std::setw(12) << order_of(r.p, r.vC) << '\n';
  }
}

nlohmann::json prediction_json(const predictor::StructureReport& r) {
  return {{"p", r.p},   {"case", std::string(predictor::case_name(r.case_id))},
          {"e", r.e},   {"f", r.f},
          {"vA", r.vA}, {"vB", r.vB},
          {"vC", r.vC}};
}

int cmd_predict(std::int64_t alpha, std::int64_t beta, std::optional<std::uint64_t> prime, bool json) {
  const auto params = predictor::GroupParams::make(alpha, beta);
  std::vector<predictor::StructureReport> rows;
  BigInt order = 1;
  if (prime) {
    const auto support = predictor::prime_support(params);
    if (std::find(support.begin(), support.end(), *prime) == support.end()) {
      throw DomainError(std::to_string(*prime) + " does not divide (alpha-1)(beta-1)");
    }
    rows.push_back(predictor::predict(params, *prime));
    order = predictor::prime_power(*prime, rows.back().e);
  } else {
    const auto all = predictor::predict_all(params);
    rows = all.sylow;
    order = all.order;
  }
  if (json) {
    nlohmann::json j = {{"alpha", alpha}, {"beta", beta}, {"sylow", nlohmann::json::array()}};
    for (const auto& r : rows) j["sylow"].push_back(prediction_json(r));
    if (!prime) j["order"] = order.str();
    std::cout << j.dump() << '\n';
    return kOk;
  }
  std::cout << "G(" << alpha << ", " << beta << ")";
  if (!prime) std::cout << "  |G| = " << order;
  std::cout << '\n';
  print_prediction_table(std::cout, rows);
  return kOk;
}

int exit_code(verify::Status s) {
  switch (s) {
    case verify::Status::Match: return kOk;
    case verify::Status::Mismatch: return kMismatch;
    case verify::Status::SkippedResource: return kResource;
    case verify::Status::Error: return kInput;
  }
  return kInput;
}

void print_report(std::ostream& os, const verify::VerificationReport& r, bool relations) {
  os << "G(" << r.alpha << ", " << r.beta << ")_" << r.prime;
  if (r.predicted) os << "  case " << predictor::case_name(r.predicted->case_id);
  if (!r.engine.empty()) os << "  engine " << r.engine << "  cosets " << r.cosets;
  os << "  " << r.millis << " ms\n";
  if (r.predicted) {
    const auto& p = *r.predicted;
    os << std::left << std::setw(11) << "" << std::right << std::setw(12) << "|G_p|" << std::setw(7) << "class"
       << std::setw(10) << "o(A)" << std::setw(10) << "o(B)" << std::setw(10) << "o(C)" << '\n';
    os << std::left << std::setw(11) << "predicted" << std::right << std::setw(12) << order_of(r.prime, p.e)
       << std::setw(7) << p.f << std::setw(10) << order_of(r.prime, p.vA) << std::setw(10)
       << order_of(r.prime, p.vB) << std::setw(10) << order_of(r.prime, p.vC) << '\n';
  }
  if (r.measured) {
    const auto& m = *r.measured;
    os << std::left << std::setw(11) << "measured" << std::right << std::setw(12) << m.order << std::setw(7)
       << m.cls << std::setw(10) << m.ord_a << std::setw(10) << m.ord_b << std::setw(10) << m.ord_c << '\n';
    os << "abelianization order " << m.abelianization << '\n';
  }
  if (r.q16) os << "Q16 fingerprint " << (*r.q16 ? "true" : "false") << '\n';
  if (relations && !r.relations.empty()) {
    os << "relations";
    for (const auto& rel : r.relations) {
      os << "  " << rel.id << ' ' << (rel.holds ? (*rel.holds ? "holds" : "FAILS") : "not evaluated");
    }
    os << '\n';
  }
  if (!r.diagnostic.empty()) os << "note: " << r.diagnostic << '\n';
  os << "status " << verify::status_name(r.status) << '\n';
}

verify::VerifyLimits make_limits(std::optional<std::size_t> max_cosets, const std::string& strategy,
                                 const std::string& engine) {
  verify::VerifyLimits lim;
  lim.max_cosets = max_cosets ? *max_cosets : verify::default_max_cosets();
  if (lim.max_cosets == 0) throw DomainError("--max-cosets must be positive");
  const auto s = fp::strategy_from_name(strategy);
  if (!s) throw DomainError("unknown strategy '" + strategy + "'");
  lim.strategy = *s;
  const auto e = verify::engine_from_name(engine);
  if (!e) throw DomainError("unknown engine '" + engine + "'");
  lim.engine = *e;
  return lim;
}

int cmd_corpus(const std::string& file, const std::string& out, unsigned jobs, const verify::VerifyLimits& lim) {
  std::ifstream in(file);
  if (!in) {
    std::cerr << "mgl: cannot read corpus file '" << file << "'\n";
    return kInput;
  }
  const auto entries = verify::parse_corpus(in);
  const auto reports = verify::run_corpus(entries, lim, jobs);
  std::ofstream sink;
  if (!out.empty()) {
    sink.open(out);
    if (!sink) {
      std::cerr << "mgl: cannot write '" << out << "'\n";
      return kInput;
    }
  }
  std::ostream& os = out.empty() ? std::cout : sink;
  for (const auto& r : reports) os << verify::to_json(r).dump() << '\n';
  for (const auto& r : reports) {
    std::cerr << std::left << std::setw(18) << ("G(" + std::to_string(r.alpha) + "," + std::to_string(r.beta) + ")_" +
                                                std::to_string(r.prime))
              << std::setw(17) << verify::status_name(r.status) << r.millis << " ms";
    if (!r.diagnostic.empty()) std::cerr << "  " << r.diagnostic;
    std::cerr << '\n';
  }
  const auto s = verify::summarize(reports);
  std::cerr << "summary: " << s.match << " match, " << s.mismatch << " mismatch, " << s.skipped << " skipped, "
            << s.error << " error\n";
  if (s.skipped > 0) std::cerr << "warning: " << s.skipped << " entries exceeded their resource limits\n";
  return s.mismatch == 0 && s.error == 0 ? kOk : kMismatch;
}

int cmd_snf_check(const std::string& which, std::optional<std::uint64_t> p, unsigned m, unsigned ell,
                  const std::string& k, const std::string& u, const std::string& v, std::optional<unsigned> q) {
  auto big = [](const std::string& s, const char* name) {
    try {
      return BigInt(s);
    } catch (const std::exception&) {
      throw DomainError(std::string("--") + name + " is not an integer: '" + s + "'");
    }
  };
  snf::SeedCheck check = [&] {
    if (which == "teo5") {
      if (!p) throw DomainError("--p is required for teo5");
      return snf::teo5_seed(*p, m, ell, big(k, "k"), big(u, "u"), big(v, "v"), q);
    }
    if (which == "teo17") {
      if (p && *p != 2) throw DomainError("teo17 is the p = 2 family");
      return snf::teo17_seed(m, ell, big(k, "k"), big(u, "u"), big(v, "v"), q);
    }
    throw DomainError("--case must be teo5 or teo17");
  }();
  // "n (p^k)", with any cofactor prime to p spelled out.
  auto show = [&](const BigInt& n) {
    const BigInt pp = snf::p_part(n, check.p);
    unsigned e = 0;
    for (BigInt x = pp; x > 1; x /= check.p) ++e;
    std::string s = n.str() + " (" + std::to_string(check.p) + "^" + std::to_string(e);
    if (pp != n) s += " * " + BigInt(n / pp).str();
    return s + ")";
  };
  std::cout << check.matrix.to_string();
  std::cout << "abelian order " << (check.order ? show(*check.order) : std::string("infinite")) << '\n';
  std::cout << "claimed       " << show(check.claimed) << '\n';
  std::cout << (check.agrees ? "p-parts agree" : "p-parts DISAGREE") << '\n';
  return check.agrees ? kOk : kMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sylow structure of Macdonald groups: prediction and verification"};
  app.require_subcommand(1);

  std::int64_t alpha = 0;
  std::int64_t beta = 0;
  std::optional<std::uint64_t> prime;
  bool json = false;
  bool relations = false;
  std::optional<std::size_t> max_cosets;
  std::string strategy = "felsch";
  std::string engine = "auto";

  auto* predict = app.add_subcommand("predict", "closed-form Sylow structure");
  predict->add_option("--alpha", alpha)->required();
  predict->add_option("--beta", beta)->required();
  predict->add_option("--prime", prime);
  predict->add_flag("--json", json);

  auto* verify_cmd = app.add_subcommand("verify", "compare the prediction with an enumerated group");
  verify_cmd->add_option("--alpha", alpha)->required();
  verify_cmd->add_option("--beta", beta)->required();
  verify_cmd->add_option("--prime", prime)->required();
  verify_cmd->add_option("--max-cosets", max_cosets, "cap on cosets / group order (default 5000000, env MGL_MAX_COSETS)");
  verify_cmd->add_option("--strategy", strategy, "hlt or felsch")->check(CLI::IsMember({"hlt", "felsch"}));
  verify_cmd->add_option("--engine", engine, "auto, tc or pq")->check(CLI::IsMember({"auto", "tc", "pq"}));
  verify_cmd->add_flag("--relations", relations, "print the relation checks");
  verify_cmd->add_flag("--json", json);

  std::string file;
  std::string out;
  unsigned jobs = 1;
  auto* corpus = app.add_subcommand("corpus", "verify every entry of a CSV corpus");
  corpus->add_option("--file", file)->required();
  corpus->add_option("--out", out, "JSON-lines report path (default stdout)");
  corpus->add_option("--jobs", jobs)->check(CLI::Range(1u, 256u));
  corpus->add_option("--max-cosets", max_cosets);
  corpus->add_option("--strategy", strategy)->check(CLI::IsMember({"hlt", "felsch"}));
  corpus->add_option("--engine", engine)->check(CLI::IsMember({"auto", "tc", "pq"}));

  std::string which;
  std::optional<std::uint64_t> seed_p;
  unsigned m = 0;
  unsigned ell = 0;
  std::string k;
  std::string u;
  std::string v;
  std::optional<unsigned> q;
  auto* snf_cmd = app.add_subcommand("snf-check", "order of an abelian seed group against its claimed value");
  snf_cmd->add_option("--case", which)->required();
  snf_cmd->add_option("--p", seed_p);
  snf_cmd->add_option("--m", m)->required();
  snf_cmd->add_option("--ell", ell)->required();
  snf_cmd->add_option("--k", k)->required();
  snf_cmd->add_option("--u", u)->required();
  snf_cmd->add_option("--v", v)->required();
  snf_cmd->add_option("--q", q);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInput;
  }

  try {
    if (*predict) return cmd_predict(alpha, beta, prime, json);
    if (*verify_cmd) {
      const auto lim = make_limits(max_cosets, strategy, engine);
      const auto report = verify::verify(alpha, beta, *prime, lim);
      if (json) {
        std::cout << verify::to_json(report).dump() << '\n';
      } else {
        print_report(std::cout, report, relations);
      }
      return exit_code(report.status);
    }
    if (*corpus) return cmd_corpus(file, out, jobs, make_limits(max_cosets, strategy, engine));
    if (*snf_cmd) return cmd_snf_check(which, seed_p, m, ell, k, u, v, q);
  } catch (const ResourceError& e) {
    std::cerr << "mgl: " << e.what() << '\n';
    return kResource;
  } catch (const DomainError& e) {
    std::cerr << "mgl: " << e.what() << '\n';
    return kInput;
  } catch (const std::exception& e) {
    std::cerr << "mgl: internal error: " << e.what() << '\n';
    return kInput;
  }
  return kInput;
}
