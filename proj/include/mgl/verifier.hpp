#pragma once

// Prediction against measurement for one Sylow subgroup G_p of G(alpha, beta).
// The subgroup is realized as a regular permutation group, by coset
// enumeration over the trivial subgroup or from the pc presentation of the
// largest p-quotient, and then measured: order, class, generator orders,
// abelianization, plus a catalogue of identities that hold in every G(alpha, beta).

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "mgl/bigint.hpp"
#include "mgl/fpgroup.hpp"
#include "mgl/permgroup.hpp"
#include "mgl/predictor.hpp"

namespace mgl::verify {

enum class Engine { Auto, ToddCoxeter, PQuotient };

std::string_view engine_name(Engine e);
std::optional<Engine> engine_from_name(std::string_view name);

/// Coset budget of the enumeration attempt made by Engine::Auto before it
/// falls back to the p-quotient.
inline constexpr std::size_t kProbeCosets = 200'000;

struct VerifyLimits {
  std::size_t max_cosets = fp::kDefaultMaxCosets;
  fp::Strategy strategy = fp::Strategy::Felsch;
  Engine engine = Engine::Auto;
  std::size_t probe_cosets = kProbeCosets;
};

/// fp::kDefaultMaxCosets unless MGL_MAX_COSETS holds a positive integer.
/// DomainError when the variable is set but malformed.
std::size_t default_max_cosets();

struct MeasuredStructure {
  BigInt order;
  unsigned cls = 0;
  BigInt ord_a;
  BigInt ord_b;
  BigInt ord_c;
  BigInt abelianization;
};

struct RelationResult {
  std::string id;
  std::optional<bool> holds;  // nullopt: not evaluated (alpha or beta <= 1)
};

enum class Status { Match, Mismatch, SkippedResource, Error };

std::string_view status_name(Status s);

struct VerificationReport {
  std::int64_t alpha = 0;
  std::int64_t beta = 0;
  std::uint64_t prime = 0;
  std::optional<predictor::StructureReport> predicted;
  std::optional<MeasuredStructure> measured;
  std::vector<RelationResult> relations;
  std::optional<bool> q16;  // only when |G_p| = 16
  Status status = Status::Error;
  std::string engine;       // engine that produced the group, empty if none did
  std::size_t cosets = 0;   // table high-water mark, or degree of the regular representation
  std::uint64_t millis = 0;
  std::string diagnostic;
};

/// R1-R6 evaluated on the images a, b of A, B in G_p. R1-R5 need alpha, beta > 1.
std::vector<RelationResult> relation_checks(const perm::Permutation& a, const perm::Permutation& b,
                                            std::int64_t alpha, std::int64_t beta, const BigInt& group_order);

/// Generalized quaternion test for a group of order 16: non-abelian, a
/// unique involution and an element of order 8. DomainError for other orders.
bool q16_fingerprint(const perm::PermGroup& g);

/// Never throws for bad input: errors land in the report's status.
VerificationReport verify(std::int64_t alpha, std::int64_t beta, std::uint64_t p, const VerifyLimits& limits = {});

struct CorpusEntry {
  std::int64_t alpha = 0;
  std::int64_t beta = 0;
  std::optional<std::uint64_t> prime;       // absent: every support prime
  std::optional<std::size_t> max_cosets;
};

/// CSV with header `alpha,beta,prime,max_cosets`; blank lines and lines
/// starting with '#' are skipped. DomainError names the offending line.
std::vector<CorpusEntry> parse_corpus(std::istream& in);

/// Reports in input order (one per entry and prime); `jobs` workers.
std::vector<VerificationReport> run_corpus(const std::vector<CorpusEntry>& entries, const VerifyLimits& limits,
                                           unsigned jobs = 1);

struct CorpusSummary {
  std::size_t match = 0;
  std::size_t mismatch = 0;
  std::size_t skipped = 0;
  std::size_t error = 0;
};

CorpusSummary summarize(const std::vector<VerificationReport>& reports);

nlohmann::json to_json(const VerificationReport& r);

}  // namespace mgl::verify
