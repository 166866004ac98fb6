#pragma once

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "mdk/signature.hpp"
#include "mdk/term.hpp"
#include "mdk/typecheck.hpp"

namespace mdk {

// Which constants and rewrite rules a declaration or term depends on.
//
// Rules are over-approximated: every (non-unfolding) rule of every included
// definable constant is listed, whether or not it fires while checking the
// root. This keeps trimming sound without tracing reductions.
struct DependencyReport {
  std::variant<std::string, Term> root;
  std::set<std::string> constants;
  std::set<std::pair<std::string, std::size_t>> rules;
  bool transitive = false;

  static constexpr const char* kApproximation = "all-rules-of-reachable-definables";

  /// Line-oriented form: "root", "mode", "approx", then sorted "const" and
  /// "rule" lines.
  std::string format() const;
};

using DepsRoot = std::variant<std::string, Term>;

/// Throws UnknownName if a root name is not declared in sig.
DependencyReport deps(const Signature& sig, const DepsRoot& root, bool transitive);

/// Re-elaborates only the transitive dependencies of root (in their original
/// order) and re-checks root against them. Any failure is a bug in deps.
Elaborated check_with_trimmed(const Signature& sig, const DepsRoot& root, const ElabOptions& options = {});

/// The entries that check_with_trimmed elaborates.
SourceFile trimmed_source(const Signature& sig, const DependencyReport& report);

enum class Verdict { Equal, Subset, Superset, Compatible, Conflict };

std::string_view verdict_name(Verdict v);

struct Finding {
  enum class Kind { LeftOnly, RightOnly, LeftOnlyRule, RightOnlyRule, Mismatch, UnionFailed } kind;
  std::string name;
  std::string detail;  // mismatch reason, rule ordinal, or elaboration error
};

// Syntactic relation between two theories. COMPATIBLE only means the
// declarations agree and the union elaborates; it says nothing about
// logical consistency of the union.
struct TheoryRelation {
  Verdict verdict = Verdict::Conflict;
  std::vector<Finding> details;
  // Left entries followed by right-only entries; present unless CONFLICT.
  std::optional<Elaborated> union_theory;

  /// Verdict token, then one line per finding.
  std::string format() const;
};

TheoryRelation compare(const Signature& left, const Signature& right, const ElabOptions& options = {});

/// The left-then-right-only entries compare() elaborates as the union.
SourceFile union_source(const Signature& left, const Signature& right);

}  // namespace mdk
