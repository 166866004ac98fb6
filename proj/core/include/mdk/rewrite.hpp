#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mdk/term.hpp"

namespace mdk {

class Signature;

inline constexpr std::size_t kDefaultFuel = 100000;

// Left-hand side of a rewrite rule.
//
// Var:   a pattern variable applied to pairwise-distinct locally bound
//        variables (`args`, de Bruijn indices relative to the pattern binders).
// Const: a constant. BVar: a rigid locally bound variable.
// App:   kids = {head, arg}. Lam: kids = {body}; annotations are not matched.
struct Pattern {
  enum class Tag { Var, Const, BVar, App, Lam };

  Tag tag;
  std::string name;
  std::uint32_t index = 0;
  std::vector<std::uint32_t> args;
  std::vector<Pattern> kids;

  static Pattern var(std::string name, std::vector<std::uint32_t> args = {});
  static Pattern constant(std::string name);
  static Pattern bvar(std::uint32_t index);
  static Pattern app(Pattern head, Pattern arg);
  static Pattern lam(std::string binder, Pattern body);
};

/// Converts a rule left-hand side to a pattern. Pattern variables are the
/// constants accepted by `is_var`. Throws IllFormedPattern (not
/// constant-headed, variable applied to non-distinct or non-bound
/// arguments, unsupported construct) or NonLinearPattern.
Pattern compile_pattern(const Term& lhs, const std::function<bool(const std::string&)>& is_var);

/// Pattern variables in order of first occurrence.
std::vector<std::string> pattern_variables(const Pattern& p);

/// Spine head constant and argument patterns of a constant-headed pattern.
std::pair<std::string, std::vector<Pattern>> pattern_spine(const Pattern& p);

using Substitution = std::map<std::string, Term>;

// Step budget shared by one normalization or checking job. Every beta or
// rewrite step consumes one unit; running out throws FuelExhausted.
class Fuel {
 public:
  using Observer = std::function<void(std::size_t step, std::string_view what, const Term& result)>;

  explicit Fuel(std::size_t limit = kDefaultFuel, Observer observer = {})
      : limit_(limit), observer_(std::move(observer)) {}

  void consume();
  void report(std::string_view what, const Term& result) const {
    if (observer_) observer_(used_, what, result);
  }

  std::size_t used() const { return used_; }
  std::size_t limit() const { return limit_; }
  std::size_t remaining() const { return limit_ - used_; }

 private:
  std::size_t limit_;
  std::size_t used_ = 0;
  Observer observer_;
};

struct MatchResult {
  Substitution subst;
  // t with every subterm that matching had to normalize replaced by its
  // normal form. instantiate(p, subst) is alpha-equal to this.
  Term forced;
};

// Reduction hooks used by the matcher to expose heads on demand.
struct Normalizer {
  std::function<Term(const Term&)> whnf;
  std::function<Term(const Term&)> snf;
};

/// Matches p against t (both at pattern depth 0).
std::optional<MatchResult> match(const Pattern& p, const Term& t, const Normalizer& norm);
std::optional<MatchResult> match(const Signature& sig, const Pattern& p, const Term& t, Fuel& fuel);

/// Builds the term denoted by p under subst, beta-reducing the applications
/// of pattern variables to their bound arguments.
Term instantiate(const Pattern& p, const Substitution& subst);

/// Replaces pattern-variable constants in a rule right-hand side.
Term instantiate_rhs(const Term& rhs, const Substitution& subst);

/// One rewrite step at the head of t, trying the head constant's rules in
/// declaration order. Returns the rewritten term, or nothing if no rule fires.
std::optional<Term> head_rewrite(const Signature& sig, const Term& t, Fuel& fuel);

/// Same as head_rewrite, also reporting which rule fired.
struct RewriteStep {
  Term result;
  std::string head;
  std::size_t ordinal;
};
std::optional<RewriteStep> head_rewrite_step(const Signature& sig, const Term& t, Fuel& fuel);

/// Weak-head normal form: call-by-name beta and rewrite steps at the head.
Term whnf(const Signature& sig, const Term& t, Fuel& fuel);

/// Strong normal form, leftmost-outermost.
Term snf(const Signature& sig, const Term& t, Fuel& fuel);

/// Whether t contains a beta-redex or a subterm some rule of sig rewrites.
/// Independent of the normalizer above except for the matcher.
bool has_redex(const Signature& sig, const Term& t);

}  // namespace mdk
