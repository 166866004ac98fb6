#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "mdk/error.hpp"
#include "mdk/rewrite.hpp"
#include "mdk/syntax.hpp"
#include "mdk/term.hpp"

namespace mdk {

enum class DeclKind { Static, Definable, Definition };

std::string_view decl_kind_name(DeclKind k);

struct Declaration {
  std::string name;
  DeclKind kind;
  Term type;
  std::optional<Term> body;  // Definition only
  Location loc;
};

struct RewriteRule {
  // Pattern variables, named with the pattern-variable prefix; each type
  // may mention the variables before it.
  std::vector<std::pair<std::string, Term>> context;
  Term lhs_term;
  Pattern lhs;
  std::vector<Pattern> arg_patterns;
  Term rhs;
  std::string head;
  std::size_t arity = 0;
  std::size_t ordinal = 0;  // position in the head's rule list
  bool unfolding = false;   // the `c --> body` rule of a definition
  Location loc;
};

/// Alpha-equality of two rules, ignoring the names of their pattern variables.
bool same_rule(const RewriteRule& a, const RewriteRule& b);

// An elaborated theory: declarations and rules in elaboration order.
// Immutable once elaboration finishes; the mutators are for the elaborator.
class Signature {
 public:
  struct Item {
    enum class Kind { Declaration, Rule } kind;
    std::string name;  // declared name, or rule head
    std::size_t ordinal = 0;  // rule ordinal
  };

  const Declaration* find(std::string_view name) const;
  bool contains(std::string_view name) const { return find(name) != nullptr; }

  // Rules whose head is `name`, in declaration order (empty if none).
  const std::vector<RewriteRule>& rules(std::string_view name) const;
  bool has_rules(std::string_view name) const { return !rules(name).empty(); }

  const std::vector<Item>& items() const { return items_; }
  std::vector<std::string> declaration_names() const;
  std::size_t declaration_count() const { return decls_.size(); }
  std::size_t rule_count() const;

  void declare(Declaration d);
  void add_rule(RewriteRule r);

  /// Entries that re-elaborate to this signature (definitions carry their
  /// unfolding implicitly).
  SourceFile to_source() const;
  Entry entry_for(const Item& item) const;

 private:
  std::vector<Declaration> decls_;
  std::unordered_map<std::string, std::size_t> index_;
  std::unordered_map<std::string, std::vector<RewriteRule>> rules_;
  std::vector<Item> items_;
};

}  // namespace mdk
