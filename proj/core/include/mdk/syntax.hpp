#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include "mdk/error.hpp"
#include "mdk/term.hpp"

namespace mdk {

// Rule-context variables are represented inside rule terms as constants
// whose name carries this prefix. The prefix cannot be written in source.
inline constexpr char kPatternVarPrefix = '?';

inline bool is_pattern_var(const Term& t) {
  return t.is(Term::Tag::Const) && !t.name().empty() && t.name()[0] == kPatternVarPrefix;
}
inline std::string pattern_var_name(std::string_view plain) {
  return std::string(1, kPatternVarPrefix) + std::string(plain);
}

namespace entry {

struct StaticDecl {
  std::string name;
  Term type;
};
struct DefinableDecl {
  std::string name;
  Term type;
};
struct Definition {
  std::string name;
  std::optional<Term> type;
  Term body;
};
struct Rule {
  // Types refer to earlier variables as pattern-variable constants.
  std::vector<std::pair<std::string, Term>> context;
  Term lhs;
  Term rhs;
};
struct Eval {
  Term term;
};
struct Check {
  Term term;
  Term type;
};

}  // namespace entry

struct Entry {
  using Body = std::variant<entry::StaticDecl, entry::DefinableDecl, entry::Definition, entry::Rule,
                            entry::Eval, entry::Check>;
  Body body;
  Location loc;
};

// Parsed file. Entry order is exactly the source order.
struct SourceFile {
  std::vector<Entry> entries;
  // Source position of term nodes produced by the parser, keyed by Term::id().
  std::unordered_map<const void*, Location> term_locations;

  std::optional<Location> location_of(const Term& t) const;
};

/// Parses a whole file. Throws Error(LexError|ParseError) at the first problem.
SourceFile parse_file(std::string_view text);

/// Parses a single term, with free identifiers left as constants.
Term parse_term(std::string_view text);
/// Same, recording term locations into `locations`.
Term parse_term(std::string_view text, SourceFile& locations);

/// Prints t with minimal parentheses. `ctx` names the free de Bruijn indices
/// (outermost first); binder names are freshened so the output reparses to an
/// alpha-equal term.
std::string print_term(const Term& t, const std::vector<std::string>& ctx = {});
std::string print_term(const Term& t, const Context& ctx);

std::string print_entry(const Entry& e);
std::string print_file(const SourceFile& f);

bool is_identifier(std::string_view s);

}  // namespace mdk
