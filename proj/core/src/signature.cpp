#include "mdk/signature.hpp"

#include <unordered_map>

namespace mdk {

std::string_view decl_kind_name(DeclKind k) {
  switch (k) {
    case DeclKind::Static: return "static";
    case DeclKind::Definable: return "definable";
    case DeclKind::Definition: return "definition";
  }
  return "?";
}

namespace {

// Renames pattern variables to their context position so that rules that
// differ only in variable names compare equal.
Term canonical(const Term& t, const std::unordered_map<std::string, std::string>& renaming) {
  switch (t.tag()) {
    case Term::Tag::Const: {
      auto it = renaming.find(t.name());
      return it == renaming.end() ? t : Term::constant(it->second);
    }
    case Term::Tag::App: return Term::app(canonical(t.head(), renaming), canonical(t.arg(), renaming));
    case Term::Tag::Lam:
      return Term::lam(t.name(), t.annotation() ? std::optional(canonical(t.head(), renaming)) : std::nullopt,
                       canonical(t.body(), renaming));
    case Term::Tag::Pi:
      return Term::pi(t.name(), canonical(t.domain(), renaming), canonical(t.codomain(), renaming));
    default: return t;
  }
}

std::unordered_map<std::string, std::string> positional_names(const RewriteRule& r) {
  std::unordered_map<std::string, std::string> m;
  for (std::size_t i = 0; i < r.context.size(); ++i) {
    m.emplace(r.context[i].first, pattern_var_name("#" + std::to_string(i)));
  }
  return m;
}

}  // namespace

bool same_rule(const RewriteRule& a, const RewriteRule& b) {
  if (a.context.size() != b.context.size() || a.head != b.head || a.arity != b.arity) return false;
  auto ra = positional_names(a);
  auto rb = positional_names(b);
  for (std::size_t i = 0; i < a.context.size(); ++i) {
    if (!alpha_eq(canonical(a.context[i].second, ra), canonical(b.context[i].second, rb))) return false;
  }
  return alpha_eq(canonical(a.lhs_term, ra), canonical(b.lhs_term, rb)) &&
         alpha_eq(canonical(a.rhs, ra), canonical(b.rhs, rb));
}

const Declaration* Signature::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  return it == index_.end() ? nullptr : &decls_[it->second];
}

const std::vector<RewriteRule>& Signature::rules(std::string_view name) const {
  static const std::vector<RewriteRule> none;
  auto it = rules_.find(std::string(name));
  return it == rules_.end() ? none : it->second;
}

std::vector<std::string> Signature::declaration_names() const {
  std::vector<std::string> out;
  out.reserve(decls_.size());
  for (const auto& d : decls_) out.push_back(d.name);
  return out;
}

std::size_t Signature::rule_count() const {
  std::size_t n = 0;
  for (const auto& [_, rs] : rules_) {
    for (const auto& r : rs) n += r.unfolding ? 0 : 1;
  }
  return n;
}

void Signature::declare(Declaration d) {
  index_.emplace(d.name, decls_.size());
  items_.push_back({Item::Kind::Declaration, d.name, 0});
  decls_.push_back(std::move(d));
}

void Signature::add_rule(RewriteRule r) {
  auto& list = rules_[r.head];
  r.ordinal = list.size();
  if (!r.unfolding) items_.push_back({Item::Kind::Rule, r.head, r.ordinal});
  list.push_back(std::move(r));
}

Entry Signature::entry_for(const Item& item) const {
  if (item.kind == Item::Kind::Rule) {
    const RewriteRule& r = rules(item.name).at(item.ordinal);
    entry::Rule e;
    for (const auto& [name, type] : r.context) e.context.emplace_back(name.substr(1), type);
    e.lhs = r.lhs_term;
    e.rhs = r.rhs;
    return {std::move(e), r.loc};
  }
  const Declaration& d = *find(item.name);
  switch (d.kind) {
    case DeclKind::Static: return {entry::StaticDecl{d.name, d.type}, d.loc};
    case DeclKind::Definable: return {entry::DefinableDecl{d.name, d.type}, d.loc};
    case DeclKind::Definition: return {entry::Definition{d.name, d.type, *d.body}, d.loc};
  }
  throw Error(Category::Internal, "unknown declaration kind");
}

SourceFile Signature::to_source() const {
  SourceFile f;
  for (const auto& item : items_) f.entries.push_back(entry_for(item));
  return f;
}

}  // namespace mdk
