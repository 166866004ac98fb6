#include "mdk/term.hpp"

#include <algorithm>

#include "mdk/error.hpp"

namespace mdk {

namespace {

std::uint32_t under_binder(std::uint32_t loose) { return loose == 0 ? 0 : loose - 1; }

}  // namespace

Term::Node::~Node() {
  std::vector<std::shared_ptr<const Node>> pending;
  auto detach = [&pending](Term& t) {
    if (t.node_ && t.node_.use_count() == 1) pending.push_back(std::move(t.node_));
  };
  detach(left);
  detach(right);
  while (!pending.empty()) {
    std::shared_ptr<const Node> n = std::move(pending.back());
    pending.pop_back();
    // Nodes are only ever allocated non-const; see the factories below.
    auto& m = const_cast<Node&>(*n);
    detach(m.left);
    detach(m.right);
  }
}

Term Term::type() {
  static const Term t{std::make_shared<Node>(Node{Tag::Type, 0, 0, {}, {}, {}})};
  return t;
}

Term Term::kind() {
  static const Term t{std::make_shared<Node>(Node{Tag::Kind, 0, 0, {}, {}, {}})};
  return t;
}

Term Term::constant(std::string name) {
  return Term{std::make_shared<Node>(Node{Tag::Const, 0, 0, std::move(name), {}, {}})};
}

Term Term::bvar(std::uint32_t index) {
  return Term{std::make_shared<Node>(Node{Tag::BVar, index, index + 1, {}, {}, {}})};
}

Term Term::app(Term head, Term arg) {
  auto loose = std::max(head.loose_bound(), arg.loose_bound());
  return Term{std::make_shared<Node>(
      Node{Tag::App, 0, loose, {}, std::move(head), std::move(arg)})};
}

Term Term::app(Term head, const std::vector<Term>& args) {
  for (const auto& a : args) head = app(std::move(head), a);
  return head;
}

Term Term::lam(std::string binder, std::optional<Term> annotation, Term body) {
  Term ann = annotation ? std::move(*annotation) : Term{};
  auto loose = std::max(ann.loose_bound(), under_binder(body.loose_bound()));
  return Term{std::make_shared<Node>(
      Node{Tag::Lam, 0, loose, std::move(binder), std::move(ann), std::move(body)})};
}

Term Term::pi(std::string binder, Term domain, Term codomain) {
  auto loose = std::max(domain.loose_bound(), under_binder(codomain.loose_bound()));
  return Term{std::make_shared<Node>(
      Node{Tag::Pi, 0, loose, std::move(binder), std::move(domain), std::move(codomain)})};
}

Term Term::arrow(Term domain, Term codomain) {
  return pi("_", std::move(domain), shift(codomain, 1, 0));
}

std::optional<Term> Term::annotation() const {
  if (node_->left) return node_->left;
  return std::nullopt;
}

std::optional<Term> Context::lookup(std::uint32_t index) const {
  if (index >= entries_.size()) return std::nullopt;
  const auto& e = entries_[entries_.size() - 1 - index];
  return shift(e.type, static_cast<std::int64_t>(index) + 1, 0);
}

const std::string& Context::name_of(std::uint32_t index) const {
  return entries_.at(entries_.size() - 1 - index).name;
}

Context Context::extended(std::string name, Term type) const {
  Context c = *this;
  c.push(std::move(name), std::move(type));
  return c;
}

void Context::push(std::string name, Term type) {
  entries_.push_back({std::move(name), std::move(type)});
}

std::vector<std::string> Context::names() const {
  std::vector<std::string> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(e.name);
  return out;
}

namespace {

Term shift_rec(const Term& t, std::int64_t by, std::uint32_t cutoff) {
  if (t.loose_bound() <= cutoff) return t;
  switch (t.tag()) {
    case Term::Tag::BVar: {
      std::int64_t i = static_cast<std::int64_t>(t.index()) + by;
      if (i < 0) throw Error(Category::Internal, "shift produced a negative de Bruijn index");
      return Term::bvar(static_cast<std::uint32_t>(i));
    }
    case Term::Tag::App:
      return Term::app(shift_rec(t.head(), by, cutoff), shift_rec(t.arg(), by, cutoff));
    case Term::Tag::Lam:
      return Term::lam(t.name(), t.annotation() ? std::optional(shift_rec(t.head(), by, cutoff)) : std::nullopt,
                       shift_rec(t.body(), by, cutoff + 1));
    case Term::Tag::Pi:
      return Term::pi(t.name(), shift_rec(t.domain(), by, cutoff), shift_rec(t.codomain(), by, cutoff + 1));
    default:
      return t;
  }
}

// Substitutes `u` (valid at depth 0) for BVar `depth`, lowering indices above it.
Term subst_rec(const Term& t, const Term& u, std::uint32_t depth) {
  if (t.loose_bound() <= depth) return t;
  switch (t.tag()) {
    case Term::Tag::BVar:
      if (t.index() == depth) return shift(u, depth, 0);
      return Term::bvar(t.index() - 1);
    case Term::Tag::App:
      return Term::app(subst_rec(t.head(), u, depth), subst_rec(t.arg(), u, depth));
    case Term::Tag::Lam:
      return Term::lam(t.name(), t.annotation() ? std::optional(subst_rec(t.head(), u, depth)) : std::nullopt,
                       subst_rec(t.body(), u, depth + 1));
    case Term::Tag::Pi:
      return Term::pi(t.name(), subst_rec(t.domain(), u, depth), subst_rec(t.codomain(), u, depth + 1));
    default:
      return t;
  }
}

bool occurs_rec(const Term& t, std::uint32_t index) {
  if (t.loose_bound() <= index) return false;
  switch (t.tag()) {
    case Term::Tag::BVar: return t.index() == index;
    case Term::Tag::App: return occurs_rec(t.head(), index) || occurs_rec(t.arg(), index);
    case Term::Tag::Lam:
      return (t.head() && occurs_rec(t.head(), index)) || occurs_rec(t.body(), index + 1);
    case Term::Tag::Pi: return occurs_rec(t.domain(), index) || occurs_rec(t.codomain(), index + 1);
    default: return false;
  }
}

}  // namespace

Term shift(const Term& t, std::int64_t by, std::uint32_t cutoff) {
  if (by == 0) return t;
  return shift_rec(t, by, cutoff);
}

Term subst(const Term& t, const Term& u) { return subst_rec(t, u, 0); }

bool occurs(const Term& t, std::uint32_t index) { return occurs_rec(t, index); }

bool alpha_eq(const Term& t, const Term& u) {
  if (t.same_node(u)) return true;
  if (t.null() || u.null()) return false;
  if (t.tag() != u.tag() || t.loose_bound() != u.loose_bound()) return false;
  switch (t.tag()) {
    case Term::Tag::Type:
    case Term::Tag::Kind: return true;
    case Term::Tag::Const: return t.name() == u.name();
    case Term::Tag::BVar: return t.index() == u.index();
    case Term::Tag::App:
    case Term::Tag::Pi: return alpha_eq(t.head(), u.head()) && alpha_eq(t.arg(), u.arg());
    case Term::Tag::Lam:
      if (t.head().null() != u.head().null()) return false;
      if (!t.head().null() && !alpha_eq(t.head(), u.head())) return false;
      return alpha_eq(t.body(), u.body());
  }
  return false;
}

std::pair<Term, std::vector<Term>> spine(const Term& t) {
  std::vector<Term> args;
  Term h = t;
  while (h.is(Term::Tag::App)) {
    args.push_back(h.arg());
    h = h.head();
  }
  std::reverse(args.begin(), args.end());
  return {h, std::move(args)};
}

}  // namespace mdk
