#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace mdk {

// Terms of the lambda-Pi calculus. Bound variables are de Bruijn indices
// (0 = innermost binder); signature symbols are referred to by name.
//
// A Term is an immutable, reference-counted handle. Copies share the node;
// every operation below returns a fresh term and never mutates its input.
// Binder names are kept for printing only.
class Term {
 public:
  enum class Tag : std::uint8_t { Type, Kind, Const, BVar, App, Lam, Pi };

  Term() = default;  // null handle, only meaningful as "absent"

  static Term type();
  static Term kind();
  static Term constant(std::string name);
  static Term bvar(std::uint32_t index);
  static Term app(Term head, Term arg);
  static Term app(Term head, const std::vector<Term>& args);
  static Term lam(std::string binder, std::optional<Term> annotation, Term body);
  static Term pi(std::string binder, Term domain, Term codomain);
  // Non-dependent arrow `domain -> codomain`; codomain is not under a binder.
  static Term arrow(Term domain, Term codomain);

  bool null() const { return node_ == nullptr; }
  explicit operator bool() const { return node_ != nullptr; }

  Tag tag() const;
  bool is(Tag t) const;
  bool is_sort() const { return is(Tag::Type) || is(Tag::Kind); }

  // Const name or binder display name.
  const std::string& name() const;
  std::uint32_t index() const;

  // App: head/arg. Lam: annotation (may be null)/body. Pi: domain/codomain.
  const Term& head() const;
  const Term& arg() const;
  std::optional<Term> annotation() const;
  const Term& domain() const { return head(); }
  const Term& body() const { return arg(); }
  const Term& codomain() const { return arg(); }

  // One more than the largest free de Bruijn index; 0 for closed terms.
  std::uint32_t loose_bound() const;
  bool closed() const { return loose_bound() == 0; }

  // Identity of the underlying node, used to attach source locations.
  const void* id() const { return node_.get(); }
  bool same_node(const Term& other) const { return node_ == other.node_; }

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  std::shared_ptr<const Node> node_;
};

struct Term::Node {
  Tag tag;
  std::uint32_t index = 0;
  std::uint32_t loose = 0;
  std::string name;
  Term left;
  Term right;

  // Iterative, so that very deep terms do not exhaust the stack.
  ~Node();
};

inline Term::Tag Term::tag() const { return node_->tag; }
inline bool Term::is(Tag t) const { return node_ && node_->tag == t; }
inline const std::string& Term::name() const { return node_->name; }
inline std::uint32_t Term::index() const { return node_->index; }
inline const Term& Term::head() const { return node_->left; }
inline const Term& Term::arg() const { return node_->right; }
inline std::uint32_t Term::loose_bound() const { return node_ ? node_->loose : 0; }

// Telescope of typed bound variables, outermost first. Entry i's type lives
// in the scope of entries 0..i-1.
class Context {
 public:
  struct Entry {
    std::string name;
    Term type;
  };

  Context() = default;

  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const std::vector<Entry>& entries() const { return entries_; }

  // Type of BVar `index`, lifted into the scope of the whole context.
  std::optional<Term> lookup(std::uint32_t index) const;
  const std::string& name_of(std::uint32_t index) const;

  Context extended(std::string name, Term type) const;
  void push(std::string name, Term type);
  void pop() { entries_.pop_back(); }

  std::vector<std::string> names() const;

 private:
  std::vector<Entry> entries_;
};

/// Displaces every BVar with index >= cutoff by `by`. A negative result index
/// is an internal error.
Term shift(const Term& t, std::int64_t by, std::uint32_t cutoff = 0);

/// Replaces BVar 0 in `t` by `u`, decrementing the other free indices.
Term subst(const Term& t, const Term& u);

/// Structural equality up to binder names. Lambda annotations must be present
/// on both sides or on neither, and are compared when present.
bool alpha_eq(const Term& t, const Term& u);

/// Whether BVar `index` occurs free in t.
bool occurs(const Term& t, std::uint32_t index);

/// Splits `h a1 ... an` into h and [a1, ..., an].
std::pair<Term, std::vector<Term>> spine(const Term& t);

/// Collects every constant name in t (into `out`).
template <typename Set>
void collect_constants(const Term& t, Set& out) {
  switch (t.tag()) {
    case Term::Tag::Const: out.insert(t.name()); return;
    case Term::Tag::App:
    case Term::Tag::Pi:
      collect_constants(t.head(), out);
      collect_constants(t.arg(), out);
      return;
    case Term::Tag::Lam:
      if (t.head()) collect_constants(t.head(), out);
      collect_constants(t.body(), out);
      return;
    default: return;
  }
}

}  // namespace mdk
