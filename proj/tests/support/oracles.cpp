#include "oracles.hpp"

#include <algorithm>
#include <stdexcept>

#include "mdk/bundle.hpp"

namespace oracle {

namespace {

using mdk::Term;

struct Namer {
  int next = 0;
  std::string fresh() { return "v#" + std::to_string(next++); }
};

Named conv_in(const Term& t, std::vector<std::string>& scope, Namer& namer) {
  using T = Term::Tag;
  switch (t.tag()) {
    case T::Type: return {Named::Tag::Type, {}, {}};
    case T::Kind: return {Named::Tag::Kind, {}, {}};
    case T::Const: return {Named::Tag::Const, t.name(), {}};
    case T::BVar:
      if (t.index() >= scope.size()) throw std::logic_error("oracle: unnamed free variable");
      return {Named::Tag::Var, scope[scope.size() - 1 - t.index()], {}};
    case T::App: return {Named::Tag::App, {}, {conv_in(t.head(), scope, namer), conv_in(t.arg(), scope, namer)}};
    case T::Lam:
    case T::Pi: {
      Named out{t.is(T::Lam) ? Named::Tag::Lam : Named::Tag::Pi, namer.fresh(), {}};
      if (t.head()) {
        out.kids.push_back(conv_in(t.head(), scope, namer));
        out.has_ann = true;
      }
      scope.push_back(out.name);
      out.kids.push_back(conv_in(t.body(), scope, namer));
      scope.pop_back();
      return out;
    }
  }
  throw std::logic_error("oracle: bad tag");
}

Term conv_out(const Named& n, std::vector<std::string>& scope) {
  switch (n.tag) {
    case Named::Tag::Type: return Term::type();
    case Named::Tag::Kind: return Term::kind();
    case Named::Tag::Const: return Term::constant(n.name);
    case Named::Tag::Var: {
      // Linear search from the innermost binder outwards.
      for (std::size_t k = scope.size(); k-- > 0;) {
        if (scope[k] == n.name) return Term::bvar(static_cast<std::uint32_t>(scope.size() - 1 - k));
      }
      throw std::logic_error("oracle: variable '" + n.name + "' is not in scope");
    }
    case Named::Tag::App: return Term::app(conv_out(n.kids[0], scope), conv_out(n.kids[1], scope));
    case Named::Tag::Lam:
    case Named::Tag::Pi: {
      std::optional<Term> ann;
      if (n.has_ann || n.tag == Named::Tag::Pi) ann = conv_out(n.kids[0], scope);
      scope.push_back(n.name);
      Term body = conv_out(n.kids.back(), scope);
      scope.pop_back();
      if (n.tag == Named::Tag::Pi) return Term::pi(n.name, *ann, body);
      return Term::lam(n.name, ann, body);
    }
  }
  throw std::logic_error("oracle: bad tag");
}

// `free` lists index 0 first; scopes list the outermost binder first.
std::vector<std::string> as_scope(const std::vector<std::string>& free) {
  return {free.rbegin(), free.rend()};
}

std::string fv(std::uint32_t i) { return "f#" + std::to_string(i); }

}  // namespace

Named to_named(const Term& t, const std::vector<std::string>& free) {
  auto scope = as_scope(free);
  Namer namer;
  return conv_in(t, scope, namer);
}

Term from_named(const Named& n, const std::vector<std::string>& free) {
  auto scope = as_scope(free);
  return conv_out(n, scope);
}

Named rename_free(const Named& n, const std::string& from, const std::string& to) {
  if (n.tag == Named::Tag::Var) return n.name == from ? Named{Named::Tag::Var, to, {}} : n;
  Named out = n;
  for (auto& k : out.kids) k = rename_free(k, from, to);
  return out;
}

Named substitute(const Named& n, const std::string& var, const Named& value) {
  if (n.tag == Named::Tag::Var) return n.name == var ? value : n;
  Named out = n;
  for (auto& k : out.kids) k = substitute(k, var, value);
  return out;
}

Term shift(const Term& t, std::uint32_t by, std::uint32_t cutoff) {
  std::uint32_t n = t.loose_bound();
  std::vector<std::string> in, out(n + by);
  for (std::uint32_t i = 0; i < n; ++i) in.push_back(fv(i));
  for (std::uint32_t i = 0; i < n + by; ++i) out[i] = "unused#" + std::to_string(i);
  for (std::uint32_t i = 0; i < n; ++i) out[i < cutoff ? i : i + by] = fv(i);
  return from_named(to_named(t, in), out);
}

Term subst(const Term& t, const Term& u) {
  std::uint32_t n = std::max(t.loose_bound(), u.loose_bound() + 1);
  std::vector<std::string> t_free{"z#"}, u_free, out;
  for (std::uint32_t i = 1; i < n; ++i) t_free.push_back(fv(i - 1));
  for (std::uint32_t i = 0; i + 1 < n; ++i) u_free.push_back(fv(i));
  Named tn = to_named(t, t_free);
  Named un = to_named(u, u_free);
  // Keep binder names of u distinct from those of t.
  std::function<void(Named&)> tag = [&](Named& m) {
    if (m.tag == Named::Tag::Lam || m.tag == Named::Tag::Pi) {
      std::string old = m.name;
      m.name = "u" + old;
      for (auto& k : m.kids) k = rename_free(k, old, m.name);
    }
    for (auto& k : m.kids) tag(k);
  };
  tag(un);
  return from_named(substitute(tn, "z#", un), u_free);
}

Term numeral(unsigned n) {
  Term t = Term::constant("0");
  for (unsigned i = 0; i < n; ++i) t = Term::app(Term::constant("S"), t);
  return t;
}

int numeral_value(const Term& t) {
  int n = 0;
  Term cur = t;
  while (cur.is(Term::Tag::App) && cur.head().is(Term::Tag::Const) && cur.head().name() == "S") {
    ++n;
    cur = cur.arg();
  }
  return cur.is(Term::Tag::Const) && cur.name() == "0" ? n : -1;
}

unsigned triangular(unsigned n) {
  unsigned sum = 0;
  for (unsigned k = 1; k <= n; ++k) sum += k;
  return sum;
}

std::size_t count_constant(const Term& t, const std::string& name) {
  switch (t.tag()) {
    case Term::Tag::Const: return t.name() == name ? 1 : 0;
    case Term::Tag::App:
    case Term::Tag::Pi: return count_constant(t.head(), name) + count_constant(t.arg(), name);
    case Term::Tag::Lam: return (t.head() ? count_constant(t.head(), name) : 0) + count_constant(t.body(), name);
    default: return 0;
  }
}

}  // namespace oracle

namespace gen {

using mdk::Term;

namespace {

int pick(Rng& rng, int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); }

Term imp(Term a, Term b) { return Term::app(Term::app(Term::constant("imp"), std::move(a)), std::move(b)); }
Term eps(Term p) { return Term::app(Term::constant("eps"), std::move(p)); }

bool is_imp(const Term& p, Term* a = nullptr, Term* b = nullptr) {
  auto [h, args] = mdk::spine(p);
  if (!h.is(Term::Tag::Const) || h.name() != "imp" || args.size() != 2) return false;
  if (a) *a = args[0];
  if (b) *b = args[1];
  return true;
}

// Premises and conclusion of a chain imp P1 (imp P2 (... Q)).
std::pair<std::vector<Term>, Term> unfold_imp(const Term& p) {
  std::vector<Term> premises;
  Term cur = p, a, b;
  while (is_imp(cur, &a, &b)) {
    premises.push_back(a);
    cur = b;
  }
  return {premises, cur};
}

}  // namespace

Term raw_term(Rng& rng, int depth, std::uint32_t scope) {
  int choice = depth <= 0 ? pick(rng, 3) : pick(rng, 7);
  switch (choice) {
    case 0:
      if (scope > 0) return Term::bvar(static_cast<std::uint32_t>(pick(rng, static_cast<int>(scope))));
      [[fallthrough]];
    case 1: return Term::constant(pick(rng, 2) ? "c" : "d");
    case 2: return Term::type();
    case 3:
    case 4: return Term::app(raw_term(rng, depth - 1, scope), raw_term(rng, depth - 1, scope));
    case 5: {
      std::optional<Term> ann;
      if (pick(rng, 2)) ann = raw_term(rng, depth - 1, scope);
      return Term::lam("x", ann, raw_term(rng, depth - 1, scope + 1));
    }
    default: return Term::pi("y", raw_term(rng, depth - 1, scope), raw_term(rng, depth - 1, scope + 1));
  }
}

Term proposition(Rng& rng, int depth) {
  if (depth <= 0 || pick(rng, 3) == 0) return Term::constant(pick(rng, 2) ? "A" : "B");
  return imp(proposition(rng, depth - 1), proposition(rng, depth - 1));
}

Term proof(Rng& rng, const Term& P, const std::vector<Term>& hyps, int depth) {
  Term a, b;
  if (is_imp(P, &a, &b)) {
    auto extended = hyps;
    extended.push_back(a);
    return Term::lam("h", eps(a), proof(rng, b, extended, depth - 1));
  }
  // P is atomic: use a hypothesis whose conclusion is P, or the axiom.
  std::vector<std::size_t> usable;
  for (std::size_t i = 0; i < hyps.size(); ++i) {
    if (mdk::alpha_eq(unfold_imp(hyps[i]).second, P)) usable.push_back(i);
  }
  if (depth > 0 && !usable.empty() && pick(rng, 4) != 0) {
    std::size_t i = usable[static_cast<std::size_t>(pick(rng, static_cast<int>(usable.size())))];
    Term t = Term::bvar(static_cast<std::uint32_t>(hyps.size() - 1 - i));
    for (const auto& premise : unfold_imp(hyps[i]).first) t = Term::app(t, proof(rng, premise, hyps, depth - 1));
    return t;
  }
  return Term::constant("ax_" + P.name());
}

std::string proof_theory_source() {
  return std::string(mdk::find_bundled("minimal_modulo")->source) + "\nax_A : eps A.\nax_B : eps B.\n";
}

}  // namespace gen
