#include "mdk/rewrite.hpp"

#include <algorithm>
#include <set>

#include "mdk/error.hpp"
#include "mdk/signature.hpp"

namespace mdk {

Pattern Pattern::var(std::string name, std::vector<std::uint32_t> args) {
  return {Tag::Var, std::move(name), 0, std::move(args), {}};
}
Pattern Pattern::constant(std::string name) { return {Tag::Const, std::move(name), 0, {}, {}}; }
Pattern Pattern::bvar(std::uint32_t index) { return {Tag::BVar, {}, index, {}, {}}; }
Pattern Pattern::app(Pattern head, Pattern arg) {
  Pattern p{Tag::App, {}, 0, {}, {}};
  p.kids.push_back(std::move(head));
  p.kids.push_back(std::move(arg));
  return p;
}
Pattern Pattern::lam(std::string binder, Pattern body) {
  Pattern p{Tag::Lam, std::move(binder), 0, {}, {}};
  p.kids.push_back(std::move(body));
  return p;
}

void Fuel::consume() {
  if (used_ >= limit_) throw FuelExhausted(used_);
  ++used_;
}

// ---------------------------------------------------------------------------
// Pattern compilation

namespace {

class PatternCompiler {
 public:
  explicit PatternCompiler(const std::function<bool(const std::string&)>& is_var) : is_var_(is_var) {}

  Pattern top(const Term& lhs) {
    auto [h, args] = spine(lhs);
    if (!h.is(Term::Tag::Const) || is_var_(h.name())) {
      throw Error(Category::IllFormedPattern, "left-hand side must be headed by a constant");
    }
    return compile(lhs, 0);
  }

 private:
  Pattern compile(const Term& t, std::uint32_t depth) {
    auto [h, args] = spine(t);
    if (h.is(Term::Tag::Const) && is_var_(h.name())) {
      std::vector<std::uint32_t> bound;
      for (const auto& a : args) {
        if (!a.is(Term::Tag::BVar) || a.index() >= depth) {
          throw Error(Category::IllFormedPattern,
                      "pattern variable '" + h.name().substr(1) + "' must be applied to distinct bound variables");
        }
        if (std::find(bound.begin(), bound.end(), a.index()) != bound.end()) {
          throw Error(Category::IllFormedPattern,
                      "pattern variable '" + h.name().substr(1) + "' is applied to a repeated bound variable");
        }
        bound.push_back(a.index());
      }
      if (!seen_.insert(h.name()).second) {
        throw Error(Category::NonLinearPattern,
                    "pattern variable '" + h.name().substr(1) + "' occurs more than once in the left-hand side");
      }
      return Pattern::var(h.name(), std::move(bound));
    }
    Pattern head = [&] {
      switch (h.tag()) {
        case Term::Tag::Const: return Pattern::constant(h.name());
        case Term::Tag::BVar:
          return Pattern::bvar(h.index());
        case Term::Tag::Lam:
          if (args.empty()) return Pattern::lam(h.name(), compile(h.body(), depth + 1));
          throw Error(Category::IllFormedPattern, "beta-redex in left-hand side");
        case Term::Tag::Pi: throw Error(Category::IllFormedPattern, "product type in left-hand side");
        default: throw Error(Category::IllFormedPattern, "sort in left-hand side");
      }
    }();
    for (const auto& a : args) head = Pattern::app(std::move(head), compile(a, depth));
    return head;
  }

  const std::function<bool(const std::string&)>& is_var_;
  std::set<std::string> seen_;
};

void collect_vars(const Pattern& p, std::vector<std::string>& out) {
  if (p.tag == Pattern::Tag::Var) {
    out.push_back(p.name);
    return;
  }
  for (const auto& k : p.kids) collect_vars(k, out);
}

}  // namespace

Pattern compile_pattern(const Term& lhs, const std::function<bool(const std::string&)>& is_var) {
  return PatternCompiler(is_var).top(lhs);
}

std::vector<std::string> pattern_variables(const Pattern& p) {
  std::vector<std::string> out;
  collect_vars(p, out);
  return out;
}

std::pair<std::string, std::vector<Pattern>> pattern_spine(const Pattern& p) {
  std::vector<Pattern> args;
  const Pattern* h = &p;
  while (h->tag == Pattern::Tag::App) {
    args.push_back(h->kids[1]);
    h = &h->kids[0];
  }
  std::reverse(args.begin(), args.end());
  return {h->name, std::move(args)};
}

// ---------------------------------------------------------------------------
// Matching

namespace {

// Turns `u` (living under `depth` pattern binders) into a closed-over-pattern
// abstraction  y1 => ... => yk => u'  where the locals in `args` become the
// yi. Fails if u mentions another pattern-local variable.
std::optional<Term> abstract_locals(const Term& u, std::uint32_t depth, const std::vector<std::uint32_t>& args) {
  const auto k = static_cast<std::uint32_t>(args.size());
  struct Rec {
    std::uint32_t depth, k;
    const std::vector<std::uint32_t>& args;

    std::optional<Term> go(const Term& t, std::uint32_t inner) const {
      if (t.loose_bound() <= inner) return t;
      switch (t.tag()) {
        case Term::Tag::BVar: {
          std::uint32_t j = t.index() - inner;
          if (j >= depth) return Term::bvar(t.index() - depth + k);
          auto it = std::find(args.begin(), args.end(), j);
          if (it == args.end()) return std::nullopt;
          auto pos = static_cast<std::uint32_t>(it - args.begin());
          return Term::bvar(inner + (k - 1 - pos));
        }
        case Term::Tag::App: {
          auto h = go(t.head(), inner);
          if (!h) return std::nullopt;
          auto a = go(t.arg(), inner);
          if (!a) return std::nullopt;
          return Term::app(*h, *a);
        }
        case Term::Tag::Lam: {
          std::optional<Term> ann;
          if (t.annotation()) {
            ann = go(t.head(), inner);
            if (!ann) return std::nullopt;
          }
          auto b = go(t.body(), inner + 1);
          if (!b) return std::nullopt;
          return Term::lam(t.name(), ann, *b);
        }
        case Term::Tag::Pi: {
          auto d = go(t.domain(), inner);
          if (!d) return std::nullopt;
          auto c = go(t.codomain(), inner + 1);
          if (!c) return std::nullopt;
          return Term::pi(t.name(), *d, *c);
        }
        default: return t;
      }
    }
  };
  auto body = Rec{depth, k, args}.go(u, 0);
  if (!body) return std::nullopt;
  Term out = *body;
  for (std::uint32_t i = 0; i < k; ++i) out = Term::lam("x", std::nullopt, out);
  return out;
}

class Matcher {
 public:
  explicit Matcher(const Normalizer& norm) : norm_(norm) {}

  // Returns the forced term on success. At the root the spine is taken as
  // is: reducing it could consume the very redex being matched.
  std::optional<Term> run(const Pattern& p, const Term& t, std::uint32_t depth, bool root = false) {
    switch (p.tag) {
      case Pattern::Tag::Var: {
        auto abs = abstract_locals(t, depth, p.args);
        Term forced = t;
        if (!abs && norm_.snf) {
          // A local may disappear once t is normalized, e.g. (y => c) x.
          forced = norm_.snf(t);
          abs = abstract_locals(forced, depth, p.args);
        }
        if (!abs) return std::nullopt;
        subst_[p.name] = *abs;
        return forced;
      }
      case Pattern::Tag::Lam: {
        Term w = norm_.whnf(t);
        if (!w.is(Term::Tag::Lam)) return std::nullopt;
        auto body = run(p.kids[0], w.body(), depth + 1);
        if (!body) return std::nullopt;
        return Term::lam(w.name(), w.annotation(), *body);
      }
      case Pattern::Tag::Const:
      case Pattern::Tag::BVar:
      case Pattern::Tag::App: {
        std::vector<const Pattern*> pargs;
        const Pattern* ph = &p;
        while (ph->tag == Pattern::Tag::App) {
          pargs.push_back(&ph->kids[1]);
          ph = &ph->kids[0];
        }
        std::reverse(pargs.begin(), pargs.end());
        Term w = root ? t : norm_.whnf(t);
        auto [h, args] = spine(w);
        if (args.size() != pargs.size()) return std::nullopt;
        if (ph->tag == Pattern::Tag::Const) {
          if (!h.is(Term::Tag::Const) || h.name() != ph->name) return std::nullopt;
        } else if (ph->tag == Pattern::Tag::BVar) {
          if (!h.is(Term::Tag::BVar) || h.index() != ph->index) return std::nullopt;
        } else {
          return std::nullopt;
        }
        Term forced = h;
        for (std::size_t i = 0; i < args.size(); ++i) {
          auto a = run(*pargs[i], args[i], depth);
          if (!a) return std::nullopt;
          forced = Term::app(forced, *a);
        }
        return forced;
      }
    }
    return std::nullopt;
  }

  Substitution take() { return std::move(subst_); }

 private:
  const Normalizer& norm_;
  Substitution subst_;
};

Normalizer engine_normalizer(const Signature& sig, Fuel& fuel) {
  return {[&sig, &fuel](const Term& t) { return whnf(sig, t, fuel); },
          [&sig, &fuel](const Term& t) { return snf(sig, t, fuel); }};
}

Term instantiate_rec(const Pattern& p, const Substitution& s, std::uint32_t depth) {
  switch (p.tag) {
    case Pattern::Tag::Var: {
      auto it = s.find(p.name);
      if (it == s.end()) throw Error(Category::Internal, "unassigned pattern variable " + p.name);
      Term v = shift(it->second, depth, 0);
      for (auto a : p.args) {
        v = v.is(Term::Tag::Lam) ? subst(v.body(), Term::bvar(a)) : Term::app(v, Term::bvar(a));
      }
      return v;
    }
    case Pattern::Tag::Const: return Term::constant(p.name);
    case Pattern::Tag::BVar: return Term::bvar(p.index);
    case Pattern::Tag::App: return Term::app(instantiate_rec(p.kids[0], s, depth), instantiate_rec(p.kids[1], s, depth));
    case Pattern::Tag::Lam: return Term::lam(p.name, std::nullopt, instantiate_rec(p.kids[0], s, depth + 1));
  }
  return {};
}

Term instantiate_rhs_rec(const Term& t, const Substitution& s, std::uint32_t depth) {
  switch (t.tag()) {
    case Term::Tag::Const: {
      auto it = s.find(t.name());
      return it == s.end() ? t : shift(it->second, depth, 0);
    }
    case Term::Tag::App:
      return Term::app(instantiate_rhs_rec(t.head(), s, depth), instantiate_rhs_rec(t.arg(), s, depth));
    case Term::Tag::Lam:
      return Term::lam(t.name(),
                       t.annotation() ? std::optional(instantiate_rhs_rec(t.head(), s, depth)) : std::nullopt,
                       instantiate_rhs_rec(t.body(), s, depth + 1));
    case Term::Tag::Pi:
      return Term::pi(t.name(), instantiate_rhs_rec(t.domain(), s, depth),
                      instantiate_rhs_rec(t.codomain(), s, depth + 1));
    default: return t;
  }
}

bool lam_annotations_erased_eq(const Term& a, const Term& b);

std::optional<RewriteStep> try_rules(const Signature& sig, const Term& h, const std::vector<Term>& args,
                                     const Normalizer& norm) {
  const auto& rules = sig.rules(h.name());
  for (const auto& r : rules) {
    if (args.size() < r.arity) continue;
    Matcher m(norm);
    bool ok = true;
    [[maybe_unused]] std::vector<Term> forced;
    for (std::size_t i = 0; i < r.arity && ok; ++i) {
      auto f = m.run(r.arg_patterns[i], args[i], 0);
      if (!f) ok = false;
#ifndef NDEBUG
      else forced.push_back(*f);
#endif
    }
    if (!ok) continue;
    Substitution s = m.take();
#ifndef NDEBUG
    for (std::size_t i = 0; i < r.arity; ++i) {
      if (!lam_annotations_erased_eq(instantiate(r.arg_patterns[i], s), forced[i])) {
        throw Error(Category::Internal, "matcher produced an unsound substitution for a rule of " + r.head);
      }
    }
#endif
    Term out = instantiate_rhs(r.rhs, s);
    for (std::size_t i = r.arity; i < args.size(); ++i) out = Term::app(out, args[i]);
    return RewriteStep{out, r.head, r.ordinal};
  }
  return std::nullopt;
}

// alpha_eq that ignores lambda annotations (patterns do not carry them).
bool lam_annotations_erased_eq(const Term& a, const Term& b) {
  if (a.same_node(b)) return true;
  if (a.tag() != b.tag()) return false;
  switch (a.tag()) {
    case Term::Tag::Const: return a.name() == b.name();
    case Term::Tag::BVar: return a.index() == b.index();
    case Term::Tag::App:
    case Term::Tag::Pi:
      return lam_annotations_erased_eq(a.head(), b.head()) && lam_annotations_erased_eq(a.arg(), b.arg());
    case Term::Tag::Lam: return lam_annotations_erased_eq(a.body(), b.body());
    default: return true;
  }
}

}  // namespace

std::optional<MatchResult> match(const Pattern& p, const Term& t, const Normalizer& norm) {
  Matcher m(norm);
  auto forced = m.run(p, t, 0, true);
  if (!forced) return std::nullopt;
  return MatchResult{m.take(), *forced};
}

std::optional<MatchResult> match(const Signature& sig, const Pattern& p, const Term& t, Fuel& fuel) {
  return match(p, t, engine_normalizer(sig, fuel));
}

Term instantiate(const Pattern& p, const Substitution& subst) { return instantiate_rec(p, subst, 0); }

Term instantiate_rhs(const Term& rhs, const Substitution& subst) { return instantiate_rhs_rec(rhs, subst, 0); }

std::optional<RewriteStep> head_rewrite_step(const Signature& sig, const Term& t, Fuel& fuel) {
  auto [h, args] = spine(t);
  if (!h.is(Term::Tag::Const) || !sig.has_rules(h.name())) return std::nullopt;
  return try_rules(sig, h, args, engine_normalizer(sig, fuel));
}

std::optional<Term> head_rewrite(const Signature& sig, const Term& t, Fuel& fuel) {
  auto step = head_rewrite_step(sig, t, fuel);
  if (!step) return std::nullopt;
  return step->result;
}

// ---------------------------------------------------------------------------
// Normalization

Term whnf(const Signature& sig, const Term& t, Fuel& fuel) {
  Term cur = t;
  for (;;) {
    if (!cur.is(Term::Tag::App) && !cur.is(Term::Tag::Const)) return cur;
    auto [h, args] = spine(cur);
    if (h.is(Term::Tag::Lam) && !args.empty()) {
      fuel.consume();
      Term r = subst(h.body(), args[0]);
      for (std::size_t i = 1; i < args.size(); ++i) r = Term::app(r, args[i]);
      fuel.report("beta", r);
      cur = r;
      continue;
    }
    if (h.is(Term::Tag::Const) && sig.has_rules(h.name())) {
      if (auto step = try_rules(sig, h, args, engine_normalizer(sig, fuel))) {
        fuel.consume();
        fuel.report(step->head, step->result);
        cur = step->result;
        continue;
      }
    }
    return cur;
  }
}

Term snf(const Signature& sig, const Term& t, Fuel& fuel) {
  Term w = whnf(sig, t, fuel);
  switch (w.tag()) {
    case Term::Tag::Lam:
      return Term::lam(w.name(), w.annotation() ? std::optional(snf(sig, w.head(), fuel)) : std::nullopt,
                       snf(sig, w.body(), fuel));
    case Term::Tag::Pi: return Term::pi(w.name(), snf(sig, w.domain(), fuel), snf(sig, w.codomain(), fuel));
    case Term::Tag::App: {
      auto [h, args] = spine(w);
      Term out = h;
      for (const auto& a : args) out = Term::app(out, snf(sig, a, fuel));
      // Normalizing the arguments can expose a match that the lazy
      // forcing in whnf did not reach.
      if (h.is(Term::Tag::Const) && sig.has_rules(h.name())) {
        if (auto step = head_rewrite_step(sig, out, fuel)) {
          fuel.consume();
          fuel.report(step->head, step->result);
          return snf(sig, step->result, fuel);
        }
      }
      return out;
    }
    default: return w;
  }
}

bool has_redex(const Signature& sig, const Term& t) {
  switch (t.tag()) {
    case Term::Tag::App: {
      auto [h, args] = spine(t);
      if (h.is(Term::Tag::Lam)) return true;
      if (h.is(Term::Tag::Const) && sig.has_rules(h.name())) {
        Normalizer identity{[](const Term& x) { return x; }, {}};
        if (try_rules(sig, h, args, identity)) return true;
      }
      if (has_redex(sig, h)) return true;
      return std::any_of(args.begin(), args.end(), [&](const Term& a) { return has_redex(sig, a); });
    }
    case Term::Tag::Const: {
      if (!sig.has_rules(t.name())) return false;
      Normalizer identity{[](const Term& x) { return x; }, {}};
      return try_rules(sig, t, {}, identity).has_value();
    }
    case Term::Tag::Lam: return (t.annotation() && has_redex(sig, t.head())) || has_redex(sig, t.body());
    case Term::Tag::Pi: return has_redex(sig, t.domain()) || has_redex(sig, t.codomain());
    default: return false;
  }
}

}  // namespace mdk
