#include "mdk/typecheck.hpp"

#include <set>

namespace mdk {

bool conv(const Signature& sig, const Term& t, const Term& u, Fuel& fuel) {
  if (alpha_eq(t, u)) return true;
  Term a = whnf(sig, t, fuel);
  Term b = whnf(sig, u, fuel);
  if (a.tag() != b.tag()) return false;
  switch (a.tag()) {
    case Term::Tag::Type:
    case Term::Tag::Kind: return true;
    case Term::Tag::Pi: return conv(sig, a.domain(), b.domain(), fuel) && conv(sig, a.codomain(), b.codomain(), fuel);
    case Term::Tag::Lam: return conv(sig, a.body(), b.body(), fuel);
    case Term::Tag::Const:
    case Term::Tag::BVar:
    case Term::Tag::App: {
      auto [ha, as] = spine(a);
      auto [hb, bs] = spine(b);
      if (as.size() != bs.size() || ha.tag() != hb.tag()) return false;
      if (ha.is(Term::Tag::Const) && ha.name() != hb.name()) return false;
      if (ha.is(Term::Tag::BVar) && ha.index() != hb.index()) return false;
      if (!ha.is(Term::Tag::Const) && !ha.is(Term::Tag::BVar) && !conv(sig, ha, hb, fuel)) return false;
      for (std::size_t i = 0; i < as.size(); ++i) {
        if (!conv(sig, as[i], bs[i], fuel)) return false;
      }
      return true;
    }
  }
  return false;
}

Location Checker::where(const Term& at) const {
  if (locations_) {
    if (auto loc = locations_->location_of(at)) return *loc;
  }
  return fallback_;
}

void Checker::fail(Category c, const std::string& msg, const Term& at) const { throw Error(c, msg, where(at)); }

Term Checker::sort_of(const Context& ctx, const Term& t) {
  Term s = whnf(infer(ctx, t));
  if (!s.is_sort()) {
    fail(Category::TypeMismatch,
         "'" + print_term(t, ctx) + "' is not a type: it has type '" + print_term(s, ctx) + "'", t);
  }
  return s;
}

Term Checker::infer(const Context& ctx, const Term& t) {
  switch (t.tag()) {
    case Term::Tag::Type: return Term::kind();
    case Term::Tag::Kind: fail(Category::CannotInfer, "'Kind' has no type", t);
    case Term::Tag::Const: {
      const Declaration* d = sig_.find(t.name());
      if (!d) fail(Category::UnboundName, "unknown constant '" + print_term(t) + "'", t);
      return d->type;
    }
    case Term::Tag::BVar: {
      auto ty = ctx.lookup(t.index());
      if (!ty) fail(Category::Internal, "variable index out of scope", t);
      return *ty;
    }
    case Term::Tag::App: {
      Term ft = whnf(infer(ctx, t.head()));
      if (!ft.is(Term::Tag::Pi)) {
        fail(Category::NotAFunction,
             "'" + print_term(t.head(), ctx) + "' has type '" + print_term(ft, ctx) +
                 "', which is not a function type, but it is applied to '" + print_term(t.arg(), ctx) + "'",
             t.head());
      }
      check(ctx, t.arg(), ft.domain());
      return subst(ft.codomain(), t.arg());
    }
    case Term::Tag::Lam: {
      auto ann = t.annotation();
      if (!ann) {
        fail(Category::CannotInfer,
             "cannot infer the type of unannotated function '" + print_term(t, ctx) + "'", t);
      }
      if (!sort_of(ctx, *ann).is(Term::Tag::Type)) {
        fail(Category::TypeMismatch, "the domain '" + print_term(*ann, ctx) + "' of a function must be a type", *ann);
      }
      Context inner = ctx.extended(t.name(), *ann);
      Term body_type = infer(inner, t.body());
      if (body_type.is(Term::Tag::Kind)) {
        fail(Category::TypeMismatch, "a function cannot return 'Type'", t.body());
      }
      return Term::pi(t.name(), *ann, body_type);
    }
    case Term::Tag::Pi: {
      if (!sort_of(ctx, t.domain()).is(Term::Tag::Type)) {
        fail(Category::TypeMismatch, "the domain '" + print_term(t.domain(), ctx) + "' of a product must be a type",
             t.domain());
      }
      return sort_of(ctx.extended(t.name(), t.domain()), t.codomain());
    }
  }
  fail(Category::Internal, "unknown term", t);
}

void Checker::check(const Context& ctx, const Term& t, const Term& expected) {
  if (t.is(Term::Tag::Lam)) {
    Term e = whnf(expected);
    if (!e.is(Term::Tag::Pi)) {
      fail(Category::TypeMismatch,
           "function '" + print_term(t, ctx) + "' given where a term of type '" + print_term(expected, ctx) +
               "' was expected",
           t);
    }
    if (auto ann = t.annotation()) {
      if (!sort_of(ctx, *ann).is(Term::Tag::Type)) {
        fail(Category::TypeMismatch, "the domain '" + print_term(*ann, ctx) + "' of a function must be a type", *ann);
      }
      if (!convertible(*ann, e.domain())) {
        fail(Category::TypeMismatch,
             "annotation '" + print_term(*ann, ctx) + "' does not match the expected domain '" +
                 print_term(e.domain(), ctx) + "'",
             *ann);
      }
    }
    check(ctx.extended(t.name(), e.domain()), t.body(), e.codomain());
    return;
  }
  Term actual = infer(ctx, t);
  if (!convertible(actual, expected)) {
    fail(Category::TypeMismatch,
         "'" + print_term(t, ctx) + "' has type '" + print_term(actual, ctx) + "' but '" +
             print_term(expected, ctx) + "' was expected",
         t);
  }
}

Term infer(const Signature& sig, const Context& ctx, const Term& t, Fuel& fuel) {
  return Checker(sig, fuel).infer(ctx, t);
}

void check(const Signature& sig, const Context& ctx, const Term& t, const Term& expected, Fuel& fuel) {
  Checker(sig, fuel).check(ctx, t, expected);
}

// ---------------------------------------------------------------------------
// Elaboration

namespace {

class Elaborator {
 public:
  Elaborator(Elaborated& out, const SourceFile& file, const ElabOptions& opts)
      : out_(out), file_(file), opts_(opts) {}

  void run() {
    for (const auto& e : file_.entries) {
      Fuel fuel(opts_.fuel, opts_.trace);
      try {
        std::visit([&](const auto& body) { this->entry(body, e.loc, fuel); }, e.body);
      } catch (Error& err) {
        err.locate(e.loc);
        throw;
      }
      ++out_.entry_count;
    }
  }

 private:
  Signature& sig() { return out_.signature; }

  void fresh_name(const std::string& name, Location loc) {
    if (sig().contains(name)) throw Error(Category::RedeclaredName, "'" + name + "' is already declared", loc);
  }

  Checker checker(Fuel& fuel, Location loc, const Signature* s = nullptr) {
    return Checker(s ? *s : sig(), fuel, &file_, loc);
  }

  void entry(const entry::StaticDecl& d, Location loc, Fuel& fuel) {
    fresh_name(d.name, loc);
    checker(fuel, loc).sort_of({}, d.type);
    sig().declare({d.name, DeclKind::Static, d.type, std::nullopt, loc});
  }

  void entry(const entry::DefinableDecl& d, Location loc, Fuel& fuel) {
    fresh_name(d.name, loc);
    checker(fuel, loc).sort_of({}, d.type);
    sig().declare({d.name, DeclKind::Definable, d.type, std::nullopt, loc});
  }

  void entry(const entry::Definition& d, Location loc, Fuel& fuel) {
    fresh_name(d.name, loc);
    Checker c = checker(fuel, loc);
    Term type;
    if (d.type) {
      c.sort_of({}, *d.type);
      c.check({}, d.body, *d.type);
      type = *d.type;
    } else {
      type = c.infer({}, d.body);
      if (type.is(Term::Tag::Kind)) {
        throw Error(Category::TypeMismatch, "'" + d.name + "' cannot be defined as 'Type'", loc);
      }
    }
    sig().declare({d.name, DeclKind::Definition, type, d.body, loc});
    RewriteRule unfold;
    unfold.lhs_term = Term::constant(d.name);
    unfold.lhs = Pattern::constant(d.name);
    unfold.rhs = d.body;
    unfold.head = d.name;
    unfold.unfolding = true;
    unfold.loc = loc;
    sig().add_rule(std::move(unfold));
  }

  void entry(const entry::Rule& r, Location loc, Fuel& fuel) {
    // Pattern variables are typed as fresh constants in a scratch copy.
    Signature scope = sig();
    std::set<std::string> vars;
    RewriteRule rule;
    rule.loc = loc;
    for (const auto& [plain, type] : r.context) {
      std::string name = pattern_var_name(plain);
      checker(fuel, loc, &scope).sort_of({}, type);
      scope.declare({name, DeclKind::Static, type, std::nullopt, loc});
      vars.insert(name);
      rule.context.emplace_back(name, type);
    }
    Location lhs_loc = file_.location_of(r.lhs).value_or(loc);
    try {
      rule.lhs = compile_pattern(r.lhs, [&](const std::string& n) { return vars.count(n) > 0; });
    } catch (Error& err) {
      err.locate(lhs_loc);
      throw;
    }
    auto [head, args] = pattern_spine(rule.lhs);
    const Declaration* d = sig().find(head);
    if (!d) throw Error(Category::UnboundName, "unknown constant '" + head + "' heading a rule", lhs_loc);
    if (d->kind == DeclKind::Static) {
      throw Error(Category::RewriteOnStaticConstant,
                  "cannot add a rule to static constant '" + head + "' (declare it with 'def')", lhs_loc);
    }
    if (d->kind == DeclKind::Definition) {
      throw Error(Category::RewriteOnStaticConstant, "cannot add a rule to defined constant '" + head + "'", lhs_loc);
    }
    auto lhs_vars = pattern_variables(rule.lhs);
    std::set<std::string> in_lhs(lhs_vars.begin(), lhs_vars.end());
    std::set<std::string> in_rhs;
    collect_constants(r.rhs, in_rhs);
    for (const auto& n : in_rhs) {
      if (vars.count(n) && !in_lhs.count(n)) {
        throw Error(Category::UnboundPatternVariable,
                    "variable '" + n.substr(1) + "' occurs in the right-hand side but not in the left-hand side",
                    file_.location_of(r.rhs).value_or(loc));
      }
    }
    Checker c = checker(fuel, loc, &scope);
    Term lhs_type = c.infer({}, r.lhs);
    c.check({}, r.rhs, lhs_type);

    rule.lhs_term = r.lhs;
    rule.arg_patterns = std::move(args);
    rule.arity = rule.arg_patterns.size();
    rule.rhs = r.rhs;
    rule.head = head;
    sig().add_rule(std::move(rule));
  }

  void entry(const entry::Eval& e, Location loc, Fuel& fuel) {
    Term type = checker(fuel, loc).infer({}, e.term);
    Term result = snf(sig(), e.term, fuel);
    out_.commands.push_back({CommandResult::Kind::Eval, e.term, type, result, loc});
  }

  void entry(const entry::Check& e, Location loc, Fuel& fuel) {
    Checker c = checker(fuel, loc);
    c.sort_of({}, e.type);
    c.check({}, e.term, e.type);
    out_.commands.push_back({CommandResult::Kind::Check, e.term, e.type, Term{}, loc});
  }

  Elaborated& out_;
  const SourceFile& file_;
  const ElabOptions& opts_;
};

}  // namespace

void elaborate_into(Elaborated& out, const SourceFile& file, const ElabOptions& options) {
  Elaborator(out, file, options).run();
}

Elaborated elaborate(const SourceFile& file, const ElabOptions& options) {
  Elaborated out;
  elaborate_into(out, file, options);
  return out;
}

}  // namespace mdk
