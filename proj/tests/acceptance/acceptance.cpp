// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "corpus.hpp"
#include "mdk/analysis.hpp"
#include "oracles.hpp"

namespace {

namespace fs = std::filesystem;
using mdk::Term;
using Clock = std::chrono::steady_clock;

Term C(const std::string& n) { return Term::constant(n); }

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct CliRun {
  int code = -1;
  std::string out;
  std::string err;
  double seconds = 0;
};

fs::path scratch() {
  static const fs::path d = [] {
    fs::path p = fs::temp_directory_path() / ("mdk_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(p);
    return p;
  }();
  return d;
}

CliRun cli(const std::string& args, const std::string& cwd = MDK_SOURCE_DIR) {
  fs::path out = scratch() / "out.txt", err = scratch() / "err.txt";
  std::string cmd = "cd '" + cwd + "' && '" MDK_CLI "' " + args + " > '" + out.string() + "' 2> '" + err.string() + "'";
  auto t0 = Clock::now();
  int status = std::system(cmd.c_str());
  CliRun r;
  r.seconds = since(t0);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = corpus::read_file(out.string());
  r.err = corpus::read_file(err.string());
  return r;
}

Term snf(const mdk::Signature& sig, const Term& t) {
  mdk::Fuel fuel;
  return mdk::snf(sig, t, fuel);
}

std::string fmt(double s) {
  std::ostringstream o;
  o.precision(3);
  o << std::fixed << s << " s";
  return o.str();
}

// 1. The worked example checks, through the CLI, in under a second.
Outcome worked_example() {
  auto r = cli("check theories/minimal_modulo.mdk");
  auto el = corpus::theory("minimal_modulo");
  bool found = false;
  for (const auto& c : el.commands) {
    if (c.kind == mdk::CommandResult::Kind::Check && mdk::alpha_eq(c.subject, mdk::parse_term("f => x => f x x")) &&
        mdk::alpha_eq(c.type, mdk::parse_term("eps (imp (imp A (imp A B)) (imp A B))"))) {
      found = true;
    }
  }
  bool ok = r.code == 0 && r.out == "OK theories/minimal_modulo.mdk (10 entries)\n" && found && r.seconds < 1.0;
  return {ok, "exit " + std::to_string(r.code) + ", #CHECK " + (found ? "present" : "missing") + ", " + fmt(r.seconds)};
}

// A pure arrow type over eps of atoms: eps A, eps B, or X -> Y of such.
bool pure_arrow(const Term& t) {
  if (t.is(Term::Tag::Pi)) return !mdk::occurs(t.codomain(), 0) && pure_arrow(t.domain()) && pure_arrow(t.codomain());
  auto [h, args] = mdk::spine(t);
  return h.is(Term::Tag::Const) && h.name() == "eps" && args.size() == 1 && args[0].is(Term::Tag::Const) &&
         (args[0].name() == "A" || args[0].name() == "B");
}

// 2. The rule maps every implication to an arrow.
Outcome morphism() {
  auto el = corpus::theory("minimal_modulo");
  std::mt19937 rng(2);
  int failures = 0;
  std::size_t max_imps = 0;
  for (int i = 0; i < 50; ++i) {
    Term p = gen::proposition(rng, 5);
    max_imps = std::max(max_imps, oracle::count_constant(p, "imp"));
    Term n = snf(el.signature, Term::app(C("eps"), p));
    if (!pure_arrow(n) || oracle::count_constant(n, "imp") != 0) ++failures;
  }
  return {failures == 0 && max_imps >= 5,
          "50 propositions, " + std::to_string(failures) + " failures, up to " + std::to_string(max_imps) + " imp"};
}

// 3. Cut elimination is beta-reduction.
Outcome cut_reduction() {
  auto el = corpus::elaborate_text(gen::proof_theory_source());
  const auto& sig = el.signature;
  std::mt19937 rng(3);
  int failures = 0, using_hyp = 0;
  Term A = C("A");
  for (int i = 0; i < 20; ++i) {
    // Only bodies that use the hypothesis make a real cut.
    Term P, body;
    do {
      P = gen::proposition(rng, 3);
      body = gen::proof(rng, P, {A}, 4);
    } while (!mdk::occurs(body, 0));
    // The argument is itself a cut: a proof of Q => A applied to one of Q.
    Term Q = gen::proposition(rng, 2);
    Term arg = Term::app(gen::proof(rng, Term::app(C("imp"), {Q, A}), {}, 3), gen::proof(rng, Q, {}, 3));
    Term redex = Term::app(Term::lam("x", Term::app(C("eps"), A), body), arg);
    mdk::Fuel fuel;
    try {
      mdk::check(sig, {}, redex, Term::app(C("eps"), P), fuel);
    } catch (const mdk::Error&) {
      ++failures;
      continue;
    }
    if (mdk::occurs(body, 0)) ++using_hyp;
    if (!mdk::alpha_eq(snf(sig, redex), snf(sig, mdk::subst(body, arg)))) ++failures;
  }
  return {failures == 0 && using_hyp == 20, "20 redexes (" + std::to_string(using_hyp) + " use the hypothesis), " +
                                              std::to_string(failures) + " failures"};
}

// 4. Goedel T arithmetic against brute force.
Outcome goedel_t() {
  auto t0 = Clock::now();
  auto el = corpus::theory("nat_t");
  int failures = 0;
  for (unsigned m = 0; m <= 5; ++m) {
    for (unsigned n = 0; n <= 5; ++n) {
      Term t = Term::app(C("plus"), {oracle::numeral(m), oracle::numeral(n)});
      if (!mdk::alpha_eq(snf(el.signature, t), oracle::numeral(m + n))) ++failures;
    }
  }
  for (unsigned n = 0; n <= 5; ++n) {
    Term t = Term::app(C("tri"), oracle::numeral(n));
    if (oracle::numeral_value(snf(el.signature, t)) != static_cast<int>(oracle::triangular(n))) ++failures;
  }
  double s = since(t0);
  return {failures == 0 && s < 1.0, "36 sums + 6 triangular numbers, " + std::to_string(failures) + " failures, " + fmt(s)};
}

// 5. Induction as an axiom does not compute; the recursor does.
Outcome stuckness() {
  auto ax = corpus::theory("nat_axiomatic");
  auto nat = corpus::theory("nat_t");
  Term stuck = snf(ax.signature, mdk::parse_term("ind Q q0 qs (S (S 0))"));
  auto head = mdk::spine(stuck).first;
  bool is_stuck = head.is(Term::Tag::Const) && head.name() == "ind" && !mdk::has_redex(ax.signature, stuck);
  Term reduced = snf(nat.signature, mdk::parse_term("rec 0 (k : nat => acc : nat => S acc) (S (S 0))"));
  int value = oracle::numeral_value(reduced);
  return {is_stuck && value == 2,
          "axiomatic head '" + head.name() + "', recursor gives '" + mdk::print_term(reduced) + "'"};
}

struct Pair {
  const mdk::Signature* sig;
  Term a, b;
};

// 6. conv agrees with comparing strong normal forms.
Outcome conversion_oracle() {
  std::vector<mdk::Elaborated> theories;
  for (const auto& t : mdk::bundle()) theories.push_back(corpus::elaborate_text(std::string(t.source)));
  auto proofs = corpus::elaborate_text(gen::proof_theory_source());
  std::vector<Pair> pairs;
  std::size_t check_pairs = 0;
  for (const auto& el : theories) {
    for (const auto& c : el.commands) {
      if (c.kind != mdk::CommandResult::Kind::Check) continue;
      mdk::Fuel fuel;
      pairs.push_back({&el.signature, c.subject, mdk::snf(el.signature, c.subject, fuel)});
      pairs.push_back({&el.signature, c.type, mdk::snf(el.signature, c.type, fuel)});
      try {
        pairs.push_back({&el.signature, mdk::infer(el.signature, {}, c.subject, fuel), c.type});
      } catch (const mdk::Error&) {
        // unannotated subjects are checked, not inferred
      }
      check_pairs += 2;
    }
    for (std::size_t i = 0; i + 1 < el.commands.size(); ++i) {
      pairs.push_back({&el.signature, el.commands[i].type, el.commands[i + 1].type});
    }
  }
  const auto& nat = theories[2].signature;
  for (unsigned m = 0; m <= 3; ++m) {
    for (unsigned n = 0; n <= 3; ++n) {
      Term sum = Term::app(C("plus"), {oracle::numeral(m), oracle::numeral(n)});
      pairs.push_back({&nat, sum, oracle::numeral(m + n)});
      pairs.push_back({&nat, sum, oracle::numeral((m * n) % 5)});
      pairs.push_back({&nat, sum, Term::app(C("plus"), {oracle::numeral(n), oracle::numeral(m)})});
    }
  }
  std::mt19937 rng(6);
  const auto& modulo = theories[1].signature;
  for (int i = 0; i < 20; ++i) {
    Term p = Term::app(C("eps"), gen::proposition(rng, 3));
    Term q = Term::app(C("eps"), gen::proposition(rng, 3));
    pairs.push_back({&modulo, p, q});
    pairs.push_back({&modulo, p, snf(modulo, p)});
  }
  for (int i = 0; i < 10; ++i) {
    Term P = gen::proposition(rng, 2);
    Term body = gen::proof(rng, P, {C("A")}, 3);
    Term redex = Term::app(Term::lam("x", Term::app(C("eps"), C("A")), body), C("ax_A"));
    pairs.push_back({&proofs.signature, redex, mdk::subst(body, C("ax_A"))});
  }
  int disagreements = 0, convertible = 0;
  for (const auto& p : pairs) {
    mdk::Fuel f1, f2, f3;
    bool c = mdk::conv(*p.sig, p.a, p.b, f1);
    bool o = mdk::alpha_eq(mdk::snf(*p.sig, p.a, f2), mdk::snf(*p.sig, p.b, f3));
    if (c != o) ++disagreements;
    if (c) ++convertible;
  }
  bool ok = disagreements == 0 && pairs.size() >= 100 && convertible > 0 &&
            convertible < static_cast<int>(pairs.size());
  return {ok, std::to_string(pairs.size()) + " pairs (" + std::to_string(check_pairs) + " from #CHECK, " +
                  std::to_string(convertible) + " convertible), " + std::to_string(disagreements) + " disagreements"};
}

// 7. Types are preserved by normalization.
Outcome subject_reduction() {
  int evals = 0, failures = 0;
  for (const auto& t : mdk::bundle()) {
    auto el = corpus::elaborate_text(std::string(t.source));
    for (const auto& c : el.commands) {
      if (c.kind != mdk::CommandResult::Kind::Eval) continue;
      ++evals;
      mdk::Fuel fuel;
      try {
        Term before = mdk::infer(el.signature, {}, c.subject, fuel);
        Term after = mdk::infer(el.signature, {}, c.result, fuel);
        if (!mdk::conv(el.signature, before, after, fuel)) ++failures;
      } catch (const mdk::Error&) {
        ++failures;
      }
    }
  }
  return {failures == 0 && evals > 0, std::to_string(evals) + " #EVAL terms, " + std::to_string(failures) + " failures"};
}

// 8. Trimming to the reported dependencies keeps every declaration checkable.
Outcome trim_soundness() {
  int names = 0, failures = 0;
  for (const auto& t : mdk::bundle()) {
    auto el = corpus::elaborate_text(std::string(t.source));
    for (const auto& name : el.signature.declaration_names()) {
      ++names;
      try {
        mdk::check_with_trimmed(el.signature, name);
      } catch (const mdk::Error&) {
        ++failures;
      }
    }
  }
  auto modulo = corpus::theory("minimal_modulo");
  auto trimmed = mdk::check_with_trimmed(modulo.signature, std::string("example"));
  bool nat_free = true;
  for (const char* n : {"nat", "0", "S", "plus", "rec", "tri", "vec"}) nat_free = nat_free && !trimmed.signature.contains(n);
  return {failures == 0 && nat_free, std::to_string(names) + " names, " + std::to_string(failures) +
                                         " failures, example trim " + (nat_free ? "nat-free" : "mentions nat")};
}

// 9. Proofs from two compatible theories combine in their union.
Outcome modus_ponens() {
  auto t1 = corpus::elaborate_text(corpus::fixture("cross_t1.mdk"));
  auto t2 = corpus::elaborate_text(corpus::fixture("cross_t2.mdk"));
  auto rel = mdk::compare(t1.signature, t2.signature);
  if (!rel.union_theory) return {false, "verdict " + std::string(mdk::verdict_name(rel.verdict)) + ", no union"};
  mdk::Fuel fuel;
  try {
    mdk::check(rel.union_theory->signature, {}, mdk::parse_term("p1 p2"), mdk::parse_term("eps B"), fuel);
  } catch (const mdk::Error& e) {
    return {false, e.format("union")};
  }
  return {rel.verdict != mdk::Verdict::Conflict,
          "verdict " + std::string(mdk::verdict_name(rel.verdict)) + ", p1 p2 : eps B checks in the union"};
}

// 10. Each malformed input is rejected with its category and exit code.
Outcome negative_suite() {
  struct Case {
    const char* file;
    const char* category;
    int code;
  };
  const Case cases[] = {{"ill_typed.mdk", "TypeMismatch", 1},
                        {"unbound_name.mdk", "UnboundName", 1},
                        {"variable_headed_rule.mdk", "IllFormedPattern", 1},
                        {"non_linear_rule.mdk", "NonLinearPattern", 1},
                        {"rhs_only_variable.mdk", "UnboundPatternVariable", 1},
                        {"divergent.mdk", "FuelExhausted", 4}};
  std::string dir = corpus::fixture_path("negative");
  int failures = 0;
  double divergence = 0;
  std::string bad;
  for (const auto& c : cases) {
    auto r = cli(std::string("check ") + c.file, dir);
    bool ok = r.code == c.code && r.err.find(std::string(": ") + c.category + ": ") != std::string::npos &&
              r.err.rfind(c.file, 0) == 0;
    if (std::string(c.file) == "divergent.mdk") {
      divergence = r.seconds;
      ok = ok && r.seconds < 2.0;
    }
    if (!ok) {
      ++failures;
      bad += std::string(" ") + c.file;
    }
  }
  return {failures == 0, "6 cases, " + std::to_string(failures) + " failures" + bad + ", divergence stopped in " + fmt(divergence)};
}

// 11. A long chain of definitions checks quickly.
Outcome performance() {
  std::ostringstream src;
  src << corpus::theory_source("nat_t") << "\ndef d0 : nat := 0.\n";
  for (int i = 1; i < 500; ++i) src << "def d" << i << " : nat := plus (S 0) d" << i - 1 << ".\n";
  src << "#CHECK d499 : nat.\n";
  fs::path file = scratch() / "chain.mdk";
  std::ofstream(file) << src.str();
  auto r = cli("check '" + file.string() + "'");
  bool ok = r.code == 0 && r.out.find("OK ") == 0 && r.seconds < 5.0;
  return {ok, "500 chained definitions, exit " + std::to_string(r.code) + ", " + fmt(r.seconds)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"worked example checks", worked_example},
      {"eps maps implications to arrows", morphism},
      {"cut-reduction is beta-reduction", cut_reduction},
      {"Goedel T arithmetic", goedel_t},
      {"axiomatic induction is stuck", stuckness},
      {"conv agrees with the snf oracle", conversion_oracle},
      {"subject reduction on #EVAL", subject_reduction},
      {"dependency trim soundness", trim_soundness},
      {"cross-theory modus ponens", modus_ponens},
      {"negative suite", negative_suite},
      {"performance sanity", performance},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << i + 1 << ": " << criteria[i].first << " -- "
              << o.detail << "\n";
  }
  std::error_code ec;
  fs::remove_all(scratch(), ec);
  std::cout << criteria.size() - static_cast<std::size_t>(failed) << "/" << criteria.size() << " criteria passed\n";
  return failed;
}
