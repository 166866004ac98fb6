// mdk: command-line front end for the lambda-Pi-modulo checker.
//
// Exit codes: 0 success, 1 checking/analysis failure, 2 parse error,
// 3 usage error, 4 fuel exhaustion.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "mdk/analysis.hpp"
#include "mdk/bundle.hpp"
#include "mdk/syntax.hpp"
#include "mdk/typecheck.hpp"

namespace {

enum Exit : int { kOk = 0, kFailure = 1, kParse = 2, kUsage = 3, kFuel = 4 };

struct UsageError {
  std::string message;
};

int exit_code_for(const mdk::Error& e) {
  switch (e.category()) {
    case mdk::Category::LexError:
    case mdk::Category::ParseError: return kParse;
    case mdk::Category::FuelExhausted: return kFuel;
    default: return kFailure;
  }
}

struct Loaded {
  std::string label;
  std::string text;
};

Loaded load(const std::string& path) {
  std::error_code ec;
  if (std::filesystem::is_regular_file(path, ec)) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError{"cannot read '" + path + "'"};
    std::ostringstream ss;
    ss << in.rdbuf();
    return {path, ss.str()};
  }
  if (const auto* t = mdk::find_bundled(path)) return {t->path, std::string(t->source)};
  throw UsageError{"no such file or bundled theory: '" + path + "'"};
}

struct Options {
  std::size_t fuel = mdk::kDefaultFuel;
  bool trace = false;
};

mdk::ElabOptions elab_options(const Options& o) {
  mdk::ElabOptions e;
  e.fuel = o.fuel;
  if (o.trace) {
    e.trace = [](std::size_t k, std::string_view what, const mdk::Term& t) {
      std::cerr << "STEP " << k << ": " << what << " : " << mdk::print_term(t) << "\n";
    };
  }
  return e;
}

// Runs `body`, mapping library errors to diagnostics and exit codes.
// Errors without a position are reported at `fallback`.
template <typename F>
int guarded(const std::string& label, F&& body, mdk::Location fallback = {}) {
  try {
    return body();
  } catch (mdk::Error& e) {
    e.locate(fallback);
    std::cerr << e.format(label) << "\n";
    return exit_code_for(e);
  }
}

mdk::Elaborated elaborate_loaded(const Loaded& file, const Options& o) {
  return mdk::elaborate(mdk::parse_file(file.text), elab_options(o));
}

int cmd_check(const std::vector<std::string>& paths, const Options& o) {
  int code = kOk;
  for (const auto& path : paths) {
    Loaded file = load(path);
    int rc = guarded(file.label, [&] {
      auto el = elaborate_loaded(file, o);
      std::cout << "OK " << path << " (" << el.entry_count << " entries)\n";
      return kOk;
    });
    if (code == kOk) code = rc;
  }
  return code;
}

int cmd_eval(const std::string& path, const std::optional<std::string>& term, const Options& o) {
  Loaded file = load(path);
  mdk::Elaborated el;
  if (int rc = guarded(file.label, [&] { el = elaborate_loaded(file, o); return kOk; }); rc != kOk) return rc;
  if (!term) {
    for (const auto& c : el.commands) {
      if (c.kind == mdk::CommandResult::Kind::Eval) std::cout << mdk::print_term(c.result) << "\n";
    }
    return kOk;
  }
  return guarded("<term>", [&] {
    mdk::SourceFile locs;
    mdk::Term t = mdk::parse_term(*term, locs);
    auto opts = elab_options(o);
    mdk::Fuel fuel(opts.fuel, opts.trace);
    mdk::Checker(el.signature, fuel, &locs, {1, 1}).infer({}, t);
    std::cout << mdk::print_term(mdk::snf(el.signature, t, fuel)) << "\n";
    return kOk;
  }, {1, 1});
}

int cmd_deps(const std::string& path, const std::optional<std::string>& name, const std::optional<std::string>& term,
             bool transitive, const Options& o) {
  if (name.has_value() == term.has_value()) throw UsageError{"deps takes exactly one of a NAME or --term"};
  Loaded file = load(path);
  mdk::Elaborated el;
  if (int rc = guarded(file.label, [&] { el = elaborate_loaded(file, o); return kOk; }); rc != kOk) return rc;
  return guarded(term ? "<term>" : file.label, [&] {
    mdk::DepsRoot root;
    if (term) {
      mdk::SourceFile locs;
      mdk::Term t = mdk::parse_term(*term, locs);
      mdk::Fuel fuel(o.fuel);
      mdk::Checker(el.signature, fuel, &locs, {1, 1}).infer({}, t);
      root = t;
    } else {
      root = *name;
    }
    std::cout << mdk::deps(el.signature, root, transitive).format();
    return kOk;
  }, {1, 1});
}

int cmd_compare(const std::string& left_path, const std::string& right_path, const Options& o) {
  Loaded left = load(left_path);
  Loaded right = load(right_path);
  mdk::Elaborated l, r;
  if (int rc = guarded(left.label, [&] { l = elaborate_loaded(left, o); return kOk; }); rc != kOk) return rc;
  if (int rc = guarded(right.label, [&] { r = elaborate_loaded(right, o); return kOk; }); rc != kOk) return rc;
  std::cout << mdk::compare(l.signature, r.signature, elab_options(o)).format();
  return kOk;
}

int cmd_bundle_list() {
  for (const auto& t : mdk::bundle()) std::cout << t.name << "\t" << t.path << "\t" << t.description << "\n";
  return kOk;
}

int cmd_bundle_check(const Options& o) {
  int code = kOk;
  for (const auto& t : mdk::bundle()) {
    int rc = guarded(t.path, [&] {
      auto el = mdk::elaborate(mdk::parse_file(t.source), elab_options(o));
      std::vector<std::string> evals;
      std::size_t checks = 0;
      for (const auto& c : el.commands) {
        if (c.kind == mdk::CommandResult::Kind::Eval) {
          evals.push_back(mdk::print_term(c.result));
        } else {
          ++checks;
        }
      }
      if (evals != t.expected_evals || checks != t.expected_checks) {
        std::cout << "MISMATCH " << t.name << "\n";
        return kFailure;
      }
      std::cout << "OK " << t.name << " (" << el.entry_count << " entries, " << checks << " checks, "
                << evals.size() << " evals)\n";
      return kOk;
    });
    if (code == kOk) code = rc;
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mdk: type checker for the lambda-Pi-calculus modulo rewriting"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every command");

  Options opts;
  auto add_fuel = [&](CLI::App* cmd) {
    cmd->add_option("--fuel", opts.fuel, "Reduction step budget per entry")->check(CLI::PositiveNumber);
    cmd->add_flag("--trace", opts.trace, "Print every reduction step to stderr");
  };

  std::vector<std::string> paths;
  auto* check = app.add_subcommand("check", "Check theory files");
  check->add_option("paths", paths, "Files or bundled theory names")->required();
  add_fuel(check);

  std::string path;
  std::optional<std::string> term;
  auto* eval = app.add_subcommand("eval", "Normalize a term, or print the file's #EVAL results");
  eval->add_option("path", path, "File or bundled theory name")->required();
  eval->add_option("--term", term, "Term to normalize");
  add_fuel(eval);

  std::optional<std::string> name;
  bool transitive = false;
  auto* dep = app.add_subcommand("deps", "List the constants and rules a declaration or term uses");
  dep->add_option("path", path, "File or bundled theory name")->required();
  dep->add_option("name", name, "Declared name to analyse");
  dep->add_option("--term", term, "Term to analyse instead of a name");
  dep->add_flag("--transitive", transitive, "Close over dependencies of dependencies");
  add_fuel(dep);

  std::string other;
  auto* cmp = app.add_subcommand("compare", "Relate two theories (EQUAL/SUBSET/SUPERSET/COMPATIBLE/CONFLICT)");
  cmp->add_option("left", path, "First theory")->required();
  cmp->add_option("right", other, "Second theory")->required();
  add_fuel(cmp);

  auto* blist = app.add_subcommand("bundle-list", "List the bundled theories");
  auto* bcheck = app.add_subcommand("bundle-check", "Check every bundled theory against its expected results");
  add_fuel(bcheck);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*check) return cmd_check(paths, opts);
    if (*eval) return cmd_eval(path, term, opts);
    if (*dep) return cmd_deps(path, name, term, transitive, opts);
    if (*cmp) return cmd_compare(path, other, opts);
    if (*blist) return cmd_bundle_list();
    if (*bcheck) return cmd_bundle_check(opts);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.message << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kFailure;
  }
  return kUsage;
}
