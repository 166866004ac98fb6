#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "mdk/error.hpp"
#include "mdk/rewrite.hpp"
#include "mdk/signature.hpp"
#include "mdk/syntax.hpp"
#include "mdk/term.hpp"

namespace mdk {

/// Convertibility modulo beta and the rules of sig. Both sides are weak-head
/// normalized and compared head first, recursing on demand. Lambda
/// annotations are not compared (both sides are assumed to share a type).
bool conv(const Signature& sig, const Term& t, const Term& u, Fuel& fuel);

// Bidirectional type checker for one signature.
//
// Error locations come from `locations` when the offending term was
// produced by the parser, otherwise from `fallback`.
class Checker {
 public:
  Checker(const Signature& sig, Fuel& fuel, const SourceFile* locations = nullptr, Location fallback = {})
      : sig_(sig), fuel_(fuel), locations_(locations), fallback_(fallback) {}

  Term infer(const Context& ctx, const Term& t);
  void check(const Context& ctx, const Term& t, const Term& expected);

  // Checks that t is a type or a kind, returning its sort.
  Term sort_of(const Context& ctx, const Term& t);

  bool convertible(const Term& a, const Term& b) { return conv(sig_, a, b, fuel_); }
  Term whnf(const Term& t) { return mdk::whnf(sig_, t, fuel_); }

 private:
  [[noreturn]] void fail(Category c, const std::string& msg, const Term& at) const;
  Location where(const Term& at) const;

  const Signature& sig_;
  Fuel& fuel_;
  const SourceFile* locations_;
  Location fallback_;
};

Term infer(const Signature& sig, const Context& ctx, const Term& t, Fuel& fuel);
void check(const Signature& sig, const Context& ctx, const Term& t, const Term& expected, Fuel& fuel);

struct CommandResult {
  enum class Kind { Eval, Check } kind;
  Term subject;
  Term type;    // inferred type (Eval) or asserted type (Check)
  Term result;  // strong normal form (Eval)
  Location loc;
};

struct Elaborated {
  Signature signature;
  std::vector<CommandResult> commands;
  std::size_t entry_count = 0;
};

struct ElabOptions {
  // Step budget for each entry.
  std::size_t fuel = kDefaultFuel;
  Fuel::Observer trace;
};

/// Elaborates the entries of a file in order, checking every declaration,
/// definition and rule, and running #CHECK and #EVAL commands. Throws Error
/// at the first failure.
Elaborated elaborate(const SourceFile& file, const ElabOptions& options = {});

/// Extends an existing signature with more entries.
void elaborate_into(Elaborated& out, const SourceFile& file, const ElabOptions& options = {});

}  // namespace mdk
