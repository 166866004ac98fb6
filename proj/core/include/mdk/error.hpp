#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace mdk {

/// 1-based source position. `line == 0` means "unknown".
struct Location {
  std::size_t line = 0;
  std::size_t column = 0;

  bool known() const { return line != 0; }
  friend bool operator==(const Location&, const Location&) = default;
};

// Stable error categories. The spelling returned by category_name() is part
// of the diagnostic format and is matched by golden tests.
enum class Category {
  LexError,
  ParseError,
  UnboundName,
  NotAFunction,
  CannotInfer,
  TypeMismatch,
  FuelExhausted,
  RedeclaredName,
  RewriteOnStaticConstant,
  NonLinearPattern,
  UnboundPatternVariable,
  IllFormedPattern,
  UnknownName,
  UnionElaborationFailed,
  Internal,
};

std::string_view category_name(Category c);

class Error : public std::runtime_error {
 public:
  Error(Category category, std::string message, Location loc = {});

  Category category() const { return category_; }
  const std::string& message() const { return message_; }
  const Location& location() const { return loc_; }

  // Attaches a location if none is known yet.
  void locate(Location loc) {
    if (!loc_.known()) loc_ = loc;
  }

  /// "file:line:col: CATEGORY: message"
  std::string format(std::string_view file) const;

 private:
  Category category_;
  std::string message_;
  Location loc_;
};

/// Thrown when a reduction budget runs out. Carries the number of steps
/// that were taken before giving up.
class FuelExhausted : public Error {
 public:
  explicit FuelExhausted(std::size_t steps);
  std::size_t steps() const { return steps_; }

 private:
  std::size_t steps_;
};

}  // namespace mdk
