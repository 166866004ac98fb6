#include "mdk/error.hpp"

namespace mdk {

std::string_view category_name(Category c) {
  switch (c) {
    case Category::LexError: return "LexError";
    case Category::ParseError: return "ParseError";
    case Category::UnboundName: return "UnboundName";
    case Category::NotAFunction: return "NotAFunction";
    case Category::CannotInfer: return "CannotInfer";
    case Category::TypeMismatch: return "TypeMismatch";
    case Category::FuelExhausted: return "FuelExhausted";
    case Category::RedeclaredName: return "RedeclaredName";
    case Category::RewriteOnStaticConstant: return "RewriteOnStaticConstant";
    case Category::NonLinearPattern: return "NonLinearPattern";
    case Category::UnboundPatternVariable: return "UnboundPatternVariable";
    case Category::IllFormedPattern: return "IllFormedPattern";
    case Category::UnknownName: return "UnknownName";
    case Category::UnionElaborationFailed: return "UnionElaborationFailed";
    case Category::Internal: return "Internal";
  }
  return "Internal";
}

Error::Error(Category category, std::string message, Location loc)
    : std::runtime_error(std::string(category_name(category)) + ": " + message),
      category_(category),
      message_(std::move(message)),
      loc_(loc) {}

std::string Error::format(std::string_view file) const {
  std::string out(file);
  out += ':' + std::to_string(loc_.line) + ':' + std::to_string(loc_.column) + ": ";
  out += category_name(category_);
  out += ": ";
  out += message_;
  return out;
}

FuelExhausted::FuelExhausted(std::size_t steps)
    : Error(Category::FuelExhausted,
            "reduction budget exhausted after " + std::to_string(steps) +
                " steps (the rewrite system may not terminate)"),
      steps_(steps) {}

}  // namespace mdk
