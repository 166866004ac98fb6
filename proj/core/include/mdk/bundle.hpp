#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace mdk {

// A theory file shipped with the checker, together with what checking it is
// expected to produce.
struct BundledTheory {
  std::string name;
  std::string path;  // relative to the repository root
  std::string description;
  std::string_view source;
  std::size_t expected_checks = 0;
  std::vector<std::string> expected_evals;  // printed normal forms, in order
};

/// The bundled theories, in a fixed order.
const std::vector<BundledTheory>& bundle();

/// Looks a theory up by name ("nat_t") or by file name ("nat_t.mdk").
const BundledTheory* find_bundled(std::string_view name);

}  // namespace mdk
