#include "mdk/bundle.hpp"

#include "bundle_sources.hpp"

namespace mdk {

const std::vector<BundledTheory>& bundle() {
  static const std::vector<BundledTheory> theories = {
      {"minimal_axiomatic", "theories/minimal_axiomatic.mdk",
       "minimal predicate logic with introduction/elimination axioms (no rules)",
       sources::minimal_axiomatic, 1, {}},
      {"minimal_modulo", "theories/minimal_modulo.mdk",
       "minimal predicate logic with the eps/imp rewrite rule; proofs are lambda-terms",
       sources::minimal_modulo, 2, {"(eps A -> eps A -> eps B) -> eps A -> eps B"}},
      {"nat_t", "theories/nat_t.mdk", "unary naturals with addition and a recursor given by rules",
       sources::nat_t, 2, {"S (S (S (S 0)))", "S (S (S (S (S (S 0)))))"}},
      {"nat_axiomatic", "theories/nat_axiomatic.mdk", "unary naturals with induction as an axiom (no rules)",
       sources::nat_axiomatic, 2,
       {"ind Q q0 qs (S (S 0))", "plus (S 0) (S 0)"}},
      {"stt", "theories/stt.mdk", "simple type theory skeleton: type codes, arrow decoding, imp and forall",
       sources::stt, 1, {"(x : term o) -> eps x -> eps x"}},
  };
  return theories;
}

const BundledTheory* find_bundled(std::string_view name) {
  for (const auto& t : bundle()) {
    if (name == t.name || name == t.name + ".mdk" || name == t.path) return &t;
  }
  return nullptr;
}

}  // namespace mdk
