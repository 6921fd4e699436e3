// Builds one automorphism from its parameters and applies it to a progression.

#include <iostream>
#include <variant>

#include "cubedance/progression.hpp"

int main() {
  using namespace cubedance;
  const AutomorphismGroup& group = standard_group();
  const Monoid& m = group.monoid();

  // N = identity, augmented chords rotated C -> G -> D -> F -> C, no offsets.
  const auto built = build_candidate(m, identity_monoid_automorphism(m), AugPermutation::rotation(1),
                                     TripleOffsets{{0, 0, 0, 0}});
  if (const auto* rejection = std::get_if<Rejection>(&built)) {
    std::cerr << rejection->reason << "\n";
    return 1;
  }
  const auto& a = std::get<ActionAutomorphism>(built);

  const Progression p = parse_progression("C, Am, F, G");
  std::cout << encode_aut(m, a) << "\n";
  std::cout << format_progression(p) << "  ->  " << format_progression(transform(p, a)) << "\n";
  std::cout << "order " << aut_order(a) << "\n";
}
