#pragma once

// Backtracking search for every chord bijection nu compatible with a fixed
// monoid automorphism N. Independent of the parametrized construction and
// used to cross-check it.

#include <array>
#include <bit>
#include <vector>

#include "cubedance/action.hpp"

namespace cubedance {

namespace detail {

struct SearchState {
  const GeneratorTriple* source;
  std::array<Relation, 3> target;             // N(U), N(P), N(L)
  std::array<Relation, 3> target_transposed;
  std::array<std::size_t, kChordCount> order{};
  ChordPermutation nu{};
  Relation::Row used = 0;
  std::vector<ChordPermutation>* out;
};

inline Relation transposed(const Relation& r) {
  Relation t;
  for (std::size_t i = 0; i < kChordCount; ++i) {
    for (std::size_t j = 0; j < kChordCount; ++j) t.set(j, i, r.test(i, j));
  }
  return t;
}

inline void search(SearchState& s, std::size_t depth) {
  if (depth == kChordCount) {
    s.out->push_back(s.nu);
    return;
  }
  const std::size_t x = s.order[depth];
  Relation::Row candidates = ~s.used & Relation::kRowMask;
  for (std::size_t k = 0; k < depth && candidates != 0; ++k) {
    const std::size_t y = s.order[k];
    for (std::size_t g = 0; g < 3; ++g) {
      const Relation& r = (*s.source)[g];
      // need N(R)[nu y][nu x] == R[y][x] and N(R)[nu x][nu y] == R[x][y]
      const Relation::Row forward = s.target[g].row(s.nu[y]);
      const Relation::Row backward = s.target_transposed[g].row(s.nu[y]);
      candidates &= r.test(y, x) ? forward : ~forward;
      candidates &= r.test(x, y) ? backward : ~backward;
    }
  }
  for (; candidates != 0; candidates &= candidates - 1) {
    const auto c = static_cast<std::size_t>(std::countr_zero(candidates));
    bool loops_ok = true;
    for (std::size_t g = 0; g < 3; ++g) {
      loops_ok = loops_ok && (*s.source)[g].test(x, x) == s.target[g].test(c, c);
    }
    if (!loops_ok) continue;
    s.nu[x] = static_cast<std::uint8_t>(c);
    s.used |= Relation::Row{1} << c;
    search(s, depth + 1);
    s.used &= ~(Relation::Row{1} << c);
  }
}

}  // namespace detail

// Visit order: the augmented block, then each augmented chord's U-neighbors
// in turn, so every later choice is pinned by an earlier U-edge and the P/L
// constraints within hexatonic cycles.
inline std::vector<ChordPermutation> search_compatible_bijections(const Monoid& m,
                                                                  const MonoidAutomorphism& n) {
  detail::SearchState s;
  s.source = &m.generators();
  for (Generator g : kGenerators) {
    s.target[generator_index(g)] = m.element(n.image(g));
    s.target_transposed[generator_index(g)] = detail::transposed(s.target[generator_index(g)]);
  }
  std::array<bool, kChordCount> placed{};
  std::size_t k = 0;
  for (Quadrant q : kQuadrants) {
    const std::size_t a = Chord::augmented(q).index();
    s.order[k++] = a;
    placed[a] = true;
  }
  const Relation& u = m.generators()[generator_index(Generator::kU)];
  for (Quadrant q : kQuadrants) {
    for (Chord c : apply(u, Chord::augmented(q))) {
      if (!placed[c.index()]) {
        s.order[k++] = c.index();
        placed[c.index()] = true;
      }
    }
  }
  for (std::size_t i = 0; i < kChordCount; ++i) {
    if (!placed[i]) s.order[k++] = i;
  }
  std::vector<ChordPermutation> out;
  s.out = &out;
  detail::search(s, 0);
  return out;
}

}  // namespace cubedance
