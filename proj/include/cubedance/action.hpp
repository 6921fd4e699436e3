#pragma once

// Automorphisms (N, nu) of the monoid action on the 28 chords: a monoid
// automorphism N together with a chord bijection nu such that
// p R q  <=>  nu(p) N(R) nu(q)  for every generator R.
//
// build_candidate() constructs nu from a parametrization (N, sigma, g):
// sigma permutes the augmented chords, and each g_i in Z3 picks, by
// major-third transposition, where the representative C, G, D or F major
// lands inside its target triple.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "cubedance/chord.hpp"
#include "cubedance/monoid.hpp"
#include "cubedance/monoid_automorphism.hpp"

namespace cubedance {

using ChordPermutation = std::array<std::uint8_t, kChordCount>;

inline ChordPermutation identity_permutation() {
  ChordPermutation p{};
  for (std::size_t i = 0; i < kChordCount; ++i) p[i] = static_cast<std::uint8_t>(i);
  return p;
}

inline bool is_bijection(const ChordPermutation& p) {
  std::array<bool, kChordCount> seen{};
  for (auto v : p) {
    if (v >= kChordCount || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

// A permutation of the augmented chords, stored as the images of C, G, D, F.
class AugPermutation {
 public:
  AugPermutation() : image_(kQuadrants) {}
  explicit AugPermutation(std::array<Quadrant, 4> image) : image_(image) {}

  static AugPermutation rotation(int steps) {
    std::array<Quadrant, 4> img{};
    for (std::size_t i = 0; i < 4; ++i) img[i] = quadrant_from_index(i + static_cast<std::size_t>(steps % 4 + 4));
    return AugPermutation(img);
  }
  // i -> axis - i around the cycle.
  static AugPermutation reflection(int axis) {
    std::array<Quadrant, 4> img{};
    for (int i = 0; i < 4; ++i) img[static_cast<std::size_t>(i)] = quadrant_from_index(static_cast<std::size_t>(((axis - i) % 4 + 4) % 4));
    return AugPermutation(img);
  }

  static std::vector<AugPermutation> all() {
    std::array<Quadrant, 4> img = kQuadrants;
    std::vector<AugPermutation> out;
    do {
      out.emplace_back(img);
    } while (std::next_permutation(img.begin(), img.end()));
    return out;
  }

  // The eight symmetries of the cycle C -> G -> D -> F -> C.
  static std::vector<AugPermutation> cycle_symmetries() {
    std::vector<AugPermutation> out;
    for (int s = 0; s < 4; ++s) out.push_back(rotation(s));
    for (int s = 0; s < 4; ++s) out.push_back(reflection(s));
    return out;
  }

  Quadrant operator()(Quadrant q) const { return image_[quadrant_index(q)]; }
  const std::array<Quadrant, 4>& images() const { return image_; }

  bool is_rotation() const {
    for (int s = 0; s < 4; ++s) {
      if (*this == rotation(s)) return true;
    }
    return false;
  }
  bool is_reflection() const {
    for (int s = 0; s < 4; ++s) {
      if (*this == reflection(s)) return true;
    }
    return false;
  }
  bool is_cycle_symmetry() const { return is_rotation() || is_reflection(); }

  // Cycle notation over the letters C, G, D, F, e.g. "(CGDF)", "(CG)(DF)", "()".
  std::string to_cycle_notation() const {
    std::string out;
    std::array<bool, 4> done{};
    for (std::size_t start = 0; start < 4; ++start) {
      if (done[start] || quadrant_index(image_[start]) == start) continue;
      out += '(';
      for (std::size_t i = start; !done[i]; i = quadrant_index(image_[i])) {
        done[i] = true;
        out += quadrant_letter(quadrant_from_index(i));
      }
      out += ')';
    }
    return out.empty() ? "()" : out;
  }

  static std::optional<AugPermutation> from_cycle_notation(std::string_view text) {
    std::array<Quadrant, 4> img = kQuadrants;
    std::array<bool, 4> used{};
    std::size_t pos = 0;
    auto letter_index = [](char c) -> std::optional<std::size_t> {
      switch (c) {
        case 'C': return 0;
        case 'G': return 1;
        case 'D': return 2;
        case 'F': return 3;
        default: return std::nullopt;
      }
    };
    if (text.empty()) return std::nullopt;
    while (pos < text.size()) {
      if (text[pos] != '(') return std::nullopt;
      const auto close = text.find(')', pos);
      if (close == std::string_view::npos) return std::nullopt;
      const std::string_view body = text.substr(pos + 1, close - pos - 1);
      std::vector<std::size_t> cycle;
      for (char c : body) {
        auto idx = letter_index(c);
        if (!idx || used[*idx]) return std::nullopt;
        used[*idx] = true;
        cycle.push_back(*idx);
      }
      for (std::size_t k = 0; k < cycle.size(); ++k) {
        img[cycle[k]] = quadrant_from_index(cycle[(k + 1) % cycle.size()]);
      }
      pos = close + 1;
    }
    return AugPermutation(img);
  }

  AugPermutation operator*(const AugPermutation& first) const {
    std::array<Quadrant, 4> img{};
    for (std::size_t i = 0; i < 4; ++i) img[i] = (*this)(first.image_[i]);
    return AugPermutation(img);
  }

  bool operator==(const AugPermutation&) const = default;
  auto operator<=>(const AugPermutation&) const = default;

 private:
  std::array<Quadrant, 4> image_;
};

// Z3 offsets for the source triples of C, G, D, F major.
struct TripleOffsets {
  std::array<std::uint8_t, 4> g{};

  static std::vector<TripleOffsets> all() {
    std::vector<TripleOffsets> out;
    for (int code = 0; code < 81; ++code) {
      TripleOffsets t;
      int c = code;
      for (std::size_t i = 4; i-- > 0;) {
        t.g[i] = static_cast<std::uint8_t>(c % 3);
        c /= 3;
      }
      out.push_back(t);
    }
    return out;
  }
  bool valid() const {
    for (auto v : g) {
      if (v > 2) return false;
    }
    return true;
  }
  bool operator==(const TripleOffsets&) const = default;
  auto operator<=>(const TripleOffsets&) const = default;
};

struct ActionParameters {
  MonoidAutomorphism n;
  AugPermutation sigma;
  TripleOffsets offsets;
};

struct ActionAutomorphism {
  MonoidAutomorphism n;
  ChordPermutation nu{};
  std::optional<ActionParameters> params;

  Chord operator()(Chord c) const { return Chord::from_index(nu[c.index()]); }

  // Equality ignores the provenance parameters.
  bool operator==(const ActionAutomorphism& other) const {
    return nu == other.nu && n == other.n;
  }
};

enum class RejectionKind : std::uint8_t {
  kInvalidOffsets,
  kInadmissibleSigma,
  kPropagationClash,
  kConjugationFailure,
};

struct Rejection {
  RejectionKind kind;
  std::string reason;
};

using BuildResult = std::variant<ActionAutomorphism, Rejection>;

inline bool maps_u_off_itself(const Monoid& m, const MonoidAutomorphism& n) {
  return n.image(Generator::kU) != m.generator_element(Generator::kU);
}

// p R q <=> nu(p) N(R) nu(q) for R in {U, P, L}. Checking generators suffices
// since conjugation by nu is multiplicative.
inline bool verify_action_automorphism(const Monoid& m, const MonoidAutomorphism& n,
                                       const ChordPermutation& nu) {
  if (!is_bijection(nu)) return false;
  for (Generator g : kGenerators) {
    const Relation& r = m.generators()[generator_index(g)];
    const Relation& image = m.element(n.image(g));
    for (std::size_t p = 0; p < kChordCount; ++p) {
      for (std::size_t q = 0; q < kChordCount; ++q) {
        if (r.test(p, q) != image.test(nu[p], nu[q])) return false;
      }
    }
  }
  return true;
}

inline bool verify_action_automorphism(const Monoid& m, const ActionAutomorphism& a) {
  return verify_action_automorphism(m, a.n, a.nu);
}

namespace detail {

// The chord that the representative of source triple X_M is measured from:
// Y_M (or Y_m in flipped mode) for the triple adjacent under N(U) to
// sigma(X)_aug.
inline std::optional<Chord> target_representative(const Monoid& m, const MonoidAutomorphism& n,
                                                  const AugPermutation& sigma, Quadrant source) {
  const bool flip = maps_u_off_itself(m, n) != sigma.is_reflection();
  const ChordKind wanted = flip ? ChordKind::kMinor : ChordKind::kMajor;
  const Relation& nu_u = m.element(n.image(Generator::kU));
  for (Chord c : apply(nu_u, Chord::augmented(sigma(source)))) {
    if (c.kind() != wanted) continue;
    const PitchClass root = quadrant_root(quadrant(c));
    return flip ? Chord::minor(root) : Chord::major(root);
  }
  return std::nullopt;
}

inline std::optional<Chord> apply_function(const Relation& r, Chord c) {
  const auto image = apply(r, c);
  if (image.size() != 1) return std::nullopt;
  return image.front();
}

}  // namespace detail

inline BuildResult build_candidate(const Monoid& m, const MonoidAutomorphism& n,
                                   const AugPermutation& sigma, const TripleOffsets& offsets) {
  auto reject = [&](RejectionKind kind, std::string reason) -> BuildResult {
    if (!sigma.is_cycle_symmetry()) {
      return Rejection{RejectionKind::kInadmissibleSigma,
                       "augmented permutation not a 4-cycle symmetry"};
    }
    return Rejection{kind, std::move(reason)};
  };
  if (!offsets.valid()) {
    return Rejection{RejectionKind::kInvalidOffsets, "triple offsets must lie in {0, 1, 2}"};
  }

  constexpr std::uint8_t kUnset = 0xff;
  ChordPermutation nu;
  nu.fill(kUnset);
  for (Quadrant q : kQuadrants) {
    nu[Chord::augmented(q).index()] = static_cast<std::uint8_t>(Chord::augmented(sigma(q)).index());
  }

  const GeneratorTriple& gens = m.generators();
  for (Quadrant source : kQuadrants) {
    const auto target = detail::target_representative(m, n, sigma, source);
    if (!target) {
      return reject(RejectionKind::kConjugationFailure,
                    std::string("no target triple next to ") +
                        format_chord(Chord::augmented(sigma(source))));
    }
    const Chord rep = Chord::major(quadrant_root(source));
    const Chord rep_image = transpose(*target, 4 * offsets.g[quadrant_index(source)]);

    // Walk the hexatonic cycle of rep by P and L, carrying images along N(P), N(L).
    std::vector<std::pair<Chord, Chord>> stack = {{rep, rep_image}};
    nu[rep.index()] = static_cast<std::uint8_t>(rep_image.index());
    while (!stack.empty()) {
      const auto [c, image] = stack.back();
      stack.pop_back();
      for (Generator g : {Generator::kP, Generator::kL}) {
        const auto next = detail::apply_function(gens[generator_index(g)], c);
        const auto next_image = detail::apply_function(m.element(n.image(g)), image);
        if (!next || !next_image) {
          return reject(RejectionKind::kPropagationClash,
                        "N(" + std::string(1, generator_symbol(g)) + ") is not a function at " +
                            format_chord(image));
        }
        auto& slot = nu[next->index()];
        if (slot == kUnset) {
          slot = static_cast<std::uint8_t>(next_image->index());
          stack.emplace_back(*next, *next_image);
        } else if (slot != next_image->index()) {
          return reject(RejectionKind::kPropagationClash,
                        "conflicting images for " + format_chord(*next));
        }
      }
    }
  }

  if (!is_bijection(nu)) {
    return reject(RejectionKind::kPropagationClash, "chord map is not a bijection");
  }
  if (!verify_action_automorphism(m, n, nu)) {
    return reject(RejectionKind::kConjugationFailure, "N(R) differs from nu R nu^-1");
  }
  return ActionAutomorphism{n, nu, ActionParameters{n, sigma, offsets}};
}

// Reads (sigma, g) back off a valid automorphism.
inline std::optional<ActionParameters> derive_parameters(const Monoid& m,
                                                         const MonoidAutomorphism& n,
                                                         const ChordPermutation& nu) {
  std::array<Quadrant, 4> img{};
  for (Quadrant q : kQuadrants) {
    const Chord c = Chord::from_index(nu[Chord::augmented(q).index()]);
    if (!c.is_augmented()) return std::nullopt;
    img[quadrant_index(q)] = quadrant(c);
  }
  const AugPermutation sigma(img);
  TripleOffsets offsets;
  for (Quadrant source : kQuadrants) {
    const auto target = detail::target_representative(m, n, sigma, source);
    if (!target) return std::nullopt;
    const Chord image = Chord::from_index(nu[Chord::major(quadrant_root(source)).index()]);
    if (image.kind() != target->kind()) return std::nullopt;
    const int diff = (image.root() - target->root().value()).value();
    if (diff % 4 != 0) return std::nullopt;
    offsets.g[quadrant_index(source)] = static_cast<std::uint8_t>(diff / 4);
  }
  return ActionParameters{n, sigma, offsets};
}

}  // namespace cubedance
