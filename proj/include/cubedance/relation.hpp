#pragma once

// Dense boolean relations on the 28 chords and the three generating
// relations U, P and L of the colored Cube Dance.

#include <array>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cubedance/chord.hpp"

namespace cubedance {

// Row-major 28x28 boolean matrix; bit j of row i is set iff i relates to j.
class Relation {
 public:
  using Row = std::uint32_t;
  static constexpr Row kRowMask = (Row{1} << kChordCount) - 1;

  static Relation identity() {
    Relation r;
    for (std::size_t i = 0; i < kChordCount; ++i) r.set(i, i);
    return r;
  }

  bool test(std::size_t from, std::size_t to) const { return (rows_[from] >> to) & 1u; }
  bool test(Chord from, Chord to) const { return test(from.index(), to.index()); }

  void set(std::size_t from, std::size_t to, bool value = true) {
    if (value) {
      rows_[from] |= Row{1} << to;
    } else {
      rows_[from] &= ~(Row{1} << to);
    }
  }
  void set(Chord from, Chord to, bool value = true) { set(from.index(), to.index(), value); }
  void flip(std::size_t from, std::size_t to) { rows_[from] ^= Row{1} << to; }

  void relate_both(Chord a, Chord b) {
    set(a, b);
    set(b, a);
  }

  Row row(std::size_t i) const { return rows_[i]; }
  void set_row(std::size_t i, Row bits) { rows_[i] = bits & kRowMask; }
  const std::array<Row, kChordCount>& rows() const { return rows_; }

  std::size_t out_degree(std::size_t i) const {
    return static_cast<std::size_t>(std::popcount(rows_[i]));
  }

  bool is_symmetric() const {
    for (std::size_t i = 0; i < kChordCount; ++i) {
      for (std::size_t j = i + 1; j < kChordCount; ++j) {
        if (test(i, j) != test(j, i)) return false;
      }
    }
    return true;
  }

  // FNV-1a over the row words; stable across platforms.
  std::string digest() const {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (Row r : rows_) {
      for (int b = 0; b < 4; ++b) {
        h ^= (r >> (8 * b)) & 0xffu;
        h *= 0x100000001b3ull;
      }
    }
    static constexpr char hex[] = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i, h >>= 4) out[static_cast<std::size_t>(i)] = hex[h & 0xf];
    return out;
  }

  auto operator<=>(const Relation&) const = default;

 private:
  std::array<Row, kChordCount> rows_{};
};

// x (r;s) y iff there is z with x r z and z s y: apply r first, then s.
inline Relation compose(const Relation& r, const Relation& s) {
  Relation out;
  for (std::size_t x = 0; x < kChordCount; ++x) {
    Relation::Row acc = 0;
    for (Relation::Row bits = r.row(x); bits != 0; bits &= bits - 1) {
      acc |= s.row(static_cast<std::size_t>(std::countr_zero(bits)));
    }
    out.set_row(x, acc);
  }
  return out;
}

inline std::vector<Chord> apply(const Relation& r, Chord c) {
  std::vector<Chord> out;
  for (Relation::Row bits = r.row(c.index()); bits != 0; bits &= bits - 1) {
    out.push_back(Chord::from_index(static_cast<std::size_t>(std::countr_zero(bits))));
  }
  return out;
}

enum class Generator : std::uint8_t { kU = 0, kP = 1, kL = 2 };

inline constexpr std::array<Generator, 3> kGenerators = {Generator::kU, Generator::kP,
                                                         Generator::kL};

constexpr std::size_t generator_index(Generator g) { return static_cast<std::size_t>(g); }
constexpr char generator_symbol(Generator g) { return "UPL"[generator_index(g)]; }

inline Generator generator_from_symbol(char c) {
  switch (c) {
    case 'U': return Generator::kU;
    case 'P': return Generator::kP;
    case 'L': return Generator::kL;
    default: throw std::invalid_argument(std::string("unknown generator \"") + c + "\"");
  }
}

inline Relation generator(Generator g) {
  Relation r;
  switch (g) {
    case Generator::kP:
      for (int x = 0; x < 12; ++x) r.relate_both(Chord::major(PitchClass(x)), Chord::minor(PitchClass(x)));
      for (Quadrant q : kQuadrants) r.relate_both(Chord::augmented(q), Chord::augmented(q));
      break;
    case Generator::kL:
      for (int x = 0; x < 12; ++x) {
        r.relate_both(Chord::major(PitchClass(x)), Chord::minor(PitchClass(x + 4)));
      }
      for (Quadrant q : kQuadrants) r.relate_both(Chord::augmented(q), Chord::augmented(q));
      break;
    case Generator::kU:
      // An augmented class T touches the majors rooted in T and the minors
      // rooted in T + 1.
      for (Quadrant q : kQuadrants) {
        const Chord aug = Chord::augmented(q);
        for (PitchClass member : pitch_classes(aug)) {
          r.relate_both(aug, Chord::major(member));
          r.relate_both(aug, Chord::minor(member + 1));
        }
      }
      break;
  }
  return r;
}

using GeneratorTriple = std::array<Relation, 3>;

inline GeneratorTriple standard_generators() {
  return {generator(Generator::kU), generator(Generator::kP), generator(Generator::kL)};
}

// Evaluates a word over {U, P, L} left to right; "" and "e" denote the identity.
inline Relation evaluate_word(std::string_view word, const GeneratorTriple& gens) {
  Relation acc = Relation::identity();
  if (word == "e") return acc;
  for (char c : word) acc = compose(acc, gens[generator_index(generator_from_symbol(c))]);
  return acc;
}

}  // namespace cubedance
