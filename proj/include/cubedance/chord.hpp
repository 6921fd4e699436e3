#pragma once

// Pitch classes, the 28-chord universe (24 major/minor triads plus the four
// augmented triad classes), chord naming and quadrant structure.

#include <array>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cubedance {

inline constexpr std::size_t kChordCount = 28;
inline constexpr std::size_t kAugmentedCount = 4;

// Semitone class, always normalized into [0, 12).
class PitchClass {
 public:
  constexpr PitchClass() = default;
  constexpr explicit PitchClass(int semitones) : value_(normalize(semitones)) {}

  constexpr int value() const { return value_; }
  constexpr PitchClass operator+(int semitones) const { return PitchClass(value_ + semitones); }
  constexpr PitchClass operator-(int semitones) const { return PitchClass(value_ - semitones); }
  constexpr auto operator<=>(const PitchClass&) const = default;

 private:
  static constexpr int normalize(int v) { return ((v % 12) + 12) % 12; }
  int value_ = 0;
};

enum class ChordKind : std::uint8_t { kMajor, kMinor, kAugmented };

// The augmented classes double as quadrant names. Declaration order is the
// cyclic order C -> G -> D -> F -> C.
enum class Quadrant : std::uint8_t { kC = 0, kG = 1, kD = 2, kF = 3 };

inline constexpr std::array<Quadrant, 4> kQuadrants = {Quadrant::kC, Quadrant::kG, Quadrant::kD,
                                                       Quadrant::kF};

constexpr std::size_t quadrant_index(Quadrant q) { return static_cast<std::size_t>(q); }
constexpr Quadrant quadrant_from_index(std::size_t i) { return kQuadrants[i % 4]; }
constexpr Quadrant next(Quadrant q) { return quadrant_from_index(quadrant_index(q) + 1); }
constexpr Quadrant previous(Quadrant q) { return quadrant_from_index(quadrant_index(q) + 3); }

// Canonical root of each augmented class: C, G, D, F.
constexpr PitchClass quadrant_root(Quadrant q) {
  constexpr std::array<int, 4> roots = {0, 7, 2, 5};
  return PitchClass(roots[quadrant_index(q)]);
}

constexpr char quadrant_letter(Quadrant q) { return "CGDF"[quadrant_index(q)]; }

// The augmented class containing a pitch class. Classes are residues mod 4:
// C={0,4,8}, F={1,5,9}, D={2,6,10}, G={3,7,11}.
constexpr Quadrant augmented_class_of(PitchClass pc) {
  constexpr std::array<Quadrant, 4> by_residue = {Quadrant::kC, Quadrant::kF, Quadrant::kD,
                                                  Quadrant::kG};
  return by_residue[static_cast<std::size_t>(pc.value() % 4)];
}

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::string token)
      : std::runtime_error(message), token_(std::move(token)) {}
  const std::string& token() const { return token_; }

 private:
  std::string token_;
};

class Chord {
 public:
  constexpr Chord() = default;

  static constexpr Chord major(PitchClass root) { return Chord(ChordKind::kMajor, root); }
  static constexpr Chord minor(PitchClass root) { return Chord(ChordKind::kMinor, root); }
  static constexpr Chord augmented(Quadrant q) {
    return Chord(ChordKind::kAugmented, quadrant_root(q));
  }

  // Canonical index: majors 0-11, minors 12-23, augmented C, G, D, F at 24-27.
  static constexpr Chord from_index(std::size_t index) {
    if (index < 12) return major(PitchClass(static_cast<int>(index)));
    if (index < 24) return minor(PitchClass(static_cast<int>(index - 12)));
    if (index < kChordCount) return augmented(quadrant_from_index(index - 24));
    throw std::out_of_range("chord index out of range: " + std::to_string(index));
  }

  constexpr std::size_t index() const {
    switch (kind_) {
      case ChordKind::kMajor: return static_cast<std::size_t>(root_.value());
      case ChordKind::kMinor: return 12 + static_cast<std::size_t>(root_.value());
      case ChordKind::kAugmented: return 24 + quadrant_index(augmented_class_of(root_));
    }
    return 0;
  }

  constexpr ChordKind kind() const { return kind_; }
  constexpr PitchClass root() const { return root_; }
  constexpr bool is_augmented() const { return kind_ == ChordKind::kAugmented; }

  constexpr bool operator==(const Chord& other) const { return index() == other.index(); }
  constexpr auto operator<=>(const Chord& other) const { return index() <=> other.index(); }

 private:
  constexpr Chord(ChordKind kind, PitchClass root) : kind_(kind), root_(root) {}

  ChordKind kind_ = ChordKind::kMajor;
  PitchClass root_;
};

constexpr std::array<PitchClass, 3> pitch_classes(Chord c) {
  const PitchClass r = c.root();
  switch (c.kind()) {
    case ChordKind::kMajor: return {r, r + 4, r + 7};
    case ChordKind::kMinor: return {r, r + 3, r + 7};
    case ChordKind::kAugmented: {
      // Ascending from the smallest member.
      const int base = r.value() % 4;
      return {PitchClass(base), PitchClass(base + 4), PitchClass(base + 8)};
    }
  }
  return {};
}

// Major and minor triads belong to the quadrant of their root; augmented
// chords to their own class.
constexpr Quadrant quadrant(Chord c) { return augmented_class_of(c.root()); }

constexpr Chord transpose(Chord c, int semitones) {
  switch (c.kind()) {
    case ChordKind::kMajor: return Chord::major(c.root() + semitones);
    case ChordKind::kMinor: return Chord::minor(c.root() + semitones);
    case ChordKind::kAugmented: return Chord::augmented(augmented_class_of(c.root() + semitones));
  }
  return c;
}

constexpr std::array<Chord, kChordCount> enumerate_all() {
  std::array<Chord, kChordCount> out{};
  for (std::size_t i = 0; i < kChordCount; ++i) out[i] = Chord::from_index(i);
  return out;
}

inline std::string pitch_class_name(PitchClass pc) {
  static constexpr std::array<std::string_view, 12> names = {
      "C", "Db", "D", "Eb", "E", "F", "F#", "G", "Ab", "A", "Bb", "B"};
  return std::string(names[static_cast<std::size_t>(pc.value())]);
}

inline std::string format_chord(Chord c) {
  switch (c.kind()) {
    case ChordKind::kMajor: return pitch_class_name(c.root());
    case ChordKind::kMinor: return pitch_class_name(c.root()) + "m";
    case ChordKind::kAugmented: return std::string(1, quadrant_letter(quadrant(c))) + "aug";
  }
  return {};
}

// Grammar: letter [# | b] ["" | "M" | "m" | "aug"].
inline Chord parse_chord(std::string_view text) {
  const std::string whole(text);
  if (text.empty()) throw ParseError("empty chord name", whole);

  static constexpr std::array<int, 7> letter_pc = {9, 11, 0, 2, 4, 5, 7};  // A..G
  const char letter = text.front();
  if (letter < 'A' || letter > 'G') {
    throw ParseError("invalid chord name \"" + whole + "\": unknown note letter \"" +
                         std::string(1, letter) + "\"",
                     std::string(1, letter));
  }
  int pc = letter_pc[static_cast<std::size_t>(letter - 'A')];
  std::string_view rest = text.substr(1);

  if (!rest.empty() && (rest.front() == '#' || rest.front() == 'b')) {
    pc += rest.front() == '#' ? 1 : -1;
    rest.remove_prefix(1);
  }

  const PitchClass root(pc);
  if (rest.empty() || rest == "M") return Chord::major(root);
  if (rest == "m") return Chord::minor(root);
  if (rest == "aug") return Chord::augmented(augmented_class_of(root));
  throw ParseError("invalid chord name \"" + whole + "\": unexpected suffix \"" +
                       std::string(rest) + "\"",
                   std::string(rest));
}

}  // namespace cubedance
