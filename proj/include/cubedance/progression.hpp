#pragma once

// Chord progressions annotated with the Cube Dance colors relating each
// consecutive pair, and their transformation by action automorphisms.

#include <cctype>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cubedance/group.hpp"
#include "json.hpp"

namespace cubedance {

// Subset of {U, P, L}.
class ColorSet {
 public:
  void insert(Generator g) { bits_ |= static_cast<std::uint8_t>(1u << generator_index(g)); }
  bool contains(Generator g) const { return (bits_ >> generator_index(g)) & 1u; }
  bool empty() const { return bits_ == 0; }

  std::string to_string() const {
    std::string out;
    for (Generator g : kGenerators) {
      if (contains(g)) out += generator_symbol(g);
    }
    return out;
  }

  bool operator==(const ColorSet&) const = default;

 private:
  std::uint8_t bits_ = 0;
};

struct Progression {
  std::vector<Chord> chords;
  std::vector<ColorSet> annotations;  // chords.size() - 1 entries

  bool operator==(const Progression&) const = default;
};

inline ColorSet relating_colors(Chord a, Chord b, const GeneratorTriple& gens = standard_generators()) {
  ColorSet out;
  for (Generator g : kGenerators) {
    if (gens[generator_index(g)].test(a, b)) out.insert(g);
  }
  return out;
}

inline Progression make_progression(std::vector<Chord> chords) {
  Progression p;
  p.chords = std::move(chords);
  const auto gens = standard_generators();
  for (std::size_t i = 0; i + 1 < p.chords.size(); ++i) {
    p.annotations.push_back(relating_colors(p.chords[i], p.chords[i + 1], gens));
  }
  return p;
}

class ProgressionParseError : public std::runtime_error {
 public:
  ProgressionParseError(const std::string& message, std::size_t token)
      : std::runtime_error(message), token_(token) {}
  // 1-based position of the offending token.
  std::size_t token() const { return token_; }

 private:
  std::size_t token_;
};

// Chord names separated by commas and/or whitespace. Two commas with only
// whitespace between them denote an empty token, which is an error.
inline Progression parse_progression(std::string_view text) {
  std::vector<Chord> chords;
  std::size_t token = 0;
  std::size_t i = 0;
  bool pending_comma = false;
  auto fail_empty = [&] {
    throw ProgressionParseError("empty chord name at token " + std::to_string(token + 1),
                                token + 1);
  };
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == ',') {
      if (chords.empty() || pending_comma) fail_empty();
      pending_comma = true;
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && text[j] != ',' && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    ++token;
    try {
      chords.push_back(parse_chord(text.substr(i, j - i)));
    } catch (const ParseError& e) {
      throw ProgressionParseError("token " + std::to_string(token) + ": " + e.what(), token);
    }
    pending_comma = false;
    i = j;
  }
  if (chords.empty()) throw ProgressionParseError("empty progression", 1);
  if (pending_comma) fail_empty();
  return make_progression(std::move(chords));
}

inline std::string format_progression(const Progression& p) {
  std::string out;
  for (std::size_t i = 0; i < p.chords.size(); ++i) {
    if (i) out += ", ";
    out += format_chord(p.chords[i]);
  }
  return out;
}

inline Progression transform(const Progression& p, const ActionAutomorphism& a) {
  std::vector<Chord> chords;
  chords.reserve(p.chords.size());
  for (Chord c : p.chords) chords.push_back(a(c));
  return make_progression(std::move(chords));
}

class ChainError : public std::runtime_error {
 public:
  ChainError(const std::string& message, std::size_t index)
      : std::runtime_error(message), index_(index) {}
  // 0-based index of the first spec that failed to decode.
  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

// The i-th result is p under spec_i o ... o spec_1 (spec_1 applied first).
inline std::vector<Progression> transform_chain(const Progression& p,
                                                const std::vector<std::string>& specs,
                                                const AutomorphismGroup& group) {
  std::vector<ActionAutomorphism> auts;
  auts.reserve(specs.size());
  for (std::size_t i = 0; i < specs.size(); ++i) {
    try {
      auts.push_back(group.decode(specs[i]));
    } catch (const std::exception& e) {
      throw ChainError("automorphism " + std::to_string(i) + ": " + e.what(), i);
    }
  }
  std::vector<Progression> out;
  out.reserve(auts.size());
  ActionAutomorphism acc = identity_aut(group.monoid());
  for (const auto& a : auts) {
    acc = compose_auts(a, acc);
    out.push_back(transform(p, acc));
  }
  return out;
}

inline nlohmann::ordered_json progression_json(const Progression& p) {
  nlohmann::ordered_json chords = nlohmann::ordered_json::array();
  for (Chord c : p.chords) chords.push_back(format_chord(c));
  nlohmann::ordered_json annotations = nlohmann::ordered_json::array();
  for (const auto& set : p.annotations) {
    nlohmann::ordered_json colors = nlohmann::ordered_json::array();
    for (Generator g : kGenerators) {
      if (set.contains(g)) colors.push_back(std::string(1, generator_symbol(g)));
    }
    annotations.push_back(std::move(colors));
  }
  return {{"chords", chords}, {"annotations", annotations}};
}

// Accepts either a JSON array of chord names or a progression string.
inline Progression progression_from_json(const nlohmann::json& j) {
  if (j.is_string()) return parse_progression(j.get<std::string>());
  if (!j.is_array() || j.empty()) {
    throw ProgressionParseError("progression must be a non-empty list of chord names", 1);
  }
  std::vector<Chord> chords;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_string()) {
      throw ProgressionParseError("token " + std::to_string(i + 1) + ": not a string", i + 1);
    }
    try {
      chords.push_back(parse_chord(j[i].get<std::string>()));
    } catch (const ParseError& e) {
      throw ProgressionParseError("token " + std::to_string(i + 1) + ": " + e.what(), i + 1);
    }
  }
  return make_progression(std::move(chords));
}

// Response body shared by the CLI and the service for transform requests.
inline nlohmann::ordered_json chain_json(const Progression& p, const std::vector<std::string>& specs,
                                         const AutomorphismGroup& group) {
  const auto chain = transform_chain(p, specs, group);
  nlohmann::ordered_json canonical = nlohmann::ordered_json::array();
  for (const auto& s : specs) canonical.push_back(group.encode(group.decode(s)));
  nlohmann::ordered_json steps = nlohmann::ordered_json::array();
  for (const auto& q : chain) steps.push_back(progression_json(q));
  return {{"progression", progression_json(p)}, {"automorphisms", canonical}, {"chain", steps}};
}

}  // namespace cubedance
