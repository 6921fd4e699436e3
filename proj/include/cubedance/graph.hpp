#pragma once

// The colored Cube Dance as an explicit graph: edge lists, adjacency,
// layout hints and DOT / JSON export.

#include <array>
#include <sstream>
#include <string>
#include <vector>

#include "cubedance/chord.hpp"
#include "cubedance/relation.hpp"
#include "json.hpp"

namespace cubedance {

struct ColoredEdge {
  Chord a;  // a.index() < b.index()
  Chord b;
  Generator color;
};

struct LoopAnnotation {
  Chord chord;
  Generator color;
};

struct Neighbor {
  Chord chord;
  Generator color;
};

// Undirected edges ordered by color (U, P, L) then by endpoint index.
// Self-loops are reported by colored_loops().
inline std::vector<ColoredEdge> colored_edges(const GeneratorTriple& gens = standard_generators()) {
  std::vector<ColoredEdge> out;
  for (Generator g : kGenerators) {
    const Relation& r = gens[generator_index(g)];
    for (std::size_t i = 0; i < kChordCount; ++i) {
      for (std::size_t j = i + 1; j < kChordCount; ++j) {
        if (r.test(i, j)) out.push_back({Chord::from_index(i), Chord::from_index(j), g});
      }
    }
  }
  return out;
}

inline std::vector<LoopAnnotation> colored_loops(
    const GeneratorTriple& gens = standard_generators()) {
  std::vector<LoopAnnotation> out;
  for (std::size_t i = 0; i < kChordCount; ++i) {
    for (Generator g : kGenerators) {
      if (gens[generator_index(g)].test(i, i)) out.push_back({Chord::from_index(i), g});
    }
  }
  return out;
}

// Distinct neighbors ordered by chord index, then color. Self-loops excluded.
inline std::vector<Neighbor> neighbors(Chord c, const GeneratorTriple& gens = standard_generators()) {
  std::vector<Neighbor> out;
  for (std::size_t j = 0; j < kChordCount; ++j) {
    if (j == c.index()) continue;
    for (Generator g : kGenerators) {
      if (gens[generator_index(g)].test(c.index(), j)) out.push_back({Chord::from_index(j), g});
    }
  }
  return out;
}

struct LayoutHint {
  double x;
  double y;
};

// Planar positions: one hexatonic cycle per corner, augmented chords on the
// axes between them. Indexed by canonical chord index.
inline const std::array<LayoutHint, kChordCount>& layout_hints() {
  static const std::array<LayoutHint, kChordCount> hints = {{
      // majors C .. B
      {3, 4}, {-3, 2}, {-1, -2}, {3, -2}, {1, 2}, {-4, 3},
      {-2, -3}, {4, -3}, {2, 3}, {-2, 1}, {-3, -4}, {2, -1},
      // minors C .. B
      {4, 3}, {-1, 2}, {-3, -2}, {1, -2}, {3, 2}, {-3, 4},
      {-2, -1}, {3, -4}, {2, 1}, {-2, 3}, {-4, -3}, {2, -3},
      // augmented C, G, D, F
      {0, 5}, {5, 0}, {0, -5}, {-5, 0},
  }};
  return hints;
}

inline const char* color_name(Generator g) {
  switch (g) {
    case Generator::kU: return "black";
    case Generator::kP: return "orange";
    case Generator::kL: return "green";
  }
  return "black";
}

inline std::string kind_name(ChordKind k) {
  switch (k) {
    case ChordKind::kMajor: return "major";
    case ChordKind::kMinor: return "minor";
    case ChordKind::kAugmented: return "augmented";
  }
  return {};
}

inline std::string to_dot(const GeneratorTriple& gens = standard_generators()) {
  std::ostringstream os;
  os << "graph colored_cube_dance {\n";
  os << "  node [shape=ellipse];\n";
  for (const Chord c : enumerate_all()) {
    const auto& h = layout_hints()[c.index()];
    os << "  \"" << format_chord(c) << "\" [quadrant=\"" << quadrant_letter(quadrant(c))
       << "\", pos=\"" << h.x << "," << h.y << "!\"];\n";
  }
  for (const auto& e : colored_edges(gens)) {
    os << "  \"" << format_chord(e.a) << "\" -- \"" << format_chord(e.b) << "\" [label=\""
       << generator_symbol(e.color) << "\", color=\"" << color_name(e.color) << "\""
       << (e.color == Generator::kL ? ", style=\"dashed\"" : "") << "];\n";
  }
  os << "  // self-loops\n";
  for (const auto& l : colored_loops(gens)) {
    const std::string name = format_chord(l.chord);
    os << "  \"" << name << "\" -- \"" << name << "\" [label=\"" << generator_symbol(l.color)
       << "\", color=\"" << color_name(l.color) << "\", loop=\"true\""
       << (l.color == Generator::kL ? ", style=\"dashed\"" : "") << "];\n";
  }
  os << "}\n";
  return os.str();
}

// Schema:
//   {"nodes": [{"index", "name", "kind", "quadrant", "pitch_classes", "x", "y"}],
//    "edges": [{"source", "target", "color"}],
//    "loops": [{"node", "color"}]}
inline nlohmann::ordered_json graph_json(const GeneratorTriple& gens = standard_generators()) {
  nlohmann::ordered_json nodes = nlohmann::ordered_json::array();
  for (const Chord c : enumerate_all()) {
    std::vector<int> pcs;
    for (PitchClass pc : pitch_classes(c)) pcs.push_back(pc.value());
    const auto& h = layout_hints()[c.index()];
    nodes.push_back({{"index", c.index()},
                     {"name", format_chord(c)},
                     {"kind", kind_name(c.kind())},
                     {"quadrant", std::string(1, quadrant_letter(quadrant(c)))},
                     {"pitch_classes", pcs},
                     {"x", h.x},
                     {"y", h.y}});
  }
  nlohmann::ordered_json edges = nlohmann::ordered_json::array();
  for (const auto& e : colored_edges(gens)) {
    edges.push_back({{"source", format_chord(e.a)},
                     {"target", format_chord(e.b)},
                     {"color", std::string(1, generator_symbol(e.color))}});
  }
  nlohmann::ordered_json loops = nlohmann::ordered_json::array();
  for (const auto& l : colored_loops(gens)) {
    loops.push_back({{"node", format_chord(l.chord)},
                     {"color", std::string(1, generator_symbol(l.color))}});
  }
  return {{"nodes", nodes}, {"edges", edges}, {"loops", loops}};
}

}  // namespace cubedance
