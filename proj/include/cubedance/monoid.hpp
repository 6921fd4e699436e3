#pragma once

// The finite monoid of relations generated by U, P and L, with shortlex
// word representatives, its Cayley table and the presentation check.

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cubedance/relation.hpp"

namespace cubedance {

class Monoid {
 public:
  using Index = std::size_t;

  // Breadth-first closure from the identity, extending words on the right by
  // U, P, L in that order, so the first word reaching a matrix is its
  // shortlex representative.
  static Monoid closure(const GeneratorTriple& gens = standard_generators(),
                        std::size_t max_elements = 4096) {
    Monoid m;
    m.generators_ = gens;
    m.add(Relation::identity(), "e");
    for (Index i = 0; i < m.elements_.size(); ++i) {
      for (Generator g : kGenerators) {
        Relation next = compose(m.elements_[i], gens[generator_index(g)]);
        if (m.lookup_.count(next) != 0) continue;
        if (m.elements_.size() >= max_elements) {
          throw std::length_error("monoid closure exceeded " + std::to_string(max_elements) +
                                  " elements");
        }
        const std::string& base = m.words_[i];
        m.add(std::move(next), (base == "e" ? std::string() : base) + generator_symbol(g));
      }
    }
    const std::size_t n = m.elements_.size();
    m.cayley_.resize(n * n);
    for (Index a = 0; a < n; ++a) {
      for (Index b = 0; b < n; ++b) {
        m.cayley_[a * n + b] = m.lookup_.at(compose(m.elements_[a], m.elements_[b]));
      }
    }
    for (Generator g : kGenerators) {
      m.generator_indices_[generator_index(g)] = m.lookup_.at(gens[generator_index(g)]);
    }
    return m;
  }

  std::size_t size() const { return elements_.size(); }
  static constexpr Index identity_index() { return 0; }
  Index generator_element(Generator g) const { return generator_indices_[generator_index(g)]; }
  const GeneratorTriple& generators() const { return generators_; }

  const Relation& element(Index i) const { return elements_[i]; }
  const std::string& word(Index i) const { return words_[i]; }
  const std::vector<Relation>& elements() const { return elements_; }

  // Index of a * b, i.e. a applied first.
  Index product(Index a, Index b) const { return cayley_[a * size() + b]; }

  std::optional<Index> find(const Relation& r) const {
    auto it = lookup_.find(r);
    if (it == lookup_.end()) return std::nullopt;
    return it->second;
  }

  // Evaluates a word through the Cayley table.
  Index evaluate(std::string_view word) const {
    Index acc = identity_index();
    if (word == "e") return acc;
    for (char c : word) acc = product(acc, generator_element(generator_from_symbol(c)));
    return acc;
  }

  // Evaluates a word with generator images substituted, e.g. for candidate
  // homomorphisms.
  Index evaluate(std::string_view word, const std::array<Index, 3>& images) const {
    Index acc = identity_index();
    if (word == "e") return acc;
    for (char c : word) acc = product(acc, images[generator_index(generator_from_symbol(c))]);
    return acc;
  }

 private:
  void add(Relation r, std::string word) {
    lookup_.emplace(r, elements_.size());
    elements_.push_back(std::move(r));
    words_.push_back(std::move(word));
  }

  GeneratorTriple generators_{};
  std::vector<Relation> elements_;
  std::vector<std::string> words_;
  std::map<Relation, Index> lookup_;
  std::vector<Index> cayley_;
  std::array<Index, 3> generator_indices_{};
};

struct CheckItem {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct CheckReport {
  std::vector<CheckItem> items;

  void add(std::string name, bool passed, std::string detail = {}) {
    items.push_back({std::move(name), passed, std::move(detail)});
  }
  bool all_passed() const {
    for (const auto& item : items) {
      if (!item.passed) return false;
    }
    return !items.empty();
  }
  std::size_t failures() const {
    std::size_t n = 0;
    for (const auto& item : items) n += item.passed ? 0 : 1;
    return n;
  }
};

struct PresentationRelation {
  std::string_view lhs;
  std::string_view rhs;
};

// The defining relations, "e" standing for the identity.
inline constexpr std::array<PresentationRelation, 9> kPresentation = {{
    {"PP", "e"},
    {"LL", "e"},
    {"LPL", "PLP"},
    {"UUU", "U"},
    {"UP", "UL"},
    {"PU", "LU"},
    {"UUPUU", "PUUPUUP"},
    {"UPUPUU", "PUPUPUUP"},
    {"UUPUPU", "PUUPUPUP"},
}};

// Checks each defining relation as an identity between boolean matrices.
inline CheckReport verify_presentation(const GeneratorTriple& gens) {
  CheckReport report;
  for (const auto& rel : kPresentation) {
    const bool ok = evaluate_word(rel.lhs, gens) == evaluate_word(rel.rhs, gens);
    report.add(std::string(rel.lhs) + " = " + std::string(rel.rhs), ok);
  }
  return report;
}

inline CheckReport verify_presentation(const Monoid& m) {
  return verify_presentation(m.generators());
}

}  // namespace cubedance
