#pragma once

// The full automorphism group of the monoid action and group operations on
// its elements. Composition is right to left: compose_auts(a, b) applies b
// first, then a.

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cubedance/action.hpp"
#include "cubedance/encoding.hpp"
#include "cubedance/search.hpp"

namespace cubedance {

inline ActionAutomorphism identity_aut(const Monoid& m) {
  ActionAutomorphism a{identity_monoid_automorphism(m), identity_permutation(), std::nullopt};
  a.params = derive_parameters(m, a.n, a.nu);
  return a;
}

inline ActionAutomorphism compose_auts(const ActionAutomorphism& a, const ActionAutomorphism& b) {
  ActionAutomorphism out;
  out.n = compose(a.n, b.n);
  for (std::size_t i = 0; i < kChordCount; ++i) out.nu[i] = a.nu[b.nu[i]];
  return out;
}

inline ActionAutomorphism invert_aut(const Monoid& m, const ActionAutomorphism& a) {
  ActionAutomorphism out;
  out.n = inverse(a.n, m);
  for (std::size_t i = 0; i < kChordCount; ++i) out.nu[a.nu[i]] = static_cast<std::uint8_t>(i);
  return out;
}

inline std::size_t aut_order(const ActionAutomorphism& a) {
  ActionAutomorphism power = a;
  for (std::size_t k = 1;; ++k) {
    if (power.n.is_identity() && power.nu == identity_permutation()) return k;
    power = compose_auts(a, power);
  }
}

// Parametrized construction: every (N, sigma, g) that build_candidate accepts.
inline std::vector<ActionAutomorphism> enumerate_parametrized(
    const Monoid& m, const std::vector<MonoidAutomorphism>& monoid_auts) {
  std::vector<ActionAutomorphism> out;
  const auto sigmas = AugPermutation::all();
  const auto offsets = TripleOffsets::all();
  for (const auto& n : monoid_auts) {
    for (const auto& sigma : sigmas) {
      for (const auto& g : offsets) {
        auto built = build_candidate(m, n, sigma, g);
        if (auto* a = std::get_if<ActionAutomorphism>(&built)) out.push_back(std::move(*a));
      }
    }
  }
  return out;
}

// Oracle construction by backtracking, one fiber per monoid automorphism.
inline std::vector<ActionAutomorphism> enumerate_by_search(
    const Monoid& m, const std::vector<MonoidAutomorphism>& monoid_auts) {
  std::vector<ActionAutomorphism> out;
  for (const auto& n : monoid_auts) {
    for (const auto& nu : search_compatible_bijections(m, n)) {
      out.push_back(ActionAutomorphism{n, nu, std::nullopt});
    }
  }
  return out;
}

class AutomorphismGroup {
 public:
  using Key = std::pair<std::vector<Monoid::Index>, ChordPermutation>;

  // Builds the group from the parametrized construction, sorted by
  // canonical encoding.
  static AutomorphismGroup enumerate(Monoid m) {
    AutomorphismGroup g;
    g.monoid_ = std::move(m);
    g.monoid_auts_ = enumerate_monoid_automorphisms(g.monoid_);
    auto elements = enumerate_parametrized(g.monoid_, g.monoid_auts_);
    std::vector<std::pair<std::string, ActionAutomorphism>> keyed;
    keyed.reserve(elements.size());
    for (auto& a : elements) keyed.emplace_back(encode_aut(g.monoid_, a), std::move(a));
    std::sort(keyed.begin(), keyed.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    for (auto& [code, a] : keyed) {
      if (!g.index_.emplace(key_of(a), g.elements_.size()).second) {
        throw std::logic_error("duplicate automorphism " + code);
      }
      g.elements_.push_back(std::move(a));
    }
    return g;
  }

  const Monoid& monoid() const { return monoid_; }
  const std::vector<MonoidAutomorphism>& monoid_automorphisms() const { return monoid_auts_; }
  const std::vector<ActionAutomorphism>& elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }
  const ActionAutomorphism& operator[](std::size_t i) const { return elements_[i]; }

  std::optional<std::size_t> find(const ActionAutomorphism& a) const {
    auto it = index_.find(key_of(a));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  bool contains(const ActionAutomorphism& a) const { return find(a).has_value(); }

  // The stored element equal to a, which carries its parametrization.
  const ActionAutomorphism& canonical(const ActionAutomorphism& a) const {
    auto i = find(a);
    if (!i) throw std::invalid_argument("not a member of the automorphism group");
    return elements_[*i];
  }

  std::optional<std::size_t> monoid_automorphism_index(const MonoidAutomorphism& n) const {
    auto it = std::lower_bound(monoid_auts_.begin(), monoid_auts_.end(), n);
    if (it == monoid_auts_.end() || !(*it == n)) return std::nullopt;
    return static_cast<std::size_t>(it - monoid_auts_.begin());
  }

  std::string encode(const ActionAutomorphism& a) const { return encode_aut(monoid_, a); }
  ActionAutomorphism decode(std::string_view text) const {
    return canonical(decode_aut(monoid_, text));
  }

 private:
  static Key key_of(const ActionAutomorphism& a) { return {a.n.table, a.nu}; }

  Monoid monoid_;
  std::vector<MonoidAutomorphism> monoid_auts_;
  std::vector<ActionAutomorphism> elements_;
  std::map<Key, std::size_t> index_;
};

// Process-wide instance over the standard generators, built on first use.
inline const AutomorphismGroup& standard_group() {
  static const AutomorphismGroup group = AutomorphismGroup::enumerate(Monoid::closure());
  return group;
}

}  // namespace cubedance
