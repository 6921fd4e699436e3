#pragma once

// Automorphisms of the generated monoid, found by exhaustive search over
// generator images.

#include <algorithm>
#include <array>
#include <optional>
#include <vector>

#include "cubedance/monoid.hpp"

namespace cubedance {

struct MonoidAutomorphism {
  using Index = Monoid::Index;

  std::array<Index, 3> images{};  // images of U, P, L
  std::vector<Index> table;       // element index -> image index

  Index operator()(Index element) const { return table[element]; }
  Index image(Generator g) const { return images[generator_index(g)]; }

  bool is_identity() const {
    for (Index i = 0; i < table.size(); ++i) {
      if (table[i] != i) return false;
    }
    return true;
  }

  bool operator==(const MonoidAutomorphism& other) const { return table == other.table; }
  auto operator<=>(const MonoidAutomorphism& other) const { return table <=> other.table; }
};

// Extends generator images to a map on all elements via the shortlex words
// and keeps it only if it is a bijective homomorphism fixing the identity.
inline std::optional<MonoidAutomorphism> extend_generator_images(
    const Monoid& m, const std::array<Monoid::Index, 3>& images) {
  const std::size_t n = m.size();
  MonoidAutomorphism out;
  out.images = images;
  out.table.resize(n);
  std::vector<bool> hit(n, false);
  for (Monoid::Index i = 0; i < n; ++i) {
    const Monoid::Index img = m.evaluate(m.word(i), images);
    if (hit[img]) return std::nullopt;
    hit[img] = true;
    out.table[i] = img;
  }
  if (out.table[Monoid::identity_index()] != Monoid::identity_index()) return std::nullopt;
  for (Monoid::Index a = 0; a < n; ++a) {
    for (Monoid::Index b = 0; b < n; ++b) {
      if (out.table[m.product(a, b)] != m.product(out.table[a], out.table[b])) {
        return std::nullopt;
      }
    }
  }
  return out;
}

// Tries every triple of generator images (|M|^3 candidates). Result is sorted
// with the identity first.
inline std::vector<MonoidAutomorphism> enumerate_monoid_automorphisms(const Monoid& m) {
  std::vector<MonoidAutomorphism> out;
  const std::size_t n = m.size();
  for (Monoid::Index u = 0; u < n; ++u) {
    for (Monoid::Index p = 0; p < n; ++p) {
      for (Monoid::Index l = 0; l < n; ++l) {
        if (auto aut = extend_generator_images(m, {u, p, l})) out.push_back(std::move(*aut));
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline MonoidAutomorphism identity_monoid_automorphism(const Monoid& m) {
  MonoidAutomorphism out;
  for (Generator g : kGenerators) out.images[generator_index(g)] = m.generator_element(g);
  out.table.resize(m.size());
  for (Monoid::Index i = 0; i < m.size(); ++i) out.table[i] = i;
  return out;
}

// (a o b)(x) = a(b(x)).
inline MonoidAutomorphism compose(const MonoidAutomorphism& a, const MonoidAutomorphism& b) {
  MonoidAutomorphism out;
  out.table.resize(b.table.size());
  for (std::size_t i = 0; i < b.table.size(); ++i) out.table[i] = a.table[b.table[i]];
  for (std::size_t g = 0; g < 3; ++g) out.images[g] = a.table[b.images[g]];
  return out;
}

inline MonoidAutomorphism inverse(const MonoidAutomorphism& a, const Monoid& m) {
  MonoidAutomorphism out;
  out.table.resize(a.table.size());
  for (std::size_t i = 0; i < a.table.size(); ++i) out.table[a.table[i]] = i;
  for (Generator g : kGenerators) {
    out.images[generator_index(g)] = out.table[m.generator_element(g)];
  }
  return out;
}

inline std::size_t order(const MonoidAutomorphism& a) {
  std::vector<MonoidAutomorphism::Index> power = a.table;
  for (std::size_t k = 1;; ++k) {
    bool identity = true;
    for (std::size_t i = 0; i < power.size(); ++i) identity = identity && power[i] == i;
    if (identity) return k;
    for (auto& x : power) x = a.table[x];
  }
}

}  // namespace cubedance
