#pragma once

// End-to-end checks of the engine: monoid, presentation, generator
// structure, both automorphism groups and the group laws. `cubedance verify`
// and the acceptance suite both run these.

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "cubedance/group.hpp"

namespace cubedance {

struct Criterion {
  std::string id;
  std::string description;
  bool passed = false;
  std::string detail;
};

struct VerificationReport {
  std::vector<Criterion> criteria;

  bool all_passed() const {
    return !criteria.empty() &&
           std::all_of(criteria.begin(), criteria.end(), [](const auto& c) { return c.passed; });
  }
};

inline Criterion check_monoid_size(const Monoid& m) {
  return {"monoid-size", "monoid closure of {U, P, L} has exactly 40 elements", m.size() == 40,
          std::to_string(m.size()) + " elements"};
}

// Every defining relation holds, and flipping any single bit of any
// generator breaks at least one of them.
inline Criterion check_presentation(const Monoid& m) {
  const auto report = verify_presentation(m);
  std::size_t undetected = 0;
  std::size_t mutations = 0;
  for (Generator g : kGenerators) {
    for (std::size_t i = 0; i < kChordCount; ++i) {
      for (std::size_t j = 0; j < kChordCount; ++j) {
        GeneratorTriple mutated = m.generators();
        mutated[generator_index(g)].flip(i, j);
        ++mutations;
        if (verify_presentation(mutated).all_passed()) ++undetected;
      }
    }
  }
  return {"presentation",
          "all presentation relations hold; every single-bit generator mutation is detected",
          report.all_passed() && undetected == 0,
          std::to_string(report.items.size() - report.failures()) + "/" +
              std::to_string(report.items.size()) + " relations, " +
              std::to_string(mutations - undetected) + "/" + std::to_string(mutations) +
              " mutations detected"};
}

inline Criterion check_generator_structure(const Monoid& m) {
  const auto& gens = m.generators();
  const Relation& u = gens[generator_index(Generator::kU)];
  const Relation& p = gens[generator_index(Generator::kP)];
  const Relation& l = gens[generator_index(Generator::kL)];
  std::string problems;
  auto note = [&](const std::string& s) { problems += (problems.empty() ? "" : "; ") + s; };

  for (const auto& r : gens) {
    if (!r.is_symmetric()) note("asymmetric generator");
  }
  for (std::size_t i = 0; i < kChordCount; ++i) {
    const bool aug = Chord::from_index(i).is_augmented();
    if (u.out_degree(i) != (aug ? 6u : 1u)) note("U-degree of " + format_chord(Chord::from_index(i)));
    if (aug) {
      if (p.row(i) != (Relation::Row{1} << i) || l.row(i) != (Relation::Row{1} << i)) {
        note("P/L do not fix " + format_chord(Chord::from_index(i)));
      }
    } else {
      for (const Relation* r : {&p, &l}) {
        if (r->out_degree(i) != 1) {
          note("P/L not a function at " + format_chord(Chord::from_index(i)));
        } else if (apply(*r, Chord::from_index(i)).front().is_augmented()) {
          note("P/L leaves major/minor chords");
        }
      }
    }
  }
  // Components of the P/L graph on the 24 major/minor chords.
  std::vector<int> component(24, -1);
  int components = 0;
  for (std::size_t s = 0; s < 24; ++s) {
    if (component[s] >= 0) continue;
    std::vector<std::size_t> stack = {s};
    component[s] = components;
    std::size_t size = 0;
    bool cycle = true;
    const Quadrant q = quadrant(Chord::from_index(s));
    while (!stack.empty()) {
      const std::size_t x = stack.back();
      stack.pop_back();
      ++size;
      const Chord cx = Chord::from_index(x);
      if (quadrant(cx) != q) cycle = false;
      const std::size_t px = apply(p, cx).front().index();
      const std::size_t lx = apply(l, cx).front().index();
      if (px == lx || px >= 24 || lx >= 24) {
        cycle = false;
        continue;
      }
      for (std::size_t y : {px, lx}) {
        if (component[y] < 0) {
          component[y] = components;
          stack.push_back(y);
        }
      }
    }
    if (size != 6 || !cycle) note("P/L component of " + format_chord(Chord::from_index(s)) + " is not a hexatonic 6-cycle");
    ++components;
  }
  if (components != 4) note(std::to_string(components) + " P/L components");
  return {"generator-structure",
          "U-degrees 1/6, P and L fix augmented chords and form four hexatonic 6-cycles",
          problems.empty(), problems.empty() ? "ok" : problems};
}

inline Criterion check_monoid_automorphisms(const std::vector<MonoidAutomorphism>& auts) {
  std::map<std::size_t, std::size_t> profile;
  for (const auto& a : auts) ++profile[order(a)];
  const std::map<std::size_t, std::size_t> expected = {{1, 1}, {2, 7}, {3, 2}, {6, 2}};
  std::string detail = std::to_string(auts.size()) + " automorphisms, orders";
  for (auto [k, v] : profile) detail += " " + std::to_string(k) + ":" + std::to_string(v);
  return {"monoid-automorphisms",
          "the monoid has 12 automorphisms with order profile {1:1, 2:7, 3:2, 6:2}",
          auts.size() == 12 && profile == expected, detail};
}

inline Criterion check_action_group(const AutomorphismGroup& group) {
  const auto oracle = enumerate_by_search(group.monoid(), group.monoid_automorphisms());
  std::set<AutomorphismGroup::Key> from_oracle;
  bool all_members = true;
  for (const auto& a : oracle) {
    from_oracle.insert({a.n.table, a.nu});
    all_members = all_members && group.contains(a);
  }
  const bool agree = all_members && from_oracle.size() == oracle.size() &&
                     oracle.size() == group.size();
  return {"action-automorphisms",
          "the action has 7776 automorphisms; parametrized and backtracking enumerations agree",
          group.size() == 7776 && agree,
          "parametrized " + std::to_string(group.size()) + ", backtracking " +
              std::to_string(oracle.size()) + (agree ? ", identical sets" : ", sets differ")};
}

inline Criterion check_fibers_and_sigmas(const AutomorphismGroup& group) {
  std::map<std::vector<Monoid::Index>, std::size_t> fibers;
  std::set<AugPermutation> sigmas;
  std::size_t identity_fiber = 0;
  for (const auto& a : group.elements()) {
    ++fibers[a.n.table];
    if (a.n.is_identity()) ++identity_fiber;
    std::array<Quadrant, 4> img{};
    for (Quadrant q : kQuadrants) {
      img[quadrant_index(q)] = quadrant(a(Chord::augmented(q)));
    }
    sigmas.insert(AugPermutation(img));
  }
  bool fibers_ok = fibers.size() == 12;
  for (const auto& [table, count] : fibers) fibers_ok = fibers_ok && count == 648;
  const auto symmetries = AugPermutation::cycle_symmetries();
  const std::set<AugPermutation> dihedral(symmetries.begin(), symmetries.end());
  return {"fibers-and-sigmas",
          "N=id subgroup and every N-fiber have 648 elements; exactly the 8 cycle symmetries "
          "of (C,G,D,F) occur as augmented permutations",
          identity_fiber == 648 && fibers_ok && sigmas == dihedral && AugPermutation::all().size() == 24,
          "N=id fiber " + std::to_string(identity_fiber) + ", " + std::to_string(fibers.size()) +
              " fibers, " + std::to_string(sigmas.size()) + "/24 permutations admissible"};
}

inline ActionAutomorphism chromatic_transposition(const Monoid& m, int semitones) {
  ActionAutomorphism a{identity_monoid_automorphism(m), {}, std::nullopt};
  for (Chord c : enumerate_all()) {
    a.nu[c.index()] = static_cast<std::uint8_t>(transpose(c, semitones).index());
  }
  return a;
}

inline Criterion check_group_laws(const AutomorphismGroup& group, std::size_t random_pairs = 10000) {
  const Monoid& m = group.monoid();
  std::string problems;
  auto note = [&](const std::string& s) {
    if (problems.size() < 200) problems += (problems.empty() ? "" : "; ") + s;
  };
  const ActionAutomorphism id = identity_aut(m);
  if (!group.contains(id)) note("identity missing");
  for (const auto& a : group.elements()) {
    const auto inv = invert_aut(m, a);
    if (!group.contains(inv)) note("inverse missing");
    if (!(compose_auts(a, inv) == id) || !(compose_auts(inv, a) == id)) note("a o a^-1 != id");
    if (!(compose_auts(a, id) == a)) note("a o id != a");
  }
  std::mt19937 rng(7776);
  std::uniform_int_distribution<std::size_t> pick(0, group.size() - 1);
  std::size_t closed = 0;
  for (std::size_t k = 0; k < random_pairs; ++k) {
    if (group.contains(compose_auts(group[pick(rng)], group[pick(rng)]))) ++closed;
  }
  if (closed != random_pairs) note("closure failed on " + std::to_string(random_pairs - closed) + " pairs");
  for (int k = 0; k < 12; ++k) {
    if (!group.contains(chromatic_transposition(m, k))) note("T" + std::to_string(k) + " missing");
  }
  std::size_t round_trips = 0;
  for (const auto& a : group.elements()) {
    try {
      if (decode_aut(m, encode_aut(m, a)) == a) ++round_trips;
    } catch (const DecodeError&) {
    }
  }
  if (round_trips != group.size()) note("encode/decode failed on " + std::to_string(group.size() - round_trips));
  return {"group-laws",
          "identity and inverses on the full group, closure on random pairs, 12 chromatic "
          "transpositions, encode/decode round trip",
          problems.empty(),
          problems.empty() ? std::to_string(random_pairs) + " random pairs closed, " +
                                 std::to_string(round_trips) + " round trips"
                           : problems};
}

inline std::set<Chord> image_of(const ActionAutomorphism& a, std::initializer_list<Chord> chords) {
  std::set<Chord> out;
  for (Chord c : chords) out.insert(a(c));
  return out;
}

// With N(U) = U, nu(C_aug) = G_aug and C major sent to a major chord, the
// triple {C, E, Ab} must land on {G, B, Eb}, {F m, A m, Db m} on {C m, E m, Ab m},
// G_aug on D_aug and F_aug on C_aug.
inline Criterion check_c_aug_to_g_aug(const AutomorphismGroup& group) {
  const Monoid& m = group.monoid();
  auto maj = [](int r) { return Chord::major(PitchClass(r)); };
  auto min = [](int r) { return Chord::minor(PitchClass(r)); };
  const std::set<Chord> g_major = {maj(7), maj(11), maj(3)};
  const std::set<Chord> c_minor = {min(0), min(4), min(8)};
  std::size_t matching = 0;
  std::size_t consistent = 0;
  for (const auto& a : group.elements()) {
    if (maps_u_off_itself(m, a.n)) continue;
    if (a(Chord::augmented(Quadrant::kC)) != Chord::augmented(Quadrant::kG)) continue;
    if (a(maj(0)).kind() != ChordKind::kMajor) continue;
    ++matching;
    const bool ok = image_of(a, {maj(0), maj(4), maj(8)}) == g_major &&
                    image_of(a, {min(5), min(9), min(1)}) == c_minor &&
                    a(Chord::augmented(Quadrant::kG)) == Chord::augmented(Quadrant::kD) &&
                    a(Chord::augmented(Quadrant::kF)) == Chord::augmented(Quadrant::kC);
    if (ok) ++consistent;
  }
  return {"c-aug-to-g-aug",
          "N(U)=U, nu(C_aug)=G_aug, major-to-major: C major triple -> G major triple, "
          "G_aug -> D_aug, F_aug -> C_aug",
          matching > 0 && consistent == matching,
          std::to_string(consistent) + "/" + std::to_string(matching) + " matching automorphisms consistent"};
}

inline VerificationReport verify_engine(const AutomorphismGroup& group) {
  VerificationReport r;
  r.criteria.push_back(check_monoid_size(group.monoid()));
  r.criteria.push_back(check_presentation(group.monoid()));
  r.criteria.push_back(check_generator_structure(group.monoid()));
  r.criteria.push_back(check_monoid_automorphisms(group.monoid_automorphisms()));
  r.criteria.push_back(check_action_group(group));
  r.criteria.push_back(check_fibers_and_sigmas(group));
  r.criteria.push_back(check_group_laws(group));
  r.criteria.push_back(check_c_aug_to_g_aug(group));
  return r;
}

}  // namespace cubedance
