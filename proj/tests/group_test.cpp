#include "cubedance/group.hpp"

#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>

#include "cubedance/verification.hpp"

namespace cubedance {
namespace {

const AutomorphismGroup& group() { return standard_group(); }

AugPermutation sigma_of(const ActionAutomorphism& a) {
  std::array<Quadrant, 4> img{};
  for (Quadrant q : kQuadrants) img[quadrant_index(q)] = quadrant(a(Chord::augmented(q)));
  return AugPermutation(img);
}

TEST(GroupTest, Size) {
  EXPECT_EQ(group().size(), 7776u);
  EXPECT_EQ(group().monoid_automorphisms().size(), 12u);
}

TEST(GroupTest, FibersHave648Elements) {
  std::map<std::size_t, std::size_t> fibers;
  for (const auto& a : group().elements()) {
    const auto i = group().monoid_automorphism_index(a.n);
    ASSERT_TRUE(i.has_value());
    ++fibers[*i];
  }
  EXPECT_EQ(fibers.size(), 12u);
  for (auto [i, count] : fibers) EXPECT_EQ(count, 648u) << i;
}

TEST(GroupTest, ElementsAreValidAndDistinct) {
  std::set<ChordPermutation> per_identity_fiber;
  for (const auto& a : group().elements()) {
    ASSERT_TRUE(verify_action_automorphism(group().monoid(), a));
    if (a.n.is_identity()) per_identity_fiber.insert(a.nu);
  }
  EXPECT_EQ(per_identity_fiber.size(), 648u);
}

TEST(GroupTest, ChromaticTranspositions) {
  const Monoid& m = group().monoid();
  std::set<ChordPermutation> seen;
  for (int k = 0; k < 12; ++k) {
    const auto t = chromatic_transposition(m, k);
    EXPECT_TRUE(group().contains(t)) << k;
    seen.insert(t.nu);
  }
  EXPECT_EQ(seen.size(), 12u);
  const auto t4 = chromatic_transposition(m, 4);
  EXPECT_EQ(compose_auts(t4, t4), chromatic_transposition(m, 8));
  EXPECT_EQ(aut_order(chromatic_transposition(m, 1)), 12u);
  EXPECT_EQ(aut_order(t4), 3u);
}

TEST(GroupTest, IdentityAndInverses) {
  const Monoid& m = group().monoid();
  const auto id = identity_aut(m);
  EXPECT_EQ(invert_aut(m, id), id);
  EXPECT_EQ(aut_order(id), 1u);
  std::mt19937 rng(100);
  std::uniform_int_distribution<std::size_t> pick(0, group().size() - 1);
  for (int k = 0; k < 100; ++k) {
    const auto& a = group()[pick(rng)];
    EXPECT_EQ(compose_auts(invert_aut(m, a), a), id);
    EXPECT_EQ(compose_auts(a, invert_aut(m, a)), id);
    EXPECT_TRUE(group().contains(invert_aut(m, a)));
  }
}

TEST(GroupTest, ClosureOnRandomPairs) {
  std::mt19937 rng(2024);
  std::uniform_int_distribution<std::size_t> pick(0, group().size() - 1);
  for (int k = 0; k < 10000; ++k) {
    const auto& a = group()[pick(rng)];
    const auto& b = group()[pick(rng)];
    ASSERT_TRUE(group().contains(compose_auts(a, b)));
  }
}

TEST(GroupTest, CompositionOrderIsRightToLeft) {
  const Monoid& m = group().monoid();
  const auto t1 = chromatic_transposition(m, 1);
  const auto rot = std::get<ActionAutomorphism>(
      build_candidate(m, identity_monoid_automorphism(m), AugPermutation::rotation(1), TripleOffsets{}));
  const auto ab = compose_auts(rot, t1);
  for (Chord c : enumerate_all()) EXPECT_EQ(ab(c), rot(t1(c)));
}

TEST(GroupTest, ProjectionsAreHomomorphisms) {
  std::mt19937 rng(12);
  std::uniform_int_distribution<std::size_t> pick(0, group().size() - 1);
  for (int k = 0; k < 2000; ++k) {
    const auto& a = group()[pick(rng)];
    const auto& b = group()[pick(rng)];
    const auto ab = compose_auts(a, b);
    EXPECT_EQ(ab.n, compose(a.n, b.n));
    EXPECT_EQ(sigma_of(ab), sigma_of(a) * sigma_of(b));
    EXPECT_TRUE(sigma_of(ab).is_cycle_symmetry());
  }
}

TEST(GroupTest, IdentityEncoding) {
  const auto& id = group().canonical(identity_aut(group().monoid()));
  EXPECT_EQ(group().encode(id), "N=U;PL=P,L;sigma=();g=0,0,0,0");
  EXPECT_EQ(group().decode("N=U;PL=P,L;sigma=();g=0,0,0,0"), id);
}

TEST(GroupTest, EncodeDecodeRoundTripsEveryElement) {
  std::set<std::string> codes;
  for (const auto& a : group().elements()) {
    const std::string code = group().encode(a);
    codes.insert(code);
    ASSERT_EQ(group().decode(code), a) << code;
  }
  EXPECT_EQ(codes.size(), group().size());
}

TEST(GroupTest, ElementsSortedByEncoding) {
  for (std::size_t i = 1; i < group().size(); ++i) {
    ASSERT_LT(group().encode(group()[i - 1]), group().encode(group()[i]));
  }
}

TEST(GroupTest, NuFormDecodes) {
  const auto& a = group()[4321];
  std::string text = encode_generator_images(group().monoid(), a.n) + ";nu=";
  for (std::size_t i = 0; i < kChordCount; ++i) text += (i ? "," : "") + std::to_string(a.nu[i]);
  EXPECT_EQ(group().decode(text), a);
  EXPECT_EQ(group().encode(group().decode(text)), group().encode(a));
}

TEST(GroupTest, AlternativeWordsForImagesDecode) {
  const auto a = group().decode("N=LUL;PL=P,L;sigma=();g=0,0,0,0");
  EXPECT_EQ(group().encode(a).substr(0, 6), "N=PUP;");
}

TEST(GroupTest, MutatedNuIsRejected) {
  const auto& a = group()[0];
  ChordPermutation nu = a.nu;
  std::swap(nu[0], nu[12]);
  std::string text = encode_generator_images(group().monoid(), a.n) + ";nu=";
  for (std::size_t i = 0; i < kChordCount; ++i) text += (i ? "," : "") + std::to_string(nu[i]);
  try {
    group().decode(text);
    FAIL() << "expected DecodeError";
  } catch (const DecodeError& e) {
    EXPECT_STREQ(e.what(), "not an automorphism");
  }
}

TEST(GroupTest, MalformedEncodingsAreRejected) {
  for (const char* bad : {
           "",
           "N=U",
           "N=U;PL=P",
           "N=U;PL=P,L;sigma=();g=0,0,0",
           "N=U;PL=P,L;sigma=();g=0,0,0,3",
           "N=U;PL=P,L;sigma=(CX);g=0,0,0,0",
           "N=U;PL=P,L;sigma=(CG);g=0,0,0,0",
           "N=U;PL=P,L;sigma=();g=0,0,0,0;x=1",
           "N=U;N=U;PL=P,L;sigma=();g=0,0,0,0",
           "N=Q;PL=P,L;sigma=();g=0,0,0,0",
           "N=U;PL=U,L;sigma=();g=0,0,0,0",
           "N=U;PL=P,L;nu=1,2,3",
           "N=U;PL=P,L;sigma=();g=a,0,0,0",
       }) {
    EXPECT_THROW(group().decode(bad), DecodeError) << bad;
  }
}

TEST(GroupTest, NonDihedralSigmaReason) {
  try {
    group().decode("N=U;PL=P,L;sigma=(CG);g=0,0,0,0");
    FAIL();
  } catch (const DecodeError& e) {
    EXPECT_STREQ(e.what(), "augmented permutation not a 4-cycle symmetry");
  }
}

}  // namespace
}  // namespace cubedance
