#include "cubedance/monoid.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

namespace cubedance {
namespace {

class MonoidTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() { monoid_ = new Monoid(Monoid::closure()); }
  static void TearDownTestSuite() {
    delete monoid_;
    monoid_ = nullptr;
  }
  static const Monoid& m() { return *monoid_; }

 private:
  static Monoid* monoid_;
};

Monoid* MonoidTest::monoid_ = nullptr;

TEST_F(MonoidTest, HasFortyElements) { EXPECT_EQ(m().size(), 40u); }

TEST_F(MonoidTest, ContainsIdentityAndGenerators) {
  EXPECT_EQ(m().element(Monoid::identity_index()), Relation::identity());
  EXPECT_EQ(m().word(Monoid::identity_index()), "e");
  for (Generator g : kGenerators) {
    EXPECT_EQ(m().element(m().generator_element(g)), generator(g));
    EXPECT_EQ(m().word(m().generator_element(g)), std::string(1, generator_symbol(g)));
  }
}

TEST_F(MonoidTest, WordsReproduceMatrices) {
  for (std::size_t i = 0; i < m().size(); ++i) {
    EXPECT_EQ(evaluate_word(m().word(i), m().generators()), m().element(i)) << m().word(i);
    EXPECT_EQ(m().evaluate(m().word(i)), i);
  }
}

TEST_F(MonoidTest, WordsAreShortlexMinimal) {
  // Every word of length up to the longest representative that evaluates to
  // an element must not beat the stored representative in shortlex order.
  std::size_t longest = 0;
  for (std::size_t i = 0; i < m().size(); ++i) longest = std::max(longest, m().word(i).size());
  auto rank = [](char c) { return c == 'U' ? 0 : c == 'P' ? 1 : 2; };
  auto shortlex_less = [&](const std::string& a, const std::string& b) {
    if (a == "e") return b != "e";
    if (b == "e") return false;
    if (a.size() != b.size()) return a.size() < b.size();
    for (std::size_t k = 0; k < a.size(); ++k) {
      if (a[k] != b[k]) return rank(a[k]) < rank(b[k]);
    }
    return false;
  };
  std::vector<std::string> words = {""};
  for (std::size_t len = 1; len <= longest; ++len) {
    std::vector<std::string> next;
    for (const auto& w : words) {
      for (char c : {'U', 'P', 'L'}) next.push_back(w + c);
    }
    for (const auto& w : next) {
      const auto idx = m().find(evaluate_word(w, m().generators()));
      ASSERT_TRUE(idx.has_value()) << w;
      EXPECT_FALSE(shortlex_less(w, m().word(*idx))) << w << " vs " << m().word(*idx);
    }
    words = std::move(next);
  }
}

TEST_F(MonoidTest, CayleyTableIsAssociativeAndClosed) {
  const std::size_t n = m().size();
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      EXPECT_EQ(m().element(m().product(a, b)), compose(m().element(a), m().element(b)));
      for (std::size_t c = 0; c < n; ++c) {
        ASSERT_EQ(m().product(m().product(a, b), c), m().product(a, m().product(b, c)));
      }
    }
  }
}

TEST_F(MonoidTest, RandomRawMatricesAssociate) {
  std::mt19937 rng(40);
  std::bernoulli_distribution bit(0.15);
  for (int trial = 0; trial < 50; ++trial) {
    std::array<Relation, 3> r;
    for (auto& x : r) {
      for (std::size_t i = 0; i < kChordCount; ++i) {
        for (std::size_t j = 0; j < kChordCount; ++j) x.set(i, j, bit(rng));
      }
    }
    EXPECT_EQ(compose(compose(r[0], r[1]), r[2]), compose(r[0], compose(r[1], r[2])));
  }
}

TEST_F(MonoidTest, PLSubgroupHasSixInvertibleElements) {
  std::set<std::size_t> pl_words;
  for (std::size_t i = 0; i < m().size(); ++i) {
    if (m().word(i).find('U') == std::string::npos) pl_words.insert(i);
  }
  std::set<std::size_t> invertible;
  for (std::size_t a = 0; a < m().size(); ++a) {
    for (std::size_t b = 0; b < m().size(); ++b) {
      if (m().product(a, b) == 0 && m().product(b, a) == 0) invertible.insert(a);
    }
  }
  EXPECT_EQ(pl_words.size(), 6u);
  EXPECT_EQ(invertible, pl_words);
  std::set<std::string> words;
  for (auto i : pl_words) words.insert(m().word(i));
  EXPECT_EQ(words, (std::set<std::string>{"e", "P", "L", "PL", "LP", "PLP"}));
}

TEST_F(MonoidTest, UCubedIsU) {
  EXPECT_EQ(m().evaluate("UUU"), m().generator_element(Generator::kU));
}

TEST_F(MonoidTest, PresentationHolds) {
  const auto report = verify_presentation(m());
  ASSERT_EQ(report.items.size(), kPresentation.size());
  for (const auto& item : report.items) EXPECT_TRUE(item.passed) << item.name;
  EXPECT_TRUE(report.all_passed());
}

TEST_F(MonoidTest, CorruptedUBreaksPresentation) {
  GeneratorTriple gens = standard_generators();
  gens[generator_index(Generator::kU)].flip(0, 24);  // drop the C -- Caug edge one way
  EXPECT_FALSE(verify_presentation(gens).all_passed());
}

TEST_F(MonoidTest, EverySingleBitMutationIsDetected) {
  for (Generator g : kGenerators) {
    for (std::size_t i = 0; i < kChordCount; ++i) {
      for (std::size_t j = 0; j < kChordCount; ++j) {
        GeneratorTriple gens = standard_generators();
        gens[generator_index(g)].flip(i, j);
        EXPECT_FALSE(verify_presentation(gens).all_passed())
            << generator_symbol(g) << "[" << i << "][" << j << "]";
      }
    }
  }
}

TEST(MonoidClosureTest, CapsRunawayClosure) {
  EXPECT_THROW(Monoid::closure(standard_generators(), 10), std::length_error);
}

}  // namespace
}  // namespace cubedance
