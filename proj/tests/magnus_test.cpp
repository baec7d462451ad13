#include <algorithm>
#include <random>

#include <gtest/gtest.h>

#include "support/generators.hpp"
#include "weldkit/magnus.hpp"

namespace weldkit {
namespace {

using testing::pick;
using testing::random_word;

TEST(Integer, PromotesAndDemotes) {
  const Integer big = Integer(std::int64_t{1} << 62) * Integer(8);
  EXPECT_FALSE(big.is_small());
  EXPECT_EQ(big.to_string(), "36893488147419103232");
  EXPECT_EQ(Integer::from_string("36893488147419103232"), big);
  const Integer back = big - big + Integer(5);
  EXPECT_TRUE(back.is_small());
  EXPECT_EQ(back, Integer(5));
  EXPECT_EQ(gcd(Integer(-12), Integer(18)), Integer(6));
  EXPECT_EQ(floor_mod(Integer(-7), Integer(3)), Integer(2));
  Integer acc(INT64_MAX);
  acc.add_product(Integer(INT64_MAX), Integer(2));
  EXPECT_EQ(acc.to_string(), "27670116110564327421");
}

TEST(MonomialBasis, Sizes) {
  // sum over k of n! / (n - k)!
  EXPECT_EQ(MonomialBasis::get(1).size(), 2);
  EXPECT_EQ(MonomialBasis::get(3).size(), 16);
  EXPECT_EQ(MonomialBasis::get(6).size(), 1957);
  const MonomialBasis& b = MonomialBasis::get(3);
  EXPECT_EQ(b.index_of({0, 0}), -1);
  EXPECT_EQ(b.product(b.index_of({0}), b.index_of({2, 1})), b.index_of({0, 2, 1}));
  EXPECT_EQ(b.product(b.index_of({1}), b.index_of({2, 1})), -1);
}

TEST(Expand, SmallExamples) {
  const ReducedPoly c = expand(commutator(parse_word("m1"), parse_word("m2")), 2);
  EXPECT_EQ(c.to_string(), "1 + x1 x2 - x2 x1");
  EXPECT_EQ(expand(parse_word("m1^-1"), 1).to_string(), "1 - x1");
  EXPECT_EQ(expand(parse_word("m1 m1"), 1).to_string(), "1 + 2 x1");
  EXPECT_THROW(expand(parse_word("m3"), 2), std::out_of_range);
}

TEST(Expand, HomomorphismAndUnit) {
  std::mt19937_64 rng(41);
  for (int k = 0; k < 500; ++k) {
    const int n = pick(rng, 1, 5);
    const Word u = random_word(rng, n, pick(rng, 0, 12));
    const Word v = random_word(rng, n, pick(rng, 0, 12));
    EXPECT_EQ(expand(concat(u, v), n), expand(u, n) * expand(v, n));
    EXPECT_TRUE(expand(concat(u, inverse(u)), n).is_one());
    EXPECT_EQ(expand(inverse(u), n), inv(expand(u, n)));
  }
}

TEST(Expand, ReductionRelatorsVanish) {
  std::mt19937_64 rng(42);
  for (int k = 0; k < 300; ++k) {
    const int n = pick(rng, 1, 5);
    const int i = pick(rng, 0, n - 1);
    const Word w = random_word(rng, n, pick(rng, 0, 8));
    const Word mu = power(i, 1);
    EXPECT_TRUE(expand(commutator(mu, concat({inverse(w), mu, w})), n).is_one());
  }
}

TEST(RfEqual, AgreesWithHeisenbergOracle) {
  std::mt19937_64 rng(43);
  int equal = 0;
  for (int k = 0; k < 1000; ++k) {
    const Word u = random_word(rng, 2, pick(rng, 0, 10));
    Word v;
    if (k % 2 == 0) {
      v = random_word(rng, 2, pick(rng, 0, 10));
    } else {
      // Same abelian image, so equality hinges on the central coordinate.
      v = u;
      std::shuffle(v.begin(), v.end(), rng);
    }
    const bool expected = testing::heisenberg_of(u) == testing::heisenberg_of(v);
    equal += expected;
    EXPECT_EQ(rf_equal(u, v, 2), expected) << format_word(u) << " vs " << format_word(v);
  }
  EXPECT_GT(equal, 50);
}

TEST(WordFromExpansion, RecoversGroupElements) {
  std::mt19937_64 rng(44);
  for (int k = 0; k < 300; ++k) {
    const int n = pick(rng, 1, 5);
    const Word w = random_word(rng, n, pick(rng, 0, 14));
    const auto back = word_from_expansion(expand(w, n));
    ASSERT_TRUE(back.has_value()) << format_word(w);
    EXPECT_TRUE(rf_equal(*back, w, n));
  }
  ReducedPoly p = ReducedPoly::one(2);
  p.set_coefficient(p.basis().index_of({0, 1}), Integer(1));
  EXPECT_FALSE(word_from_expansion(p).has_value());
}

TEST(ConjugateGenerator, MatchesSubstitution) {
  std::mt19937_64 rng(45);
  for (int k = 0; k < 200; ++k) {
    const int n = pick(rng, 2, 4);
    const int i = pick(rng, 0, n - 1);
    const int j = (i + pick(rng, 1, n - 1)) % n;
    const int eps = testing::random_sign(rng);
    const Word w = random_word(rng, n, pick(rng, 0, 10));
    Word substituted;
    for (const Letter& l : w) {
      if (l.gen == i) {
        substituted = concat({substituted, power(j, eps), Word{l}, power(j, -eps)});
      } else {
        substituted.push_back(l);
      }
    }
    EXPECT_EQ(conjugate_generator(expand(w, n), i, j, eps), expand(substituted, n));
  }
}

PeripheralSystem system_of(std::initializer_list<const char*> words) {
  PeripheralSystem p;
  p.n = static_cast<int>(words.size());
  for (const char* w : words) {
    p.meridians.push_back(static_cast<int>(p.longitudes.size()));
    p.longitudes.push_back(parse_word(w));
  }
  return p;
}

TEST(Milnor, HopfLinkingNumber) {
  const MilnorTable t = milnor_table(system_of({"m2", "m1"}), 2);
  ASSERT_EQ(t.entries.size(), 2u);
  EXPECT_EQ(t.find({1}, 0)->mubar, Integer(1));
  EXPECT_EQ(t.find({0}, 1)->mubar, Integer(1));
  EXPECT_EQ(milnor_table(system_of({"m2^-1", "m1^-1"}), 2).find({1}, 0)->mubar, Integer(-1));
}

TEST(Milnor, ResidueModuloShorterInvariants) {
  // Linking numbers 2 give Delta(1,2;3) = 2, so mu = 3 leaves residue 1.
  const PeripheralSystem p =
      system_of({"m2 m2", "m1 m1", "m1 m2 m1^-1 m2^-1 m1 m2 m1^-1 m2^-1 m1 m2 m1^-1 m2^-1"});
  const MilnorTable t = milnor_table(p, 3);
  const MilnorEntry* e = t.find({0, 1}, 2);
  ASSERT_NE(e, nullptr);
  EXPECT_EQ(e->mu, Integer(3));
  EXPECT_EQ(e->delta, Integer(2));
  EXPECT_EQ(e->mubar, Integer(1));
  const MilnorTable raw = milnor_table(p, 3, ResidueMode::raw);
  EXPECT_EQ(raw.find({0, 1}, 2)->mubar, Integer(3));
}

TEST(Milnor, BorromeanTripleLinking) {
  const GaussDiagram d = from_braid_closure(parse_braid_word(3, "s1 s2^-1 s1 s2^-1 s1 s2^-1"));
  const MilnorTable t = diagram_milnor_table(d, 3);
  for (const MilnorEntry& e : t.entries) {
    if (e.length() == 2) {
      EXPECT_TRUE(e.mubar.is_zero());
    }
  }
  EXPECT_EQ(t.find({0, 1}, 2)->mubar.abs(), Integer(1));
  // Antisymmetry and cyclic symmetry of the triple invariant.
  EXPECT_EQ(t.find({1, 0}, 2)->mubar, -t.find({0, 1}, 2)->mubar);
  EXPECT_EQ(t.find({1, 2}, 0)->mubar, t.find({0, 1}, 2)->mubar);
}

TEST(Milnor, TableOrderAndErrors) {
  const MilnorTable t = milnor_table(system_of({"1", "1", "1"}), 3);
  for (std::size_t k = 1; k < t.entries.size(); ++k) EXPECT_LE(t.entries[k - 1].length(), t.entries[k].length());
  EXPECT_EQ(t.entries.size(), 6u + 6u);
  EXPECT_THROW(milnor_table(system_of({"1", "1"}), 3), std::out_of_range);
  EXPECT_THROW(tables_equal(t, milnor_table(system_of({"1", "1"}), 2)), std::invalid_argument);
}

}  // namespace
}  // namespace weldkit
