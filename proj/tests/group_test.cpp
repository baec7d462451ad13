#include <random>

#include <gtest/gtest.h>

#include "support/generators.hpp"
#include "weldkit/group.hpp"
#include "weldkit/magnus.hpp"
#include "weldkit/moves.hpp"

namespace weldkit {
namespace {

Abelianization abelianize(const GaussDiagram& d) { return abelianization(wirtinger(d)); }

TEST(Words, FreeReductionAndText) {
  const Word w = parse_word("m1 m2 m2^-1 m1^-1 m3");
  EXPECT_EQ(format_word(free_reduce(w)), "m3");
  EXPECT_EQ(format_word(Word{}), "1");
  EXPECT_EQ(parse_word("1"), Word{});
  EXPECT_EQ(format_word(commutator(parse_word("m1"), parse_word("m2"))), "m1 m2 m1^-1 m2^-1");
  EXPECT_EQ(exponent_sum(parse_word("m1 m2 m1 m1^-1 m1"), 0), 2);
  EXPECT_EQ(word_from_ints(word_to_ints(w)), w);
  EXPECT_THROW(parse_word("m0"), ParseError);
  EXPECT_THROW(parse_word("x1"), ParseError);
}

TEST(Wirtinger, OneGeneratorPerArcOneRelatorPerArrow) {
  for (const GaussDiagram& d : testing::diagram_corpus(31, 100)) {
    const GroupPresentation p = wirtinger(d);
    const ArcLayout arcs(d);
    EXPECT_EQ(static_cast<int>(p.generators.size()), arcs.arc_count());
    EXPECT_EQ(static_cast<int>(p.relators.size()), d.arrow_count());
  }
}

TEST(Abelianization, LinkGroupsHaveFreeRankN) {
  // H_1 of a link complement is Z^n.
  EXPECT_EQ(abelianize(from_braid_closure(parse_braid_word(2, "s1 s1 s1"))), (Abelianization{1, {}}));
  EXPECT_EQ(abelianize(from_braid_closure(parse_braid_word(3, "s1 s2^-1 s1 s2^-1"))), (Abelianization{1, {}}));
  EXPECT_EQ(abelianize(from_braid_closure(parse_braid_word(2, "s1 s1"))), (Abelianization{2, {}}));
  EXPECT_EQ(abelianize(from_braid_closure(parse_braid_word(3, "s1 s2^-1 s1 s2^-1 s1 s2^-1"))), (Abelianization{3, {}}));
  for (const GaussDiagram& d : testing::diagram_corpus(32, 100)) EXPECT_EQ(abelianize(d).free_rank, d.n());
}

TEST(Abelianization, SmithNormalForm) {
  GroupPresentation p;
  p.generators = {"a", "b"};
  p.relators = {parse_word("m1 m1 m2 m2 m2 m2"), parse_word("m1 m1 m1 m1 m2 m2")};
  // [[2, 4], [4, 2]] has invariant factors 2 and 6.
  EXPECT_EQ(abelianization(p), (Abelianization{0, {Integer(2), Integer(6)}}));
  p.relators = {parse_word("m1 m1 m1 m1 m1 m1")};
  EXPECT_EQ(abelianization(p), (Abelianization{1, {Integer(6)}}));
}

TEST(Peripheral, KinkNeedsWritheCorrection) {
  const ArcPeripheralSystem p = peripheral_system(parse_gauss_code("t1 h1+"));
  EXPECT_EQ(p.system.self_crossings, std::vector<int>{1});
  EXPECT_TRUE(p.system.longitudes[0].empty());
}

TEST(Peripheral, HopfLongitudes) {
  const PeripheralSystem p = sorted_longitudes(parse_gauss_code("t1 h2+ / t2 h1+"));
  EXPECT_EQ(format_word(p.longitudes[0]), "m2");
  EXPECT_EQ(format_word(p.longitudes[1]), "m1");
  EXPECT_THROW(sorted_longitudes(parse_gauss_code("t1 h2+ t3 h1+ / t2 h3+")), DiagramError);
  const GroupPresentation r = reduced_presentation(p);
  EXPECT_TRUE(r.reduced_relators);
  ASSERT_EQ(r.relators.size(), 2u);
  EXPECT_EQ(format_word(r.relators[0]), "m1 m2 m1^-1 m2^-1");
}

TEST(Peripheral, BasingMustLieOnTheComponent) {
  const GaussDiagram d = parse_gauss_code("t1 h2+ t3 h1+ / t2 h3+");
  EXPECT_THROW(peripheral_system(d, std::vector<int>{2, 0}), std::invalid_argument);
  EXPECT_NO_THROW(peripheral_system(d, std::vector<int>{1, 2}));
}

// Two routes to the invariants: sorting then reading words, and solving the
// Wirtinger arcs of the unsorted diagram inside the Magnus ring.
TEST(Peripheral, SortedRouteMatchesDiagramRoute) {
  for (const GaussDiagram& d : testing::diagram_corpus(33, 200)) {
    const PeripheralSystem p = sorted_longitudes(sort_diagram(d).sorted);
    EXPECT_TRUE(tables_equal(milnor_table(p, d.n()), diagram_milnor_table(d, d.n()))) << serialize_gauss_code(d);
  }
}

TEST(SortedFromLongitudes, RoundTrip) {
  std::mt19937_64 rng(34);
  for (int k = 0; k < 200; ++k) {
    const PeripheralSystem p = testing::random_system(rng, testing::pick(rng, 1, 5), 10);
    const GaussDiagram d = build_sorted_from_longitudes(p.n, p.longitudes);
    EXPECT_TRUE(is_sorted_normalized(d));
    EXPECT_EQ(sorted_longitudes(d).longitudes, p.longitudes);
  }
  EXPECT_THROW(build_sorted_from_longitudes(2, {parse_word("m1 m2"), Word{}}), std::invalid_argument);
  EXPECT_EQ(serialize_gauss_code(build_sorted_from_longitudes(2, {parse_word("m2"), parse_word("m1")})), "t1 h2+ / t2 h1+");
}

}  // namespace
}  // namespace weldkit
