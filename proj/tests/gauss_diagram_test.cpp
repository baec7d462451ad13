#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "support/generators.hpp"
#include "weldkit/gauss_diagram.hpp"
#include "weldkit/json_io.hpp"

namespace weldkit {
namespace {

TEST(GaussCode, ParsesPositiveHopf) {
  const GaussDiagram d = parse_gauss_code("t1 h2+ / h1+ t2");
  ASSERT_EQ(d.n(), 2);
  ASSERT_EQ(d.arrow_count(), 2);
  EXPECT_EQ(d.arrow(1).sign, 1);
  EXPECT_EQ(d.arrow(1).tail_circle, 0);
  EXPECT_EQ(d.arrow(1).head_circle, 1);
  EXPECT_EQ(d.arrow(2).tail_circle, 1);
  EXPECT_EQ(d.arrow(2).head_circle, 0);
}

TEST(GaussCode, EmptyCirclesAndKinks) {
  const GaussDiagram unlink = parse_gauss_code("/");
  EXPECT_EQ(unlink.n(), 2);
  EXPECT_EQ(unlink.arrow_count(), 0);
  EXPECT_EQ(serialize_gauss_code(unlink), "/");

  const GaussDiagram kink = parse_gauss_code("t1 h1+");
  EXPECT_EQ(kink.n(), 1);
  EXPECT_TRUE(kink.arrow(1).is_self());
  EXPECT_EQ(serialize_gauss_code(kink), "t1 h1+");
}

TEST(GaussCode, ArbitraryIdsAreRenumbered) {
  const GaussDiagram d = parse_gauss_code("t7 h30- / h7+ t30");
  EXPECT_EQ(serialize_gauss_code(d), "t1 h2- / h1+ t2");
}

TEST(GaussCode, RejectsMalformedInput) {
  EXPECT_THROW(parse_gauss_code("t1 h2+"), ParseError);
  EXPECT_THROW(parse_gauss_code("t1 t1 h1+"), ParseError);
  EXPECT_THROW(parse_gauss_code("t1 h1+ h1-"), ParseError);
  EXPECT_THROW(parse_gauss_code("t1 h1"), ParseError);
  try {
    parse_gauss_code("t1 x1 h1+");
    FAIL() << "no error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 3u);
  }
}

TEST(GaussCode, RoundTripsRandomDiagrams) {
  for (const GaussDiagram& d : testing::diagram_corpus(11, 300)) {
    const std::string code = serialize_gauss_code(d);
    const GaussDiagram back = parse_gauss_code(code);
    EXPECT_EQ(canonical_key(back), canonical_key(d)) << code;
    EXPECT_EQ(serialize_gauss_code(back), code);
  }
}

TEST(GaussCode, JsonRoundTrip) {
  for (const GaussDiagram& d : testing::diagram_corpus(12, 100)) {
    const GaussDiagram back = json::diagram_from_json(json::to_json(d));
    EXPECT_EQ(back, d);
  }
}

TEST(GaussCode, JsonRejectsInconsistentCircles) {
  auto j = json::to_json(parse_gauss_code("t1 h2+ / h1+ t2"));
  j["arrows"][0]["tail_circle"] = 2;
  EXPECT_THROW(json::diagram_from_json(j), DiagramError);
}

TEST(BraidClosure, Hopf) {
  EXPECT_EQ(serialize_gauss_code(from_braid_closure(parse_braid_word(2, "s1 s1"))), "t1 h2+ / h1+ t2");
  const GaussDiagram negative = from_braid_closure(parse_braid_word(2, "s1^-1 s1^-1"));
  EXPECT_EQ(canonical_key(negative), canonical_key(parse_gauss_code("t1 h2- / h1- t2")));
}

TEST(BraidClosure, ComponentsFollowPermutationCycles) {
  EXPECT_EQ(serialize_gauss_code(from_braid_closure(parse_braid_word(3, ""))), "/ /");
  const GaussDiagram knot = from_braid_closure(parse_braid_word(2, "s1 s1 s1"));
  EXPECT_EQ(knot.n(), 1);
  EXPECT_EQ(knot.arrow_count(), 3);
  EXPECT_EQ(from_braid_closure(parse_braid_word(4, "s1 s3")).n(), 2);
  EXPECT_EQ(from_braid_closure(parse_braid_word(3, "s1 s2 s1 s2^-1 s1^-1")).n(), 2);
}

TEST(BraidClosure, RejectsOutOfRangeGenerators) {
  EXPECT_THROW(parse_braid_word(3, "s3"), ParseError);
  EXPECT_THROW(parse_braid_word(3, "s0"), ParseError);
  EXPECT_EQ(format_braid_word(parse_braid_word(3, "s1^2 s2^-1")), "s1 s1 s2^-1");
}

TEST(Sortedness, Examples) {
  EXPECT_TRUE(is_sorted(parse_gauss_code("t1 h2+ / t2 h1+")));
  EXPECT_FALSE(is_sorted(parse_gauss_code("t1 h2+ t3 h1+ / t2 h3+")));
  EXPECT_TRUE(is_sorted(parse_gauss_code("/ /")));
  EXPECT_TRUE(is_sorted(parse_gauss_code("h2+ t1 / t2 h1+")));
  EXPECT_FALSE(is_sorted_normalized(parse_gauss_code("h2+ t1 / t2 h1+")));
}

TEST(RandomDiagram, RespectsRequestedShape) {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 50; ++k) {
    const GaussDiagram d = random_diagram(rng, 3, 7);
    EXPECT_EQ(d.n(), 3);
    EXPECT_EQ(d.arrow_count(), 7);
    EXPECT_EQ(d, d.renumbered_by_appearance());
  }
}

// Brute-force key: minimum over arrow relabelings and basepoint rotations.
std::vector<int> oracle_key(const GaussDiagram& d) {
  const int m = d.arrow_count();
  std::vector<int> perm(m);
  std::iota(perm.begin(), perm.end(), 1);
  std::vector<int> best;
  do {
    std::vector<std::size_t> rot(d.n(), 0);
    while (true) {
      std::vector<int> key{d.n()};
      for (int c = 0; c < d.n(); ++c) {
        const auto& seq = d.circle(c);
        key.push_back(-1);
        for (std::size_t k = 0; k < seq.size(); ++k) {
          const EndpointRef& e = seq[(k + rot[c]) % seq.size()];
          const int id = perm[e.arrow - 1];
          key.push_back(e.role == Role::tail ? 4 * id : 4 * id + 2 + (d.arrow(e.arrow).sign > 0 ? 1 : 0));
        }
      }
      if (best.empty() || key < best) best = key;
      int c = 0;
      while (c < d.n() && ++rot[c] >= std::max<std::size_t>(d.circle(c).size(), 1)) rot[c++] = 0;
      if (c == d.n()) break;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

// All diagrams with n circles and m arrows, endpoints in every order.
std::vector<GaussDiagram> all_diagrams(int n, int m) {
  std::vector<EndpointRef> ends;
  for (int a = 1; a <= m; ++a) {
    ends.push_back({a, Role::tail});
    ends.push_back({a, Role::head});
  }
  std::vector<GaussDiagram> out;
  std::vector<int> order(2 * m);
  std::iota(order.begin(), order.end(), 0);
  do {
    // Cut points split the sequence into n circles.
    std::vector<int> cuts(n - 1, 0);
    while (true) {
      if (std::is_sorted(cuts.begin(), cuts.end())) {
        std::vector<std::vector<EndpointRef>> circles(n);
        int c = 0;
        for (int k = 0; k <= 2 * m; ++k) {
          while (c < n - 1 && cuts[c] == k) ++c;
          if (k < 2 * m) circles[c].push_back(ends[order[k]]);
        }
        for (int s = 0; s < (1 << m); ++s) {
          std::vector<int> signs;
          for (int a = 0; a < m; ++a) signs.push_back((s >> a) & 1 ? -1 : 1);
          out.emplace_back(n, signs, circles);
        }
      }
      int k = 0;
      while (k < n - 1 && ++cuts[k] > 2 * m) cuts[k++] = 0;
      if (k == n - 1) break;
    }
  } while (std::next_permutation(order.begin(), order.end()));
  return out;
}

TEST(CanonicalKey, MatchesBruteForceOnSmallDiagrams) {
  for (const auto& [n, m] : std::vector<std::pair<int, int>>{{1, 3}, {2, 2}, {2, 3}, {3, 2}}) {
    std::map<std::string, std::vector<int>> by_key;
    std::map<std::vector<int>, std::string> by_oracle;
    for (const GaussDiagram& d : all_diagrams(n, m)) {
      const std::string key = canonical_key(d);
      const std::vector<int> expected = oracle_key(d);
      auto [it, fresh] = by_key.emplace(key, expected);
      ASSERT_TRUE(fresh || it->second == expected) << "key merges distinct diagrams: " << serialize_gauss_code(d);
      auto [jt, fresh2] = by_oracle.emplace(expected, key);
      ASSERT_TRUE(fresh2 || jt->second == key) << "key splits equal diagrams: " << serialize_gauss_code(d);
    }
    EXPECT_EQ(by_key.size(), by_oracle.size());
  }
}

TEST(CanonicalKey, InvariantUnderRotationAndRenumbering) {
  const GaussDiagram a = parse_gauss_code("t1 h2+ / h1+ t2");
  EXPECT_EQ(canonical_key(a), canonical_key(parse_gauss_code("h2+ t1 / t2 h1+")));
  EXPECT_EQ(canonical_key(a), canonical_key(parse_gauss_code("t2 h1+ / h2+ t1")));
  EXPECT_NE(canonical_key(a), canonical_key(parse_gauss_code("t1 h2- / h1- t2")));
  EXPECT_EQ(canonical_key(a), canonical_key(parse_gauss_code("h1+ t2 / t1 h2+")));
  EXPECT_NE(canonical_key(parse_gauss_code("t1 t2 h1+ h2+")), canonical_key(parse_gauss_code("t1 h1+ t2 h2+")));
}

}  // namespace
}  // namespace weldkit
