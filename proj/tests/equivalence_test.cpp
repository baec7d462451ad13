#include <random>

#include <gtest/gtest.h>

#include "support/generators.hpp"
#include "weldkit/equivalence.hpp"
#include "weldkit/json_io.hpp"
#include "weldkit/moves.hpp"

namespace weldkit {
namespace {

using testing::pick;

PeripheralSystem system_of(std::initializer_list<const char*> words) {
  PeripheralSystem p;
  p.n = static_cast<int>(words.size());
  for (const char* w : words) {
    p.meridians.push_back(static_cast<int>(p.longitudes.size()));
    p.longitudes.push_back(parse_word(w));
    p.self_crossings.push_back(0);
  }
  return p;
}

Certificate empty_certificate(int n) { return Certificate{n, {}, std::vector<Word>(n), std::vector<std::vector<CosetInsertion>>(n)}; }

TEST(VerifyCertificate, HandExamples) {
  const PeripheralSystem a = system_of({"m2 m3 m2^-1 m3^-1", "m3", "m2^-1"});
  EXPECT_TRUE(verify_certificate(a, a, empty_certificate(3)));

  // lambda_1 conjugated by mu_1, undone by the conjugator mu_1.
  PeripheralSystem b = a;
  b.longitudes[0] = free_reduce(concat({power(0, 1), a.longitudes[0], power(0, -1)}));
  Certificate c = empty_certificate(3);
  c.conjugators[0] = power(0, 1);
  EXPECT_TRUE(verify_certificate(a, b, c));
  EXPECT_FALSE(verify_certificate(a, b, empty_certificate(3)));

  // lambda_1 g mu_1 g^-1 with g = mu_2 mu_3^-1: B carries the extra factor,
  // so the certificate inserts its inverse.
  const Word g = parse_word("m2 m3^-1");
  b = a;
  b.longitudes[0] = free_reduce(concat({a.longitudes[0], g, power(0, 1), inverse(g)}));
  c = empty_certificate(3);
  EXPECT_FALSE(verify_certificate(a, b, c));
  c.cosets[0].push_back({g, -1});
  EXPECT_TRUE(verify_certificate(a, b, c));
}

TEST(VerifyCertificate, RejectsMalformedCertificates) {
  const PeripheralSystem a = system_of({"m2", "m1"});
  Certificate c = empty_certificate(2);
  c.steps.push_back({CertStep::Kind::conjugation, 0, 0, 1, {}});
  EXPECT_THROW(verify_certificate(a, a, c), CertificateError);
  c = empty_certificate(2);
  c.conjugators[0] = power(1, 1);  // does not commute with mu_1
  EXPECT_FALSE(verify_certificate(a, a, c));
  c = empty_certificate(2);
  c.cosets[1].push_back({power(4, 1), 1});
  EXPECT_THROW(verify_certificate(a, a, c), CertificateError);
}

TEST(CertSteps, InverseUndoes) {
  std::mt19937_64 rng(51);
  for (int k = 0; k < 300; ++k) {
    const int n = pick(rng, 2, 4);
    const PeripheralSystem a = testing::random_system(rng, n, 8);
    const int i = pick(rng, 0, n - 1);
    const CertStep s{pick(rng, 0, 1) ? CertStep::Kind::conjugation : CertStep::Kind::relator, i,
                     (i + pick(rng, 1, n - 1)) % n, testing::random_sign(rng),
                     free_reduce(testing::random_word(rng, n, pick(rng, 0, 2)))};
    std::vector<Word> w = a.longitudes;
    apply_cert_step(w, s);
    // Each step leaves the residue table alone.
    PeripheralSystem moved = a;
    moved.longitudes = w;
    EXPECT_FALSE(refute(a, moved, n).has_value());
    apply_cert_step(w, inverse_step(s));
    for (int c = 0; c < n; ++c) EXPECT_TRUE(rf_equal(w[c], a.longitudes[c], n));
  }
}

TEST(Refute, HopfSigns) {
  const auto w = refute(system_of({"m2", "m1"}), system_of({"m2^-1", "m1^-1"}), 2);
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(w->a.indices, std::vector<int>{1});
  EXPECT_EQ(w->a.target, 0);
  EXPECT_EQ(w->a.mubar, Integer(1));
  EXPECT_EQ(w->b.mubar, Integer(-1));
  EXPECT_FALSE(refute(system_of({"m2", "m1"}), system_of({"m2", "m1"}), 2).has_value());
  const auto unlink = refute(system_of({"1", "1"}), system_of({"m2", "m1"}), 2);
  ASSERT_TRUE(unlink.has_value());
  EXPECT_EQ(unlink->a.length(), 2);
}

TEST(Search, HopfIsDistinct) {
  const Verdict v = sv_equivalent(from_braid_closure(parse_braid_word(2, "s1 s1")),
                                  from_braid_closure(parse_braid_word(2, "s1^-1 s1^-1")));
  EXPECT_EQ(v.kind, Verdict::Kind::distinct);
  ASSERT_TRUE(v.witness.has_value());
  EXPECT_EQ(v.witness->a.mubar, Integer(1));
  EXPECT_EQ(v.witness->b.mubar, Integer(-1));
  EXPECT_EQ(sv_equivalent(parse_gauss_code("t1 h2+ / t2 h1+"), parse_gauss_code("/")).kind, Verdict::Kind::distinct);
  EXPECT_THROW(sv_equivalent(parse_gauss_code("/"), parse_gauss_code("")), std::invalid_argument);
}

TEST(Search, RecoversRandomCertificates) {
  std::mt19937_64 rng(52);
  for (int k = 0; k < 40; ++k) {
    const int n = pick(rng, 2, 4);
    const PeripheralSystem a = testing::random_system(rng, n, 6);
    const PeripheralSystem b = testing::perturb(rng, a, 3);
    const Verdict v = search_certificate(a, b);
    ASSERT_EQ(v.kind, Verdict::Kind::equivalent) << v.reason;
    EXPECT_TRUE(verify_certificate(a, b, *v.certificate));
    // Certificates survive serialization.
    const Certificate back = json::certificate_from_json(json::to_json(*v.certificate));
    EXPECT_TRUE(verify_certificate(a, b, back));
  }
}

TEST(Search, VerdictDoesNotDependOnThreads) {
  std::mt19937_64 rng(53);
  for (int k = 0; k < 10; ++k) {
    const PeripheralSystem a = testing::random_system(rng, 3, 6);
    const PeripheralSystem b = testing::perturb(rng, a, 3);
    SearchBounds one, four;
    one.threads = 1;
    four.threads = 4;
    const Verdict x = search_certificate(a, b, one), y = search_certificate(a, b, four);
    EXPECT_EQ(x.kind, y.kind);
    EXPECT_EQ(json::to_json(*x.certificate), json::to_json(*y.certificate));
  }
}

TEST(Search, UnknownWhenBoundsAreTooSmall) {
  const PeripheralSystem a = system_of({"m2 m3", "m3^-1", "m1 m2"});
  PeripheralSystem b = a;
  apply_cert_step(b.longitudes, {CertStep::Kind::conjugation, 0, 1, 1, {}});
  apply_cert_step(b.longitudes, {CertStep::Kind::conjugation, 2, 0, -1, {}});
  apply_cert_step(b.longitudes, {CertStep::Kind::relator, 1, 2, 1, parse_word("m1")});
  SearchBounds tiny;
  tiny.depth = 1;
  tiny.conj_len = 1;
  tiny.coset_max = 0;
  const Verdict v = search_certificate(a, b, tiny);
  EXPECT_EQ(v.kind, Verdict::Kind::unknown);
  // Larger bounds do not lose an answer found with smaller ones.
  const Verdict full = search_certificate(a, b);
  EXPECT_EQ(full.kind, Verdict::Kind::equivalent);
  SearchBounds wide;
  wide.depth = 80;
  wide.max_states = 40000;
  EXPECT_EQ(search_certificate(a, b, wide).kind, Verdict::Kind::equivalent);
}

TEST(SvEquivalent, RandomMovesAndSvDeletion) {
  std::mt19937_64 rng(54);
  const std::vector<MoveKind> kinds = {MoveKind::r1_add, MoveKind::r1_del, MoveKind::r2_add, MoveKind::r2_del,
                                       MoveKind::r3,     MoveKind::oc,     MoveKind::sv_del, MoveKind::sv_add};
  int equivalent = 0;
  for (const GaussDiagram& d : testing::diagram_corpus(54, 30)) {
    GaussDiagram e = d;
    for (int s = 0; s < 5; ++s) {
      const auto moves = enumerate_moves(e, kinds);
      if (moves.empty()) break;
      e = apply_move(e, moves[pick(rng, 0, static_cast<int>(moves.size()) - 1)]);
    }
    const Verdict v = sv_equivalent(d, e);
    EXPECT_NE(v.kind, Verdict::Kind::distinct) << serialize_gauss_code(d) << " vs " << serialize_gauss_code(e);
    equivalent += v.kind == Verdict::Kind::equivalent;
    if (v.certificate) {
      EXPECT_TRUE(verify_certificate(sorted_longitudes(sort_diagram(d).sorted), sorted_longitudes(sort_diagram(e).sorted),
                                     *v.certificate));
    }
    for (const Arrow& a : d.arrows()) {
      if (!a.is_self()) continue;
      EXPECT_EQ(sv_equivalent(d, apply_move(d, {MoveKind::sv_del, {a.id}})).kind, Verdict::Kind::equivalent);
    }
  }
  EXPECT_GE(equivalent, 25);
}

}  // namespace
}  // namespace weldkit
