#include <gtest/gtest.h>

#include "support.hpp"

using namespace formring;
using fr_test::ideal_of;
using fr_test::poly_of;

namespace {

const std::vector<std::string> kXYZ{"x", "y", "z"};
const std::vector<std::string> kXY{"x", "y"};

CohomologyTable synthetic(std::vector<std::tuple<int, int, std::size_t>> e) { return CohomologyTable::synthetic(e); }

}  // namespace

TEST(DiagonalCheck, FamilyConeHasNoAdmissibleK) {
  GradedQuotientRing G(ideal_of(kXYZ, fr_test::family_g(3)));
  LocalCohomology lc(G, {-4, 11, 12, 2});
  auto r = check_thm12_hypothesis(lc.table(1), 1);
  EXPECT_EQ(r.truth, Truth::no);
  EXPECT_TRUE(r.admissible.empty());
  EXPECT_EQ(r.admissible.to_string(), "[]");
  ASSERT_EQ(r.violating.size(), 2u);
  EXPECT_EQ(r.violating[0].position, 1);
  EXPECT_EQ(r.violating[1].position, 3);
}

TEST(DiagonalCheck, SingleEntryAdmitsTwoNeighbours) {
  for (int k0 : {-2, 0, 4}) {
    auto r = check_thm12_hypothesis(synthetic({{0, k0, 3}}), 1);
    EXPECT_EQ(r.truth, Truth::yes);
    EXPECT_TRUE(r.admissible.contains(k0));
    EXPECT_TRUE(r.admissible.contains(k0 + 1));
  }
}

TEST(DiagonalCheck, AllZeroIsVacuous) {
  auto r = check_thm12_hypothesis(synthetic({}), 2);
  EXPECT_EQ(r.truth, Truth::yes);
  EXPECT_EQ(r.admissible.to_string(), "all");
  auto tail = check_thm12_hypothesis(synthetic({{2, -3, 1}}), 2);
  EXPECT_EQ(tail.admissible.to_string(), "k >= -1");
}

TEST(DiagonalCheck, TailAboveCandidatesBlocks) {
  // H^0 at position 1 gives {1, 2}; H^1 at position 2 blocks k = 1 only.
  auto r = check_thm12_hypothesis(synthetic({{0, 1, 1}, {1, 1, 1}}), 1);
  EXPECT_EQ(r.admissible.to_string(), "[2]");
  auto none = check_thm12_hypothesis(synthetic({{0, 1, 1}, {1, 5, 1}}), 1);
  EXPECT_EQ(none.truth, Truth::no);
}

TEST(DiagonalCheck, UnstableEntriesAreInconclusive) {
  CohomologyTable t(-2, 2, 1);
  for (int i = 0; i <= 1; ++i)
    for (int n = -2; n <= 2; ++n) t.set(i, n, TableEntry{0, 1, true});
  t.set(0, 0, TableEntry{1, 12, false});
  EXPECT_EQ(check_thm12_hypothesis(t, 1).truth, Truth::inconclusive);
}

TEST(GapCheck, SurfaceTable) {
  auto r = check_thm13_gap(synthetic({{1, 2, 10}, {2, 0, 1}}), 5);
  EXPECT_EQ(r.truth, Truth::no);
  ASSERT_EQ(r.violations.size(), 1u);
  EXPECT_EQ(r.violations[0], (GapViolation{1, 2, 3, 2}));
}

TEST(GapCheck, VacuousAndDistantCases) {
  EXPECT_EQ(check_thm13_gap(synthetic({{1, 4, 2}}), 3).truth, Truth::yes);
  EXPECT_EQ(check_thm13_gap(synthetic({{0, 1, 1}, {1, 2, 1}}), 2).truth, Truth::yes);
}

TEST(GapCheck, FailureIsNotAVerdict) {
  // A gap violation leaves the diagonal check free to pass; nothing here
  // produces a negative surjectivity verdict.
  auto table = synthetic({{1, 2, 10}, {2, 0, 1}});
  EXPECT_EQ(check_thm13_gap(table, 5).truth, Truth::no);
  auto d = check_thm12_hypothesis(table, 5);
  EXPECT_EQ(d.truth, Truth::yes);
  EXPECT_EQ(d.admissible.to_string(), "[3]");
}

TEST(Stuckrad, Verdicts) {
  auto verdict = [](const std::vector<std::string>& vars, const std::string& gens) {
    GradedQuotientRing G(ideal_of(vars, gens));
    LocalCohomology lc(G);
    return stuckrad_test(lc).truth;
  };
  EXPECT_EQ(verdict(kXYZ, fr_test::family_g(3)), Truth::yes);
  EXPECT_EQ(verdict(kXY, "x^2, x*y"), Truth::yes);
  EXPECT_EQ(verdict(kXYZ, "0"), Truth::yes);
  EXPECT_EQ(verdict(kXY, "x^3, x^2*y^2"), Truth::no);
  EXPECT_EQ(verdict(kXYZ, "x*y, x*z"), Truth::no);
}

TEST(QuasiBuchsbaum, Verdicts) {
  GradedQuotientRing G(ideal_of(kXYZ, fr_test::family_g(3)));
  EXPECT_EQ(quasi_buchsbaum_test(LocalCohomology(G)).truth, Truth::yes);

  GradedQuotientRing A(ideal_of({"x"}, "x^3"));
  auto ra = quasi_buchsbaum_test(LocalCohomology(A));
  EXPECT_EQ(ra.dimension, 0);
  EXPECT_EQ(ra.truth, Truth::yes);
  EXPECT_TRUE(ra.rows.empty());
}

TEST(QuasiBuchsbaum, CuspHasWitness) {
  auto I = ideal_of(kXY, "x^3, x^2*y^2");
  GradedQuotientRing G(I);
  LocalCohomology lc(G);
  auto r = quasi_buchsbaum_test(lc);
  EXPECT_EQ(r.truth, Truth::no);
  ASSERT_EQ(r.rows.size(), 1u);
  const auto& w = r.rows[0].witness;
  ASSERT_TRUE(w);
  EXPECT_EQ(w->index, 0);
  EXPECT_EQ(w->degree, 2);
  EXPECT_EQ(w->element, "x^2");
  EXPECT_EQ(w->variable, 1u);
  // Oracle: y * x^2 is not in I, but x^2 * (x,y)^2 is.
  EXPECT_FALSE(normal_form(poly_of(I.ring(), "x^2*y"), I.groebner()).is_zero());
  EXPECT_EQ(annihilating_power(poly_of(I.ring(), "x^2"), I, 5), 2);
}

TEST(LocalH0, Family) {
  auto I = ideal_of(kXYZ, fr_test::family_a(3));
  const auto& R = I.ring();
  auto rep = local_h0_report(I);
  EXPECT_TRUE(rep.socle.contains(poly_of(R, "y^3")));
  EXPECT_FALSE(rep.socle.contains(poly_of(R, "x")));
  EXPECT_TRUE(rep.saturation.contains(poly_of(R, "x")));
  EXPECT_EQ(rep.saturation_exponent, 2);
  EXPECT_FALSE(rep.f0_surjective());
  ASSERT_EQ(rep.witnesses.size(), 1u);
  EXPECT_EQ(rep.witnesses[0], poly_of(R, "x"));
  bool found = false;
  for (const auto& c : rep.certificates)
    if (c.element == poly_of(R, "x")) {
      found = true;
      EXPECT_EQ(c.exponent, 2);
    }
  EXPECT_TRUE(found);
  EXPECT_EQ(rep.length(), 2u);
}

TEST(LocalH0, CohenMacaulayAndArtinian) {
  auto parabola = local_h0_report(ideal_of(kXY, "y - x^2"));
  EXPECT_TRUE(parabola.f0_surjective());
  EXPECT_EQ(parabola.length(), 0u);

  // Socle (x) is strictly inside the saturation (1): f^0 is not onto.
  auto square = local_h0_report(ideal_of({"x"}, "x^2"));
  EXPECT_FALSE(square.f0_surjective());
  EXPECT_EQ(square.socle, ideal_of({"x"}, "x"));
  EXPECT_EQ(square.saturation, ideal_of({"x"}, "1"));
  EXPECT_EQ(square.length(), 2u);
  EXPECT_EQ(square.socle_length(), 1u);

  EXPECT_THROW(local_h0_report(ideal_of(kXY, "1 + x")), DomainError);
}

TEST(LocalH0, HomogeneousInputAgreesWithGSide) {
  for (const auto& c : fr_test::corpus()) {
    auto I = ideal_of(c.vars, c.gens);
    GradedQuotientRing G(I);
    EXPECT_EQ(local_h0_report(I).saturation_dims, h0_via_saturation(G)) << c.name;
  }
}

TEST(LengthCheck, Family) {
  for (int r : {3, 4, 5}) {
    auto rep = corollary41_verdict(ideal_of(kXYZ, fr_test::family_a(r)));
    EXPECT_EQ(rep.length.truth, Truth::yes);
    EXPECT_EQ(rep.length.g_length, 2u);
    EXPECT_EQ(rep.length.a_length, 2u);
  }
}

TEST(DescentVerdict, Family) {
  for (int r : {3, 4, 5}) {
    auto rep = corollary41_verdict(ideal_of(kXYZ, fr_test::family_a(r)));
    EXPECT_EQ(rep.dimension, 1);
    EXPECT_EQ(rep.g_ideal, ideal_of(kXYZ, fr_test::family_g(r)));
    EXPECT_EQ(rep.thm12.truth, Truth::no);
    EXPECT_FALSE(rep.descent_applicable);
    EXPECT_EQ(rep.g_buchsbaum.truth, Truth::yes);
    EXPECT_FALSE(rep.a_h0.f0_surjective());
    EXPECT_EQ(rep.a_buchsbaum, Truth::no);
    EXPECT_EQ(rep.a_buchsbaum_source, "f0_A");
  }
}

TEST(DescentVerdict, HomogeneousCohenMacaulay) {
  auto rep = corollary41_verdict(ideal_of(kXYZ, "x"));
  EXPECT_EQ(rep.thm12.truth, Truth::yes);
  EXPECT_TRUE(rep.descent_applicable);
  EXPECT_EQ(rep.g_buchsbaum.truth, Truth::yes);
  EXPECT_EQ(rep.a_buchsbaum, Truth::yes);
  EXPECT_EQ(rep.a_buchsbaum_source, "descent");
  EXPECT_EQ(rep.h0_length_equal, true);
}

TEST(DescentVerdict, FatPoint) {
  auto rep = corollary41_verdict(ideal_of(kXY, "x^2, x*y"));
  EXPECT_EQ(rep.thm12.admissible.to_string(), "[1, 2]");
  EXPECT_EQ(rep.g_buchsbaum.truth, Truth::yes);
  EXPECT_EQ(rep.a_buchsbaum, Truth::yes);
  EXPECT_EQ(rep.a_buchsbaum_source, "descent");
}

TEST(DescentVerdict, CuspAndParabola) {
  auto cusp = corollary41_verdict(ideal_of(kXY, "x^3, x^2*y^2"));
  EXPECT_EQ(cusp.thm12.admissible.to_string(), "[3]");
  EXPECT_EQ(cusp.g_buchsbaum.truth, Truth::no);
  EXPECT_EQ(cusp.a_buchsbaum, Truth::no);

  auto parabola = corollary41_verdict(ideal_of(kXY, "y - x^2"));
  EXPECT_EQ(parabola.g_ideal, ideal_of(kXY, "y"));
  EXPECT_EQ(parabola.thm12.admissible.to_string(), "k >= 0");
  EXPECT_EQ(parabola.a_buchsbaum, Truth::yes);
}

TEST(DescentVerdict, ArtinianIsVacuouslyBuchsbaum) {
  auto rep = corollary41_verdict(ideal_of({"x"}, "x^3"));
  EXPECT_EQ(rep.dimension, 0);
  EXPECT_EQ(rep.a_buchsbaum, Truth::yes);
}

TEST(SurjectivityConsistency, CorpusConsistency) {
  for (const auto& c : fr_test::corpus()) {
    GradedQuotientRing G(ideal_of(c.vars, c.gens));
    LocalCohomology lc(G);
    auto t = lc.table(std::min<int>(G.krull_dimension(), static_cast<int>(G.nvars())));
    auto res = prop32_consistency(lc, t);
    EXPECT_TRUE(res.violations.empty()) << c.name;
  }
}
