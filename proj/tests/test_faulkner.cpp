#include <gtest/gtest.h>

#include "ssr/faulkner.hpp"
#include "ssr/registry.hpp"
#include "support.hpp"

using namespace ssr;
using ssr::test::fp;

namespace {
const Rational kQ(0);

template <class K>
bool all_pass(const TernaryAxiomReport& r) {
  return r.axioms.ok() && r.axioms.items.size() == 8;
}

bool axiom(const TernaryAxiomReport& r, const std::string& name) {
  for (const auto& [k, v] : r.axioms.items)
    if (k == name) return v;
  ADD_FAILURE() << "no axiom " << name;
  return false;
}
}  // namespace

TEST(Ternary, CubicsPassAllAxioms) {
  const auto t = ternary_from_ssr(binary_cubics(kQ));
  const auto r = verify_ternary_axioms(t);
  EXPECT_TRUE(r.exhaustive);
  EXPECT_TRUE(all_pass<Rational>(r)) << r.axioms.first_failure();
  EXPECT_TRUE(r.t_equals_b());
}

TEST(Ternary, TautologicalFormula) {
  const auto s = tautological(kQ, 2);
  const auto t = ternary_from_ssr(s);
  Rng rng(1);
  for (int i = 0; i < 100; ++i) {
    const auto x = random_vector(rng, 4, kQ), y = random_vector(rng, 4, kQ), z = random_vector(rng, 4, kQ);
    const Vec<Rational> expect =
        Rational(1, 2) * s.omega(x, y) * z - Rational(1, 2) * (s.omega(x, z) * y + s.omega(y, z) * x);
    EXPECT_EQ(t(z, x, y), expect);
  }
  EXPECT_TRUE(is_zero(t(s.zero_vector(), s.zero_vector(), s.zero_vector())));
  EXPECT_TRUE(all_pass<Rational>(verify_ternary_axioms(t)));
}

TEST(Ternary, SampledOnLargerSpaces) {
  for (const char* name : {"ThreeForms6", "PrimitiveThreeForms6"}) {
    const auto t = ternary_from_ssr(make_ssr(ConstructionId::parse(name), fp(0, 7)));
    const auto r = verify_ternary_axioms(t, {6, 100, 2});
    EXPECT_FALSE(r.exhaustive);
    EXPECT_TRUE(all_pass<ModP>(r)) << name << ": " << r.axioms.first_failure();
  }
}

TEST(Ternary, PerturbedProductBreaksT4) {
  auto t = ternary_from_ssr(binary_cubics(kQ));
  t.table[0][1] += Rational(1);
  const auto r = verify_ternary_axioms(t);
  EXPECT_FALSE(axiom(r, "T4"));
  EXPECT_TRUE(r.t_equals_b());
}

TEST(Ternary, ZeroProductBreaksT1) {
  auto t = ternary_from_ssr(binary_cubics(kQ));
  for (auto& v : t.table) v = zeros(4, kQ);
  const auto r = verify_ternary_axioms(t);
  EXPECT_FALSE(axiom(r, "T1"));
  EXPECT_TRUE(r.t_equals_b());
}

TEST(Lie, DimensionsOverF7) {
  struct Case {
    ConstructionId id;
    std::size_t dim;
  };
  std::vector<Case> cases{{ConstructionId::parse("BinaryCubics"), 14},
                          {ConstructionId::parse("ThreeForms6"), 78},
                          {ConstructionId::parse("PrimitiveThreeForms6"), 52},
                          {ConstructionId::parse("HalfSpinor12"), 133},
                          {ConstructionId::parse("JCommutant", {{"n", "2"}, {"lambda_j", "1"}}), 15},
                          {ConstructionId::parse("HomEF", {{"g", "1,-1,1"}}), 21}};
  for (std::size_t n = 1; n <= 3; ++n)
    cases.push_back({ConstructionId::parse("Tautological", {{"n", std::to_string(n)}}), (n + 1) * (2 * n + 3)});
  for (const auto& c : cases) {
    const auto s = make_ssr(c.id, fp(0, 7));
    const auto g = build_lie_algebra(s);
    EXPECT_EQ(g.dim(), c.dim) << c.id.name();
    EXPECT_EQ(g.calibration.first, fp(1, 7)) << c.id.name();
    EXPECT_EQ(g.calibration.second, fp(1, 7).lift(1, 2)) << c.id.name();
    const auto j = check_jacobi(g);
    EXPECT_TRUE(j.ok) << c.id.name();
    const auto gr = grading_report(g);
    EXPECT_TRUE(gr.ok()) << c.id.name();
    EXPECT_EQ(gr.dims.at(1), s.dim()) << c.id.name();
    EXPECT_EQ(gr.dims.at(0), s.m_dim() + 1) << c.id.name();
    EXPECT_TRUE(simplicity_check(g, s)) << c.id.name();
  }
}

TEST(Lie, CubicsOverRationalsExhaustive) {
  const auto s = binary_cubics(kQ);
  const auto g = build_lie_algebra(s);
  EXPECT_EQ(g.dim(), 14u);
  EXPECT_EQ(g.calibration, (std::pair<Rational, Rational>{Rational(1), Rational(1, 2)}));
  const auto j = check_jacobi(g);
  EXPECT_TRUE(j.ok);
  EXPECT_EQ(j.triples, 14u * 13u * 12u / 6u);
  const auto gr = grading_report(g);
  EXPECT_EQ(gr.dims, (std::map<int, std::size_t>{{-2, 1}, {-1, 4}, {0, 4}, {1, 4}, {2, 1}}));
}

TEST(Lie, WrongCalibrationBreaksJacobi) {
  const auto s = binary_cubics(kQ);
  const auto msc = m_structure_constants(s);
  ASSERT_TRUE(msc.has_value());
  const auto g = assemble_lie_algebra(s, *msc, Rational(1), Rational(1));
  EXPECT_FALSE(check_jacobi(g).ok);
}

TEST(Lie, SimplicityTestsAgree) {
  for (const auto& id : test::small_instances()) {
    const auto s = make_ssr(id, fp(0, 11));
    const auto g = build_lie_algebra(s);
    const auto r = simplicity_report(g, s);
    EXPECT_EQ(r.by_m_mu, r.by_ideals) << id.name();
    EXPECT_TRUE(r.simple()) << id.name();
  }
}

TEST(Lie, RecoveryRoundTrip) {
  for (const auto& id : test::small_instances()) {
    const auto s = make_ssr(id, kQ);
    const auto g = build_lie_algebra(s);
    const auto r = recover_ssr(g, &s);
    EXPECT_TRUE(r.verified) << id.name();
    EXPECT_TRUE(r.m_action_equal) << id.name();
    ASSERT_TRUE(r.omega_factor.has_value()) << id.name();
    ASSERT_TRUE(r.bmu_factor.has_value()) << id.name();
    EXPECT_EQ(*r.omega_factor, Rational(1)) << id.name();
    EXPECT_EQ(*r.bmu_factor, Rational(1)) << id.name();
    const auto& d = r.data;
    EXPECT_EQ(d.omega.transpose(), -d.omega) << id.name();
    EXPECT_EQ(rank(d.omega), d.omega.rows()) << id.name();
    for (std::size_t i = 0; i < d.bmu.size(); ++i)
      for (std::size_t k = 0; k < d.bmu.size(); ++k) EXPECT_EQ(d.bmu[i][k], d.bmu[k][i]) << id.name();
  }
}
