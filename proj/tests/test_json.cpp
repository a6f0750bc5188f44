#include <gtest/gtest.h>

#include "ssr/json.hpp"
#include "ssr/registry.hpp"
#include "support.hpp"

using namespace ssr;
using ssr::json::Json;
using ssr::test::fp;
using ssr::test::vec;

namespace {
const Rational kQ(0);
}

TEST(Json, Scalars) {
  EXPECT_EQ(json::encode(Rational(-3, 4)), Json("-3/4"));
  EXPECT_EQ(json::decode(Json("6/8"), kQ), Rational(3, 4));
  EXPECT_EQ(json::decode(Json(5), kQ), Rational(5));
  EXPECT_THROW(json::decode(Json(0.5), kQ), ParseError);
  EXPECT_EQ(json::encode(fp(3, 7)), (Json{{"mod", 7}, {"val", 3}}));
  EXPECT_EQ(json::decode(Json{{"mod", 7}, {"val", 10}}, fp(0, 7)), fp(3, 7));
  EXPECT_EQ(json::decode(Json("1/2"), fp(0, 7)), fp(4, 7));
  EXPECT_THROW(json::decode(Json{{"mod", 5}, {"val", 1}}, fp(0, 7)), FieldMismatch);
  const Quad<Rational> z(Rational(1), Rational(-2), Rational(-1));
  EXPECT_EQ(json::decode(json::encode(z), z), z);
  EXPECT_THROW(json::decode(json::encode(Quad<Rational>(Rational(1), Rational(1), Rational(2))), z), FieldMismatch);
}

TEST(Json, VectorsAndMatrices) {
  Rng rng(1);
  for (int i = 0; i < 50; ++i) {
    const auto v = random_vector(rng, 5, kQ);
    EXPECT_EQ(json::decode_vec(json::encode(v), kQ), v);
    Matrix<ModP> m = Matrix<ModP>::zero(2, 3, fp(0, 11));
    for (std::size_t r = 0; r < 2; ++r)
      for (std::size_t c = 0; c < 3; ++c) m(r, c) = random_scalar(rng, fp(0, 11));
    EXPECT_EQ(json::decode_matrix(json::encode(m), fp(0, 11)), m);
  }
  EXPECT_THROW(json::decode_matrix(Json{{"rows", 2}, {"cols", 2}, {"entries", {"1"}}}, kQ), DimensionMismatch);
  EXPECT_THROW(json::decode_vec(Json("1"), kQ), ParseError);
}

TEST(Json, SsrDataRoundTrip) {
  for (const auto& id : test::small_instances()) {
    for (const bool prime : {false, true}) {
      if (prime) {
        const auto s = make_ssr(id, fp(0, 13));
        const auto d = json::decode_ssr(json::encode(s.data()), fp(0, 13));
        EXPECT_EQ(d.omega, s.data().omega);
        EXPECT_EQ(d.m_basis, s.data().m_basis);
        EXPECT_EQ(d.bmu, s.data().bmu);
        EXPECT_EQ(d.notes, s.data().notes);
      } else {
        const auto s = make_ssr(id, kQ);
        const Json j = json::encode(s.data());
        EXPECT_EQ(j["schema_version"], json::kSchemaVersion);
        EXPECT_EQ(j["field"], "Q");
        const auto d = json::decode_ssr(j, kQ);
        EXPECT_EQ(d.construction, s.construction());
        EXPECT_EQ(d.bmu, s.data().bmu);
        EXPECT_TRUE(verify_ssr(Ssr<Rational>(d)).ok());
      }
    }
  }
}

TEST(Json, SsrDataErrors) {
  const Json j = json::encode(binary_cubics(kQ).data());
  EXPECT_THROW(json::decode_ssr(j, fp(0, 7)), FieldMismatch);
  Json bad = j;
  bad["schema_version"] = 99;
  EXPECT_THROW(json::decode_ssr(bad, kQ), ParseError);
  bad = j;
  bad.erase("bmu");
  EXPECT_THROW(json::decode_ssr(bad, kQ), ParseError);
  bad = j;
  bad["bmu"][0].erase(0);
  EXPECT_THROW(json::decode_ssr(bad, kQ), DimensionMismatch);
  bad = j;
  bad["m_basis"][0]["rows"] = 3;
  bad["m_basis"][0]["cols"] = 3;
  EXPECT_THROW(json::decode_ssr(bad, kQ), DimensionMismatch);
}

TEST(Json, HatPointsAndTorusElements) {
  const HatPoint<Rational> p{vec(kQ, {1, 0, 0, 1}), Rational(3)};
  const auto q = json::decode_hat(json::encode(p), kQ);
  EXPECT_EQ(q, p);
  const auto u = json::decode_torus(Json::array({"1/2", "3"}), kQ);
  EXPECT_EQ(u.a, Rational(1, 2));
  EXPECT_EQ(u.b, Rational(3));
  const auto w = json::decode_torus(json::encode(TorusElement<Rational>{Rational(2), Rational(-1)}), kQ);
  EXPECT_EQ(w.a, Rational(2));
  EXPECT_EQ(w.b, Rational(-1));
  EXPECT_THROW(json::decode_hat(Json{{"P", {"1"}}}, kQ), ParseError);
  EXPECT_THROW(json::decode_torus(Json::array({"1"}), kQ), ParseError);
}
