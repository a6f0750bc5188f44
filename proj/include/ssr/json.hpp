#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "ssr/charts.hpp"
#include "ssr/decomposition.hpp"
#include "ssr/faulkner.hpp"
#include "ssr/verify.hpp"

namespace ssr::json {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

// ---------------------------------------------------------------------------
// scalars: rationals as "n/d" (or "n"), F_p as {"mod","val"}, A_lambda as {"lambda","re","im"}

inline Json encode(const Rational& x) { return x.to_string(); }
inline Json encode(const ModP& x) { return Json{{"mod", x.modulus()}, {"val", x.value()}}; }
template <class K>
Json encode(const Quad<K>& x) {
  return Json{{"lambda", encode(x.lambda())}, {"re", encode(x.re())}, {"im", encode(x.im())}};
}

inline Rational decode_rational(const Json& j) {
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  if (j.is_number_integer()) return Rational::parse(j.dump());
  throw ParseError("expected a rational, got " + j.dump());
}

inline Rational decode(const Json& j, const Rational&) { return decode_rational(j); }

inline ModP decode(const Json& j, const ModP& like) {
  if (j.is_object()) {
    if (!j.contains("mod") || !j.contains("val")) throw ParseError("F_p scalar needs mod and val: " + j.dump());
    const auto p = j.at("mod").get<std::uint64_t>();
    if (p != like.modulus())
      throw FieldMismatch("scalar mod " + std::to_string(p) + " in a computation over Fp:" + std::to_string(like.modulus()));
    return ModP(j.at("val").get<std::int64_t>(), p);
  }
  const Rational r = decode_rational(j);
  const std::uint64_t p = like.modulus();
  ModP num(static_cast<std::int64_t>(mpz_fdiv_ui(r.value().get_num_mpz_t(), p)), p);
  ModP den(static_cast<std::int64_t>(mpz_fdiv_ui(r.value().get_den_mpz_t(), p)), p);
  return num / den;
}

template <class K>
Quad<K> decode(const Json& j, const Quad<K>& like) {
  if (!j.is_object()) return Quad<K>::embed(decode(j, like.re()), like.lambda());
  if (!j.contains("re") || !j.contains("im")) throw ParseError("A_lambda scalar needs re and im: " + j.dump());
  if (j.contains("lambda") && decode(j.at("lambda"), like.re()) != like.lambda())
    throw FieldMismatch("scalar over A(" + j.at("lambda").dump() + ") in a computation over A(" + like.lambda().to_string() + ")");
  return Quad<K>(decode(j.at("re"), like.re()), decode(j.at("im"), like.re()), like.lambda());
}

// ---------------------------------------------------------------------------

template <class K>
Json encode(const Vec<K>& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(encode(x));
  return a;
}

template <class K>
Vec<K> decode_vec(const Json& j, const K& like) {
  if (!j.is_array()) throw ParseError("expected an array, got " + j.dump());
  Vec<K> v;
  for (const auto& x : j) v.push_back(decode(x, like));
  return v;
}

template <class K>
Json encode(const Matrix<K>& m) {
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", encode(m.entries())}};
}

template <class K>
Matrix<K> decode_matrix(const Json& j, const K& like) {
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("entries"))
    throw ParseError("matrix needs rows, cols, entries");
  const auto r = j.at("rows").get<std::size_t>(), c = j.at("cols").get<std::size_t>();
  Vec<K> e = decode_vec(j.at("entries"), like);
  if (e.size() != r * c) throw DimensionMismatch("matrix entries do not match rows * cols");
  return Matrix<K>(r, c, std::move(e));
}

template <class K>
Json encode(const Subspace<K>& s) {
  Json b = Json::array();
  for (const auto& v : s.basis()) b.push_back(encode(v));
  return Json{{"dim", s.dim()}, {"basis", b}};
}

// ---------------------------------------------------------------------------

inline std::string basis_description(const std::string& construction) {
  if (construction == "BinaryCubics") return "ax^3+3bx^2y+3cxy^2+dy^3 as (a,b,c,d); m = (H,X,Y)";
  if (construction == "ThreeForms6") return "e^{ijk}, i<j<k, lexicographic on index triples; m = E_ij (i!=j, row-major), H_i";
  if (construction == "PrimitiveThreeForms6") return "basis of the primitive 3-forms for Omega = e^1^e^4 + e^2^e^5 + e^3^e^6";
  if (construction == "HalfSpinor12") return "e^S for S of fixed parity, ordered by |S| then lexicographically; m = [c(x_a), c(x_b)], a<b";
  return "standard";
}

template <class K>
Json encode(const SsrData<K>& d) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["construction"] = d.construction;
  j["field"] = d.omega.like().descriptor().to_string();
  j["basis"] = basis_description(d.construction);
  Json notes = Json::object();
  for (const auto& [k, v] : d.notes) notes[k] = v;
  j["notes"] = notes;
  j["omega"] = encode(d.omega);
  Json mb = Json::array();
  for (const auto& m : d.m_basis) mb.push_back(encode(m));
  j["m_basis"] = mb;
  Json b = Json::array();
  for (const auto& row : d.bmu) {
    Json r = Json::array();
    for (const auto& c : row) r.push_back(encode(c));
    b.push_back(r);
  }
  j["bmu"] = b;
  return j;
}

template <class K>
SsrData<K> decode_ssr(const Json& j, const K& like) {
  if (!j.is_object()) throw ParseError("SSRData must be an object");
  if (!j.contains("schema_version") || j.at("schema_version") != kSchemaVersion)
    throw ParseError("unsupported schema_version");
  for (const char* key : {"construction", "field", "omega", "m_basis", "bmu"})
    if (!j.contains(key)) throw ParseError(std::string("SSRData is missing ") + key);
  const std::string field = j.at("field").get<std::string>();
  if (!(parse_field(field) == like.descriptor()))
    throw FieldMismatch("SSRData over " + field + " used over " + like.descriptor().to_string());
  SsrData<K> d;
  d.construction = j.at("construction").get<std::string>();
  if (j.contains("notes"))
    for (const auto& item : j.at("notes").items()) d.notes.emplace_back(item.key(), item.value().template get<std::string>());
  d.omega = decode_matrix(j.at("omega"), like);
  const std::size_t n = d.omega.rows();
  for (const auto& m : j.at("m_basis")) {
    d.m_basis.push_back(decode_matrix(m, like));
    if (d.m_basis.back().rows() != n || d.m_basis.back().cols() != n) throw DimensionMismatch("m_basis element size");
  }
  const Json& b = j.at("bmu");
  if (!b.is_array() || b.size() != n) throw DimensionMismatch("bmu must be dim V x dim V");
  d.bmu.assign(n, std::vector<Vec<K>>(n));
  for (std::size_t i = 0; i < n; ++i) {
    if (!b[i].is_array() || b[i].size() != n) throw DimensionMismatch("bmu row size");
    for (std::size_t k = 0; k < n; ++k) {
      d.bmu[i][k] = decode_vec(b[i][k], like);
      if (d.bmu[i][k].size() != d.m_basis.size()) throw DimensionMismatch("bmu entry must have dim m coordinates");
    }
  }
  return d;
}

// ---------------------------------------------------------------------------
// reports

inline Json encode(const VerificationReport& r) {
  Json j{{"ok", r.ok()},
         {"antisymmetry", r.antisymmetry},
         {"bmu_symmetric", r.bmu_symmetric},
         {"faithful", r.faithful},
         {"closed", r.closed},
         {"defining_identity", r.defining_identity},
         {"equivariant", r.equivariant},
         {"m_mu_equals_m", r.m_mu_equals_m},
         {"m_mu_dim", r.m_mu_dim}};
  j["normalizer_dim"] = r.normalizer_dim ? Json(*r.normalizer_dim) : Json(nullptr);
  j["m_mu_in_normalizer"] = r.m_mu_in_normalizer ? Json(*r.m_mu_in_normalizer) : Json(nullptr);
  j["failures"] = r.failures;
  return j;
}

inline Json encode(const IdentityReport& r) {
  Json j = Json::object();
  for (const auto& [k, v] : r.items) j[k] = v;
  return j;
}

template <class K>
Json encode(const CovariantReport<K>& r) {
  return Json{{"mu", encode(r.mu_coords)},   {"mu_matrix", encode(r.mu_matrix)}, {"psi", encode(r.psi)},
              {"Q", encode(r.q)},            {"dmu", encode(r.dmu)},             {"ker_dmu", encode(r.ker_dmu)},
              {"tangent", encode(r.tangent)}};
}

template <class S, class K>
Json encode(const Decomposition<S, K>& d) {
  return Json{{"B", encode(d.b)}, {"C", encode(d.c)}, {"q", encode(d.q)}, {"lambda_class", encode(d.lambda_class)}};
}

template <class K>
Json encode(const MuEigenDecomposition<K>& e) {
  Json blocks = Json::array();
  for (const auto& b : e.blocks) blocks.push_back(Json{{"scalar", encode(b.scalar)}, {"space", encode(b.space)}});
  return Json{{"decomposition", encode(e.pair)}, {"blocks", blocks}};
}

template <class K>
Json encode(const HatPoint<K>& p) {
  return Json{{"P", encode(p.p)}, {"z", encode(p.z)}};
}

template <class K>
HatPoint<K> decode_hat(const Json& j, const K& like) {
  if (!j.is_object() || !j.contains("P") || !j.contains("z")) throw ParseError("HatPoint needs P and z");
  return {decode_vec(j.at("P"), like), decode(j.at("z"), like)};
}

template <class K>
Json encode(const TorusElement<K>& u) {
  return Json{{"a", encode(u.a)}, {"b", encode(u.b)}};
}

template <class K>
TorusElement<K> decode_torus(const Json& j, const K& like) {
  if (j.is_array() && j.size() == 2) return {decode(j[0], like), decode(j[1], like)};
  if (!j.is_object() || !j.contains("a") || !j.contains("b")) throw ParseError("torus element needs a and b");
  return {decode(j.at("a"), like), decode(j.at("b"), like)};
}

template <class K>
Json encode(const GradingReport& g, const GradedLieAlgebra<K>& alg) {
  Json dims = Json::object();
  for (const auto& [k, v] : g.dims) dims[std::to_string(k)] = v;
  return Json{{"ok", g.ok()}, {"dims", dims}, {"sl2_triple", g.sl2_triple}, {"m_dim", alg.m_dim()}, {"v_dim", alg.v_dim()}};
}

// nonzero structure constants [b_i, b_j] = sum c_k b_k for i < j
template <class K>
Json structure_constants(const GradedLieAlgebra<K>& g) {
  Json out = Json::array();
  for (std::size_t i = 0; i < g.dim(); ++i)
    for (std::size_t j = i + 1; j < g.dim(); ++j)
      for (const auto& [k, c] : g.bracket(i, j)) out.push_back(Json{i, j, k, encode(c)});
  return out;
}

}  // namespace ssr::json
