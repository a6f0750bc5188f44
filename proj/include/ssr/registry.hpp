#pragma once

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ssr/constructions.hpp"
#include "ssr/exterior.hpp"
#include "ssr/random.hpp"
#include "ssr/spinor.hpp"

namespace ssr {

struct ConstructionId {
  enum class Kind { BinaryCubics, Tautological, JCommutant, HomEF, ThreeForms6, PrimitiveThreeForms6, HalfSpinor12 };
  Kind kind = Kind::BinaryCubics;
  std::size_t n = 1;           // Tautological, JCommutant
  long lambda_j = 1;           // JCommutant
  std::vector<long> g_diag{1, 1, 1};  // HomEF
  bool odd = false;            // HalfSpinor12

  static const std::vector<std::pair<Kind, std::string>>& names() {
    static const std::vector<std::pair<Kind, std::string>> v{
        {Kind::BinaryCubics, "BinaryCubics"}, {Kind::Tautological, "Tautological"},
        {Kind::JCommutant, "JCommutant"},     {Kind::HomEF, "HomEF"},
        {Kind::ThreeForms6, "ThreeForms6"},   {Kind::PrimitiveThreeForms6, "PrimitiveThreeForms6"},
        {Kind::HalfSpinor12, "HalfSpinor12"}};
    return v;
  }

  std::string name() const {
    for (const auto& [k, s] : names())
      if (k == kind) return s;
    return "?";
  }

  // params: n=2, lambda_j=2, g=1,-1,1, parity=odd
  static ConstructionId parse(const std::string& name, const std::map<std::string, std::string>& params = {}) {
    ConstructionId id;
    bool found = false;
    for (const auto& [k, s] : names())
      if (s == name) {
        id.kind = k;
        found = true;
      }
    if (!found) throw ParseError("unknown construction '" + name + "'");
    for (const auto& [key, val] : params) {
      try {
        if (key == "n") {
          long v = std::stol(val);
          if (v < 1) throw ParseError("n must be >= 1");
          id.n = static_cast<std::size_t>(v);
        } else if (key == "lambda_j") {
          id.lambda_j = std::stol(val);
          if (id.lambda_j == 0) throw InvalidJ("lambda_J must be nonzero");
        } else if (key == "g") {
          id.g_diag.clear();
          std::stringstream ss(val);
          std::string tok;
          while (std::getline(ss, tok, ',')) id.g_diag.push_back(std::stol(tok));
          if (id.g_diag.empty()) throw ParseError("empty g");
        } else if (key == "parity") {
          if (val != "even" && val != "odd") throw ParseError("parity must be even or odd");
          id.odd = val == "odd";
        } else {
          throw ParseError("unknown parameter '" + key + "'");
        }
      } catch (const std::invalid_argument&) {
        throw ParseError("bad value for " + key + ": '" + val + "'");
      } catch (const std::out_of_range&) {
        throw ParseError("value out of range for " + key);
      }
    }
    return id;
  }

  template <class K>
  Matrix<K> g_matrix(const K& like) const {
    Matrix<K> g = Matrix<K>::zero(g_diag.size(), g_diag.size(), like);
    for (std::size_t i = 0; i < g_diag.size(); ++i) g(i, i) = like.lift(g_diag[i]);
    return g;
  }
};

template <class K>
Ssr<K> make_ssr(const ConstructionId& id, const K& like) {
  using Kd = ConstructionId::Kind;
  switch (id.kind) {
    case Kd::BinaryCubics: return binary_cubics(like);
    case Kd::Tautological: return tautological(like, id.n);
    case Kd::JCommutant: return j_commutant(like, id.n, like.lift(id.lambda_j));
    case Kd::HomEF: return hom_ef(id.g_matrix(like));
    case Kd::ThreeForms6: return three_forms6(like);
    case Kd::PrimitiveThreeForms6: return primitive_three_forms6(default_omega6(like));
    case Kd::HalfSpinor12:
      return half_spinor12(like, id.odd ? SpinorModel::Parity::Odd : SpinorModel::Parity::Even);
  }
  throw WrongConstruction("unknown construction");
}

// ---------------------------------------------------------------------------

namespace oracle {

// ax^3+3bx^2y+3cxy^2+dy^3 is a cube of a linear form iff [[a,b,c],[b,c,d]] has rank 1
template <class K>
bool cubic_is_cube(const Vec<K>& v) {
  Matrix<K> cat(2, 3, {v[0], v[1], v[2], v[1], v[2], v[3]});
  return rank(cat) == 1;
}

// {x in k^6 : i_x alpha = 0}
template <class K>
Subspace<K> three_form_annihilator(const Vec<K>& v) {
  const K& like = v[0];
  const ext::Form<K> a = ext::from_triples(v);
  // column r holds i_{e_r} alpha in the 2-form basis (15 masks)
  std::vector<unsigned> pairs;
  for (unsigned m = 0; m < 64; ++m)
    if (std::popcount(m) == 2) pairs.push_back(m);
  std::vector<Vec<K>> cols;
  for (unsigned r = 0; r < 6; ++r) {
    Vec<K> c(pairs.size(), like.lift(0));
    for (const auto& [m, x] : ext::interior(r, a))
      c[static_cast<std::size_t>(std::find(pairs.begin(), pairs.end(), m) - pairs.begin())] = x;
    cols.push_back(std::move(c));
  }
  return kernel(Matrix<K>::from_columns(cols, pairs.size(), like));
}

template <class K>
bool three_form_decomposable(const Vec<K>& v) {
  return !is_zero(v) && three_form_annihilator(v).dim() == 3;
}

}  // namespace oracle

template <class K>
Vec<K> primitive_to_three_form(const Vec<K>& v) {
  const auto basis = primitive_basis(default_omega6(v[0]));
  Vec<K> out(20, v[0].lift(0));
  for (std::size_t i = 0; i < basis.size(); ++i) axpy(out, v[i], basis[i]);
  return out;
}

template <class K>
std::optional<Vec<K>> three_form_to_primitive(const Vec<K>& v) {
  const auto basis = primitive_basis(default_omega6(v[0]));
  return SpanSolver<K>(basis, v[0]).coordinates(v);
}

// construction-specific test for A != 0 with mu(A) = 0
template <class K>
bool zero_set_oracle(const ConstructionId& id, const Ssr<K>& s, const Vec<K>& v) {
  using Kd = ConstructionId::Kind;
  s.check(v);
  if (is_zero(v)) return false;
  const K& like = s.one();
  switch (id.kind) {
    case Kd::BinaryCubics: return oracle::cubic_is_cube(v);
    case Kd::Tautological: return false;  // tau(v) w = omega(v, w) v is never zero for v != 0
    case Kd::JCommutant: {
      const Matrix<K> j = default_j(id.n, like.lift(id.lambda_j));
      return rank(Matrix<K>::from_columns({v, j * v}, v.size(), like)) == 1;
    }
    case Kd::HomEF: {
      const std::size_t m = v.size() / 2;
      const Matrix<K> a = homef::as_matrix(v, m);
      if (rank(a) != 1) return false;
      Vec<K> f = is_zero(a.col(0)) ? a.col(1) : a.col(0);
      return dot(f, id.g_matrix(like) * f).is_zero();
    }
    case Kd::ThreeForms6: return oracle::three_form_decomposable(v);
    case Kd::PrimitiveThreeForms6: {
      const Vec<K> f = primitive_to_three_form(v);
      if (!oracle::three_form_decomposable(f)) return false;
      const auto ann = oracle::three_form_annihilator(f);
      return is_isotropic(ann, default_omega6(like));
    }
    case Kd::HalfSpinor12: {
      const SpinorModel model(id.odd ? SpinorModel::Parity::Odd : SpinorModel::Parity::Even);
      return model.annihilator_dim(v) == 6;
    }
  }
  return false;
}

// ---------------------------------------------------------------------------
// random members of Z = {A != 0 : mu(A) = 0}: a seed family moved by exp(tN), N nilpotent in m

template <class K>
class ZeroSetSampler {
 public:
  ZeroSetSampler(const ConstructionId& id, const Ssr<K>& s) : id_(id), s_(s) {
    const K& like = s.one();
    for (const auto& nmat : s.m_basis()) {
      // powers N^k / k! until N^k = 0; skipped unless nilpotent with invertible factorials
      std::vector<Matrix<K>> terms;
      Matrix<K> p = nmat;
      K fact = like.lift(1);
      bool nilpotent = false;
      for (std::size_t k = 1; k <= s.dim(); ++k) {
        if (p.is_zero()) {
          nilpotent = true;
          break;
        }
        fact *= like.lift(static_cast<long>(k));
        if (fact.is_zero()) break;
        terms.push_back(fact.inv() * p);
        p = p * nmat;
      }
      if (nilpotent) exps_.push_back(std::move(terms));
    }
  }

  std::optional<Vec<K>> seed(Rng& rng) {
    using Kd = ConstructionId::Kind;
    const K& like = s_.one();
    switch (id_.kind) {
      case Kd::BinaryCubics: return unit_vector(4, 0, like);
      case Kd::Tautological: return std::nullopt;
      case Kd::JCommutant: {
        auto r = is_square(like.lift(id_.lambda_j));
        if (!r) return std::nullopt;
        const Matrix<K> j = default_j(id_.n, like.lift(id_.lambda_j));
        const K root = rng.coin(2) ? *r : -*r;
        auto e = eigenspace(j, root).basis();
        Vec<K> v = zeros(s_.dim(), like);
        while (is_zero(v))
          for (const auto& b : e) axpy(v, random_scalar(rng, like), b);
        return v;
      }
      case Kd::HomEF: {
        auto f = isotropic_vector(rng);
        if (!f) return std::nullopt;
        const std::size_t m = f->size();
        Vec<K> v = zeros(2 * m, like);
        K x = random_scalar(rng, like), y = random_scalar(rng, like);
        if (x.is_zero() && y.is_zero()) x = like.lift(1);
        for (std::size_t i = 0; i < m; ++i) {
          v[i] = x * (*f)[i];
          v[m + i] = y * (*f)[i];
        }
        return v;
      }
      case Kd::ThreeForms6: return unit_vector(20, ext::triple_index(7), like);
      case Kd::PrimitiveThreeForms6: return *three_form_to_primitive(unit_vector(20, ext::triple_index(7), like));
      case Kd::HalfSpinor12: {
        const SpinorModel model(id_.odd ? SpinorModel::Parity::Odd : SpinorModel::Parity::Even);
        return unit_vector(s_.dim(), model.index_of(id_.odd ? 1u : 0u), like);
      }
    }
    return std::nullopt;
  }

  std::optional<Vec<K>> sample(Rng& rng, std::size_t moves = 8) {
    auto v = seed(rng);
    if (!v) return std::nullopt;
    if (!exps_.empty())
      for (std::size_t i = 0; i < moves; ++i) {
        const auto& terms = exps_[rng.below(exps_.size())];
        const K t = random_scalar(rng, s_.one());
        Vec<K> out = *v;
        K tk = s_.one();
        for (const auto& term : terms) {
          tk *= t;
          axpy(out, tk, term * *v);
        }
        *v = std::move(out);
      }
    *v = random_nonzero(rng, s_.one()) * *v;
    return v;
  }

  std::size_t nilpotent_count() const { return exps_.size(); }

 private:
  // g(f, f) = 0 via the line through two random vectors
  std::optional<Vec<K>> isotropic_vector(Rng& rng) {
    const K& like = s_.one();
    const Matrix<K> g = id_.g_matrix(like);
    const std::size_t m = g.rows();
    for (int attempt = 0; attempt < 400; ++attempt) {
      Vec<K> u = random_nonzero_vector(rng, m, like), w = random_nonzero_vector(rng, m, like);
      K guu = dot(u, g * u), guw = dot(u, g * w), gww = dot(w, g * w);
      if (guu.is_zero()) return u;
      if (gww.is_zero()) continue;
      auto r = is_square(guw * guw - guu * gww);
      if (!r) continue;
      K t = (-guw + *r) / gww;
      Vec<K> f = u + t * w;
      if (is_zero(f)) continue;
      return f;
    }
    return std::nullopt;
  }

  ConstructionId id_;
  const Ssr<K>& s_;
  std::vector<std::vector<Matrix<K>>> exps_;
};

}  // namespace ssr
