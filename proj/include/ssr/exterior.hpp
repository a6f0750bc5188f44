#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <map>
#include <vector>

#include "ssr/constructions.hpp"

namespace ssr {

// exterior algebra on k^6 with basis e^I, I a bitmask
namespace ext {

inline int popcount(unsigned m) { return std::popcount(m); }

// e^A ^ e^B = sign e^{A|B}, 0 if they overlap
inline int wedge_sign(unsigned a, unsigned b) {
  if (a & b) return 0;
  int inv = 0;
  for (unsigned x = b; x; x &= x - 1) {
    unsigned bit = x & -x;
    inv += popcount(a & ~((bit << 1) - 1));  // entries of a above this bit
  }
  return inv % 2 ? -1 : 1;
}

// i_{e_r} e^A, sign (-1)^{#entries of A below r}
inline int interior_sign(unsigned r, unsigned a) {
  if (!(a & (1u << r))) return 0;
  return popcount(a & ((1u << r) - 1)) % 2 ? -1 : 1;
}

// the 20 index triples of {0..5} in lexicographic order
inline const std::vector<unsigned>& triples() {
  static const std::vector<unsigned> t = [] {
    std::vector<unsigned> out;
    for (unsigned i = 0; i < 6; ++i)
      for (unsigned j = i + 1; j < 6; ++j)
        for (unsigned k = j + 1; k < 6; ++k) out.push_back((1u << i) | (1u << j) | (1u << k));
    return out;
  }();
  return t;
}

inline std::size_t triple_index(unsigned mask) {
  const auto& t = triples();
  return static_cast<std::size_t>(std::find(t.begin(), t.end(), mask) - t.begin());
}

constexpr unsigned kVol = 63;

// sparse form: mask -> coefficient
template <class K>
using Form = std::map<unsigned, K>;

template <class K>
void add_to(Form<K>& f, unsigned m, const K& x) {
  if (x.is_zero()) return;
  auto [it, fresh] = f.try_emplace(m, x);
  if (!fresh) {
    it->second += x;
    if (it->second.is_zero()) f.erase(it);
  }
}

template <class K>
Form<K> wedge(const Form<K>& a, const Form<K>& b) {
  Form<K> out;
  for (const auto& [ma, xa] : a)
    for (const auto& [mb, xb] : b) {
      int s = wedge_sign(ma, mb);
      if (s) add_to(out, ma | mb, s > 0 ? xa * xb : -(xa * xb));
    }
  return out;
}

template <class K>
Form<K> interior(unsigned r, const Form<K>& a) {
  Form<K> out;
  for (const auto& [m, x] : a) {
    int s = interior_sign(r, m);
    if (s) add_to(out, m & ~(1u << r), s > 0 ? x : -x);
  }
  return out;
}

template <class K>
Form<K> from_triples(const Vec<K>& v) {
  Form<K> f;
  for (std::size_t i = 0; i < v.size(); ++i) add_to(f, triples()[i], v[i]);
  return f;
}

template <class K>
Vec<K> to_triples(const Form<K>& f, const K& like) {
  Vec<K> v(20, like.lift(0));
  for (const auto& [m, x] : f) {
    if (popcount(m) != 3) throw DimensionMismatch("not a 3-form");
    v[triple_index(m)] = x;
  }
  return v;
}

// X acts on E by columns; on 1-forms X.e^i = -sum_j X_ij e^j, extended as a derivation
template <class K>
Form<K> act(const Matrix<K>& x, const Form<K>& f) {
  Form<K> out;
  for (const auto& [m, c] : f)
    for (unsigned i = 0; i < 6; ++i) {
      if (!(m & (1u << i))) continue;
      for (unsigned j = 0; j < 6; ++j) {
        if (x(i, j).is_zero()) continue;
        unsigned rest = m & ~(1u << i);
        if (rest & (1u << j)) continue;
        // replace e^i in place by e^j: e^{m} = s1 e^i ^ e^{rest}, then e^j ^ e^{rest} = s2 e^{rest|j}
        int s1 = wedge_sign(1u << i, rest), s2 = wedge_sign(1u << j, rest);
        K v = -(c * x(i, j));
        add_to(out, rest | (1u << j), s1 * s2 > 0 ? v : -v);
      }
    }
  return out;
}

// vector w with i_w vol = f for a 5-form f
template <class K>
Vec<K> dual_of_five_form(const Form<K>& f, const K& like) {
  Vec<K> w(6, like.lift(0));
  for (const auto& [m, x] : f) {
    unsigned r = std::countr_zero(~m & kVol);
    w[r] = r % 2 ? -x : x;
  }
  return w;
}

}  // namespace ext

// B_1(a, b) as an endomorphism of k^6: column c is w with i_w vol = (a ^ i_c b + b ^ i_c a)/2
template <class K>
Matrix<K> three_form_b(const ext::Form<K>& a, const ext::Form<K>& b, const K& like) {
  Matrix<K> m = Matrix<K>::zero(6, 6, like);
  const K half = like.lift(1, 2);
  for (unsigned c = 0; c < 6; ++c) {
    ext::Form<K> f = ext::wedge(a, ext::interior(c, b));
    for (const auto& [mk, x] : ext::wedge(b, ext::interior(c, a))) ext::add_to(f, mk, x);
    Vec<K> w = ext::dual_of_five_form(f, like);
    for (unsigned r = 0; r < 6; ++r) m(r, c) = half * w[r];
  }
  return m;
}

// sl6 basis: E_ij (i != j, row-major order), then H_i = E_ii - E_{i+1,i+1}
template <class K>
std::vector<Matrix<K>> sl6_basis(const K& like) {
  std::vector<Matrix<K>> out;
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j)
      if (i != j) {
        Matrix<K> e = Matrix<K>::zero(6, 6, like);
        e(i, j) = like.lift(1);
        out.push_back(e);
      }
  for (std::size_t i = 0; i + 1 < 6; ++i) {
    Matrix<K> h = Matrix<K>::zero(6, 6, like);
    h(i, i) = like.lift(1);
    h(i + 1, i + 1) = like.lift(-1);
    out.push_back(h);
  }
  return out;
}

template <class K>
Vec<K> sl6_coordinates(const Matrix<K>& m) {
  const K& like = m.like();
  if (!m.trace().is_zero()) throw DisagreementError("matrix is not trace-free");
  Vec<K> c;
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j)
      if (i != j) c.push_back(m(i, j));
  K acc = like.lift(0);
  for (std::size_t i = 0; i + 1 < 6; ++i) {
    acc += m(i, i);
    c.push_back(acc);
  }
  return c;
}

template <class K>
Matrix<K> three_forms_gram(const K& like) {
  const auto& t = ext::triples();
  Matrix<K> g = Matrix<K>::zero(20, 20, like);
  for (std::size_t i = 0; i < 20; ++i)
    for (std::size_t j = 0; j < 20; ++j) {
      int s = ext::wedge_sign(t[i], t[j]);
      if (s) g(i, j) = like.lift(s);
    }
  return g;
}

// B_1 on basis pairs, as 6x6 matrices
template <class K>
std::vector<std::vector<Matrix<K>>> three_form_b_table(const K& like) {
  std::vector<std::vector<Matrix<K>>> tab(20, std::vector<Matrix<K>>(20));
  const auto& t = ext::triples();
  for (std::size_t i = 0; i < 20; ++i)
    for (std::size_t j = i; j < 20; ++j) {
      ext::Form<K> a{{t[i], like.lift(1)}}, b{{t[j], like.lift(1)}};
      tab[i][j] = three_form_b(a, b, like);
      tab[j][i] = tab[i][j];
    }
  return tab;
}

template <class K>
Matrix<K> three_form_operator(const Matrix<K>& x) {
  const K& like = x.like();
  return matrix_of<K>(20, [&](const Vec<K>& v) { return ext::to_triples(ext::act(x, ext::from_triples(v)), like); },
                      like);
}

template <class K>
Ssr<K> three_forms6(const K& like) {
  SsrData<K> d;
  d.construction = "ThreeForms6";
  d.omega = three_forms_gram(like);
  for (const auto& x : sl6_basis(like)) d.m_basis.push_back(three_form_operator(x));
  auto tab = three_form_b_table(like);
  d.bmu.assign(20, std::vector<Vec<K>>(20));
  for (std::size_t i = 0; i < 20; ++i)
    for (std::size_t j = 0; j < 20; ++j) d.bmu[i][j] = sl6_coordinates(tab[i][j]);
  Ssr<K> raw(d);
  // e^{012} + e^{345} + e^{024}, e^{135}, e^{014} + e^{235}
  Vec<K> a = zeros(20, like), b = zeros(20, like), c = zeros(20, like);
  a[ext::triple_index(7)] = like.lift(1);
  a[ext::triple_index(56)] = like.lift(1);
  a[ext::triple_index(21)] = like.lift(1);
  b[ext::triple_index(42)] = like.lift(1);
  c[ext::triple_index(19)] = like.lift(1);
  c[ext::triple_index(44)] = like.lift(1);
  const K k = calibrate_defining_identity(raw, a, b, c);
  scale_bmu(d, k);
  d.notes.emplace_back("calibration", k.to_string());
  return Ssr<K>(std::move(d));
}

// ---------------------------------------------------------------------------
// primitive 3-forms for a symplectic form Omega on k^6 (Omega(u, w) = u^T Omega w)

template <class K>
Matrix<K> default_omega6(const K& like) { return standard_symplectic(3, like); }

// basis of the kernel of the contraction with the bivector dual to Omega, as 20-vectors
template <class K>
std::vector<Vec<K>> primitive_basis(const Matrix<K>& big_omega) {
  const K& like = big_omega.like();
  const Matrix<K> pi = inverse(big_omega);
  const auto& t = ext::triples();
  std::vector<Vec<K>> rows(6, Vec<K>(20, like.lift(0)));
  for (std::size_t col = 0; col < 20; ++col) {
    ext::Form<K> a{{t[col], like.lift(1)}};
    for (unsigned i = 0; i < 6; ++i)
      for (unsigned j = i + 1; j < 6; ++j) {
        if (pi(i, j).is_zero()) continue;
        for (const auto& [m, x] : ext::interior(j, ext::interior(i, a))) {
          unsigned k = std::countr_zero(m);
          rows[k][col] += pi(i, j) * x;
        }
      }
  }
  return kernel(Matrix<K>::from_rows(rows, 20, like)).basis();
}

template <class K>
Ssr<K> primitive_three_forms6(const Matrix<K>& big_omega) {
  const K& like = big_omega.like();
  if (big_omega.rows() != 6 || big_omega.cols() != 6 || big_omega.transpose() != -big_omega ||
      rank(big_omega) != 6)
    throw DegenerateForm("Omega must be a nondegenerate 2-form on k^6");
  const auto basis = primitive_basis(big_omega);
  const std::size_t n = basis.size();
  if (n != 14) throw DisagreementError("primitive forms do not have dimension 14");
  const Matrix<K> emb = Matrix<K>::from_columns(basis, 20, like);
  SpanSolver<K> in_v(basis, like);

  SsrData<K> d;
  d.construction = "PrimitiveThreeForms6";
  d.omega = emb.transpose() * three_forms_gram(like) * emb;
  const auto sp6 = sp_basis(big_omega);
  for (const auto& x : sp6) {
    Matrix<K> op = three_form_operator(x);
    std::vector<Vec<K>> cols;
    for (const auto& v : basis) {
      auto c = in_v.coordinates(op * v);
      if (!c) throw DisagreementError("sp6 does not preserve the primitive forms");
      cols.push_back(*c);
    }
    d.m_basis.push_back(Matrix<K>::from_columns(cols, n, like));
  }
  std::vector<Vec<K>> flat;
  for (const auto& x : sp6) flat.push_back(flatten(x));
  SpanSolver<K> in_sp(flat, like);
  auto tab = three_form_b_table(like);
  d.bmu.assign(n, std::vector<Vec<K>>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      Matrix<K> b = Matrix<K>::zero(6, 6, like);
      for (std::size_t p = 0; p < 20; ++p) {
        if (basis[i][p].is_zero()) continue;
        for (std::size_t q = 0; q < 20; ++q)
          if (!basis[j][q].is_zero()) b.add_scaled(basis[i][p] * basis[j][q], tab[p][q]);
      }
      auto c = in_sp.coordinates(flatten(b));
      if (!c) throw DisagreementError("B_mu restricted to primitive forms leaves sp6");
      d.bmu[i][j] = *c;
      d.bmu[j][i] = *c;
    }
  return Ssr<K>(std::move(d));
}

}  // namespace ssr
