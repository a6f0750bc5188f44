#pragma once

#include <functional>
#include <string>
#include <vector>

#include "ssr/ssr.hpp"
#include "ssr/verify.hpp"

namespace ssr {

// bmu tensor from a quadratic map q: V -> m-coordinates, B(u,v) = (q(u+v) - q(u) - q(v))/2
template <class K>
std::vector<std::vector<Vec<K>>> polarize(std::size_t n, const std::function<Vec<K>(const Vec<K>&)>& q,
                                          const K& like) {
  std::vector<std::vector<Vec<K>>> b(n, std::vector<Vec<K>>(n));
  std::vector<Vec<K>> diag;
  for (std::size_t i = 0; i < n; ++i) diag.push_back(q(unit_vector(n, i, like)));
  const K half = like.lift(1, 2);
  for (std::size_t i = 0; i < n; ++i) {
    b[i][i] = diag[i];
    for (std::size_t j = i + 1; j < n; ++j) {
      Vec<K> s = unit_vector(n, i, like);
      s[j] = like.lift(1);
      b[i][j] = half * (q(s) - diag[i] - diag[j]);
      b[j][i] = b[i][j];
    }
  }
  return b;
}

// operator of a linear map given on basis vectors
template <class K>
Matrix<K> matrix_of(std::size_t n, const std::function<Vec<K>(const Vec<K>&)>& f, const K& like) {
  std::vector<Vec<K>> cols;
  for (std::size_t j = 0; j < n; ++j) cols.push_back(f(unit_vector(n, j, like)));
  return Matrix<K>::from_columns(cols, cols.empty() ? 0 : cols[0].size(), like);
}

// the scalar c with c*(2B(A,B)C - 2B(A,C)B) = 2w(B,C)A - w(A,B)C + w(A,C)B on one triple
template <class K>
K calibrate_defining_identity(const Ssr<K>& s, const Vec<K>& a, const Vec<K>& b, const Vec<K>& c) {
  Vec<K> lhs = s.lift(2) * (s.act(s.bmu(a, b), c) - s.act(s.bmu(a, c), b));
  Vec<K> rhs = (s.lift(2) * s.omega(b, c)) * a - s.omega(a, b) * c + s.omega(a, c) * b;
  for (std::size_t i = 0; i < lhs.size(); ++i)
    if (!lhs[i].is_zero()) {
      K k = rhs[i] / lhs[i];
      if (k * lhs != rhs) throw CalibrationFailure("defining identity is not a multiple on the calibration triple");
      return k;
    }
  throw CalibrationFailure("calibration triple is degenerate");
}

template <class K>
void scale_bmu(SsrData<K>& d, const K& c) {
  for (auto& row : d.bmu)
    for (auto& v : row)
      for (auto& x : v) x *= c;
}

// ---------------------------------------------------------------------------
// binary cubics ax^3 + 3bx^2y + 3cxy^2 + dy^3, coordinates (a,b,c,d); m = sl2 with basis H, X, Y

namespace cubics {

// s acts on k^2, and on cubics by (s.P)(x,y) = -(P_x, P_y) s (x,y)^T
template <class K>
Vec<K> act(const Matrix<K>& s, const Vec<K>& v) {
  const K& like = v[0];
  // monomial coefficients p_k of x^{3-k} y^k
  Vec<K> p{v[0], like.lift(3) * v[1], like.lift(3) * v[2], v[3]};
  Vec<K> out(4, like.lift(0));
  for (int k = 0; k <= 3; ++k) {
    if (p[k].is_zero()) continue;
    // P_x term: (3-k) x^{2-k} y^k times (s00 x + s01 y)
    if (k < 3) {
      K f = like.lift(3 - k) * p[k];
      out[k] -= f * s(0, 0);
      out[k + 1] -= f * s(0, 1);
    }
    // P_y term: k x^{3-k} y^{k-1} times (s10 x + s11 y)
    if (k > 0) {
      K f = like.lift(k) * p[k];
      out[k - 1] -= f * s(1, 0);
      out[k] -= f * s(1, 1);
    }
  }
  return {out[0], out[1] * like.lift(1, 3), out[2] * like.lift(1, 3), out[3]};
}

template <class K>
std::vector<Matrix<K>> sl2_basis(const K& like) {
  const K o = like.lift(1), z = like.lift(0);
  return {Matrix<K>(2, 2, {o, z, z, -o}), Matrix<K>(2, 2, {z, o, z, z}), Matrix<K>(2, 2, {z, z, o, z})};
}

// mu = (ad - bc) H + 2(bd - c^2) X + 2(b^2 - ac) Y
template <class K>
Vec<K> mu_formula(const Vec<K>& v) {
  const K &a = v[0], &b = v[1], &c = v[2], &d = v[3];
  const K two = a.lift(2);
  return {a * d - b * c, two * (b * d - c * c), two * (b * b - a * c)};
}

// Q = 9((ad - bc)^2 + 4(bd - c^2)(b^2 - ac))
template <class K>
K q_formula(const Vec<K>& v) {
  const K &a = v[0], &b = v[1], &c = v[2], &d = v[3];
  const K h = a * d - b * c;
  return a.lift(9) * (h * h + a.lift(4) * (b * d - c * c) * (b * b - a * c));
}

}  // namespace cubics

template <class K>
Ssr<K> binary_cubics(const K& like) {
  SsrData<K> d;
  d.construction = "BinaryCubics";
  const K o = like.lift(1), z = like.lift(0), t = like.lift(3);
  d.omega = Matrix<K>(4, 4, {z, z, z, o, z, z, -t, z, z, t, z, z, -o, z, z, z});
  for (const auto& s : cubics::sl2_basis(like))
    d.m_basis.push_back(matrix_of<K>(4, [&](const Vec<K>& v) { return cubics::act(s, v); }, like));
  d.bmu = polarize<K>(4, [](const Vec<K>& v) { return cubics::mu_formula(v); }, like);
  return Ssr<K>(std::move(d));
}

// ---------------------------------------------------------------------------

template <class K>
Matrix<K> standard_symplectic(std::size_t n, const K& like) {
  Matrix<K> g = Matrix<K>::zero(2 * n, 2 * n, like);
  for (std::size_t i = 0; i < n; ++i) {
    g(i, n + i) = like.lift(1);
    g(n + i, i) = like.lift(-1);
  }
  return g;
}

// X_{ij}(w) = omega(e_i, w) e_j + omega(e_j, w) e_i, i <= j
template <class K>
std::vector<Matrix<K>> sp_basis(const Matrix<K>& gram) {
  const std::size_t n = gram.rows();
  const K& like = gram.like();
  std::vector<Matrix<K>> out;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      Matrix<K> e = Matrix<K>::zero(n, n, like);
      e(j, i) += like.lift(1);
      e(i, j) += like.lift(1);
      out.push_back(e * gram);
    }
  return out;
}

template <class K>
Ssr<K> tautological(const K& like, std::size_t n) {
  if (n < 1) throw DimensionMismatch("tautological needs n >= 1");
  SsrData<K> d;
  d.construction = "Tautological";
  d.notes.emplace_back("n", std::to_string(n));
  d.omega = standard_symplectic(n, like);
  d.m_basis = sp_basis(d.omega);
  const std::size_t dim = 2 * n, m = d.m_basis.size();
  d.bmu.assign(dim, std::vector<Vec<K>>(dim, Vec<K>(m, like.lift(0))));
  std::size_t idx = 0;
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = i; j < dim; ++j, ++idx) {
      d.bmu[i][j][idx] = like.lift(1, 2);
      d.bmu[j][i][idx] = like.lift(1, 2);
    }
  return Ssr<K>(std::move(d));
}

// ---------------------------------------------------------------------------

template <class K>
Matrix<K> default_j(std::size_t n, const K& lambda) {
  const K& like = lambda;
  Matrix<K> j = Matrix<K>::zero(2 * n, 2 * n, like);
  if (lambda == like.lift(1)) {
    for (std::size_t i = 0; i < n; ++i) {
      j(i, i) = like.lift(1);
      j(n + i, n + i) = like.lift(-1);
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      j(i, n + i) = lambda;
      j(n + i, i) = like.lift(1);
    }
  }
  return j;
}

template <class K>
Ssr<K> j_commutant(const K& like, std::size_t n, const K& lambda, std::optional<Matrix<K>> j_in = std::nullopt) {
  if (n < 1) throw DimensionMismatch("j_commutant needs n >= 1");
  if (lambda.is_zero()) throw InvalidJ("lambda_J must be nonzero");
  const std::size_t dim = 2 * n;
  const Matrix<K> g = standard_symplectic(n, like);
  const Matrix<K> j = j_in ? *j_in : default_j(n, lambda);
  if (j.rows() != dim || j.cols() != dim) throw InvalidJ("J has the wrong size");
  if (j * j != lambda * Matrix<K>::identity(dim, like)) throw InvalidJ("J^2 != lambda Id");
  if (!(j.transpose() * g + g * j).is_zero()) throw InvalidJ("J is not omega-skew");

  // commutant of J in sp(V): unknown X, X^T G + G X = 0 and XJ - JX = 0
  std::vector<Vec<K>> rows;
  auto var = [dim](std::size_t r, std::size_t c) { return r * dim + c; };
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < dim; ++c) {
      Vec<K> e1(dim * dim, like.lift(0)), e2(dim * dim, like.lift(0));
      for (std::size_t k = 0; k < dim; ++k) {
        e1[var(k, r)] += g(k, c);
        e1[var(k, c)] += g(r, k);
        e2[var(r, k)] += j(k, c);
        e2[var(k, c)] -= j(r, k);
      }
      rows.push_back(std::move(e1));
      rows.push_back(std::move(e2));
    }
  SsrData<K> d;
  d.construction = "JCommutant";
  d.notes.emplace_back("n", std::to_string(n));
  d.notes.emplace_back("lambda_J", lambda.to_string());
  d.omega = g;
  for (auto& v : kernel(Matrix<K>::from_rows(rows, dim * dim, like)).basis())
    d.m_basis.emplace_back(dim, dim, std::move(v));
  std::vector<Vec<K>> flat;
  for (const auto& m : d.m_basis) flat.push_back(flatten(m));
  SpanSolver<K> solver(flat, like);

  const K inv_l = lambda.inv();
  auto tau_m = [&](const Vec<K>& v) {
    Matrix<K> t = Matrix<K>::zero(dim, dim, like);
    Vec<K> row = g.transpose() * v;
    for (std::size_t a = 0; a < dim; ++a)
      for (std::size_t b = 0; b < dim; ++b) t(a, b) = v[a] * row[b];
    return t;
  };
  auto q = [&](const Vec<K>& v) {
    Vec<K> jv = j * v;
    Matrix<K> m = tau_m(v) - inv_l * tau_m(jv) + (like.lift(1, 2) * inv_l * dot(v, g * jv)) * j;
    auto c = solver.coordinates(flatten(m));
    if (!c) throw DisagreementError("moment map leaves the commutant of J");
    return *c;
  };
  d.bmu = polarize<K>(dim, q, like);
  return Ssr<K>(std::move(d));
}

// ---------------------------------------------------------------------------
// Hom(E, F), E = k^2 with Omega(e1, e2) = 1, F = k^m with symmetric g.
// A has columns a1 = A e1, a2 = A e2; coordinates (a1; a2).

namespace homef {

template <class K>
Matrix<K> as_matrix(const Vec<K>& v, std::size_t m) {
  Matrix<K> a = Matrix<K>::zero(m, 2, v[0]);
  for (std::size_t i = 0; i < m; ++i) {
    a(i, 0) = v[i];
    a(i, 1) = v[m + i];
  }
  return a;
}

template <class K>
Vec<K> as_vector(const Matrix<K>& a) {
  Vec<K> v = a.col(0);
  for (const auto& x : a.col(1)) v.push_back(x);
  return v;
}

// A* = -J2 A^T g with J2 = [[0,1],[-1,0]]
template <class K>
Matrix<K> adjoint(const Matrix<K>& a, const Matrix<K>& g) {
  const K& like = g.like();
  Matrix<K> mj(2, 2, {like.lift(0), like.lift(-1), like.lift(1), like.lift(0)});
  return mj * a.transpose() * g;
}

}  // namespace homef

template <class K>
Ssr<K> hom_ef(const Matrix<K>& g) {
  const std::size_t m = g.rows();
  if (m == 0 || !g.is_square() || g.transpose() != g) throw DegenerateForm("g must be square symmetric");
  if (rank(g) != m) throw DegenerateForm("g is degenerate");
  const K& like = g.like();
  const std::size_t dim = 2 * m;
  SsrData<K> d;
  d.construction = "HomEF";
  d.omega = Matrix<K>::zero(dim, dim, like);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      d.omega(i, m + j) = g(i, j);
      d.omega(m + i, j) = -g(i, j);
    }
  // sl(E) acting by A -> -A s1
  for (const auto& s1 : cubics::sl2_basis(like))
    d.m_basis.push_back(matrix_of<K>(
        dim, [&](const Vec<K>& v) { return homef::as_vector(-(homef::as_matrix(v, m) * s1)); }, like));
  // so(F, g) with basis g^{-1}(E_ij - E_ji), acting by A -> s2 A
  const Matrix<K> ginv = inverse(g);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      Matrix<K> nmat = Matrix<K>::zero(m, m, like);
      nmat(i, j) = like.lift(1);
      nmat(j, i) = like.lift(-1);
      Matrix<K> s2 = ginv * nmat;
      d.m_basis.push_back(matrix_of<K>(
          dim, [&](const Vec<K>& v) { return homef::as_vector(s2 * homef::as_matrix(v, m)); }, like));
      pairs.emplace_back(i, j);
    }
  // mu(A) = (-A*A, 2AA*)
  auto q = [&](const Vec<K>& v) {
    Matrix<K> a = homef::as_matrix(v, m);
    Matrix<K> as = homef::adjoint(a, g);
    Matrix<K> s1 = -(as * a);
    Matrix<K> nmat = g * (like.lift(2) * (a * as));
    if (!(s1(0, 0) + s1(1, 1)).is_zero() || nmat.transpose() != -nmat)
      throw DisagreementError("moment map leaves sl(E) + so(F, g)");
    Vec<K> c{s1(0, 0), s1(0, 1), s1(1, 0)};
    for (auto [i, j] : pairs) c.push_back(nmat(i, j));
    return c;
  };
  d.bmu = polarize<K>(dim, q, like);
  return Ssr<K>(std::move(d));
}

}  // namespace ssr
