#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "ssr/linalg.hpp"

namespace ssr {

template <class K>
struct SsrData {
  std::string construction;
  Matrix<K> omega;                 // omega(u, v) = u^T omega v
  std::vector<Matrix<K>> m_basis;  // operators on V acting on columns
  // bmu[i][j] = coordinates of B_mu(e_i, e_j) on m_basis
  std::vector<std::vector<Vec<K>>> bmu;
  std::vector<std::pair<std::string, std::string>> notes;
};

// sparse copy of an operator, column-major triplets
template <class K>
struct SparseOp {
  std::vector<std::vector<std::pair<std::size_t, K>>> cols;  // cols[j] = {(i, x_ij)}

  explicit SparseOp(const Matrix<K>& m) : cols(m.cols()) {
    for (std::size_t j = 0; j < m.cols(); ++j)
      for (std::size_t i = 0; i < m.rows(); ++i)
        if (!m(i, j).is_zero()) cols[j].emplace_back(i, m(i, j));
  }
  SparseOp() = default;
};

template <class K>
class Ssr {
 public:
  explicit Ssr(SsrData<K> data) : data_(std::move(data)) {
    const std::size_t n = data_.omega.rows();
    if (n == 0 || n % 2 != 0 || data_.omega.cols() != n) throw DimensionMismatch("omega must be 2n x 2n");
    const K& x = *std::find_if(data_.omega.entries().begin(), data_.omega.entries().end(),
                               [](const K& y) { return !y.is_zero(); });
    one_ = x / x;
    zero_ = one_.lift(0);
    for (const auto& m : data_.m_basis)
      if (m.rows() != n || m.cols() != n) throw DimensionMismatch("m_basis element has wrong size");
    if (data_.bmu.size() != n) throw DimensionMismatch("bmu first index");
    const std::size_t d = data_.m_basis.size();
    flat_.assign(n * n * d, zero_);
    for (std::size_t i = 0; i < n; ++i) {
      if (data_.bmu[i].size() != n) throw DimensionMismatch("bmu second index");
      for (std::size_t j = 0; j < n; ++j) {
        if (data_.bmu[i][j].size() != d) throw DimensionMismatch("bmu coordinate length");
        for (std::size_t a = 0; a < d; ++a) flat_[(i * n + j) * d + a] = data_.bmu[i][j][a];
      }
    }
    for (const auto& m : data_.m_basis) sparse_.emplace_back(m);
  }

  const SsrData<K>& data() const { return data_; }
  const std::string& construction() const { return data_.construction; }
  std::size_t dim() const { return data_.omega.rows(); }
  std::size_t m_dim() const { return data_.m_basis.size(); }
  const K& zero() const { return zero_; }
  const K& one() const { return one_; }
  K lift(long n, long d = 1) const { return one_.lift(n, d); }
  const Matrix<K>& gram() const { return data_.omega; }
  const std::vector<Matrix<K>>& m_basis() const { return data_.m_basis; }
  const SparseOp<K>& sparse_basis(std::size_t a) const { return sparse_[a]; }
  const K& bmu_entry(std::size_t i, std::size_t j, std::size_t a) const {
    return flat_[(i * dim() + j) * m_dim() + a];
  }

  Vec<K> zero_vector() const { return Vec<K>(dim(), zero_); }
  Vec<K> unit(std::size_t i) const { return unit_vector(dim(), i, one_); }

  K omega(const Vec<K>& u, const Vec<K>& v) const {
    check(u);
    check(v);
    K s = zero_;
    for (std::size_t i = 0; i < dim(); ++i) {
      if (u[i].is_zero()) continue;
      for (std::size_t j = 0; j < dim(); ++j)
        if (!v[j].is_zero() && !gram()(i, j).is_zero()) s += u[i] * gram()(i, j) * v[j];
    }
    return s;
  }

  // m-element given by coordinates, applied to v
  Vec<K> act(const Vec<K>& coords, const Vec<K>& v) const {
    check(v);
    Vec<K> out = zero_vector();
    for (std::size_t a = 0; a < m_dim(); ++a) {
      if (coords[a].is_zero()) continue;
      for (std::size_t j = 0; j < dim(); ++j) {
        if (v[j].is_zero()) continue;
        K f = coords[a] * v[j];
        for (const auto& [i, x] : sparse_[a].cols[j]) out[i] += f * x;
      }
    }
    return out;
  }

  Vec<K> act_basis(std::size_t a, const Vec<K>& v) const {
    Vec<K> out = zero_vector();
    for (std::size_t j = 0; j < dim(); ++j) {
      if (v[j].is_zero()) continue;
      for (const auto& [i, x] : sparse_[a].cols[j]) out[i] += v[j] * x;
    }
    return out;
  }

  Matrix<K> element(const Vec<K>& coords) const {
    Matrix<K> m = Matrix<K>::zero(dim(), dim(), one_);
    for (std::size_t a = 0; a < m_dim(); ++a)
      if (!coords[a].is_zero())
        for (std::size_t j = 0; j < dim(); ++j)
          for (const auto& [i, x] : sparse_[a].cols[j]) m(i, j) += coords[a] * x;
    return m;
  }

  // coordinates of B_mu(u, v)
  Vec<K> bmu(const Vec<K>& u, const Vec<K>& v) const {
    check(u);
    check(v);
    const std::size_t n = dim(), d = m_dim();
    Vec<K> out(d, zero_);
    for (std::size_t i = 0; i < n; ++i) {
      if (u[i].is_zero()) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (v[j].is_zero()) continue;
        K f = u[i] * v[j];
        const K* row = &flat_[(i * n + j) * d];
        for (std::size_t a = 0; a < d; ++a)
          if (!row[a].is_zero()) out[a] += f * row[a];
      }
    }
    return out;
  }

  // B_mu(e_i, e_j) e_k
  Vec<K> bmu_basis_apply(std::size_t i, std::size_t j, std::size_t k) const {
    Vec<K> out = zero_vector();
    const K* row = &flat_[(i * dim() + j) * m_dim()];
    for (std::size_t a = 0; a < m_dim(); ++a) {
      if (row[a].is_zero()) continue;
      for (const auto& [r, x] : sparse_[a].cols[k]) out[r] += row[a] * x;
    }
    return out;
  }

  void check(const Vec<K>& v) const {
    if (v.size() != dim()) throw DimensionMismatch("vector of length " + std::to_string(v.size()) +
                                                   " in V of dim " + std::to_string(dim()));
  }

 private:
  SsrData<K> data_;
  K one_, zero_;
  std::vector<K> flat_;
  std::vector<SparseOp<K>> sparse_;
};

// ---------------------------------------------------------------------------
// covariants

template <class K>
Vec<K> mu(const Ssr<K>& s, const Vec<K>& a) { return s.bmu(a, a); }

template <class K>
Matrix<K> mu_matrix(const Ssr<K>& s, const Vec<K>& a) { return s.element(mu(s, a)); }

template <class K>
Vec<K> psi(const Ssr<K>& s, const Vec<K>& a) { return s.act(mu(s, a), a); }

template <class K>
K big_q(const Ssr<K>& s, const Vec<K>& a) { return s.lift(3, 2) * s.omega(a, psi(s, a)); }

// B_Psi(A,B,C) = (B_mu(A,B)C + B_mu(B,C)A + B_mu(C,A)B)/3
template <class K>
Vec<K> b_psi(const Ssr<K>& s, const Vec<K>& a, const Vec<K>& b, const Vec<K>& c) {
  Vec<K> out = s.act(s.bmu(a, b), c) + s.act(s.bmu(b, c), a) + s.act(s.bmu(c, a), b);
  return s.lift(1, 3) * out;
}

// B_Q(A,B,C,D) = (3/2) omega(D, B_Psi(A,B,C)), the symmetrisation being automatic
template <class K>
K b_q(const Ssr<K>& s, const Vec<K>& a, const Vec<K>& b, const Vec<K>& c, const Vec<K>& d) {
  return s.lift(3, 2) * s.omega(d, b_psi(s, a, b, c));
}

template <class K>
Matrix<K> tau(const Ssr<K>& s, const Vec<K>& v) {
  Matrix<K> m = Matrix<K>::zero(s.dim(), s.dim(), s.one());
  Vec<K> row = s.gram().transpose() * v;  // row_j = omega(v, e_j)
  for (std::size_t i = 0; i < s.dim(); ++i)
    if (!v[i].is_zero())
      for (std::size_t j = 0; j < s.dim(); ++j)
        if (!row[j].is_zero()) m(i, j) = v[i] * row[j];
  return m;
}

// B_tau(A,B)C = (omega(A,C)B + omega(B,C)A)/2
template <class K>
Vec<K> b_tau_apply(const Ssr<K>& s, const Vec<K>& a, const Vec<K>& b, const Vec<K>& c) {
  return s.lift(1, 2) * (s.omega(a, c) * b + s.omega(b, c) * a);
}

// columns: d mu_A(e_j) = 2 B_mu(A, e_j) in m-coordinates
template <class K>
Matrix<K> dmu(const Ssr<K>& s, const Vec<K>& a) {
  std::vector<Vec<K>> cols;
  for (std::size_t j = 0; j < s.dim(); ++j) cols.push_back(s.lift(2) * s.bmu(a, s.unit(j)));
  return Matrix<K>::from_columns(cols, s.m_dim(), s.one());
}

template <class K>
Subspace<K> ker_dmu(const Ssr<K>& s, const Vec<K>& a) { return kernel(dmu(s, a)); }

template <class K>
Subspace<K> tangent(const Ssr<K>& s, const Vec<K>& a) {
  std::vector<Vec<K>> vs;
  for (std::size_t i = 0; i < s.m_dim(); ++i) vs.push_back(s.act_basis(i, a));
  return Subspace<K>::span(s.dim(), vs, s.one());
}

template <class K>
Subspace<K> perp(const Ssr<K>& s, const Subspace<K>& w) { return symplectic_perp(w, s.gram()); }

template <class K>
struct CovariantReport {
  Vec<K> mu_coords;
  Matrix<K> mu_matrix;
  Vec<K> psi;
  K q;
  Matrix<K> dmu;
  Subspace<K> ker_dmu;
  Subspace<K> tangent;
};

template <class K>
CovariantReport<K> covariant_report(const Ssr<K>& s, const Vec<K>& a) {
  Vec<K> m = mu(s, a);
  Vec<K> p = s.act(m, a);
  K q = s.lift(3, 2) * s.omega(a, p);
  Matrix<K> d = dmu(s, a);
  return {m, s.element(m), p, q, d, kernel(d), tangent(s, a)};
}

struct Witness {
  bool ok = true;
  std::string detail;
  explicit operator bool() const { return ok; }
  void fail(std::string why) {
    if (ok) detail = std::move(why);
    ok = false;
  }
};

// (m.A)^perp inside m.A
template <class K>
Witness coisotropy_check(const Ssr<K>& s, const Vec<K>& a) {
  if (is_zero(a)) throw ZeroVector("coisotropy_check needs A != 0");
  Witness w;
  auto t = tangent(s, a);
  for (const auto& v : perp(s, t).basis())
    if (!t.contains(v)) {
      w.fail("perp vector outside m.A");
      break;
    }
  return w;
}

// Q(A) = 0 iff A in m.A
template <class K>
bool q_vanishing_test(const Ssr<K>& s, const Vec<K>& a) {
  const bool lhs = big_q(s, a).is_zero();
  const bool rhs = tangent(s, a).contains(a);
  if (lhs != rhs) throw DisagreementError(std::string("Q(A)=0 is ") + (lhs ? "true" : "false") +
                                          " but A in m.A is " + (rhs ? "true" : "false"));
  return lhs;
}

// functional m -> omega(m.v, v) as coordinates on m_basis
template <class K>
Vec<K> moment_tilde(const Ssr<K>& s, const Vec<K>& v) {
  Vec<K> out;
  for (std::size_t a = 0; a < s.m_dim(); ++a) out.push_back(s.omega(s.act_basis(a, v), v));
  return out;
}

// rows: d mu~_v(e_j)(X_a) = 2 omega(X_a v, e_j); returns ker d mu~_v == (m.v)^perp
template <class K>
bool moment_tilde_kernel_check(const Ssr<K>& s, const Vec<K>& v) {
  std::vector<Vec<K>> rows;
  for (std::size_t a = 0; a < s.m_dim(); ++a) {
    Vec<K> xv = s.act_basis(a, v);
    Vec<K> r;
    for (std::size_t j = 0; j < s.dim(); ++j) r.push_back(s.lift(2) * s.omega(xv, s.unit(j)));
    rows.push_back(std::move(r));
  }
  auto k = kernel(Matrix<K>::from_rows(rows, s.dim(), s.one()));
  return k == perp(s, tangent(s, v));
}

}  // namespace ssr
