#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <type_traits>
#include <utility>
#include <vector>

#include "ssr/error.hpp"
#include "ssr/field.hpp"

namespace ssr {

template <class K>
using Vec = std::vector<K>;

template <class K>
Vec<K> zeros(std::size_t n, const K& like) { return Vec<K>(n, like.lift(0)); }

template <class K>
Vec<K> unit_vector(std::size_t n, std::size_t i, const K& like) {
  Vec<K> v = zeros(n, like);
  v[i] = like.lift(1);
  return v;
}

template <class K>
bool is_zero(const Vec<K>& v) {
  return std::all_of(v.begin(), v.end(), [](const K& x) { return x.is_zero(); });
}

template <class K>
Vec<K> operator+(Vec<K> a, const Vec<K>& b) {
  if (a.size() != b.size()) throw DimensionMismatch("vector add");
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

template <class K>
Vec<K> operator-(Vec<K> a, const Vec<K>& b) {
  if (a.size() != b.size()) throw DimensionMismatch("vector sub");
  for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}

template <class K>
Vec<K> operator-(Vec<K> a) {
  for (auto& x : a) x = -x;
  return a;
}

template <class K>
Vec<K> operator*(const K& c, Vec<K> a) {
  for (auto& x : a) x *= c;
  return a;
}

// a += c*b
template <class K>
void axpy(Vec<K>& a, const K& c, const Vec<K>& b) {
  if (c.is_zero()) return;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!b[i].is_zero()) a[i] += c * b[i];
}

template <class K>
K dot(const Vec<K>& a, const Vec<K>& b) {
  if (a.size() != b.size() || a.empty()) throw DimensionMismatch("dot");
  K s = a[0].lift(0);
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!a[i].is_zero() && !b[i].is_zero()) s += a[i] * b[i];
  return s;
}

// ---------------------------------------------------------------------------

template <class K>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const K& fill)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<K> entries)
      : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows * cols) throw DimensionMismatch("matrix entry count");
  }

  static Matrix zero(std::size_t r, std::size_t c, const K& like) { return Matrix(r, c, like.lift(0)); }
  static Matrix identity(std::size_t n, const K& like) {
    Matrix m = zero(n, n, like);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = like.lift(1);
    return m;
  }
  static Matrix from_rows(const std::vector<Vec<K>>& rows, std::size_t cols, const K& like) {
    Matrix m = zero(rows.size(), cols, like);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw DimensionMismatch("from_rows");
      std::copy(rows[i].begin(), rows[i].end(), m.data_.begin() + i * cols);
    }
    return m;
  }
  static Matrix from_columns(const std::vector<Vec<K>>& cols, std::size_t rows, const K& like) {
    Matrix m = zero(rows, cols.size(), like);
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (cols[j].size() != rows) throw DimensionMismatch("from_columns");
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  K& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const K& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  const std::vector<K>& entries() const { return data_; }

  Vec<K> row(std::size_t i) const {
    return Vec<K>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
  }
  Vec<K> col(std::size_t j) const {
    Vec<K> v;
    v.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v.push_back((*this)(i, j));
    return v;
  }
  std::vector<Vec<K>> row_list() const {
    std::vector<Vec<K>> out;
    for (std::size_t i = 0; i < rows_; ++i) out.push_back(row(i));
    return out;
  }
  std::vector<Vec<K>> col_list() const {
    std::vector<Vec<K>> out;
    for (std::size_t j = 0; j < cols_; ++j) out.push_back(col(j));
    return out;
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const K& x) { return x.is_zero(); });
  }
  bool is_square() const { return rows_ == cols_; }

  Matrix transpose() const {
    Matrix t(cols_, rows_, data_.empty() ? K() : data_[0]);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix& operator+=(const Matrix& o) {
    same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  Matrix& operator*=(const K& c) {
    for (auto& x : data_) x *= c;
    return *this;
  }
  // this += c*o
  void add_scaled(const K& c, const Matrix& o) {
    same_shape(o);
    if (c.is_zero()) return;
    for (std::size_t i = 0; i < data_.size(); ++i)
      if (!o.data_[i].is_zero()) data_[i] += c * o.data_[i];
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator-(Matrix a) {
    for (auto& x : a.data_) x = -x;
    return a;
  }
  friend Matrix operator*(const K& c, Matrix a) { return a *= c; }
  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw DimensionMismatch("matrix product");
    Matrix c = zero(a.rows_, b.cols_, a.like());
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const K& x = a(i, k);
        if (x.is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          if (!b(k, j).is_zero()) c(i, j) += x * b(k, j);
      }
    return c;
  }
  friend Vec<K> operator*(const Matrix& a, const Vec<K>& v) {
    if (a.cols_ != v.size()) throw DimensionMismatch("matrix-vector product");
    Vec<K> out = zeros(a.rows_, a.like());
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k)
        if (!v[k].is_zero() && !a(i, k).is_zero()) out[i] += a(i, k) * v[k];
    return out;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

  K trace() const {
    K s = like().lift(0);
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) s += (*this)(i, i);
    return s;
  }

  const K& like() const {
    if (data_.empty()) throw DimensionMismatch("empty matrix has no field");
    return data_[0];
  }

 private:
  void same_shape(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionMismatch("matrix shapes differ");
  }
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<K> data_;
};

template <class K>
Matrix<K> commutator(const Matrix<K>& a, const Matrix<K>& b) { return a * b - b * a; }

template <class K>
Vec<K> flatten(const Matrix<K>& m) { return m.entries(); }

// ---------------------------------------------------------------------------
// Echelon forms

template <class K>
struct Echelon {
  Matrix<K> reduced;
  std::vector<std::size_t> pivots;
};

namespace detail {

template <class K>
void back_reduce(Matrix<K>& m, const std::vector<std::size_t>& pivots) {
  const std::size_t cols = m.cols();
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    const std::size_t c = pivots[r];
    if (m(r, c) != m(r, c).lift(1)) {
      K inv = m(r, c).inv();
      for (std::size_t j = c; j < cols; ++j)
        if (!m(r, j).is_zero()) m(r, j) *= inv;
    }
    for (std::size_t i = 0; i < pivots.size(); ++i) {
      if (i == r || m(i, c).is_zero()) continue;
      K f = m(i, c);
      for (std::size_t j = c; j < cols; ++j)
        if (!m(r, j).is_zero()) m(i, j) -= f * m(r, j);
    }
  }
}

template <class K>
Echelon<K> plain_rref(Matrix<K> m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c).is_zero()) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    K inv = m(r, c).inv();
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = r + 1; i < m.rows(); ++i) {
      if (m(i, c).is_zero()) continue;
      K f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j)
        if (!m(r, j).is_zero()) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  Matrix<K> top = Matrix<K>::zero(pivots.size(), m.cols(), m.like());
  for (std::size_t i = 0; i < pivots.size(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) top(i, j) = m(i, j);
  back_reduce(top, pivots);
  return {std::move(top), std::move(pivots)};
}

// fraction-free forward elimination on integer rows, then exact normalisation
inline Echelon<Rational> bareiss_rref(const Matrix<Rational>& in) {
  const std::size_t rows = in.rows(), cols = in.cols();
  std::vector<std::vector<mpz_class>> a(rows, std::vector<mpz_class>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    mpz_class l = 1;
    for (std::size_t j = 0; j < cols; ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), in(i, j).value().get_den_mpz_t());
    for (std::size_t j = 0; j < cols; ++j) {
      const mpq_class& q = in(i, j).value();
      a[i][j] = q.get_num() * (l / q.get_den());
    }
  }
  std::vector<std::size_t> pivots;
  mpz_class prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        a[i][j] = a[r][c] * a[i][j] - a[i][c] * a[r][j];
        mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
      }
      a[i][c] = 0;
    }
    prev = a[r][c];
    pivots.push_back(c);
    ++r;
  }
  Matrix<Rational> top = Matrix<Rational>::zero(pivots.size(), cols, Rational(0));
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    mpz_class g = 0;
    for (std::size_t j = 0; j < cols; ++j) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), a[i][j].get_mpz_t());
    for (std::size_t j = 0; j < cols; ++j)
      if (a[i][j] != 0) top(i, j) = Rational(mpq_class(a[i][j] / g));
  }
  back_reduce(top, pivots);
  return {std::move(top), std::move(pivots)};
}

}  // namespace detail

// reduced row echelon form, zero rows dropped
template <class K>
Echelon<K> rref(const Matrix<K>& m) {
  if (m.rows() == 0 || m.cols() == 0) return {m, {}};
  if constexpr (std::is_same_v<K, Rational>) {
    return detail::bareiss_rref(m);
  } else {
    return detail::plain_rref(m);
  }
}

template <class K>
std::size_t rank(const Matrix<K>& m) { return rref(m).pivots.size(); }

template <class K>
class Subspace;

// null space of m as a subspace of K^{cols}
template <class K>
Subspace<K> kernel(const Matrix<K>& m);

// one solution x of m x = b
template <class K>
Vec<K> solve(const Matrix<K>& m, const Vec<K>& b) {
  if (b.size() != m.rows()) throw DimensionMismatch("solve rhs");
  Matrix<K> aug = Matrix<K>::zero(m.rows(), m.cols() + 1, m.like());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = b[i];
  }
  auto e = rref(aug);
  if (!e.pivots.empty() && e.pivots.back() == m.cols()) throw InconsistentSystem("no solution");
  Vec<K> x = zeros(m.cols(), m.like());
  for (std::size_t r = 0; r < e.pivots.size(); ++r) x[e.pivots[r]] = e.reduced(r, m.cols());
  return x;
}

template <class K>
Matrix<K> inverse(const Matrix<K>& m) {
  if (!m.is_square()) throw DimensionMismatch("inverse of non-square matrix");
  const std::size_t n = m.rows();
  Matrix<K> aug = Matrix<K>::zero(n, 2 * n, m.like());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = m.like().lift(1);
  }
  auto e = rref(aug);
  if (e.pivots.size() < n || e.pivots[n - 1] != n - 1) throw DivisionByNonInvertible("singular matrix");
  Matrix<K> inv = Matrix<K>::zero(n, n, m.like());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = e.reduced(i, n + j);
  return inv;
}

// ---------------------------------------------------------------------------

template <class K>
class Subspace {
 public:
  Subspace(std::size_t ambient, const K& like)
      : ambient_(ambient), zero_(like.lift(0)), basis_(Matrix<K>::zero(0, ambient, like)) {}

  static Subspace span(std::size_t ambient, const std::vector<Vec<K>>& vs, const K& like) {
    Subspace s(ambient, like);
    if (vs.empty()) return s;
    auto e = rref(Matrix<K>::from_rows(vs, ambient, like));
    s.basis_ = std::move(e.reduced);
    s.pivots_ = std::move(e.pivots);
    return s;
  }
  static Subspace whole(std::size_t ambient, const K& like) {
    std::vector<Vec<K>> vs;
    for (std::size_t i = 0; i < ambient; ++i) vs.push_back(unit_vector(ambient, i, like));
    return span(ambient, vs, like);
  }
  static Subspace from_echelon(std::size_t ambient, Echelon<K> e, const K& like) {
    Subspace s(ambient, like);
    s.basis_ = std::move(e.reduced);
    s.pivots_ = std::move(e.pivots);
    return s;
  }

  std::size_t dim() const { return pivots_.size(); }
  std::size_t ambient() const { return ambient_; }
  const K& like() const { return zero_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  const Matrix<K>& basis_matrix() const { return basis_; }
  std::vector<Vec<K>> basis() const { return basis_.row_list(); }

  // coordinates in the echelon basis, or nothing if v is not in the subspace
  std::optional<Vec<K>> coordinates(const Vec<K>& v) const {
    if (v.size() != ambient_) throw DimensionMismatch("subspace membership");
    Vec<K> rest = v;
    Vec<K> c = zeros(dim(), zero_);
    for (std::size_t r = 0; r < dim(); ++r) {
      K f = rest[pivots_[r]];
      if (f.is_zero()) continue;
      c[r] = f;
      for (std::size_t j = 0; j < ambient_; ++j)
        if (!basis_(r, j).is_zero()) rest[j] -= f * basis_(r, j);
    }
    if (!ssr::is_zero(rest)) return std::nullopt;
    return c;
  }
  bool contains(const Vec<K>& v) const { return coordinates(v).has_value(); }
  bool contains(const Subspace& w) const {
    for (const auto& v : w.basis())
      if (!contains(v)) return false;
    return true;
  }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.pivots_ == b.pivots_ &&
           (a.dim() == 0 || a.basis_ == b.basis_);
  }
  friend bool operator!=(const Subspace& a, const Subspace& b) { return !(a == b); }

 private:
  std::size_t ambient_;
  K zero_;
  Matrix<K> basis_;
  std::vector<std::size_t> pivots_;
};

template <class K>
Subspace<K> kernel(const Matrix<K>& m) {
  const std::size_t n = m.cols();
  const K& like = m.like();
  auto e = rref(m);
  std::vector<bool> is_pivot(n, false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<Vec<K>> vs;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    Vec<K> v = zeros(n, like);
    v[f] = like.lift(1);
    for (std::size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = -e.reduced(r, f);
    vs.push_back(std::move(v));
  }
  return Subspace<K>::span(n, vs, like);
}

template <class K>
Subspace<K> operator+(const Subspace<K>& u, const Subspace<K>& w) {
  if (u.ambient() != w.ambient()) throw DimensionMismatch("subspace sum");
  auto vs = u.basis();
  for (auto& v : w.basis()) vs.push_back(std::move(v));
  return Subspace<K>::span(u.ambient(), vs, u.like());
}

template <class K>
Subspace<K> intersection(const Subspace<K>& u, const Subspace<K>& w) {
  if (u.ambient() != w.ambient()) throw DimensionMismatch("subspace intersection");
  const K& like = u.like();
  if (u.dim() == 0 || w.dim() == 0) return Subspace<K>(u.ambient(), like);
  if (w.dim() == w.ambient()) return u;
  // x = sum c_i u_i lies in w iff every functional vanishing on w vanishes on x
  auto ann = kernel(w.basis_matrix()).basis();
  Matrix<K> a = Matrix<K>::from_rows(ann, u.ambient(), like) * u.basis_matrix().transpose();
  auto cs = kernel(a).basis();
  std::vector<Vec<K>> vs;
  Matrix<K> ut = u.basis_matrix().transpose();
  for (const auto& c : cs) vs.push_back(ut * c);
  return Subspace<K>::span(u.ambient(), vs, like);
}

template <class K>
Subspace<K> eigenspace(const Matrix<K>& m, const K& c) {
  if (!m.is_square()) throw DimensionMismatch("eigenspace of non-square matrix");
  Matrix<K> d = m;
  for (std::size_t i = 0; i < m.rows(); ++i) d(i, i) -= c;
  return kernel(d);
}

// ---------------------------------------------------------------------------

template <class K>
class SymplecticForm {
 public:
  explicit SymplecticForm(Matrix<K> gram) : gram_(std::move(gram)) {
    if (!gram_.is_square() || gram_.rows() % 2 != 0)
      throw DimensionMismatch("symplectic gram must be square of even size");
    if (gram_.transpose() != -gram_) throw DegenerateForm("gram is not antisymmetric");
    if (rank(gram_) != gram_.rows()) throw DegenerateForm("gram is degenerate");
  }
  std::size_t dim() const { return gram_.rows(); }
  const Matrix<K>& gram() const { return gram_; }
  K operator()(const Vec<K>& u, const Vec<K>& v) const { return dot(u, gram_ * v); }

 private:
  Matrix<K> gram_;
};

template <class K>
Subspace<K> symplectic_perp(const Subspace<K>& w, const Matrix<K>& gram) {
  if (w.ambient() != gram.rows()) throw DimensionMismatch("symplectic_perp");
  if (w.dim() == 0) return Subspace<K>::whole(w.ambient(), w.like());
  return kernel(w.basis_matrix() * gram);
}

template <class K>
Subspace<K> symplectic_perp(const Subspace<K>& w, const SymplecticForm<K>& omega) {
  return symplectic_perp(w, omega.gram());
}

template <class K>
bool is_isotropic(const Subspace<K>& w, const Matrix<K>& gram) {
  return symplectic_perp(w, gram).contains(w);
}

// ---------------------------------------------------------------------------

// coefficients c_0..c_d, low degree first, monic
template <class K>
Vec<K> minimal_polynomial(const Matrix<K>& m) {
  if (!m.is_square()) throw DimensionMismatch("minimal polynomial of non-square matrix");
  const K& like = m.like();
  const std::size_t n = m.rows();
  std::vector<Vec<K>> rows, combos;
  std::vector<std::size_t> pivots;
  Matrix<K> power = Matrix<K>::identity(n, like);
  for (std::size_t k = 0; k <= n; ++k) {
    Vec<K> v = power.entries();
    Vec<K> t = zeros(n + 1, like);
    t[k] = like.lift(1);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const K& f = v[pivots[i]];
      if (f.is_zero()) continue;
      K g = f;
      axpy(v, -g, rows[i]);
      axpy(t, -g, combos[i]);
    }
    auto nz = std::find_if(v.begin(), v.end(), [](const K& x) { return !x.is_zero(); });
    if (nz == v.end()) {
      t.resize(k + 1);
      return t;
    }
    K inv = nz->inv();
    pivots.push_back(static_cast<std::size_t>(nz - v.begin()));
    rows.push_back(inv * v);
    combos.push_back(inv * t);
    power = power * m;
  }
  throw DisagreementError("no annihilating polynomial of degree <= n");
}

template <class K>
Matrix<K> eval_polynomial(const Vec<K>& coeffs, const Matrix<K>& m) {
  Matrix<K> acc = Matrix<K>::zero(m.rows(), m.cols(), m.like());
  for (std::size_t i = coeffs.size(); i-- > 0;) {
    acc = acc * m;
    for (std::size_t d = 0; d < m.rows(); ++d) acc(d, d) += coeffs[i];
  }
  return acc;
}

template <class K>
Vec<K> poly_mul(const Vec<K>& a, const Vec<K>& b) {
  Vec<K> c = zeros(a.size() + b.size() - 1, a[0]);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

// ---------------------------------------------------------------------------

// coordinates of vectors in the span of a fixed independent family
template <class K>
class SpanSolver {
 public:
  SpanSolver() = default;
  SpanSolver(std::vector<Vec<K>> basis, const K& like) : basis_(std::move(basis)), zero_(like.lift(0)) {
    if (basis_.empty()) return;
    n_ = basis_[0].size();
    auto e = rref(Matrix<K>::from_rows(basis_, n_, like));
    if (e.pivots.size() != basis_.size()) throw DimensionMismatch("SpanSolver basis is dependent");
    rows_ = e.pivots;
    Matrix<K> sub = Matrix<K>::zero(rows_.size(), rows_.size(), like);
    for (std::size_t i = 0; i < rows_.size(); ++i)
      for (std::size_t j = 0; j < basis_.size(); ++j) sub(i, j) = basis_[j][rows_[i]];
    inv_ = inverse(sub);
  }

  std::size_t size() const { return basis_.size(); }

  Vec<K> coordinates_unchecked(const Vec<K>& v) const {
    Vec<K> t;
    t.reserve(rows_.size());
    for (auto r : rows_) t.push_back(v[r]);
    return inv_ * t;
  }

  std::optional<Vec<K>> coordinates(const Vec<K>& v) const {
    if (v.size() != n_) throw DimensionMismatch("SpanSolver vector length");
    if (basis_.empty()) {
      if (ssr::is_zero(v)) return Vec<K>{};
      return std::nullopt;
    }
    Vec<K> c = coordinates_unchecked(v);
    Vec<K> back = zeros(n_, zero_);
    for (std::size_t j = 0; j < basis_.size(); ++j) axpy(back, c[j], basis_[j]);
    if (back != v) return std::nullopt;
    return c;
  }

 private:
  std::vector<Vec<K>> basis_;
  K zero_;
  std::size_t n_ = 0;
  std::vector<std::size_t> rows_;
  Matrix<K> inv_;
};

// ---------------------------------------------------------------------------

// incremental elimination for large sparse homogeneous systems
template <class K>
class SparseSystem {
 public:
  using Row = std::map<std::size_t, K>;

  SparseSystem(std::size_t unknowns, const K& like) : n_(unknowns), zero_(like.lift(0)) {}

  void add_equation(Row w) {
    reduce(w);
    if (w.empty()) return;
    K inv = w.begin()->second.inv();
    for (auto& [c, x] : w) x *= inv;
    pivot_of_[w.begin()->first] = rows_.size();
    rows_.push_back(std::move(w));
  }

  // w lies in the row span
  bool contains(Row w) const {
    reduce(w);
    return w.empty();
  }

  std::size_t rank() const { return rows_.size(); }

  std::vector<Vec<K>> kernel_basis() const {
    std::vector<std::size_t> order;
    for (const auto& [c, idx] : pivot_of_) order.push_back(c);
    std::vector<Vec<K>> out;
    for (std::size_t f = 0; f < n_; ++f) {
      if (pivot_of_.count(f)) continue;
      Vec<K> x = zeros(n_, zero_);
      x[f] = zero_.lift(1);
      for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const Row& r = rows_[pivot_of_.at(*it)];
        K s = zero_;
        for (const auto& [c, a] : r)
          if (c != *it && !x[c].is_zero()) s += a * x[c];
        x[*it] = -s;
      }
      out.push_back(std::move(x));
    }
    return out;
  }

 private:
  std::size_t n_;
  K zero_;
  std::vector<Row> rows_;
  std::map<std::size_t, std::size_t> pivot_of_;

  void reduce(Row& w) const {
    for (auto it = w.begin(); it != w.end();) {
      if (it->second.is_zero()) {
        it = w.erase(it);
        continue;
      }
      auto p = pivot_of_.find(it->first);
      if (p == pivot_of_.end()) {
        ++it;
        continue;
      }
      K f = it->second;
      const Row& r = rows_[p->second];
      for (const auto& [c, x] : r) {
        auto [slot, fresh] = w.try_emplace(c, zero_);
        slot->second -= f * x;
      }
      it = w.erase(it);
    }
  }
};

}  // namespace ssr
