#pragma once

#include <algorithm>
#include <bit>
#include <vector>

#include "ssr/constructions.hpp"
#include "ssr/exterior.hpp"
#include "ssr/random.hpp"

namespace ssr {

// Spinors of k^12 = E1 + E-1 modelled on the exterior algebra of k^6 (64 masks).
// Generators x_0..x_5 = e_i act by contraction, x_6..x_11 = f_i by exterior product,
// so c(x)c(y) + c(y)c(x) = 2 g(x, y) with g(e_i, f_j) = delta_ij / 2.
class SpinorModel {
 public:
  enum class Parity { Even, Odd };

  explicit SpinorModel(Parity parity = Parity::Even) : parity_(parity) {
    for (unsigned m = 0; m < 64; ++m)
      if ((std::popcount(m) % 2 == 0) == (parity == Parity::Even)) masks_.push_back(m);
    std::sort(masks_.begin(), masks_.end(), [](unsigned a, unsigned b) {
      if (std::popcount(a) != std::popcount(b)) return std::popcount(a) < std::popcount(b);
      // lexicographic on increasing index lists
      for (unsigned x = a, y = b; x && y; x &= x - 1, y &= y - 1) {
        unsigned i = std::countr_zero(x), j = std::countr_zero(y);
        if (i != j) return i < j;
      }
      return false;
    });
    index_.assign(64, npos);
    for (std::size_t i = 0; i < masks_.size(); ++i) index_[masks_[i]] = i;
  }

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  static constexpr std::size_t kGenerators = 12;

  Parity parity() const { return parity_; }
  std::size_t dim() const { return masks_.size(); }
  const std::vector<unsigned>& masks() const { return masks_; }
  std::size_t index_of(unsigned mask) const { return index_[mask]; }

  // c(x_a) e^m = sign e^{m'}; sign 0 means the image vanishes
  static std::pair<int, unsigned> clifford(std::size_t a, unsigned m) {
    if (a < 6) {
      int s = ext::interior_sign(static_cast<unsigned>(a), m);
      return {s, m & ~(1u << a)};
    }
    unsigned bit = 1u << (a - 6);
    if (m & bit) return {0, m};
    return {ext::wedge_sign(bit, m), m | bit};
  }

  // [c(x_a), c(x_b)] on this half-spin space
  template <class K>
  Matrix<K> commutator_operator(std::size_t a, std::size_t b, const K& like) const {
    Matrix<K> op = Matrix<K>::zero(dim(), dim(), like);
    for (std::size_t j = 0; j < dim(); ++j) {
      unsigned m = masks_[j];
      auto [s1, m1] = clifford(b, m);
      if (s1) {
        auto [s2, m2] = clifford(a, m1);
        if (s2) op(index_[m2], j) += like.lift(s1 * s2);
      }
      auto [t1, n1] = clifford(a, m);
      if (t1) {
        auto [t2, n2] = clifford(b, n1);
        if (t2) op(index_[n2], j) -= like.lift(t1 * t2);
      }
    }
    return op;
  }

  // dim of {x in k^12 : c(x)s = 0}
  template <class K>
  std::size_t annihilator_dim(const Vec<K>& s) const {
    const K& like = s[0];
    std::vector<Vec<K>> cols;
    for (std::size_t a = 0; a < kGenerators; ++a) {
      Vec<K> img(64, like.lift(0));
      for (std::size_t j = 0; j < dim(); ++j) {
        if (s[j].is_zero()) continue;
        auto [sg, m] = clifford(a, masks_[j]);
        if (sg) img[m] += sg > 0 ? s[j] : -s[j];
      }
      cols.push_back(std::move(img));
    }
    return kGenerators - rank(Matrix<K>::from_columns(cols, 64, like));
  }

  // polarisation grading: e^m has weight |m| - 3
  int weight(std::size_t i) const { return std::popcount(masks_[i]) - 3; }

 private:
  Parity parity_;
  std::vector<unsigned> masks_;
  std::vector<std::size_t> index_;
};

template <class K>
Ssr<K> half_spinor12(const K& like, SpinorModel::Parity parity = SpinorModel::Parity::Even) {
  const SpinorModel model(parity);
  const std::size_t n = model.dim();
  SsrData<K> d;
  d.construction = "HalfSpinor12";
  d.notes.emplace_back("parity", parity == SpinorModel::Parity::Even ? "even" : "odd");
  for (std::size_t a = 0; a < SpinorModel::kGenerators; ++a)
    for (std::size_t b = a + 1; b < SpinorModel::kGenerators; ++b)
      d.m_basis.push_back(model.commutator_operator(a, b, like));
  const std::size_t dm = d.m_basis.size();
  std::vector<SparseOp<K>> sparse;
  for (const auto& x : d.m_basis) sparse.emplace_back(x);

  // invariant antisymmetric form: unknowns G_ij, i < j
  auto var = [n](std::size_t i, std::size_t j) { return i * n + j - (i + 1) * (i + 2) / 2; };
  const std::size_t unknowns = n * (n - 1) / 2;
  SparseSystem<K> sys(unknowns, like);
  for (const auto& x : sparse)
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = r + 1; c < n; ++c) {
        typename SparseSystem<K>::Row row;
        auto add = [&](std::size_t i, std::size_t j, const K& v) {
          if (i == j) return;
          auto [it, f] = row.try_emplace(i < j ? var(i, j) : var(j, i), like.lift(0));
          it->second += i < j ? v : -v;
        };
        for (const auto& [k, v] : x.cols[r]) add(k, c, v);  // X_kr G_kc
        for (const auto& [k, v] : x.cols[c]) add(r, k, v);  // G_rk X_kc
        sys.add_equation(std::move(row));
      }
  auto ker = sys.kernel_basis();
  if (ker.size() != 1)
    throw DisagreementError("invariant symplectic form is not unique up to scale (kernel dim " +
                            std::to_string(ker.size()) + ")");
  Vec<K> u = ker[0];
  const K lead = *std::find_if(u.begin(), u.end(), [](const K& x) { return !x.is_zero(); });
  u = lead.inv() * u;
  d.omega = Matrix<K>::zero(n, n, like);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      d.omega(i, j) = u[var(i, j)];
      d.omega(j, i) = -u[var(i, j)];
    }

  // B(s, t) in m determined by tr(B(s,t) Y) = omega(Y s, t) for all Y in m
  Matrix<K> tr = Matrix<K>::zero(dm, dm, like);
  for (std::size_t a = 0; a < dm; ++a)
    for (std::size_t b = a; b < dm; ++b) {
      K acc = like.lift(0);
      for (std::size_t j = 0; j < n; ++j)
        for (const auto& [i, x] : sparse[b].cols[j])
          if (!d.m_basis[a](j, i).is_zero()) acc += d.m_basis[a](j, i) * x;
      tr(a, b) = acc;
      tr(b, a) = acc;
    }
  const Matrix<K> tr_inv = inverse(tr);
  d.bmu.assign(n, std::vector<Vec<K>>(n));
  for (std::size_t i = 0; i < n; ++i) {
    // omega(X_b e_i, e_j) for all b, j
    std::vector<Vec<K>> w(dm);
    for (std::size_t b = 0; b < dm; ++b) {
      Vec<K> xe(n, like.lift(0));
      for (const auto& [r, x] : sparse[b].cols[i]) xe[r] = x;
      w[b] = d.omega.transpose() * xe;
    }
    for (std::size_t j = i; j < n; ++j) {
      Vec<K> t(dm, like.lift(0));
      for (std::size_t b = 0; b < dm; ++b) t[b] = w[b][j];
      d.bmu[i][j] = tr_inv * t;
      d.bmu[j][i] = d.bmu[i][j];
    }
  }
  Ssr<K> raw(d);
  Rng rng(20240611);
  Vec<K> a, b, c;
  do {
    a = random_vector(rng, n, like);
    b = random_vector(rng, n, like);
    c = random_vector(rng, n, like);
  } while (is_zero(a) || is_zero(b) || is_zero(c));
  const K k = calibrate_defining_identity(raw, a, b, c);
  scale_bmu(d, k);
  d.notes.emplace_back("calibration", k.to_string());
  return Ssr<K>(std::move(d));
}

}  // namespace ssr
