#pragma once

#include <optional>
#include <type_traits>
#include <utility>
#include <vector>

#include "ssr/extension.hpp"
#include "ssr/ssr.hpp"

namespace ssr {

// A = B + C; over A_lambda, C = conj(B). lambda_class is the square-class representative of Q(A).
template <class S, class K = S>
struct Decomposition {
  Vec<S> b;
  Vec<S> c;
  S q;
  K lambda_class;
};

namespace detail {

template <class K>
K checked_quartic(const Ssr<K>& s, const Vec<K>& a) {
  s.check(a);
  K q = big_q(s, a);
  if (q.is_zero()) throw ZeroQuartic("Q(A) = 0");
  return q;
}

template <class K>
std::pair<Vec<K>, Vec<K>> split_with(const Vec<K>& a, const Vec<K>& ps, const K& q) {
  const K half = q.lift(1, 2);
  const Vec<K> t = q.inv() * ps;
  return {half * (a + t), half * (a - t)};
}

}  // namespace detail

template <class K>
Decomposition<K> lagrangian_decompose(const Ssr<K>& s, const Vec<K>& a) {
  const K qa = detail::checked_quartic(s, a);
  auto r = is_square(qa);
  if (!r) throw NotASquare("Q(A) = " + qa.to_string() + " is not a square");
  const Vec<K> ps = psi(s, a);
  auto [b, c] = detail::split_with(a, ps, *r);
  if (!is_zero(mu(s, b)) || !is_zero(mu(s, c))) throw DisagreementError("decomposition summand is not mu-null");
  const K w = s.omega(b, c);
  if (w != s.lift(-1, 3) * *r) throw DisagreementError("omega(B,C) != -q/3");
  if (s.lift(9) * w * w != qa) throw DisagreementError("(3 omega(B,C))^2 != Q(A)");
  auto [b2, c2] = detail::split_with(a, ps, -*r);
  if (b2 != c || c2 != b) throw DisagreementError("opposite root does not swap the pair");
  return {std::move(b), std::move(c), *r, square_class(qa).rep};
}

// B in V (x) A_lambda with A = B + conj(B)
template <class K>
Decomposition<Quad<K>, K> quad_ext_decompose(const Ssr<K>& s, const Vec<K>& a, const K& lambda) {
  const K qa = detail::checked_quartic(s, a);
  const QuadContext<K> ctx(lambda);
  auto z = is_square(qa / lambda);
  if (!z) throw WrongSquareClass("Q(A) = " + qa.to_string() + " is not in the class of " + lambda.to_string());
  const Quad<K> q = ctx.embed(*z) * ctx.sqrt_lambda();
  const Vec<Quad<K>> ae = ctx.embed(a), pe = ctx.embed(psi(s, a));
  const Quad<K> half = ctx.embed(s.lift(1, 2));
  Vec<Quad<K>> b = half * (ae + q.inv() * pe);
  Vec<Quad<K>> c = conj(b);
  if (b + c != ae) throw DisagreementError("A != B + conj(B)");
  const Ssr<Quad<K>> se = base_extend(s, ctx);
  if (!is_zero(mu(se, b))) throw DisagreementError("mu'(B) != 0");
  const Quad<K> w = se.omega(b, c);
  if (w.is_zero()) throw DisagreementError("omega'(B, conj B) = 0");
  if (ctx.embed(s.lift(9)) * w * w != ctx.embed(qa)) throw DisagreementError("(3 omega'(B, conj B))^2 != Q(A)");
  return {std::move(b), std::move(c), q, square_class(qa).rep};
}

// ---------------------------------------------------------------------------

template <class K>
class MuFiber {
 public:
  MuFiber(const Ssr<K>& s, Vec<K> a) : a_(std::move(a)) {
    q_ = detail::checked_quartic(s, a_);
    psi_ = psi(s, a_);
    plane_ = Matrix<K>::from_columns({a_, psi_}, a_.size(), q_);
  }

  const Vec<K>& base() const { return a_; }
  const Vec<K>& psi_value() const { return psi_; }
  const K& quartic() const { return q_; }

  Vec<K> point(const K& x, const K& y) const { return x * a_ + y * psi_; }
  bool on_conic(const K& x, const K& y) const { return x * x - q_ * y * y == q_.lift(1); }

  // (x, y) with A' = xA + yPsi(A), if A' lies in that plane
  std::optional<std::pair<K, K>> plane_coordinates(const Vec<K>& v) const {
    if (v.size() != a_.size()) throw DimensionMismatch("fiber membership");
    try {
      Vec<K> xy = solve(plane_, v);
      return std::pair<K, K>{xy[0], xy[1]};
    } catch (const InconsistentSystem&) {
      return std::nullopt;
    }
  }

  bool contains(const Vec<K>& v) const {
    auto xy = plane_coordinates(v);
    return xy && on_conic(xy->first, xy->second);
  }

  // conic points: ((1+Qt^2)/(1-Qt^2), 2t/(1-Qt^2)); over F_p every t plus (-1, 0), otherwise t = 1..count
  std::vector<std::pair<K, K>> conic_points(std::size_t count = 10) const {
    std::vector<std::pair<K, K>> out;
    auto push = [&](const K& t) {
      const K den = q_.lift(1) - q_ * t * t;
      if (den.is_zero()) return;
      const K inv = den.inv();
      out.emplace_back((q_.lift(1) + q_ * t * t) * inv, q_.lift(2) * t * inv);
    };
    if constexpr (std::is_same_v<K, ModP>) {
      if (q_.modulus() <= kExhaustiveLimit) {
        for (std::uint64_t t = 0; t < q_.modulus(); ++t) push(q_.lift(static_cast<long>(t)));
        out.emplace_back(q_.lift(-1), q_.lift(0));
        return out;
      }
    }
    for (std::size_t t = 1; t <= count; ++t) push(q_.lift(static_cast<long>(t)));
    return out;
  }

  std::vector<Vec<K>> sample(std::size_t count = 10) const {
    std::vector<Vec<K>> out;
    for (const auto& [x, y] : conic_points(count)) out.push_back(point(x, y));
    return out;
  }

  static constexpr std::uint64_t kExhaustiveLimit = 65537;

 private:
  Vec<K> a_;
  Vec<K> psi_;
  K q_;
  Matrix<K> plane_;
};

template <class K>
MuFiber<K> mu_fiber(const Ssr<K>& s, const Vec<K>& a) {
  return MuFiber<K>(s, a);
}

// ---------------------------------------------------------------------------

template <class K>
struct MuEigenBlock {
  Subspace<K> space;
  K scalar;
};

template <class K>
struct MuEigenDecomposition {
  Decomposition<K> pair;
  std::vector<MuEigenBlock<K>> blocks;  // <B>, C^perp n Ker dmu_B, B^perp n Ker dmu_C, <C>
};

template <class K>
MuEigenDecomposition<K> mu_eigendecomposition(const Ssr<K>& s, const Vec<K>& a) {
  Decomposition<K> d = lagrangian_decompose(s, a);
  const std::size_t dim = s.dim(), n = dim / 2;
  const K& like = s.one();
  const K w = s.omega(d.b, d.c);
  const Subspace<K> lb = Subspace<K>::span(dim, {d.b}, like), lc = Subspace<K>::span(dim, {d.c}, like);
  std::vector<MuEigenBlock<K>> blocks{
      {lb, s.lift(-3) * w},
      {intersection(perp(s, lc), ker_dmu(s, d.b)), -w},
      {intersection(perp(s, lb), ker_dmu(s, d.c)), w},
      {lc, s.lift(3) * w}};

  const Matrix<K> m = mu_matrix(s, a);
  const std::size_t dims[4] = {1, n - 1, n - 1, 1};
  Subspace<K> total(dim, like);
  for (std::size_t i = 0; i < 4; ++i) {
    const auto& blk = blocks[i];
    if (blk.space.dim() != dims[i])
      throw DisagreementError("eigenblock " + std::to_string(i) + " has dim " + std::to_string(blk.space.dim()));
    for (const auto& v : blk.space.basis())
      if (m * v != blk.scalar * v) throw DisagreementError("eigenblock " + std::to_string(i) + " has the wrong scalar");
    total = total + blk.space;
  }
  if (total.dim() != dim) throw DisagreementError("eigenblocks do not span V");
  const Subspace<K> plane = Subspace<K>::span(dim, {a, psi(s, a)}, like);
  if (blocks[0].space + blocks[3].space != plane) throw DisagreementError("E_{-q} + E_q != <A, Psi(A)>");
  if (blocks[1].space + blocks[2].space != perp(s, plane))
    throw DisagreementError("E_{-q/3} + E_{q/3} != <A, Psi(A)>^perp");
  return {std::move(d), std::move(blocks)};
}

}  // namespace ssr
