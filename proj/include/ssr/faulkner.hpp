#pragma once

#include <array>
#include <deque>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ssr/identities.hpp"
#include "ssr/random.hpp"
#include "ssr/verify.hpp"

namespace ssr {

// <x,y> and <x,y,z> on V; <e_x,e_y,e_z> stored at (x*n + y)*n + z
template <class K>
struct TernaryProduct {
  Matrix<K> form;
  std::vector<Vec<K>> table;

  std::size_t dim() const { return form.rows(); }
  const Vec<K>& at(std::size_t x, std::size_t y, std::size_t z) const { return table[(x * dim() + y) * dim() + z]; }
  K pair(const Vec<K>& x, const Vec<K>& y) const { return dot(x, form * y); }

  Vec<K> operator()(const Vec<K>& x, const Vec<K>& y, const Vec<K>& z) const {
    const std::size_t n = dim();
    Vec<K> out = zeros(n, form.like());
    for (std::size_t a = 0; a < n; ++a) {
      if (x[a].is_zero()) continue;
      for (std::size_t b = 0; b < n; ++b) {
        if (y[b].is_zero()) continue;
        const K xy = x[a] * y[b];
        for (std::size_t c = 0; c < n; ++c)
          if (!z[c].is_zero()) axpy(out, xy * z[c], at(a, b, c));
      }
    }
    return out;
  }

  // B(x,y)z = 1/2 <x,y> z - <z,x,y>
  Matrix<K> b_operator(const Vec<K>& x, const Vec<K>& y) const {
    const std::size_t n = dim();
    const K& like = form.like();
    const K h = like.lift(1, 2) * pair(x, y);
    std::vector<Vec<K>> cols;
    for (std::size_t z = 0; z < n; ++z) {
      const Vec<K> ez = unit_vector(n, z, like);
      cols.push_back(h * ez - (*this)(ez, x, y));
    }
    return Matrix<K>::from_columns(cols, n, like);
  }
};

template <class K>
TernaryProduct<K> ternary_from_ssr(const Ssr<K>& s) {
  const std::size_t n = s.dim();
  TernaryProduct<K> t{s.gram(), {}};
  t.table.resize(n * n * n);
  for (std::size_t z = 0; z < n; ++z)
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) {
        Vec<K> v = s.lift(1, 2) * s.gram()(x, y) * s.unit(z);
        v = v - s.bmu_basis_apply(x, y, z);
        t.table[(z * n + x) * n + y] = std::move(v);
      }
  return t;
}

struct TernaryAxiomOptions {
  std::size_t exhaustive_max_dim = 6;  // above this, random basis tuples
  std::size_t samples = 200;
  std::uint64_t seed = 1;
};

struct TernaryAxiomReport {
  IdentityReport axioms;  // T1..T4, B1..B4
  bool exhaustive = false;
  std::size_t tuples = 0;
  bool t_equals_b() const {
    auto get = [&](const std::string& n) {
      for (const auto& [k, v] : axioms.items)
        if (k == n) return v;
      return false;
    };
    return (get("T1") && get("T2") && get("T3") && get("T4")) ==
           (get("B1") && get("B2") && get("B3") && get("B4"));
  }
};

template <class K>
TernaryAxiomReport verify_ternary_axioms(const TernaryProduct<K>& t, TernaryAxiomOptions opt = {}) {
  const std::size_t n = t.dim();
  const K& like = t.form.like();
  const K half = like.lift(1, 2);
  TernaryAxiomReport rep;
  rep.exhaustive = n <= opt.exhaustive_max_dim;
  Rng rng(opt.seed);

  // tuples of basis indices of the given arity, all of them or a random sample
  auto for_tuples = [&](std::size_t arity, auto&& body) {
    std::vector<std::size_t> idx(arity, 0);
    if (rep.exhaustive) {
      for (;;) {
        ++rep.tuples;
        if (!body(idx)) return false;
        std::size_t k = 0;
        while (k < arity && ++idx[k] == n) idx[k++] = 0;
        if (k == arity) return true;
      }
    }
    for (std::size_t s = 0; s < opt.samples; ++s) {
      for (auto& i : idx) i = rng.below(n);
      ++rep.tuples;
      if (!body(idx)) return false;
    }
    return true;
  };
  auto e = [&](std::size_t i) { return unit_vector(n, i, like); };
  auto w = [&](std::size_t i, std::size_t j) { return t.form(i, j); };

  rep.axioms.add("T1", for_tuples(3, [&](const auto& i) {
    return t.at(i[0], i[1], i[2]) == t.at(i[1], i[0], i[2]) + w(i[0], i[1]) * e(i[2]);
  }));
  rep.axioms.add("T2", for_tuples(3, [&](const auto& i) {
    return t.at(i[0], i[1], i[2]) == t.at(i[0], i[2], i[1]) + w(i[1], i[2]) * e(i[0]);
  }));
  rep.axioms.add("T3", for_tuples(4, [&](const auto& i) {
    return t.pair(t.at(i[0], i[1], i[2]), e(i[3])) ==
           t.pair(t.at(i[0], i[1], i[3]), e(i[2])) + w(i[0], i[1]) * w(i[2], i[3]);
  }));
  rep.axioms.add("T4", for_tuples(5, [&](const auto& i) {
    const Vec<K> x = e(i[0]), y = e(i[1]), z = e(i[2]), v = e(i[3]), u = e(i[4]);
    const Vec<K> lhs = t(t.at(i[0], i[1], i[2]), v, u);
    const Vec<K> rhs = t(t.at(i[0], i[3], i[4]), y, z) + t(x, t.at(i[1], i[3], i[4]), z) + t(x, y, t.at(i[2], i[4], i[3]));
    return lhs == rhs;
  }));

  // B(e_x, e_y) as matrices, built lazily
  std::map<std::pair<std::size_t, std::size_t>, Matrix<K>> cache;
  auto bop = [&](std::size_t x, std::size_t y) -> const Matrix<K>& {
    auto it = cache.find({x, y});
    if (it == cache.end()) it = cache.emplace(std::pair{x, y}, t.b_operator(e(x), e(y))).first;
    return it->second;
  };
  auto bvec = [&](const Vec<K>& x, const Vec<K>& y) { return t.b_operator(x, y); };

  rep.axioms.add("B1", for_tuples(3, [&](const auto& i) {
    return bop(i[0], i[1]).col(i[2]) ==
           bop(i[0], i[2]).col(i[1]) + w(i[1], i[2]) * e(i[0]) - half * w(i[2], i[0]) * e(i[1]) +
               half * w(i[1], i[0]) * e(i[2]);
  }));
  rep.axioms.add("B2", for_tuples(2, [&](const auto& i) { return bop(i[0], i[1]) == bop(i[1], i[0]); }));
  rep.axioms.add("B3", for_tuples(4, [&](const auto& i) {
    const Matrix<K>& b = bop(i[0], i[1]);
    return (t.pair(b.col(i[2]), e(i[3])) + t.pair(e(i[2]), b.col(i[3]))).is_zero();
  }));
  rep.axioms.add("B4", for_tuples(4, [&](const auto& i) {
    const Matrix<K>& bxy = bop(i[0], i[1]);
    const Matrix<K> lhs = commutator(bxy, bop(i[2], i[3]));
    const Matrix<K> rhs = bvec(bxy.col(i[2]), e(i[3])) + bvec(e(i[2]), bxy.col(i[3]));
    return lhs == rhs;
  }));
  return rep;
}

// ---------------------------------------------------------------------------
// g = m + sl2 + V(x)e1 + V(x)e2; basis order: m, H, E, F, V(x)e1, V(x)e2

template <class K>
using SparseVec = std::map<std::size_t, K>;

template <class K>
void sparse_axpy(SparseVec<K>& out, const K& a, const SparseVec<K>& x) {
  if (a.is_zero()) return;
  for (const auto& [i, v] : x) {
    auto [it, fresh] = out.try_emplace(i, a * v);
    if (!fresh) it->second += a * v;
    if (it->second.is_zero()) out.erase(it);
  }
}

template <class K>
class GradedLieAlgebra {
 public:
  GradedLieAlgebra(std::size_t m_dim, std::size_t v_dim, const K& like)
      : m_dim_(m_dim), v_dim_(v_dim), dim_(m_dim + 3 + 2 * v_dim), zero_(like.lift(0)) {
    table_.assign(dim_ * dim_, {});
  }

  std::size_t dim() const { return dim_; }
  std::size_t m_dim() const { return m_dim_; }
  std::size_t v_dim() const { return v_dim_; }
  const K& like() const { return zero_; }

  std::size_t m(std::size_t a) const { return a; }
  std::size_t h() const { return m_dim_; }
  std::size_t e() const { return m_dim_ + 1; }
  std::size_t f() const { return m_dim_ + 2; }
  std::size_t v1(std::size_t i) const { return m_dim_ + 3 + i; }
  std::size_t v2(std::size_t i) const { return m_dim_ + 3 + v_dim_ + i; }

  const SparseVec<K>& bracket(std::size_t i, std::size_t j) const { return table_[i * dim_ + j]; }
  void set(std::size_t i, std::size_t j, SparseVec<K> v) { table_[i * dim_ + j] = std::move(v); }

  SparseVec<K> bracket(const SparseVec<K>& x, const SparseVec<K>& y) const {
    SparseVec<K> out;
    for (const auto& [i, a] : x)
      for (const auto& [j, b] : y) sparse_axpy(out, a * b, bracket(i, j));
    return out;
  }

  SparseVec<K> unit(std::size_t i) const { return {{i, zero_.lift(1)}}; }

  Matrix<K> ad(std::size_t i) const {
    Matrix<K> out = Matrix<K>::zero(dim_, dim_, zero_);
    for (std::size_t j = 0; j < dim_; ++j)
      for (const auto& [r, x] : bracket(i, j)) out(r, j) = x;
    return out;
  }

  // (c_m, c_s) of the V-V bracket
  std::pair<K, K> calibration;

 private:
  std::size_t m_dim_, v_dim_, dim_;
  K zero_;
  std::vector<SparseVec<K>> table_;
};

namespace detail {

// sl2 acting on k^2: H e1 = e1, H e2 = -e2, E e2 = e1, F e1 = e2; returns (index of e, coefficient)
template <class K>
std::optional<std::pair<int, long>> sl2_on_k2(int s, int a) {
  if (s == 0) return std::pair<int, long>{a, a == 0 ? 1 : -1};
  if (s == 1) return a == 1 ? std::optional<std::pair<int, long>>{{0, 1}} : std::nullopt;
  return a == 0 ? std::optional<std::pair<int, long>>{{1, 1}} : std::nullopt;
}

// omega_2(e_a, e_b) and sigma(e_a, e_b) x = w2(e_a,x) e_b + w2(e_b,x) e_a in (H, E, F) coordinates
inline long omega2(int a, int b) { return a == b ? 0 : (a == 0 ? 1 : -1); }
inline std::array<long, 3> sigma(int a, int b) {
  if (a == 0 && b == 0) return {0, 2, 0};
  if (a == 1 && b == 1) return {0, 0, -2};
  return {-1, 0, 0};
}

}  // namespace detail

template <class K>
GradedLieAlgebra<K> assemble_lie_algebra(const Ssr<K>& s, const StructureConstants<K>& msc, const K& cm,
                                         const K& cs) {
  const std::size_t dm = s.m_dim(), n = s.dim();
  GradedLieAlgebra<K> g(dm, n, s.one());
  g.calibration = {cm, cs};
  auto put = [&](std::size_t i, std::size_t j, SparseVec<K> v) {
    SparseVec<K> neg;
    for (const auto& [k, x] : v) neg.emplace(k, -x);
    g.set(i, j, std::move(v));
    g.set(j, i, std::move(neg));
  };
  auto vidx = [&](std::size_t i, int a) { return a == 0 ? g.v1(i) : g.v2(i); };
  const std::size_t sl[3] = {g.h(), g.e(), g.f()};

  for (std::size_t a = 0; a < dm; ++a)
    for (std::size_t b = a + 1; b < dm; ++b) {
      SparseVec<K> v;
      const Vec<K>& c = msc.at(a, b);
      for (std::size_t k = 0; k < dm; ++k)
        if (!c[k].is_zero()) v.emplace(k, c[k]);
      put(a, b, std::move(v));
    }
  put(g.h(), g.e(), {{g.e(), s.lift(2)}});
  put(g.h(), g.f(), {{g.f(), s.lift(-2)}});
  put(g.e(), g.f(), {{g.h(), s.lift(1)}});

  for (std::size_t i = 0; i < n; ++i)
    for (int a = 0; a < 2; ++a) {
      for (std::size_t x = 0; x < dm; ++x) {
        SparseVec<K> v;
        for (const auto& [r, val] : s.sparse_basis(x).cols[i]) v.emplace(vidx(r, a), val);
        put(x, vidx(i, a), std::move(v));
      }
      for (int t = 0; t < 3; ++t) {
        SparseVec<K> v;
        if (auto img = detail::sl2_on_k2<K>(t, a)) v.emplace(vidx(i, img->first), s.lift(img->second));
        put(sl[t], vidx(i, a), std::move(v));
      }
    }

  for (std::size_t i = 0; i < n; ++i)
    for (int a = 0; a < 2; ++a)
      for (std::size_t j = 0; j < n; ++j)
        for (int b = 0; b < 2; ++b) {
          if (vidx(j, b) < vidx(i, a)) continue;
          SparseVec<K> v;
          const long w2 = detail::omega2(a, b);
          if (w2 != 0)
            for (std::size_t k = 0; k < dm; ++k) {
              const K& c = s.bmu_entry(i, j, k);
              if (!c.is_zero()) v.emplace(k, cm * s.lift(w2) * c);
            }
          const K& w = s.gram()(i, j);
          if (!w.is_zero()) {
            const auto sg = detail::sigma(a, b);
            for (int t = 0; t < 3; ++t)
              if (sg[t] != 0) v.emplace(sl[t], cs * w * s.lift(sg[t]));
          }
          put(vidx(i, a), vidx(j, b), std::move(v));
        }
  return g;
}

template <class K>
SparseVec<K> jacobiator(const GradedLieAlgebra<K>& g, std::size_t i, std::size_t j, std::size_t k) {
  SparseVec<K> out;
  const K one = g.like().lift(1);
  for (const auto& [l, a] : g.bracket(i, j)) sparse_axpy(out, a, g.bracket(l, k));
  for (const auto& [l, a] : g.bracket(j, k)) sparse_axpy(out, a, g.bracket(l, i));
  for (const auto& [l, a] : g.bracket(k, i)) sparse_axpy(out, a, g.bracket(l, j));
  return out;
}

template <class K>
GradedLieAlgebra<K> build_lie_algebra(const Ssr<K>& s) {
  auto msc = m_structure_constants(s);
  if (!msc) throw CalibrationFailure("m is not closed under the bracket");
  const K one = s.one(), zero = s.zero();
  // Jacobi is linear and homogeneous in (c_m, c_s) on triples from V(x)k^2
  const auto gm = assemble_lie_algebra(s, *msc, one, zero);
  const auto gs = assemble_lie_algebra(s, *msc, zero, one);
  SparseSystem<K> sys(2, one);
  const std::size_t n = s.dim();
  auto idx = [&](std::size_t x, int eps) { return eps ? gm.v2(x) : gm.v1(x); };
  std::size_t extra = 0;  // triples examined after the first nontrivial equation
  for (std::size_t t = 0; t < n * n * n && sys.rank() < 2 && extra < 64; ++t) {
    const std::size_t i = t % n, j = (t / n) % n, k = t / (n * n);
    for (int mixed = 0; mixed < 2; ++mixed) {
      const std::size_t x = idx(i, 0), y = idx(j, mixed), z = idx(k, 1);
      std::map<std::size_t, std::pair<K, K>> rows;
      for (const auto& [l, v] : jacobiator(gm, x, y, z)) rows.try_emplace(l, zero, zero).first->second.first = v;
      for (const auto& [l, v] : jacobiator(gs, x, y, z)) rows.try_emplace(l, zero, zero).first->second.second = v;
      for (const auto& [l, p] : rows) sys.add_equation({{0, p.first}, {1, p.second}});
    }
    if (sys.rank() > 0) ++extra;
  }
  K cm = one, cs = one.lift(1, 2);
  if (sys.rank() > 0) {
    auto ker = sys.kernel_basis();
    if (ker.size() != 1 || ker[0][1].is_zero())
      throw CalibrationFailure("no (c_m, c_s) with c_s != 0 satisfies Jacobi");
    const K scale = one.lift(1, 2) / ker[0][1];
    cm = scale * ker[0][0];
    cs = scale * ker[0][1];
  }
  return assemble_lie_algebra(s, *msc, cm, cs);
}

struct JacobiOptions {
  bool exhaustive = true;
  std::size_t samples = 10000;
  std::uint64_t seed = 1;
};

struct JacobiReport {
  bool ok = true;
  std::size_t triples = 0;
  std::array<std::size_t, 3> witness{};
};

template <class K>
JacobiReport check_jacobi(const GradedLieAlgebra<K>& g, JacobiOptions opt = {}) {
  JacobiReport r;
  const std::size_t d = g.dim();
  auto test = [&](std::size_t i, std::size_t j, std::size_t k) {
    ++r.triples;
    if (!jacobiator(g, i, j, k).empty()) {
      r.ok = false;
      r.witness = {i, j, k};
    }
    return r.ok;
  };
  if (opt.exhaustive) {
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = i + 1; j < d; ++j)
        for (std::size_t k = j + 1; k < d; ++k)
          if (!test(i, j, k)) return r;
    return r;
  }
  Rng rng(opt.seed);
  for (std::size_t t = 0; t < opt.samples; ++t)
    if (!test(rng.below(d), rng.below(d), rng.below(d))) return r;
  return r;
}

// ---------------------------------------------------------------------------

struct GradingReport {
  bool diagonal = true;       // every basis vector is an ad H eigenvector
  bool labels_ok = true;      // eigenvalues in {-2,...,2}
  bool sl2_triple = true;
  std::map<int, std::size_t> dims;
  bool ok() const { return diagonal && labels_ok && sl2_triple && dims.count(2) && dims.at(2) == 1 && dims.count(-2) && dims.at(-2) == 1; }
};

template <class K>
GradingReport grading_report(const GradedLieAlgebra<K>& g) {
  GradingReport r;
  const K& like = g.like();
  for (std::size_t j = 0; j < g.dim(); ++j) {
    const auto& img = g.bracket(g.h(), j);
    int label = 0;
    if (!img.empty()) {
      if (img.size() != 1 || img.begin()->first != j) {
        r.diagonal = false;
        continue;
      }
      bool found = false;
      for (int c = -2; c <= 2 && !found; ++c)
        if (img.begin()->second == like.lift(c)) {
          label = c;
          found = true;
        }
      if (!found) r.labels_ok = false;
    }
    ++r.dims[label];
  }
  auto is = [&](std::size_t i, std::size_t j, std::size_t k, long c) {
    const auto& v = g.bracket(i, j);
    return v.size() == 1 && v.begin()->first == k && v.begin()->second == like.lift(c);
  };
  r.sl2_triple = is(g.h(), g.e(), g.e(), 2) && is(g.h(), g.f(), g.f(), -2) && is(g.e(), g.f(), g.h(), 1);
  return r;
}

// smallest ad-invariant subspace containing x; stops early once `stop` is inside
template <class K>
std::size_t ideal_closure_dim(const GradedLieAlgebra<K>& g, const SparseVec<K>& x,
                              const std::optional<SparseVec<K>>& stop = std::nullopt) {
  SparseSystem<K> sys(g.dim(), g.like());
  std::deque<SparseVec<K>> queue;
  auto offer = [&](SparseVec<K> v) {
    if (v.empty() || sys.contains(v)) return;
    sys.add_equation(v);
    queue.push_back(std::move(v));
  };
  offer(x);
  while (!queue.empty() && sys.rank() < g.dim()) {
    if (stop && sys.contains(*stop)) return g.dim();
    SparseVec<K> v = std::move(queue.front());
    queue.pop_front();
    for (std::size_t j = 0; j < g.dim(); ++j) offer(g.bracket(g.unit(j), v));
  }
  return sys.rank();
}

struct SimplicityReport {
  std::size_t m_dim = 0;
  std::size_t m_mu_dim = 0;
  bool by_m_mu = false;
  bool by_ideals = false;
  std::size_t smallest_ideal = 0;
  bool simple() const { return by_m_mu; }
};

template <class K>
SimplicityReport simplicity_report(const GradedLieAlgebra<K>& g, const Ssr<K>& s) {
  SimplicityReport r;
  r.m_dim = s.m_dim();
  SparseSystem<K> span(s.m_dim(), s.one());
  for (std::size_t i = 0; i < s.dim() && span.rank() < s.m_dim(); ++i)
    for (std::size_t j = i; j < s.dim(); ++j) {
      SparseVec<K> v;
      for (std::size_t k = 0; k < s.m_dim(); ++k)
        if (!s.bmu_entry(i, j, k).is_zero()) v.emplace(k, s.bmu_entry(i, j, k));
      span.add_equation(std::move(v));
    }
  r.m_mu_dim = span.rank();
  r.by_m_mu = r.m_mu_dim == r.m_dim;

  const SparseVec<K> e = g.unit(g.e());
  const std::size_t de = ideal_closure_dim(g, e);
  r.smallest_ideal = de;
  const std::optional<SparseVec<K>> stop = de == g.dim() ? std::optional<SparseVec<K>>(e) : std::nullopt;
  for (std::size_t i = 0; i < g.dim(); ++i) r.smallest_ideal = std::min(r.smallest_ideal, ideal_closure_dim(g, g.unit(i), stop));
  r.by_ideals = r.smallest_ideal == g.dim();
  return r;
}

template <class K>
bool simplicity_check(const GradedLieAlgebra<K>& g, const Ssr<K>& s) {
  const auto r = simplicity_report(g, s);
  if (r.by_m_mu != r.by_ideals)
    throw DisagreementError("m_mu test says " + std::string(r.by_m_mu ? "simple" : "not simple") +
                            " but the ideal search found an ideal of dim " + std::to_string(r.smallest_ideal));
  return r.by_m_mu;
}

// ---------------------------------------------------------------------------

template <class K>
struct RecoveryReport {
  SsrData<K> data;
  std::optional<K> omega_factor;  // recovered = factor * original
  std::optional<K> bmu_factor;
  bool m_action_equal = false;
  bool verified = false;
};

namespace detail {

template <class K>
std::optional<K> proportionality(const std::vector<K>& rec, const std::vector<K>& orig) {
  std::optional<K> f;
  for (std::size_t i = 0; i < rec.size(); ++i) {
    if (orig[i].is_zero()) {
      if (!rec[i].is_zero()) return std::nullopt;
      continue;
    }
    K r = rec[i] / orig[i];
    if (!f) f = r;
    else if (*f != r) return std::nullopt;
  }
  return f;
}

}  // namespace detail

template <class K>
SsrData<K> recover_ssr_data(const GradedLieAlgebra<K>& g) {
  const K& like = g.like();
  const std::size_t d = g.dim();
  if (!grading_report(g).ok()) throw NotHeisenbergGraded("ad H does not give a Heisenberg grading");
  const Matrix<K> adh = g.ad(g.h());
  const Subspace<K> g1 = eigenspace(adh, like.lift(1));
  std::vector<Vec<K>> rows;
  for (std::size_t x : {g.e(), g.h(), g.f()})
    for (const auto& r : g.ad(x).row_list()) rows.push_back(r);
  const Subspace<K> mm = kernel(Matrix<K>::from_rows(rows, d, like));

  auto to_sparse = [](const Vec<K>& v) {
    SparseVec<K> out;
    for (std::size_t i = 0; i < v.size(); ++i)
      if (!v[i].is_zero()) out.emplace(i, v[i]);
    return out;
  };
  auto to_dense = [&](const SparseVec<K>& v) {
    Vec<K> out = zeros(d, like);
    for (const auto& [i, x] : v) out[i] = x;
    return out;
  };
  const auto vb = g1.basis(), mb = mm.basis();
  const std::size_t n = vb.size();
  const SpanSolver<K> vsolve(vb, like), msolve(mb, like);

  SsrData<K> out;
  out.construction = "recovered";
  out.omega = Matrix<K>::zero(n, n, like);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const SparseVec<K> b = g.bracket(to_sparse(vb[i]), to_sparse(vb[j]));
      if (b.empty()) continue;
      if (b.size() != 1 || b.begin()->first != g.e()) throw NotHeisenbergGraded("[g1, g1] is not inside <E>");
      out.omega(i, j) = b.begin()->second;
    }
  for (const auto& x : mb) {
    std::vector<Vec<K>> cols;
    for (const auto& v : vb) {
      auto c = vsolve.coordinates(to_dense(g.bracket(to_sparse(x), to_sparse(v))));
      if (!c) throw NotHeisenbergGraded("m does not preserve g1");
      cols.push_back(std::move(*c));
    }
    out.m_basis.push_back(Matrix<K>::from_columns(cols, n, like));
  }
  const SparseVec<K> f = g.unit(g.f());
  const K mhalf = like.lift(-1, 2);
  out.bmu.assign(n, std::vector<Vec<K>>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      const SparseVec<K> vi = to_sparse(vb[i]), vj = to_sparse(vb[j]);
      SparseVec<K> b;
      sparse_axpy(b, mhalf, g.bracket(vi, g.bracket(vj, f)));
      sparse_axpy(b, mhalf, g.bracket(vj, g.bracket(vi, f)));
      auto c = msolve.coordinates(to_dense(b));
      if (!c) throw NotHeisenbergGraded("recovered B does not lie in the commutant");
      out.bmu[i][j] = *c;
      out.bmu[j][i] = std::move(*c);
    }
  return out;
}

template <class K>
RecoveryReport<K> recover_ssr(const GradedLieAlgebra<K>& g, const Ssr<K>* original = nullptr) {
  RecoveryReport<K> r;
  r.data = recover_ssr_data(g);
  const Ssr<K> rec(r.data);
  r.verified = verify_ssr(rec).ok();
  if (original) {
    const SsrData<K>& o = original->data();
    if (r.data.omega.rows() == o.omega.rows()) {
      r.omega_factor = detail::proportionality(r.data.omega.entries(), o.omega.entries());
      r.m_action_equal = r.data.m_basis == o.m_basis;
      if (r.m_action_equal) {
        std::vector<K> a, b;
        for (std::size_t i = 0; i < o.bmu.size(); ++i)
          for (std::size_t j = 0; j < o.bmu.size(); ++j) {
            a.insert(a.end(), r.data.bmu[i][j].begin(), r.data.bmu[i][j].end());
            b.insert(b.end(), o.bmu[i][j].begin(), o.bmu[i][j].end());
          }
        r.bmu_factor = detail::proportionality(a, b);
      }
    }
  }
  return r;
}

}  // namespace ssr
