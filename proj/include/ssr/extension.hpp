#pragma once

#include "ssr/ssr.hpp"

namespace ssr {

// A_lambda with lambda = scale^2 * rep, rep the canonical square-class representative;
// arithmetic happens in A_rep and sqrt(lambda) = scale * sqrt(rep)
template <class K>
struct QuadContext {
  K lambda;
  K rep;
  K scale;

  explicit QuadContext(const K& l) : lambda(l) {
    if (l.is_zero()) throw InvalidField("lambda must be nonzero");
    auto c = square_class(l);
    rep = c.rep;
    scale = c.scale;
  }

  Quad<K> embed(const K& x) const { return Quad<K>::embed(x, rep); }
  Quad<K> make(const K& re, const K& im) const { return Quad<K>(re, im, rep); }
  Quad<K> sqrt_lambda() const { return Quad<K>(rep.lift(0), scale, rep); }
  bool split() const { return rep == rep.lift(1); }

  Vec<Quad<K>> embed(const Vec<K>& v) const {
    Vec<Quad<K>> out;
    out.reserve(v.size());
    for (const auto& x : v) out.push_back(embed(x));
    return out;
  }
  Vec<Quad<K>> make(const Vec<K>& re, const Vec<K>& im) const {
    Vec<Quad<K>> out;
    for (std::size_t i = 0; i < re.size(); ++i) out.push_back(make(re[i], im[i]));
    return out;
  }
};

template <class K>
Vec<K> real_part(const Vec<Quad<K>>& v) {
  Vec<K> out;
  for (const auto& x : v) out.push_back(x.re());
  return out;
}

template <class K>
Vec<K> imag_part(const Vec<Quad<K>>& v) {
  Vec<K> out;
  for (const auto& x : v) out.push_back(x.im());
  return out;
}

template <class K>
Vec<Quad<K>> conj(const Vec<Quad<K>>& v) {
  Vec<Quad<K>> out;
  for (const auto& x : v) out.push_back(x.conj());
  return out;
}

template <class K>
Matrix<Quad<K>> embed(const QuadContext<K>& ctx, const Matrix<K>& m) {
  std::vector<Quad<K>> e;
  for (const auto& x : m.entries()) e.push_back(ctx.embed(x));
  return Matrix<Quad<K>>(m.rows(), m.cols(), std::move(e));
}

// the same SSR with scalars extended to A_lambda
template <class K>
Ssr<Quad<K>> base_extend(const Ssr<K>& s, const QuadContext<K>& ctx) {
  SsrData<Quad<K>> d;
  d.construction = s.construction();
  d.notes = s.data().notes;
  d.omega = embed(ctx, s.gram());
  for (const auto& m : s.m_basis()) d.m_basis.push_back(embed(ctx, m));
  d.bmu.assign(s.dim(), std::vector<Vec<Quad<K>>>(s.dim()));
  for (std::size_t i = 0; i < s.dim(); ++i)
    for (std::size_t j = 0; j < s.dim(); ++j) d.bmu[i][j] = ctx.embed(s.data().bmu[i][j]);
  return Ssr<Quad<K>>(std::move(d));
}

}  // namespace ssr
