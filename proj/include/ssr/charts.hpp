#pragma once

#include <optional>
#include <utility>

#include "ssr/decomposition.hpp"
#include "ssr/extension.hpp"

namespace ssr {

// (P, z) with Q(P) = lambda z^2 != 0
template <class K>
struct HatPoint {
  Vec<K> p;
  K z;
  HatPoint sigma() const { return {p, -z}; }
  bool operator==(const HatPoint&) const = default;
};

// a + b sqrt(lambda)
template <class K>
struct TorusElement {
  K a;
  K b;
  K norm(const K& lambda) const { return a * a - b * b * lambda; }
};

template <class K>
class Chart {
 public:
  Chart(const Ssr<K>& s, const K& lambda) : s_(s), ctx_(lambda), ext_(base_extend(s, ctx_)) {}

  const Ssr<K>& ssr() const { return s_; }
  const Ssr<Quad<K>>& extended() const { return ext_; }
  const QuadContext<K>& context() const { return ctx_; }
  const K& lambda() const { return ctx_.lambda; }

  void check_hat(const HatPoint<K>& h) const {
    s_.check(h.p);
    const K q = big_q(s_, h.p);
    if (q.is_zero()) throw InvalidHatPoint("Q(P) = 0");
    if (q != lambda() * h.z * h.z)
      throw InvalidHatPoint("Q(P) = " + q.to_string() + " but lambda z^2 = " + (lambda() * h.z * h.z).to_string());
  }

  // omega(conj v, v) / sqrt(lambda), an element of k
  K h(const Vec<Quad<K>>& v) const {
    const Quad<K> w = ext_.omega(conj(v), v) / ctx_.sqrt_lambda();
    if (!w.in_base()) throw DisagreementError("h(v) is not in the base field");
    return w.re();
  }

  void check_zgen(const Vec<Quad<K>>& v) const {
    ext_.check(v);
    if (!is_zero(mu(ext_, v))) throw InvalidZGenPoint("mu(v) != 0");
    if (h(v).is_zero()) throw InvalidZGenPoint("h(v) = 0");
  }

  Vec<Quad<K>> alpha(const HatPoint<K>& hp) const {
    check_hat(hp);
    Vec<Quad<K>> v = raw_alpha(hp);
    if (!is_zero(mu(ext_, v))) throw DisagreementError("mu(alpha(P,z)) != 0");
    if (h(v) != s_.lift(1, 3) * hp.z) throw DisagreementError("h(alpha(P,z)) != z/3");
    if (raw_alpha(hp.sigma()) != conj(v)) throw DisagreementError("alpha(sigma p) != conj alpha(p)");
    const K a = s_.lift(2);
    if (raw_alpha({a * hp.p, a * a * hp.z}) != ctx_.embed(a) * v) throw DisagreementError("alpha is not k*-equivariant");
    return v;
  }

  HatPoint<K> beta(const Vec<Quad<K>>& v) const {
    check_zgen(v);
    HatPoint<K> out{real_part(v + conj(v)), s_.lift(3) * h(v)};
    if (!is_zero(imag_part(v + conj(v)))) throw DisagreementError("v + conj v is not real");
    if (big_q(s_, out.p) != lambda() * out.z * out.z) throw DisagreementError("Q(v + conj v) != lambda (3h)^2");
    if (raw_alpha(out) != v) throw DisagreementError("alpha(beta(v)) != v");
    return out;
  }

  HatPoint<K> act(const TorusElement<K>& u, const HatPoint<K>& hp) const {
    check_hat(hp);
    const K n = u.norm(lambda());
    if (n.is_zero()) throw NonInvertibleScalar("a^2 - b^2 lambda = 0");
    HatPoint<K> out{u.a * hp.p + (u.b / hp.z) * psi(s_, hp.p), n * hp.z};
    check_hat(out);
    return out;
  }

  TorusElement<K> multiply(const TorusElement<K>& u, const TorusElement<K>& w) const {
    return {u.a * w.a + u.b * w.b * lambda(), u.a * w.b + u.b * w.a};
  }

  // u . (w . p) = (uw) . p
  bool action_law(const TorusElement<K>& u, const TorusElement<K>& w, const HatPoint<K>& hp) const {
    return act(u, act(w, hp)) == act(multiply(u, w), hp);
  }

  std::pair<Vec<K>, K> mu_hat(const HatPoint<K>& hp) const {
    check_hat(hp);
    return {mu(s_, hp.p), hp.z};
  }

  // a norm-one u with u . p = q, from q = xP + yPsi(P) and u = x + y z sqrt(lambda)
  std::optional<TorusElement<K>> orbit_solve(const HatPoint<K>& p, const HatPoint<K>& q) const {
    check_hat(p);
    check_hat(q);
    if (mu_hat(p) != mu_hat(q)) return std::nullopt;
    const MuFiber<K> fiber(s_, p.p);
    auto xy = fiber.plane_coordinates(q.p);
    if (!xy || !fiber.on_conic(xy->first, xy->second))
      throw DisagreementError("equal mu outside the fiber parametrisation");
    TorusElement<K> u{xy->first, xy->second * p.z};
    if (u.norm(lambda()) != s_.lift(1) || act(u, p) != q) throw DisagreementError("orbit solver produced a wrong unit");
    return u;
  }

 private:
  Vec<Quad<K>> raw_alpha(const HatPoint<K>& hp) const {
    const Quad<K> q = ctx_.embed(hp.z) * ctx_.sqrt_lambda();
    return ctx_.embed(s_.lift(1, 2)) * (ctx_.embed(hp.p) + q.inv() * ctx_.embed(psi(s_, hp.p)));
  }

  const Ssr<K>& s_;
  QuadContext<K> ctx_;
  Ssr<Quad<K>> ext_;
};

}  // namespace ssr
