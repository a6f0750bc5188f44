#pragma once

#include <string>
#include <vector>

#include "ssr/ssr.hpp"

namespace ssr {

struct IdentityReport {
  std::vector<std::pair<std::string, bool>> items;
  void add(std::string name, bool ok) { items.emplace_back(std::move(name), ok); }
  bool ok() const {
    for (const auto& [n, v] : items)
      if (!v) return false;
    return true;
  }
  std::string first_failure() const {
    for (const auto& [n, v] : items)
      if (!v) return n;
    return "";
  }
};

// mu(Psi A) = -Q mu(A), Psi(Psi A) = -Q^2 A, Q(Psi A) = Q^3, and the values on aA + bPsi(A)
template <class K>
IdentityReport covariant_identities(const Ssr<K>& s, const Vec<K>& a, const K& x, const K& y) {
  IdentityReport r;
  const Vec<K> m = mu(s, a);
  const Vec<K> p = s.act(m, a);
  const K q = s.lift(3, 2) * s.omega(a, p);

  r.add("mu(Psi(A)) = -Q(A) mu(A)", mu(s, p) == -q * m);
  r.add("Psi(Psi(A)) = -Q(A)^2 A", psi(s, p) == -(q * q) * a);
  r.add("Q(Psi(A)) = Q(A)^3", big_q(s, p) == q * q * q);

  // a second combination a'A + b'Psi(A)
  const K x2 = x + s.one(), y2 = y - s.lift(2);
  const Vec<K> u = x * a + y * p;
  const Vec<K> u2 = x2 * a + y2 * p;
  const K n = x * x - q * y * y;
  r.add("B_mu(aA+bPsi, a'A+b'Psi) = (aa' - Q bb') mu(A)", s.bmu(u, u2) == (x * x2 - q * y * y2) * m);
  r.add("Psi(aA+bPsi) = (a^2 - Q b^2)(Q b A + a Psi)", psi(s, u) == n * ((q * y) * a + x * p));
  r.add("Q(aA+bPsi) = (a^2 - Q b^2)^2 Q", big_q(s, u) == n * n * q);
  r.add("mu(A)(aA+bPsi) = a Psi + Q b A", s.act(m, u) == x * p + (q * y) * a);
  const Vec<K> mm = s.act(m, s.act(m, u));
  r.add("mu(A)^2 = Q Id on <A, Psi(A)>", mm == q * u);
  return r;
}

struct MinpolyReport {
  bool q_zero = false;
  bool ok = false;
  bool cube_zero = false;  // only meaningful when Q = 0
  std::string detail;
};

template <class K>
std::pair<Vec<K>, MinpolyReport> minimal_polynomial_mu(const Ssr<K>& s, const Vec<K>& a) {
  MinpolyReport rep;
  const Matrix<K> m = mu_matrix(s, a);
  const Vec<K> mp = minimal_polynomial(m);
  const K q = big_q(s, a);
  if (!q.is_zero()) {
    // (x^2 - Q)(x^2 - Q/9) = x^4 - (10/9)Q x^2 + Q^2/9
    Vec<K> expect{q * q * s.lift(1, 9), s.zero(), -(s.lift(10, 9) * q), s.zero(), s.one()};
    rep.ok = mp == expect;
    if (!rep.ok) rep.detail = "minimal polynomial is not (x^2-Q)(x^2-Q/9)";
  } else {
    rep.q_zero = true;
    const Matrix<K> m2 = m * m;
    const Matrix<K> m3 = m2 * m;
    rep.cube_zero = m3.is_zero();
    const bool fourth_zero = (m3 * m).is_zero();
    const bool psi_zero = is_zero(psi(s, a));
    rep.ok = fourth_zero && rep.cube_zero == psi_zero;
    if (!fourth_zero) rep.detail = "mu(A)^4 != 0 although Q(A) = 0";
    else if (!rep.ok) rep.detail = "mu(A)^3 = 0 disagrees with Psi(A) = 0";
  }
  return {mp, rep};
}

// tau(Psi P) - Q tau(P) = -(3/4) mu(P)^3 + (1/12) Q mu(P)
template <class K>
bool eisenstein_syzygy(const Ssr<K>& s, const Vec<K>& p) {
  const Matrix<K> m = mu_matrix(s, p);
  const Vec<K> ps = psi(s, p);
  const K q = big_q(s, p);
  const Matrix<K> lhs = tau(s, ps) - q * tau(s, p);
  const Matrix<K> rhs = s.lift(-3, 4) * (m * m * m) + (s.lift(1, 12) * q) * m;
  return lhs == rhs;
}

template <class K>
Matrix<K> eisenstein_lhs(const Ssr<K>& s, const Vec<K>& p) {
  return tau(s, psi(s, p)) - big_q(s, p) * tau(s, p);
}

template <class K>
struct ClassicalEisenstein {
  K x, y, z, delta;
  bool holds;
};

// y = P(v), x = Psi(P)(v)/3, z = -q(v~)/2, delta = Q/9, where mu = aH + bX + cY gives q = bx^2 + 2axy - cy^2
// and v~ = (v2, v1) since cubics carry the contragredient action
template <class K>
ClassicalEisenstein<K> classical_eisenstein(const Ssr<K>& s, const Vec<K>& p, const Vec<K>& v) {
  if (s.construction() != "BinaryCubics") throw WrongConstruction("classical syzygy needs BinaryCubics, got " + s.construction());
  s.check(p);
  if (v.size() != 2) throw DimensionMismatch("v must lie in k^2");
  const K &v1 = v[0], &v2 = v[1];
  auto eval = [&](const Vec<K>& c) {
    return c[0] * v1 * v1 * v1 + s.lift(3) * c[1] * v1 * v1 * v2 + s.lift(3) * c[2] * v1 * v2 * v2 + c[3] * v2 * v2 * v2;
  };
  const Vec<K> m = mu(s, p);
  const K quad = m[1] * v2 * v2 + s.lift(2) * m[0] * v1 * v2 - m[2] * v1 * v1;
  ClassicalEisenstein<K> r{s.lift(1, 3) * eval(psi(s, p)), eval(p), s.lift(-1, 2) * quad, s.lift(1, 9) * big_q(s, p), false};
  r.holds = r.x * r.x - r.delta * r.y * r.y == s.lift(4) * r.z * r.z * r.z;
  return r;
}

// B_mu(A,B)C - B_tau(A,B)C = B_Psi(A,B,C)
template <class K>
bool recovery_identity(const Ssr<K>& s, const Vec<K>& a, const Vec<K>& b, const Vec<K>& c) {
  return s.act(s.bmu(a, b), c) - b_tau_apply(s, a, b, c) == b_psi(s, a, b, c);
}

// omega(D, B_Psi(A,B,C)) = (2/3) B_Q(A,B,C,D), B_Q computed as the symmetrised polar of Q
template <class K>
bool polar_pairing_identity(const Ssr<K>& s, const Vec<K>& a, const Vec<K>& b, const Vec<K>& c,
                            const Vec<K>& d) {
  // polarisation of the quartic by inclusion-exclusion over subsets
  const std::vector<const Vec<K>*> vs{&a, &b, &c, &d};
  K acc = s.zero();
  for (unsigned mask = 1; mask < 16; ++mask) {
    Vec<K> sum = s.zero_vector();
    int bits = 0;
    for (int i = 0; i < 4; ++i)
      if (mask & (1u << i)) {
        sum = sum + *vs[i];
        ++bits;
      }
    K v = big_q(s, sum);
    if ((4 - bits) % 2) acc -= v;
    else acc += v;
  }
  const K bq = acc * s.lift(1, 24);
  return s.omega(d, b_psi(s, a, b, c)) == s.lift(2, 3) * bq && bq == b_q(s, a, b, c, d);
}

// statements about m.A and Ker d mu_A
template <class K>
IdentityReport orbit_geometry(const Ssr<K>& s, const Vec<K>& a) {
  IdentityReport r;
  if (is_zero(a)) return r;
  const auto t = tangent(s, a);
  const auto k = ker_dmu(s, a);
  const auto tperp = perp(s, t);
  r.add("coisotropy", t.contains(tperp));
  r.add("Ker dmu_A = (m.A)^perp", k == tperp);
  const K q = big_q(s, a);
  const Vec<K> m = mu(s, a);
  if (!q.is_zero()) {
    const Vec<K> p = s.act(m, a);
    r.add("dim Ker dmu_A = 1", k.dim() == 1);
    r.add("Ker dmu_A = <Psi(A)>", k == Subspace<K>::span(s.dim(), {p}, s.one()));
    r.add("V = m.A + <A> direct", t.dim() == s.dim() - 1 && !t.contains(a));
    // Ker dQ_A = m.A with dQ_A(B) = 4 B_Q(B,A,A,A) = 6 omega(A, B_Psi(B,A,A))
    std::vector<Vec<K>> row{Vec<K>()};
    for (std::size_t j = 0; j < s.dim(); ++j)
      row[0].push_back(s.lift(4) * b_q(s, s.unit(j), a, a, a));
    r.add("Ker dQ_A = m.A", kernel(Matrix<K>::from_rows(row, s.dim(), s.one())) == t);
  }
  if (s.dim() > 2) {
    const bool lagrangian = t.dim() * 2 == s.dim() && tperp == t;
    r.add("m.A Lagrangian iff mu(A) = 0", lagrangian == is_zero(m));
  }
  return r;
}

}  // namespace ssr
