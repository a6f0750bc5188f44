#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>

#include "ssr/error.hpp"

namespace ssr {

struct FieldDescriptor {
  enum class Kind { Rationals, PrimeField, CompositionAlgebra };
  Kind kind = Kind::Rationals;
  std::uint64_t p = 0;
  std::shared_ptr<const FieldDescriptor> base;
  std::string lambda;

  static FieldDescriptor rationals() { return {}; }
  static FieldDescriptor prime_field(std::uint64_t p);
  static FieldDescriptor composition(const FieldDescriptor& base,
                                     std::string lambda) {
    if (base.kind == Kind::CompositionAlgebra)
      throw InvalidField("composition algebra over a composition algebra");
    FieldDescriptor d;
    d.kind = Kind::CompositionAlgebra;
    d.base = std::make_shared<const FieldDescriptor>(base);
    d.lambda = std::move(lambda);
    return d;
  }

  std::string to_string() const {
    switch (kind) {
      case Kind::Rationals: return "Q";
      case Kind::PrimeField: return "Fp:" + std::to_string(p);
      case Kind::CompositionAlgebra:
        return "A(" + base->to_string() + "," + lambda + ")";
    }
    return "?";
  }

  bool operator==(const FieldDescriptor& o) const {
    if (kind != o.kind || p != o.p || lambda != o.lambda) return false;
    if (kind == Kind::CompositionAlgebra) return *base == *o.base;
    return true;
  }
};

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline FieldDescriptor FieldDescriptor::prime_field(std::uint64_t p) {
  if (!is_prime(p) || p == 2 || p == 3)
    throw InvalidField("modulus must be a prime other than 2 and 3, got " +
                       std::to_string(p));
  if (p >= (std::uint64_t{1} << 31))
    throw InvalidField("modulus too large");
  FieldDescriptor d;
  d.kind = Kind::PrimeField;
  d.p = p;
  return d;
}

// "Q", "Fp:7" or "F7"
inline FieldDescriptor parse_field(const std::string& s) {
  if (s == "Q") return FieldDescriptor::rationals();
  std::string digits;
  if (s.rfind("Fp:", 0) == 0) digits = s.substr(3);
  else if (s.size() > 1 && s[0] == 'F') digits = s.substr(1);
  if (digits.empty() || digits.size() > 12 || digits.find_first_not_of("0123456789") != std::string::npos)
    throw InvalidField("unknown field '" + s + "', expected Q or Fp:<p>");
  return FieldDescriptor::prime_field(std::stoull(digits));
}

// ---------------------------------------------------------------------------
// Rationals

class Rational {
 public:
  Rational() = default;
  Rational(long n) : q_(n) {}
  Rational(long n, long d) : q_(n, d) {
    if (d == 0) throw DivisionByNonInvertible("zero denominator");
    q_.canonicalize();
  }
  explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

  // accepts "n" or "n/d"
  static Rational parse(std::string_view s) {
    mpq_class q;
    if (s.empty() || q.set_str(std::string(s), 10) != 0)
      throw ParseError("bad rational '" + std::string(s) + "'");
    if (q.get_den() == 0) throw ParseError("zero denominator");
    q.canonicalize();
    return Rational(std::move(q));
  }

  const mpq_class& value() const { return q_; }
  Rational lift(long n) const { return Rational(n); }
  Rational lift(long n, long d) const { return Rational(n, d); }
  bool is_zero() const { return sgn(q_) == 0; }
  FieldDescriptor descriptor() const { return FieldDescriptor::rationals(); }

  std::string to_string() const {
    if (q_.get_den() == 1) return q_.get_num().get_str();
    return q_.get_num().get_str() + "/" + q_.get_den().get_str();
  }

  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw DivisionByNonInvertible("division by zero in Q");
    q_ /= o.q_;
    return *this;
  }
  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  Rational operator-() const { return Rational(mpq_class(-q_)); }
  Rational inv() const { return lift(1) / *this; }
  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.q_ != b.q_; }

 private:
  mpq_class q_;
};

inline std::optional<Rational> is_square(const Rational& x) {
  const mpq_class& q = x.value();
  if (sgn(q) < 0) return std::nullopt;
  if (!mpz_perfect_square_p(q.get_num_mpz_t()) ||
      !mpz_perfect_square_p(q.get_den_mpz_t()))
    return std::nullopt;
  mpz_class n, d;
  mpz_sqrt(n.get_mpz_t(), q.get_num_mpz_t());
  mpz_sqrt(d.get_mpz_t(), q.get_den_mpz_t());
  return Rational(mpq_class(n, d));
}

// ---------------------------------------------------------------------------
// Prime fields

class ModP {
 public:
  ModP() = default;
  ModP(std::int64_t v, std::uint64_t p) : p_(p) {
    std::int64_t r = v % static_cast<std::int64_t>(p);
    if (r < 0) r += static_cast<std::int64_t>(p);
    v_ = static_cast<std::uint64_t>(r);
  }

  std::uint64_t value() const { return v_; }
  std::uint64_t modulus() const { return p_; }
  ModP lift(long n) const { return ModP(n, p_); }
  ModP lift(long n, long d) const { return ModP(n, p_) / ModP(d, p_); }
  bool is_zero() const { return v_ == 0; }
  FieldDescriptor descriptor() const { return FieldDescriptor::prime_field(p_); }
  std::string to_string() const { return std::to_string(v_); }

  ModP& operator+=(const ModP& o) {
    check(o);
    v_ += o.v_;
    if (v_ >= p_) v_ -= p_;
    return *this;
  }
  ModP& operator-=(const ModP& o) {
    check(o);
    v_ = v_ >= o.v_ ? v_ - o.v_ : v_ + p_ - o.v_;
    return *this;
  }
  ModP& operator*=(const ModP& o) {
    check(o);
    v_ = (v_ * o.v_) % p_;
    return *this;
  }
  ModP& operator/=(const ModP& o) { return *this *= o.inv(); }
  friend ModP operator+(ModP a, const ModP& b) { return a += b; }
  friend ModP operator-(ModP a, const ModP& b) { return a -= b; }
  friend ModP operator*(ModP a, const ModP& b) { return a *= b; }
  friend ModP operator/(ModP a, const ModP& b) { return a /= b; }
  ModP operator-() const {
    ModP r = *this;
    r.v_ = v_ == 0 ? 0 : p_ - v_;
    return r;
  }

  ModP inv() const {
    if (v_ == 0) throw DivisionByNonInvertible("division by zero in F_" + std::to_string(p_));
    std::int64_t a = static_cast<std::int64_t>(v_), m = static_cast<std::int64_t>(p_);
    std::int64_t x0 = 1, x1 = 0;
    while (m != 0) {
      std::int64_t q = a / m;
      std::tie(a, m) = std::make_pair(m, a - q * m);
      std::tie(x0, x1) = std::make_pair(x1, x0 - q * x1);
    }
    return ModP(x0, p_);
  }

  ModP pow(std::uint64_t e) const {
    ModP r(1, p_), b = *this;
    while (e) {
      if (e & 1) r *= b;
      b *= b;
      e >>= 1;
    }
    return r;
  }

  friend bool operator==(const ModP& a, const ModP& b) { return a.v_ == b.v_ && a.p_ == b.p_; }
  friend bool operator!=(const ModP& a, const ModP& b) { return !(a == b); }

 private:
  void check(const ModP& o) const {
    if (p_ != o.p_)
      throw FieldMismatch("F_" + std::to_string(p_) + " vs F_" + std::to_string(o.p_));
  }
  std::uint64_t v_ = 0, p_ = 0;
};

// Tonelli-Shanks; returns the root with the smaller representative
inline std::optional<ModP> is_square(const ModP& x) {
  const std::uint64_t p = x.modulus();
  if (x.is_zero()) return x;
  if (x.pow((p - 1) / 2).value() != 1) return std::nullopt;
  std::uint64_t q = p - 1, s = 0;
  while (q % 2 == 0) { q /= 2; ++s; }
  ModP z(2, p);
  while (z.pow((p - 1) / 2).value() == 1) z = z + ModP(1, p);
  ModP c = z.pow(q), t = x.pow(q), r = x.pow((q + 1) / 2);
  std::uint64_t m = s;
  while (t.value() != 1) {
    std::uint64_t i = 0;
    ModP tt = t;
    while (tt.value() != 1) { tt *= tt; ++i; }
    ModP b = c;
    for (std::uint64_t j = 0; j + i + 1 < m; ++j) b *= b;
    m = i;
    c = b * b;
    t *= c;
    r *= b;
  }
  ModP other = -r;
  return other.value() < r.value() ? other : r;
}

// ---------------------------------------------------------------------------
// A_lambda = K[x]/(x^2 - lambda), element re + im*sqrt(lambda)

template <class K>
class Quad {
 public:
  Quad() = default;
  Quad(K re, K im, K lambda) : re_(std::move(re)), im_(std::move(im)), lambda_(std::move(lambda)) {
    if (lambda_.is_zero()) throw InvalidField("lambda must be nonzero");
  }
  static Quad embed(const K& x, const K& lambda) { return Quad(x, x.lift(0), lambda); }
  static Quad sqrt_lambda(const K& lambda) { return Quad(lambda.lift(0), lambda.lift(1), lambda); }

  const K& re() const { return re_; }
  const K& im() const { return im_; }
  const K& lambda() const { return lambda_; }
  Quad lift(long n) const { return Quad(lambda_.lift(n), lambda_.lift(0), lambda_); }
  Quad lift(long n, long d) const { return Quad(lambda_.lift(n, d), lambda_.lift(0), lambda_); }
  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
  bool in_base() const { return im_.is_zero(); }
  FieldDescriptor descriptor() const {
    return FieldDescriptor::composition(lambda_.descriptor(), lambda_.to_string());
  }
  std::string to_string() const {
    if (im_.is_zero()) return re_.to_string();
    std::string im = im_.to_string();
    const bool neg = im[0] == '-';
    if (neg) im.erase(0, 1);
    std::string out = re_.is_zero() ? (neg ? "-" : "") : re_.to_string() + (neg ? "-" : "+");
    return out + (im == "1" ? "" : im + "*") + "s";
  }

  Quad conj() const { return Quad(re_, -im_, lambda_); }
  K norm() const { return re_ * re_ - lambda_ * im_ * im_; }

  Quad& operator+=(const Quad& o) { check(o); re_ += o.re_; im_ += o.im_; return *this; }
  Quad& operator-=(const Quad& o) { check(o); re_ -= o.re_; im_ -= o.im_; return *this; }
  Quad& operator*=(const Quad& o) {
    check(o);
    K r = re_ * o.re_ + lambda_ * im_ * o.im_;
    K i = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(i);
    return *this;
  }
  Quad& operator/=(const Quad& o) { return *this *= o.inv(); }
  friend Quad operator+(Quad a, const Quad& b) { return a += b; }
  friend Quad operator-(Quad a, const Quad& b) { return a -= b; }
  friend Quad operator*(Quad a, const Quad& b) { return a *= b; }
  friend Quad operator/(Quad a, const Quad& b) { return a /= b; }
  Quad operator-() const { return Quad(-re_, -im_, lambda_); }

  Quad inv() const {
    K n = norm();
    if (n.is_zero()) throw DivisionByNonInvertible("zero divisor " + to_string() + " in A_" + lambda_.to_string());
    K ni = n.inv();
    return Quad(re_ * ni, -(im_ * ni), lambda_);
  }

  friend bool operator==(const Quad& a, const Quad& b) {
    return a.re_ == b.re_ && a.im_ == b.im_ && a.lambda_ == b.lambda_;
  }
  friend bool operator!=(const Quad& a, const Quad& b) { return !(a == b); }

 private:
  void check(const Quad& o) const {
    if (lambda_ != o.lambda_) throw FieldMismatch("A_" + lambda_.to_string() + " vs A_" + o.lambda_.to_string());
  }
  K re_, im_, lambda_;
};

template <class K>
struct is_quad : std::false_type {};
template <class K>
struct is_quad<Quad<K>> : std::true_type {};

// a + b*sqrt(lambda) with lambda = r^2  <->  (a + b r, a - b r)
template <class K>
std::pair<K, K> to_idempotent(const Quad<K>& z, const K& r) {
  if (r * r != z.lambda()) throw InvalidField("r is not a square root of lambda");
  return {z.re() + z.im() * r, z.re() - z.im() * r};
}

template <class K>
Quad<K> from_idempotent(const K& u, const K& v, const K& r) {
  K half = r.lift(1, 2);
  return Quad<K>((u + v) * half, (u - v) * half / r, r * r);
}

// x = scale^2 * rep, rep a canonical representative of the square class
template <class K>
struct SquareClass {
  K rep;
  K scale;
};

inline mpz_class squarefree_part(mpz_class n) {
  if (n == 0) return n;
  mpz_class sign = n < 0 ? -1 : 1, rest = abs(n), out = 1;
  for (mpz_class d = 2; d * d <= rest; ++d) {
    unsigned e = 0;
    while (mpz_divisible_p(rest.get_mpz_t(), d.get_mpz_t())) {
      rest /= d;
      ++e;
    }
    if (e % 2) out *= d;
  }
  return sign * out * rest;
}

inline SquareClass<Rational> square_class(const Rational& x) {
  if (x.is_zero()) throw InvalidField("zero has no square class");
  mpz_class nd = x.value().get_num() * x.value().get_den();
  mpz_class rep = squarefree_part(nd);
  Rational r{mpq_class(rep)};
  auto s = is_square(x / r);
  return {r, *s};
}

inline SquareClass<ModP> square_class(const ModP& x) {
  if (x.is_zero()) throw InvalidField("zero has no square class");
  ModP rep = x.lift(1);
  if (!is_square(x)) {
    rep = x.lift(2);
    while (is_square(rep)) rep = rep + x.lift(1);
  }
  return {rep, *is_square(x / rep)};
}

template <class K>
bool same_square_class(const K& a, const K& b) {
  return square_class(a).rep == square_class(b).rep;
}

inline std::ostream& operator<<(std::ostream& os, const Rational& x) { return os << x.to_string(); }
inline std::ostream& operator<<(std::ostream& os, const ModP& x) { return os << x.to_string(); }
template <class K>
std::ostream& operator<<(std::ostream& os, const Quad<K>& x) { return os << x.to_string(); }

}  // namespace ssr
