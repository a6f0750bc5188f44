// Lagrangian decomposition of x^3 + y^3 and of a cubic whose quartic is not a rational square.
#include <iostream>

#include "ssr/constructions.hpp"
#include "ssr/decomposition.hpp"

int main() {
  using ssr::Rational;
  const auto s = ssr::binary_cubics(Rational(0));

  const ssr::Vec<Rational> a{Rational(1), Rational(0), Rational(0), Rational(1)};
  std::cout << "Q(A) = " << ssr::big_q(s, a) << "\n";
  const auto d = ssr::lagrangian_decompose(s, a);
  std::cout << "q = " << d.q << "\nB =";
  for (const auto& x : d.b) std::cout << " " << x;
  std::cout << "\nC =";
  for (const auto& x : d.c) std::cout << " " << x;
  std::cout << "\n";

  // x^3 - 3xy^2 has Q = -36, so it splits only after adjoining sqrt(-1)
  const ssr::Vec<Rational> p{Rational(1), Rational(0), Rational(-1), Rational(0)};
  std::cout << "Q(P) = " << ssr::big_q(s, p) << "\n";
  const auto e = ssr::quad_ext_decompose(s, p, Rational(-1));
  std::cout << "B =";
  for (const auto& x : e.b) std::cout << " " << x;
  std::cout << "\n";
}
