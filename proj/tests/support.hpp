#pragma once

#include <string>
#include <vector>

#include "ssr/registry.hpp"

namespace ssr::test {

inline ModP fp(long v, std::uint64_t p) { return ModP(v, p); }

template <class K>
Vec<K> vec(const K& like, std::initializer_list<long> xs) {
  Vec<K> v;
  for (long x : xs) v.push_back(like.lift(x));
  return v;
}

inline std::vector<ConstructionId> all_instances() {
  return {ConstructionId::parse("BinaryCubics"),
          ConstructionId::parse("Tautological", {{"n", "2"}}),
          ConstructionId::parse("JCommutant", {{"n", "2"}, {"lambda_j", "1"}}),
          ConstructionId::parse("HomEF", {{"g", "1,-1,1"}}),
          ConstructionId::parse("ThreeForms6"),
          ConstructionId::parse("PrimitiveThreeForms6"),
          ConstructionId::parse("HalfSpinor12")};
}

// the small ones, for tests that loop over many random vectors
inline std::vector<ConstructionId> small_instances() {
  auto v = all_instances();
  v.pop_back();
  return v;
}

// binary cubic discriminant of sum p_k x^{3-k} y^k in monomial coefficients
template <class K>
K cubic_discriminant(const Vec<K>& v) {
  const K a = v[0], b = v[1] * v[0].lift(3), c = v[2] * v[0].lift(3), d = v[3];
  return b * b * c * c - a.lift(4) * a * c * c * c - a.lift(4) * b * b * b * d + a.lift(18) * a * b * c * d -
         a.lift(27) * a * a * d * d;
}

// every vector of k^n over F_p
inline std::vector<Vec<ModP>> all_vectors(std::size_t n, std::uint64_t p) {
  std::vector<Vec<ModP>> out;
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= p;
  for (std::size_t k = 0; k < total; ++k) {
    Vec<ModP> v;
    std::size_t r = k;
    for (std::size_t i = 0; i < n; ++i) {
      v.push_back(ModP(static_cast<std::int64_t>(r % p), p));
      r /= p;
    }
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace ssr::test
