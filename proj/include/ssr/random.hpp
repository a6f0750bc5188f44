#pragma once

#include <cstdint>
#include <random>

#include "ssr/linalg.hpp"

namespace ssr {

// portable draws: mt19937_64 output is fixed by the standard, distributions are not
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed), seed_(seed) {}
  std::uint64_t seed() const { return seed_; }

  // uniform in [0, n)
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do x = eng_(); while (x >= limit);
    return x % n;
  }
  long between(long lo, long hi) { return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1))); }
  bool coin(std::uint64_t one_in) { return below(one_in) == 0; }

 private:
  std::mt19937_64 eng_;
  std::uint64_t seed_;
};

inline Rational random_scalar(Rng& rng, const Rational& like) {
  long n = rng.between(-6, 6);
  if (rng.coin(5)) return like.lift(n, rng.between(1, 3));
  return like.lift(n);
}

inline ModP random_scalar(Rng& rng, const ModP& like) {
  return ModP(static_cast<std::int64_t>(rng.below(like.modulus())), like.modulus());
}

template <class K>
K random_nonzero(Rng& rng, const K& like) {
  for (;;) {
    K x = random_scalar(rng, like);
    if (!x.is_zero()) return x;
  }
}

template <class K>
Vec<K> random_vector(Rng& rng, std::size_t n, const K& like) {
  Vec<K> v;
  v.reserve(n);
  // occasionally sparse, which reaches the degenerate strata more often
  const bool sparse = rng.coin(4);
  for (std::size_t i = 0; i < n; ++i)
    v.push_back(sparse && !rng.coin(3) ? like.lift(0) : random_scalar(rng, like));
  return v;
}

template <class K>
Vec<K> random_nonzero_vector(Rng& rng, std::size_t n, const K& like) {
  for (;;) {
    Vec<K> v = random_vector(rng, n, like);
    if (!is_zero(v)) return v;
  }
}

}  // namespace ssr
