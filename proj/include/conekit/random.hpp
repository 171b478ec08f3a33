#pragma once

#include <cstdint>

#include "conekit/lattice.hpp"

namespace conekit {

/// SplitMix64 (Steele, Lea, Flood 2014). Fully specified, so seeded runs
/// reproduce bit-for-bit on every platform; bounded draws use rejection
/// rather than std distributions, whose output is implementation-defined.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform integer in [lo, hi].
  long long uniform(long long lo, long long hi) {
    const std::uint64_t range = static_cast<std::uint64_t>(hi - lo) + 1;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % range;
    std::uint64_t x;
    do x = next();
    while (x >= limit);
    return lo + static_cast<long long>(x % range);
  }

 private:
  std::uint64_t state_;
};

/// Independent stream for sample `index` of stream family `family` under
/// `seed`; results never depend on evaluation order.
inline SplitMix64 sample_stream(std::uint64_t seed, std::uint64_t family, std::uint64_t index) {
  SplitMix64 mixer(seed);
  const std::uint64_t a = mixer.next();
  SplitMix64 fam(a ^ (family * 0xd1342543de82ef95ULL));
  const std::uint64_t b = fam.next();
  return SplitMix64(b ^ (index * 0xa0761d6478bd642fULL));
}

/// n/d with n in [-max_num, max_num], d in [1, max_den].
inline Rational random_rational(SplitMix64& rng, long long max_num, long long max_den) {
  const long long n = rng.uniform(-max_num, max_num);
  const long long d = rng.uniform(1, max_den);
  return Rational(n, d);
}

inline Rational random_positive_rational(SplitMix64& rng, long long max_num, long long max_den) {
  const long long n = rng.uniform(1, max_num);
  const long long d = rng.uniform(1, max_den);
  return Rational(n, d);
}

inline CohomClass random_class(SplitMix64& rng, const IntersectionLattice& lattice, long long max_num = 5,
                               long long max_den = 3) {
  std::vector<Rational> c;
  c.reserve(lattice.rank());
  for (std::size_t i = 0; i < lattice.rank(); ++i) c.push_back(random_rational(rng, max_num, max_den));
  return CohomClass(lattice, std::move(c));
}

inline CohomClass random_integral_class(SplitMix64& rng, const IntersectionLattice& lattice, long long bound = 6) {
  std::vector<Rational> c;
  for (std::size_t i = 0; i < lattice.rank(); ++i) c.emplace_back(rng.uniform(-bound, bound));
  return CohomClass(lattice, std::move(c));
}

}  // namespace conekit
