#pragma once

#include <cstdint>

#include "matlevy/types.hpp"

namespace matlevy {

/// SplitMix64 finalizer; bijective on 64-bit words.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed for the random stream identified by (base seed, replica, stream).
/// Streams of different replicas never depend on scheduling order.
constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t replica,
                                    std::uint64_t stream = 0) {
  return splitmix64(splitmix64(splitmix64(base) ^ replica) ^ (stream * 0xd1b54a32d192ed03ULL));
}

inline Rng make_rng(std::uint64_t base, std::uint64_t replica = 0, std::uint64_t stream = 0) {
  return Rng(derive_seed(base, replica, stream));
}

double standard_normal(Rng& rng);
double uniform01(Rng& rng);

/// Complex Gaussian with independent real and imaginary parts of variance
/// variance / 2 each, so E|z|^2 = variance.
Complex complex_normal(Rng& rng, double variance = 1.0);

ComplexMatrix complex_normal_matrix(Index rows, Index cols, Rng& rng, double variance = 1.0);

/// Uniformly distributed unit vector in C^d.
ComplexVector sample_uniform_sphere(Index d, Rng& rng);

/// Unitary matrix distributed by Haar measure (QR of a Ginibre matrix with
/// the diagonal phase fixed).
ComplexMatrix sample_haar_unitary(Index d, Rng& rng);

}  // namespace matlevy
