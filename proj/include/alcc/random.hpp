#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

namespace alcc {

using Rng = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Sub-seed for (master, grid point, trial); independent of thread scheduling.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t grid, std::uint64_t trial) {
  return splitmix64(splitmix64(splitmix64(master) ^ grid) ^ (trial * 0xd1b54a32d192ed03ULL));
}

// Circular-symmetric complex Gaussian with given mean and total variance.
inline std::complex<double> cn(Rng& rng, std::complex<double> mean, double var) {
  std::normal_distribution<double> nd(0.0, std::sqrt(var / 2.0));
  double re = nd(rng);
  double im = nd(rng);
  return mean + std::complex<double>(re, im);
}

} // namespace alcc
