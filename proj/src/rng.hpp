#pragma once

#include <cstdint>

namespace fbc {

// splitmix64 step; state advances by the golden-ratio increment.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Stream state for one replica, a pure function of (seed, replica index).
// Replica streams are identical no matter how replicas are partitioned
// across workers.
inline std::uint64_t replica_stream(std::uint64_t seed, std::uint64_t replica) {
  std::uint64_t s = seed + 0x632be59bd9b4e019ULL * (replica + 1);
  (void)splitmix64(s);
  return s;
}

// Uniform in [0,1) with 53 random bits.
inline double uniform01(std::uint64_t& state) {
  return static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53;
}

// Uniform in (0,1), safe as a Box-Muller radius argument.
inline double uniform_open(std::uint64_t& state) {
  return (static_cast<double>(splitmix64(state) >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace fbc
