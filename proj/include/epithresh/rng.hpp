#pragma once

#include <cstdint>
#include <random>

namespace epithresh {

/// Seed plus stream id. Identical (seed, stream) always yields the same engine state.
struct GeneratorSeed {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
};

using Engine = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Derive an independent child seed, e.g. one per replication.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  return splitmix64(splitmix64(seed) ^ splitmix64(stream + 0x632be59bd9b4e019ULL));
}

inline Engine make_engine(GeneratorSeed s) {
  const std::uint64_t a = splitmix64(s.seed);
  const std::uint64_t b = splitmix64(s.stream ^ 0xd1b54a32d192ed03ULL);
  std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                    static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
  return Engine(seq);
}

inline Engine make_engine(std::uint64_t seed, std::uint64_t stream = 0) {
  return make_engine(GeneratorSeed{seed, stream});
}

/// Uniform double in the open interval (0, 1).
inline double uniform_open(Engine& eng) {
  // 53 random bits, offset by half an ulp so neither endpoint is produced.
  return (static_cast<double>(eng() >> 11) + 0.5) * 0x1.0p-53;
}

/// Uniform integer in [0, bound), bound > 0. Unbiased (rejection on the top range).
inline std::uint64_t uniform_index(Engine& eng, std::uint64_t bound) {
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  std::uint64_t x = eng();
  while (x >= limit) x = eng();
  return x % bound;
}

}  // namespace epithresh
