#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace tir {

// All randomness in a run flows from a single 64-bit seed. Stages pull
// named substreams ("init", "shuffle", "dropout", "pretrain.mask", ...) so
// each stage is reproducible on its own. Sampling helpers below avoid the
// standard distributions, whose outputs differ across library versions.

inline uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline uint64_t hash_name(std::string_view name) {
  uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
  for (char c : name) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

using Rng = std::mt19937_64;

inline Rng substream(uint64_t seed, std::string_view name) {
  return Rng(splitmix64(seed ^ splitmix64(hash_name(name))));
}

// Uniform double in [0, 1).
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform(Rng& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform01(rng);
}

// Uniform integer in [0, n). n must be positive.
inline int uniform_int(Rng& rng, int n) {
  return static_cast<int>(rng() % static_cast<uint64_t>(n));
}

inline bool bernoulli(Rng& rng, double p) { return uniform01(rng) < p; }

template <typename T>
void shuffle_inplace(std::vector<T>& v, Rng& rng) {
  for (size_t i = v.size(); i > 1; --i) {
    size_t j = static_cast<size_t>(rng() % i);
    std::swap(v[i - 1], v[j]);
  }
}

}  // namespace tir
