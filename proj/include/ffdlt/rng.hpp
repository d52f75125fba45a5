#pragma once

#include <cstdint>
#include <random>

namespace ffdlt {

/// SplitMix64 finalizer. Used as the avalanche step of the run-seed derivation.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Counter-based run-seed scheme: run r's seed depends only on (master_seed, r),
/// so extending an experiment with more runs never perturbs earlier runs.
/// Derivation: splitmix64(splitmix64(master_seed) ^ (r + 1)).
inline std::uint64_t derive_run_seed(std::uint64_t master_seed, std::uint64_t run_index) {
  return splitmix64(splitmix64(master_seed) ^ (run_index + 1));
}

/// Single uniform draw in [0, 1). All simulation-level draws (node parameters,
/// tie-breaking) go through this so the byte-level contract is in one place.
inline double uniform_unit(std::mt19937_64& rng) {
  return std::generate_canonical<double, 53>(rng);
}

}  // namespace ffdlt
