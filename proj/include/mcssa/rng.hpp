#ifndef MCSSA_RNG_HPP
#define MCSSA_RNG_HPP

#include <cstdint>
#include <random>

namespace mcssa {

using RngEngine = std::mt19937_64;

// Derives an independent child seed from a base seed and a stream index.
// This is the splitmix64 output function applied to base + (index+1)*gamma;
// it decorrelates adjacent indices so every replicate / surrogate can own a
// private engine. All parallel code seeds engines through this function,
// which is what makes results independent of the worker count.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) noexcept {
  std::uint64_t z = base + (index + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline RngEngine make_engine(std::uint64_t seed) { return RngEngine(seed); }

}  // namespace mcssa

#endif
