#ifndef URNPHYLO_RNG_HPP
#define URNPHYLO_RNG_HPP

#include <cstdint>

namespace urnphylo {

// Counter-based 64-bit stream (splitmix64). Streams are derived from
// (seed, replicate_id) so parallel replicates never share state, and a
// trajectory is reproducible from the pair alone.
class RngStream {
 public:
  static constexpr const char* kAlgorithmId = "splitmix64-v1";

  explicit RngStream(std::uint64_t state) : state_(state) {}

  static RngStream for_replicate(std::uint64_t seed, std::uint64_t replicate_id) {
    std::uint64_t s = mix(seed);
    s = mix(s ^ mix(replicate_id + 0x9E3779B97F4A7C15ULL));
    return RngStream(s);
  }

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix(state_);
  }

  // Uniform in [0, 1) with 53 bits of precision.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Unbiased uniform in [0, n). Rejection on the top of the range.
  std::uint64_t uniform_below(std::uint64_t n) {
    const std::uint64_t threshold = -n % n;  // 2^64 mod n
    for (;;) {
      std::uint64_t r = next_u64();
      if (r >= threshold) return r % n;
    }
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
};

}  // namespace urnphylo

#endif
