#pragma once

#include <cassert>
#include <cstdint>
#include <random>

namespace influence {

// Finalizer from the splitmix64 generator; used to derive independent
// stream seeds from (user seed, stream index) pairs.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Deterministic random source backed by std::mt19937_64. The raw engine
// outputs are pinned by the C++ standard, so a given seed produces the same
// byte stream on every platform. Bounded draws are implemented here because
// std::uniform_int_distribution is implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // fair coin, lowest bit of one engine output
  bool next_bit() { return (next_u64() & 1u) != 0; }

  // uniform on [0, n), unbiased via rejection
  std::uint64_t next_below(std::uint64_t n) {
    assert(n > 0);
    const std::uint64_t threshold = (0 - n) % n;  // 2^64 mod n
    for (;;) {
      const std::uint64_t r = next_u64();
      if (r >= threshold) return r % n;
    }
  }

 private:
  std::mt19937_64 engine_;
};

// Independent stream for (seed, stream); both orderings of two distinct
// streams yield unrelated engines.
inline Rng stream_rng(std::uint64_t seed, std::uint64_t stream) {
  return Rng(splitmix64(seed ^ splitmix64(stream + 0x632be59bd9b4e019ull)));
}

}  // namespace influence
