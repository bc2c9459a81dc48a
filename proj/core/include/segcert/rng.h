#ifndef SEGCERT_RNG_H_
#define SEGCERT_RNG_H_

#include <array>
#include <cstdint>
#include <initializer_list>
#include <limits>

namespace segcert {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// xoshiro256** generator. Satisfies UniformRandomBitGenerator.
class RandomStream {
 public:
  using result_type = std::uint64_t;

  explicit RandomStream(std::uint64_t seed) {
    for (auto& s : state_) s = splitmix64(seed);
  }

  // Stream keyed by (seed, key...): distinct keys give statistically
  // independent streams, so work can be split across threads in any order.
  static RandomStream keyed(std::uint64_t seed, std::initializer_list<std::uint64_t> key) {
    std::uint64_t h = seed;
    std::uint64_t mix = splitmix64(h);
    for (std::uint64_t k : key) {
      std::uint64_t t = k ^ mix;
      mix = splitmix64(t) ^ (mix << 1 | mix >> 63);
    }
    return RandomStream(mix);
  }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, bound), bound > 0.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = max() - max() % bound;
    std::uint64_t x;
    do {
      x = (*this)();
    } while (x >= limit);
    return x % bound;
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

  std::array<std::uint64_t, 4> state_{};
};

}  // namespace segcert

#endif  // SEGCERT_RNG_H_
