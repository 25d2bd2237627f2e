#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace transgnn {

// Seeded RNG. Every randomized component draws through these helpers instead
// of std:: distributions, whose output is implementation-defined; this keeps
// seeded results identical across standard libraries.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // uniform in [0, bound); bound >= 1
  std::uint64_t next_below(std::uint64_t bound) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % bound;
  }

  // uniform in [0, 1) with 53-bit resolution
  double next_double() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // uniform in [lo, hi)
  double next_double(double lo, double hi) { return lo + (hi - lo) * next_double(); }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[next_below(i)]);
    }
  }

  // Fisher-Yates prefix: after the call the first `count` elements are a
  // uniform sample without replacement
  template <typename T>
  void partial_shuffle(std::vector<T>& v, std::size_t count) {
    for (std::size_t i = 0; i < count && i + 1 < v.size(); ++i) {
      std::swap(v[i], v[i + next_below(v.size() - i)]);
    }
  }

private:
  std::mt19937_64 engine_;
};

}  // namespace transgnn
