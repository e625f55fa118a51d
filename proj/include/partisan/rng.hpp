#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace partisan {

// Deterministic RNG used by every randomized stage. std::shuffle and the
// std distributions are implementation-defined, so the draws here are spelled
// out explicitly: same seed, same sequence, on any platform.
class DetRng {
 public:
  explicit DetRng(uint64_t seed) : eng_(seed) {}

  uint64_t next() { return eng_(); }

  // Uniform in [0, n). Modulo bias is ~n/2^64, irrelevant at our sizes.
  uint64_t index(uint64_t n) { return eng_() % n; }

  // Uniform in [0, 1) with 53 bits.
  double real() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  double real(double lo, double hi) { return lo + (hi - lo) * real(); }

  bool chance(double p) { return real() < p; }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    if (v.size() < 2) return;
    for (size_t i = v.size() - 1; i > 0; --i) {
      size_t j = static_cast<size_t>(index(i + 1));
      std::swap(v[i], v[j]);
    }
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace partisan
