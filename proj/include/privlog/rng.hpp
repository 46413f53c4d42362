#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace privlog {

// One deterministic stream of randomness. The engine (mt19937_64) and the
// bit-to-double conversions are pinned by the language standard, so a given
// seed yields the same values on every platform; none of the
// implementation-defined std distributions are used.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }

  // Uniform on the open interval (0,1); the half-ulp offset keeps both
  // endpoints unreachable.
  double uniform01() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  // Uniform on (-0.5, 0.5).
  double uniform_signed() { return uniform01() - 0.5; }

  // Uniform integer in [0, n), rejection sampled to avoid modulo bias.
  std::uint64_t below(std::uint64_t n);

  // Inverse-CDF Laplace draw, location 0: x = -b * sgn(u) * ln(1 - 2|u|).
  double laplace(double scale);

  // Index into `weights` with probability proportional to weight. Weights
  // must be non-negative with a positive sum.
  std::size_t weighted_pick(const std::vector<double>& weights);

  // Fisher-Yates; std::shuffle is implementation-defined, this is not.
  template <typename T>
  void shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  std::mt19937_64 eng_;
};

// Derives independent named streams from one master seed, so pipeline stages
// cannot perturb each other's draws and per-event draws can be keyed by
// position instead of by visit order.
class RngForge {
 public:
  explicit RngForge(std::uint64_t master_seed) : master_(master_seed) {}

  RngStream stream(std::string_view name, std::uint64_t a = 0,
                   std::uint64_t b = 0, std::uint64_t c = 0) const;

  std::uint64_t master() const { return master_; }

 private:
  std::uint64_t master_;
};

}  // namespace privlog
