#include "privlog/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace privlog {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (char c : text) {
    hash ^= static_cast<unsigned char>(c);
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

}  // namespace

std::uint64_t RngStream::below(std::uint64_t n) {
  if (n == 0) throw std::domain_error("below(0)");
  // Reject the tail that would bias the modulus.
  std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n + 1) % n;
  for (;;) {
    std::uint64_t x = next_u64();
    if (x <= limit) return x % n;
  }
}

double RngStream::laplace(double scale) {
  double u = uniform_signed();
  double sign = u > 0.0 ? 1.0 : (u < 0.0 ? -1.0 : 0.0);
  return -scale * sign * std::log(1.0 - 2.0 * std::abs(u));
}

std::size_t RngStream::weighted_pick(const std::vector<double>& weights) {
  double total = 0.0;
  for (double w : weights) total += w;
  if (!(total > 0.0)) throw std::domain_error("weighted_pick: no mass");
  double point = uniform01() * total;
  double acc = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    acc += weights[i];
    if (point < acc) return i;
  }
  // Floating point can leave `point` at the very top; take the last
  // positive-weight index.
  for (std::size_t i = weights.size(); i-- > 0;)
    if (weights[i] > 0.0) return i;
  throw std::logic_error("weighted_pick fell through");
}

RngStream RngForge::stream(std::string_view name, std::uint64_t a,
                           std::uint64_t b, std::uint64_t c) const {
  std::uint64_t state = master_ ^ fnv1a(name);
  splitmix64(state);
  state ^= 0x632be59bd9b4e019ULL ^ a;
  splitmix64(state);
  state ^= 0x9e6c63d0876a9a35ULL ^ b;
  splitmix64(state);
  state ^= 0xd1b54a32d192ed03ULL ^ c;
  std::uint64_t seed = splitmix64(state);
  return RngStream(seed);
}

}  // namespace privlog
