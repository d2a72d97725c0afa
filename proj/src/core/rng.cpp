#include "core/rng.hpp"

#include <cmath>

namespace starkspec {

namespace {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline std::uint64_t rotl(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}

double log_binomial_pmf(std::int64_t n, std::int64_t k, double p) {
  return std::lgamma(static_cast<double>(n) + 1.0) -
         std::lgamma(static_cast<double>(k) + 1.0) -
         std::lgamma(static_cast<double>(n - k) + 1.0) +
         static_cast<double>(k) * std::log(p) +
         static_cast<double>(n - k) * std::log1p(-p);
}

// Inverse-CDF search walked outward from the distribution mode. Probability
// mass is accumulated mode, mode+1, mode-1, mode+2, ... until the uniform
// deviate is consumed; pmf values come from the ratio recurrences so nothing
// underflows away from the tails.
std::int64_t binomial_from_mode(std::int64_t n, double p, double u) {
  const std::int64_t mode =
      static_cast<std::int64_t>(std::floor((static_cast<double>(n) + 1.0) * p));
  const double odds = p / (1.0 - p);

  double pm = std::exp(log_binomial_pmf(n, mode, p));
  u -= pm;
  if (u < 0.0) return mode;

  double p_up = pm;
  double p_down = pm;
  std::int64_t up = mode;
  std::int64_t down = mode;
  while (down > 0 || up < n) {
    if (up < n) {
      p_up *= odds * static_cast<double>(n - up) / static_cast<double>(up + 1);
      ++up;
      u -= p_up;
      if (u < 0.0) return up;
    }
    if (down > 0) {
      p_down *= static_cast<double>(down) /
                (odds * static_cast<double>(n - down + 1));
      --down;
      u -= p_down;
      if (u < 0.0) return down;
    }
  }
  // Rounding left a sliver of probability unaccounted for; the mode is the
  // least-surprising answer.
  return mode;
}

}  // namespace

RngStream::RngStream(std::uint64_t seed) : seed_(seed) {
  std::uint64_t sm = seed;
  for (auto& s : state_) s = splitmix64(sm);
}

RngStream RngStream::child(std::uint64_t stream_id) const {
  std::uint64_t sm = seed_ ^ (0xA0761D6478BD642FULL * (stream_id + 1));
  std::uint64_t derived = splitmix64(sm);
  derived ^= splitmix64(sm);
  return RngStream(derived);
}

std::uint64_t RngStream::next_u64() {
  // xoshiro256++
  const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
  const std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = rotl(state_[3], 45);
  return result;
}

double RngStream::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::normal() {
  if (has_cached_normal_) {
    has_cached_normal_ = false;
    return cached_normal_;
  }
  const double u1 = 1.0 - uniform();  // (0, 1], keeps log finite
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * M_PI * u2;
  cached_normal_ = r * std::sin(theta);
  has_cached_normal_ = true;
  return r * std::cos(theta);
}

double RngStream::normal(double mean, double stddev) {
  return mean + stddev * normal();
}

std::int64_t RngStream::binomial(std::int64_t n, double p) {
  if (n <= 0) return 0;
  if (p <= 0.0) return 0;
  if (p >= 1.0) return n;
  const double u = uniform();
  if (p > 0.5) return n - binomial_from_mode(n, 1.0 - p, u);
  return binomial_from_mode(n, p, u);
}

}  // namespace starkspec
