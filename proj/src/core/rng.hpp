#pragma once

#include <cstdint>

namespace starkspec {

// Deterministic random stream (xoshiro256++ core, splitmix64 seeding).
//
// Everything stochastic in the library draws through this class so that a
// campaign is reproducible bit-for-bit from one master seed, independent of
// the standard library's distribution implementations. Child streams derived
// from (seed, stream_id) are what make parallel and serial campaign execution
// produce identical results.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed);

  // Independent stream derived from this stream's seed and an id; does not
  // depend on how many values were drawn from the parent.
  RngStream child(std::uint64_t stream_id) const;

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next_u64();

  // Uniform on [0, 1), 53-bit resolution.
  double uniform();

  // Standard normal via Box-Muller (pairs cached).
  double normal();
  double normal(double mean, double stddev);

  // Exact Binomial(n, p) draw by inverse CDF walked outward from the mode;
  // one uniform consumed per draw.
  std::int64_t binomial(std::int64_t n, double p);

 private:
  std::uint64_t state_[4];
  std::uint64_t seed_;
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

}  // namespace starkspec
