#pragma once

#include <array>
#include <cstdint>

namespace garchx {

/// Identifies one reproducible random stream: the pair (master_seed,
/// stream_id) maps to a disjoint counter range of a Philox4x32-10 generator,
/// so streams never collide regardless of how many values are drawn or on
/// which thread they are consumed.
struct SeedSpec {
  std::uint64_t master_seed = 0;
  std::uint64_t stream_id = 0;
};

/// Raw Philox4x32-10 block function (counter, key) -> 4x32 bits.
std::array<std::uint32_t, 4> philox4x32_10(const std::array<std::uint32_t, 4>& counter,
                                           const std::array<std::uint32_t, 2>& key);

/// Counter-based random stream. Value-semantic: copy freely, each copy
/// continues independently from its current position.
///
/// A stream is addressed by (master_seed, stream_id, substream). Substreams
/// separate logically independent uses inside one stream_id (e.g. the
/// innovation and exogenous draws of a single simulated path).
class RngStream {
 public:
  explicit RngStream(SeedSpec seed, std::uint64_t substream = 0);

  std::uint64_t next_u64();

  /// Uniform draw strictly inside (0,1).
  double uniform();

  /// Standard normal via the inverse CDF (one uniform per draw).
  double normal();

  /// Cauchy(location, scale) via the inverse CDF (one uniform per draw).
  double cauchy(double location, double scale);

 private:
  std::array<std::uint32_t, 2> key_;
  std::uint64_t stream_word_ = 0;
  std::uint64_t index_ = 0;
  std::array<std::uint32_t, 4> block_{};
  int block_pos_ = 2;  // u64 halves consumed from block_, 2 == exhausted

  void refill();
};

/// Quantile of the standard normal distribution, accurate to full double
/// precision (Wichura's AS241 PPND16 rational approximations).
double normal_quantile(double p);

}  // namespace garchx
