#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace hmmlab {

/// Reproducible random stream keyed by a (seed, stream_id) pair.
///
/// The generator state is expanded from the key with SplitMix64 and advanced
/// with xoshiro256**. Normal variates use the Marsaglia polar method. Two
/// streams with the same key produce the same draws on any platform with
/// IEEE-754 doubles and a correctly rounded std::log/std::sqrt.
class RngStream {
 public:
  using result_type = std::uint64_t;

  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_id() const noexcept { return stream_id_; }

  /// Child stream. Its key depends only on this stream's key and `tag`, not
  /// on how many draws have been taken from this stream.
  RngStream fork(std::uint64_t tag) const;

  std::uint64_t next_u64() noexcept;
  /// Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept;
  double normal() noexcept;
  /// -1 or +1 with probability 1/2 each.
  int sign() noexcept;
  bool bernoulli(double p) noexcept { return uniform() < p; }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }
  result_type operator()() noexcept { return next_u64(); }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::array<std::uint64_t, 4> state_{};
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace hmmlab
