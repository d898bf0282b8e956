#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace zagreb {

/// Reproducible random stream for one growth trajectory.
///
/// The engine is std::mt19937_64 (period 2^19937 - 1) seeded through
/// std::seed_seq with the 32-bit halves of (seed, stream_id). Both algorithms
/// are fully specified by the C++ standard, and bounded draws use Lemire's
/// multiply-shift rejection instead of std::uniform_int_distribution (whose
/// output is implementation-defined), so a trajectory is identical across
/// compilers and standard libraries.
class RngStream {
 public:
  static constexpr std::string_view kAlgorithm =
      "mt19937_64/seed_seq(seed,stream_id)/lemire-bounded";

  RngStream(std::uint64_t seed, std::uint64_t stream_id)
      : seed_(seed), stream_id_(stream_id), engine_(make_engine(seed, stream_id)) {}

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_id() const noexcept { return stream_id_; }

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound) {
    __extension__ typedef unsigned __int128 u128;
    u128 product = static_cast<u128>(engine_()) * bound;
    auto low = static_cast<std::uint64_t>(product);
    if (low < bound) {
      const std::uint64_t threshold = -bound % bound;
      while (low < threshold) {
        product = static_cast<u128>(engine_()) * bound;
        low = static_cast<std::uint64_t>(product);
      }
    }
    return static_cast<std::uint64_t>(product >> 64);
  }

 private:
  static std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t stream_id) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream_id),
                      static_cast<std::uint32_t>(stream_id >> 32)};
    return std::mt19937_64(seq);
  }

  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 engine_;
};

}  // namespace zagreb
