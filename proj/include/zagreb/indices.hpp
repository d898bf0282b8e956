#pragma once

#include <cstdint>
#include <span>
#include <string>

namespace zagreb {

__extension__ typedef unsigned __int128 u128;
using Degree = std::uint32_t;

/// Degree power sums of a graph: Z = sum D^2 (Zagreb), Y = sum D^3,
/// X = sum D^4. 128 bits hold the quartic sum of any tree up to 10^6 nodes.
struct IndexBundle {
  u128 zagreb = 0;
  u128 cubic = 0;
  u128 quartic = 0;
  std::uint64_t n = 0;

  friend bool operator==(const IndexBundle&, const IndexBundle&) = default;
};

/// From-scratch power sums. Every leaf contributes 1 to each sum; for models
/// without folded leaves pass leaf_count = 0.
IndexBundle compute_bundle(std::span<const Degree> degrees, std::uint64_t leaf_count,
                           std::uint64_t n = 0);

/// Bundle after a newcomer of degree newcomer_degree attaches to distinct
/// parents whose degrees before the attachment were parent_degrees_before.
/// Advances the bundle's time index by one.
IndexBundle apply_attachment_delta(const IndexBundle& bundle,
                                   std::span<const Degree> parent_degrees_before,
                                   std::uint64_t newcomer_degree);

std::string to_string(u128 value);

}  // namespace zagreb
