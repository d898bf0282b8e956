#include "zagreb/indices.hpp"

#include <algorithm>

namespace zagreb {

IndexBundle compute_bundle(std::span<const Degree> degrees, std::uint64_t leaf_count,
                           std::uint64_t n) {
  IndexBundle bundle;
  bundle.n = n;
  for (const Degree d : degrees) {
    const u128 sq = static_cast<u128>(d) * d;
    bundle.zagreb += sq;
    bundle.cubic += sq * d;
    bundle.quartic += sq * sq;
  }
  bundle.zagreb += leaf_count;
  bundle.cubic += leaf_count;
  bundle.quartic += leaf_count;
  return bundle;
}

IndexBundle apply_attachment_delta(const IndexBundle& bundle,
                                   std::span<const Degree> parent_degrees_before,
                                   std::uint64_t newcomer_degree) {
  IndexBundle next = bundle;
  for (const Degree d : parent_degrees_before) {
    const u128 d1 = d;
    const u128 d2 = d1 * d1;
    // (D+1)^p - D^p
    next.zagreb += 2 * d1 + 1;
    next.cubic += 3 * d2 + 3 * d1 + 1;
    next.quartic += 4 * d2 * d1 + 6 * d2 + 4 * d1 + 1;
  }
  const u128 k = newcomer_degree;
  next.zagreb += k * k;
  next.cubic += k * k * k;
  next.quartic += k * k * k * k;
  next.n = bundle.n + 1;
  return next;
}

std::string to_string(u128 value) {
  if (value == 0) return "0";
  std::string out;
  while (value != 0) {
    out.push_back(static_cast<char>('0' + static_cast<int>(value % 10)));
    value /= 10;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

}  // namespace zagreb
