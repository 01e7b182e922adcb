#include "ogt/hypercube.hpp"

namespace ogt {

Rank CubeRange::hi() const {
  std::uint64_t end = (static_cast<std::uint64_t>(a) + 1) << d;
  if (end > p) end = p;
  return static_cast<Rank>(end - 1);
}

CubeRange cube_of(Rank i, std::uint32_t d, std::uint32_t p) {
  if (p == 0) throw Error(Errc::InvalidArgument, "p must be positive");
  if (i >= p) throw Error(Errc::InvalidArgument, "rank out of range");
  if (d > ceil_log2(p)) throw Error(Errc::InvalidArgument, "dimension out of range");
  return CubeRange{i >> d, d, p};
}

Rank fixed_root_of(const CubeRange& range) { return range.hi(); }

std::optional<Rank> partner_fixed_root(Rank i, std::uint32_t d, std::uint32_t p) {
  CubeRange cube = cube_of(i, d, p);
  if (i != fixed_root_of(cube))
    throw Error(Errc::InvalidArgument, "rank is not a fixed root at this dimension");

  const std::uint64_t bit = 1ull << d;
  if (i == p - 1) {
    // Only the last processor needs special treatment.
    if ((i & bit) == 0) return std::nullopt;  // no role in this iteration
    std::uint64_t cubes = (static_cast<std::uint64_t>(p) + bit - 1) >> d;  // ceil(p/2^d)
    return static_cast<Rank>((cubes - 1) * bit - 1);
  }

  std::uint64_t flipped = static_cast<std::uint64_t>(i) ^ bit;
  if (flipped >= p) flipped = p - 1;  // the incomplete cube's root substitutes
  if (flipped == i) return std::nullopt;
  return static_cast<Rank>(flipped);
}

}  // namespace ogt
