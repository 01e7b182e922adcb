#pragma once

#include <cstdint>
#include <optional>

#include "ogt/model.hpp"

namespace ogt {

// Ordered hypercube of dimension d: the consecutive rank range
// [a*2^d, min((a+1)*2^d, p) - 1]. Only the last cube of a dimension may be
// truncated.
struct CubeRange {
  std::uint32_t a = 0;
  std::uint32_t d = 0;
  std::uint32_t p = 0;

  Rank lo() const { return static_cast<Rank>(static_cast<std::uint64_t>(a) << d); }
  Rank hi() const;
  std::uint32_t count() const { return hi() - lo() + 1; }
  bool contains(Rank i) const { return i >= lo() && i <= hi(); }
};

// The unique ordered d-cube containing rank i.
CubeRange cube_of(Rank i, std::uint32_t d, std::uint32_t p);

// Last rank of the range (clamped to p-1 for the truncated cube).
Rank fixed_root_of(const CubeRange& range);

// The fixed root of the adjacent d-cube, or nullopt when the cube has no
// partner in this round (incomplete hypercube). `i` must be the fixed root of
// its own d-cube.
std::optional<Rank> partner_fixed_root(Rank i, std::uint32_t d, std::uint32_t p);

}  // namespace ogt
