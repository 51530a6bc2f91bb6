#pragma once

// Pair-scanning kernels behind cut_with_halfspace() and add_vertex().
//
// Each kernel tests every (plus, minus) pair against the frozen adjacency
// bit vectors and builds the new element for the pairs that pass. The
// Parallel kernel distributes the plus side over OpenMP threads with private
// buffers; the Serial kernel is the plain double loop kept as the reference.
// Both return results sorted by (plus, minus), so the output does not depend
// on the thread count.

#include <cstddef>
#include <span>
#include <vector>

#include "molp/dd.hpp"

namespace molp {

struct EdgeHit {
  std::size_t plus;
  std::size_t minus;
  HomPoint point;       // where the edge crosses the cutting hyperplane
  BitVector facets;     // facets through both endpoints
};

struct RidgeHit {
  std::size_t plus;
  std::size_t minus;
  Halfspace facet;      // hyperplane through the apex and the ridge
  BitVector vertices;   // vertices on both facets
};

std::vector<EdgeHit> scan_edges(const DoubleDescription& dd, std::span<const std::size_t> plus,
                                std::span<const std::size_t> minus, const Halfspace& cut,
                                const EngineConfig& cfg);

std::vector<RidgeHit> scan_ridges(const DoubleDescription& dd, std::span<const std::size_t> plus,
                                  std::span<const std::size_t> minus, const HomPoint& apex,
                                  const EngineConfig& cfg);

}  // namespace molp
