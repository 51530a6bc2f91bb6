#include "molp/pair_kernels.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <optional>
#include <utility>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace molp {
namespace {

// Runs build(i, j) -> std::optional<R> over plus x minus. Exceptions are
// collected per pair and the one with the smallest (plus, minus) key is
// rethrown, so failures are reproducible too.
template <class R, class Build>
std::vector<R> scan_pairs(std::span<const std::size_t> plus, std::span<const std::size_t> minus,
                          const EngineConfig& cfg, Build&& build) {
  std::vector<R> out;
  std::pair<std::size_t, std::size_t> err_key{static_cast<std::size_t>(-1), 0};
  std::exception_ptr err;

  auto less = [](const R& a, const R& b) {
    return a.plus != b.plus ? a.plus < b.plus : a.minus < b.minus;
  };

  if (cfg.kernel == PairKernel::Serial || cfg.threads <= 1) {
    for (std::size_t i : plus) {
      for (std::size_t j : minus) {
        try {
          if (auto r = build(i, j)) out.push_back(std::move(*r));
        } catch (...) {
          if (!err) {
            err = std::current_exception();
            err_key = {i, j};
          }
        }
      }
    }
    if (err) std::rethrow_exception(err);
    std::sort(out.begin(), out.end(), less);
    return out;
  }

#ifdef _OPENMP
  const auto n = static_cast<std::ptrdiff_t>(plus.size());
#pragma omp parallel num_threads(cfg.threads)
  {
    std::vector<R> local;
    std::exception_ptr local_err;
    std::pair<std::size_t, std::size_t> local_key{static_cast<std::size_t>(-1), 0};
#pragma omp for schedule(dynamic, 4) nowait
    for (std::ptrdiff_t k = 0; k < n; ++k) {
      const std::size_t i = plus[static_cast<std::size_t>(k)];
      for (std::size_t j : minus) {
        try {
          if (auto r = build(i, j)) local.push_back(std::move(*r));
        } catch (...) {
          if (std::make_pair(i, j) < local_key) {
            local_err = std::current_exception();
            local_key = {i, j};
          }
        }
      }
    }
#pragma omp critical(molp_pair_merge)
    {
      std::move(local.begin(), local.end(), std::back_inserter(out));
      if (local_err && local_key < err_key) {
        err = local_err;
        err_key = local_key;
      }
    }
  }
#else
  for (std::size_t i : plus) {
    for (std::size_t j : minus) {
      try {
        if (auto r = build(i, j)) out.push_back(std::move(*r));
      } catch (...) {
        if (!err) {
          err = std::current_exception();
          err_key = {i, j};
        }
      }
    }
  }
#endif
  if (err) std::rethrow_exception(err);
  std::sort(out.begin(), out.end(), less);
  return out;
}

// Fast necessary test followed by the exact one. `adj` are the bit vectors of
// the pair, `dual` the family indexed by their common neighbours.
bool adjacent(const BitVector& a, const BitVector& b, std::size_t a_slot, std::size_t b_slot,
              const std::vector<std::size_t>& live_other, const DoubleDescription& dd, bool vertex_pair,
              std::size_t min_common, BitVector* common_out) {
  if (and_count(a, b) < min_common) return false;
  BitVector common = a & b;
  BitVector acc;
  bool first = true;
  common.for_each_set([&](std::size_t k) {
    const BitVector& other = vertex_pair ? dd.vertices_of(k) : dd.facets_of(k);
    if (first) {
      acc = other;
      first = false;
    } else {
      acc &= other;
    }
  });
  if (first) {
    // No common neighbour (only possible in dimension 1): every live element
    // of the pair's own kind survives the empty intersection.
    acc = BitVector(vertex_pair ? dd.vertex_slots() : dd.facet_slots());
    for (std::size_t s : live_other) acc.set(s);
  }
  acc.reset(a_slot);
  acc.reset(b_slot);
  if (!acc.none()) return false;
  if (common_out) *common_out = std::move(common);
  return true;
}

}  // namespace

std::vector<EdgeHit> scan_edges(const DoubleDescription& dd, std::span<const std::size_t> plus,
                                std::span<const std::size_t> minus, const Halfspace& cut,
                                const EngineConfig& cfg) {
  const std::size_t need = dd.dim() > 0 ? dd.dim() - 1 : 0;
  std::vector<std::size_t> live;
  if (need == 0) live = dd.live_vertices();
  const Tolerance& tol = dd.tolerance();
  return scan_pairs<EdgeHit>(plus, minus, cfg, [&](std::size_t i, std::size_t j) -> std::optional<EdgeHit> {
    BitVector common;
    if (!adjacent(dd.facets_of(i), dd.facets_of(j), i, j, live, dd, true, need, &common)) return std::nullopt;
    return EdgeHit{i, j, intersect_edge(dd.vertex(i), dd.vertex(j), cut, tol), std::move(common)};
  });
}

std::vector<RidgeHit> scan_ridges(const DoubleDescription& dd, std::span<const std::size_t> plus,
                                  std::span<const std::size_t> minus, const HomPoint& apex,
                                  const EngineConfig& cfg) {
  const std::size_t need = dd.dim() > 0 ? dd.dim() - 1 : 0;
  std::vector<std::size_t> live;
  if (need == 0) live = dd.live_facets();
  const Tolerance& tol = dd.tolerance();
  return scan_pairs<RidgeHit>(plus, minus, cfg, [&](std::size_t i, std::size_t j) -> std::optional<RidgeHit> {
    BitVector common;
    if (!adjacent(dd.vertices_of(i), dd.vertices_of(j), i, j, live, dd, false, need, &common)) return std::nullopt;
    std::vector<HomPoint> ridge;
    common.for_each_set([&](std::size_t v) { ridge.push_back(dd.vertex(v)); });
    // Orientation witness: the vertex of the retained facet farthest from the
    // discarded one.
    std::size_t witness = DoubleDescription::npos;
    double best = -1.0;
    dd.vertices_of(i).for_each_set([&](std::size_t v) {
      if (common.test(v)) return;
      const double d = std::abs(evaluate(dd.vertex(v), dd.facet(j))) / side_scale(dd.vertex(v), dd.facet(j));
      if (d > best) {
        best = d;
        witness = v;
      }
    });
    if (witness == DoubleDescription::npos) return std::nullopt;
    return RidgeHit{i, j, new_facet_through(apex, ridge, dd.vertex(witness), tol), std::move(common)};
  });
}

}  // namespace molp
