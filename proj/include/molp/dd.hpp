#pragma once

// Double description of a (possibly unbounded, line-free) polytope: a vertex
// list and a facet list kept in sync through two families of adjacency bit
// vectors. Supports the two incremental updates used by the approximation
// loops: cutting with a halfspace and adding a vertex.
//
// Slots are stable between compactions. Retired slots go to a spare pool and
// are reused; compact() squeezes them out once the pool grows past
// max(compact_min_spare, compact_spare_fraction * slots).

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "molp/bitvector.hpp"
#include "molp/geometry.hpp"

namespace molp {

enum class PairKernel { Parallel, Serial };

struct EngineConfig {
  int threads = 1;
  PairKernel kernel = PairKernel::Parallel;
  std::size_t compact_min_spare = 64;
  double compact_spare_fraction = 0.5;
};

struct Partition {
  std::vector<std::size_t> positive;
  std::vector<std::size_t> negative;
  std::vector<std::size_t> on;
};

struct CutReport {
  std::size_t removed_vertices = 0;
  std::vector<std::size_t> new_vertices;  // slots
  std::size_t kept_on_boundary = 0;
  std::size_t facet_slot = 0;
  std::size_t dropped_facets = 0;  // facets left with fewer than dim vertices
};

struct AddReport {
  std::size_t removed_facets = 0;
  std::vector<std::size_t> new_facets;  // slots
  std::size_t kept_through_vertex = 0;
  std::size_t vertex_slot = 0;
  std::size_t dropped_vertices = 0;  // vertices left on fewer than dim facets
};

class DoubleDescription {
 public:
  explicit DoubleDescription(std::size_t dim, Tolerance tol = {}, EngineConfig cfg = {});

  /// Builds a description from explicit lists; incidences are computed
  /// numerically with side_of().
  static DoubleDescription from_lists(std::size_t dim, const std::vector<HomPoint>& vertices,
                                      const std::vector<Halfspace>& facets, Tolerance tol = {},
                                      EngineConfig cfg = {});

  /// The simplex apex + E: the apex, the p ideal points at the positive ends of
  /// the axes, the p facets y_i >= apex_i and the ideal plane (facet slot 0).
  static DoubleDescription orthant_simplex(std::span<const double> apex, Tolerance tol = {},
                                           EngineConfig cfg = {});

  std::size_t dim() const { return dim_; }
  const Tolerance& tolerance() const { return tol_; }
  const EngineConfig& config() const { return cfg_; }
  void set_config(const EngineConfig& cfg) { cfg_ = cfg; }

  std::size_t vertex_slots() const { return vertices_.size(); }
  std::size_t facet_slots() const { return facets_.size(); }
  std::size_t live_vertex_count() const { return vertices_.size() - spare_vertices_.size(); }
  std::size_t live_facet_count() const { return facets_.size() - spare_facets_.size(); }
  std::size_t spare_vertex_count() const { return spare_vertices_.size(); }
  std::size_t spare_facet_count() const { return spare_facets_.size(); }

  const HomPoint& vertex(std::size_t v) const { return vertices_[v].value; }
  const Halfspace& facet(std::size_t f) const { return facets_[f].value; }
  bool vertex_live(std::size_t v) const { return vertices_[v].live; }
  bool facet_live(std::size_t f) const { return facets_[f].live; }
  bool vertex_final(std::size_t v) const { return vertices_[v].final; }
  bool facet_final(std::size_t f) const { return facets_[f].final; }
  /// Creation order; never reused, survives compaction.
  std::uint64_t vertex_serial(std::size_t v) const { return vertices_[v].serial; }
  std::uint64_t facet_serial(std::size_t f) const { return facets_[f].serial; }
  /// Caller-owned payload, -1 when unset (used for preimage bookkeeping).
  std::int64_t vertex_tag(std::size_t v) const { return vertices_[v].tag; }
  void set_vertex_tag(std::size_t v, std::int64_t tag) { vertices_[v].tag = tag; }

  /// Facets through vertex v (indexed by facet slot).
  const BitVector& facets_of(std::size_t v) const { return vertex_adj_[v]; }
  /// Vertices on facet f (indexed by vertex slot).
  const BitVector& vertices_of(std::size_t f) const { return facet_adj_[f]; }

  std::vector<std::size_t> live_vertices() const;
  std::vector<std::size_t> live_facets() const;
  std::size_t find_vertex_by_serial(std::uint64_t serial) const;  // npos if gone
  std::size_t find_facet_by_serial(std::uint64_t serial) const;
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  void mark_vertex_final(std::size_t v) { vertices_[v].final = true; }
  void mark_facet_final(std::size_t f) { facets_[f].final = true; }

  Partition partition_vertices(const Halfspace& hs) const;
  Partition partition_facets(const HomPoint& pt) const;

  /// Combinatorial edge test: at least dim-1 common facets, and the common
  /// facets share no other vertex.
  bool is_edge(std::size_t v1, std::size_t v2) const;
  /// Dual ridge test over common vertices.
  bool is_ridge(std::size_t f1, std::size_t f2) const;

  /// Intersects with hs. Throws InvalidCut unless hs strictly separates some
  /// live vertices from others.
  CutReport cut_with_halfspace(const Halfspace& hs);
  /// Replaces the polytope by its convex hull with pt. Throws InvalidAdd unless
  /// pt is strictly outside some facet.
  AddReport add_vertex(const HomPoint& pt);

  void compact();

  /// Structural self-check; returns a list of violated invariants (empty when
  /// consistent). With numeric=true also verifies every adjacency bit against
  /// side_of().
  std::vector<std::string> check_consistency(bool numeric = true) const;

 private:
  template <class T>
  struct Slot {
    T value;
    bool live = true;
    bool final = false;
    std::uint64_t serial = 0;
    std::int64_t tag = -1;
  };

  std::size_t alloc_vertex(HomPoint pt);
  std::size_t alloc_facet(Halfspace hs);
  void retire_vertex(std::size_t v);
  void retire_facet(std::size_t f);
  void maybe_compact();

  std::size_t dim_;
  Tolerance tol_;
  EngineConfig cfg_;
  std::vector<Slot<HomPoint>> vertices_;
  std::vector<Slot<Halfspace>> facets_;
  std::vector<BitVector> vertex_adj_;  // per vertex, bits over facet slots
  std::vector<BitVector> facet_adj_;   // per facet, bits over vertex slots
  std::vector<std::size_t> spare_vertices_;  // kept sorted descending; back() is smallest
  std::vector<std::size_t> spare_facets_;
  std::uint64_t next_vertex_serial_ = 0;
  std::uint64_t next_facet_serial_ = 0;
};

/// Hyperplane through apex and the given points, oriented so that `inside`
/// (a point known to be off the hyperplane) is on the positive side.
/// Throws DegenerateSpan unless the inputs span exactly a hyperplane.
Halfspace new_facet_through(const HomPoint& apex, std::span<const HomPoint> points,
                            const HomPoint& inside, const Tolerance& tol = {});

/// Unoriented variant: the positive side is chosen arbitrarily.
Halfspace hyperplane_through(std::span<const HomPoint> points, const Tolerance& tol = {});

/// Rank of a set of homogeneous points (as vectors in R^{dim+1}).
std::size_t homogeneous_rank(std::span<const HomPoint> points, const Tolerance& tol = {});

}  // namespace molp
