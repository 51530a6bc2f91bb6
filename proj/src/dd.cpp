#include "molp/dd.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "molp/errors.hpp"
#include "molp/pair_kernels.hpp"

namespace molp {

namespace {

void pop_smallest(std::vector<std::size_t>& spare, std::size_t& out) {
  out = spare.back();
  spare.pop_back();
}

void push_spare(std::vector<std::size_t>& spare, std::size_t slot) {
  auto it = std::lower_bound(spare.begin(), spare.end(), slot, std::greater<>());
  spare.insert(it, slot);
}

Eigen::MatrixXd homogeneous_rows(std::span<const HomPoint> points) {
  const std::size_t d = points.empty() ? 0 : points.front().dim();
  Eigen::MatrixXd m(static_cast<Eigen::Index>(points.size()), static_cast<Eigen::Index>(d + 1));
  for (std::size_t r = 0; r < points.size(); ++r) {
    for (std::size_t c = 0; c < d; ++c) m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = points[r][c];
    m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(d)) = points[r].weight();
  }
  return m;
}

// Combinatorial adjacency shared by is_edge and is_ridge.
bool combinatorial_adjacent(const BitVector& a, const BitVector& b, std::size_t a_slot, std::size_t b_slot,
                            std::size_t min_common, const std::vector<BitVector>& dual,
                            const std::function<BitVector()>& all_live) {
  if (and_count(a, b) < min_common) return false;
  const BitVector common = a & b;
  BitVector acc;
  bool first = true;
  common.for_each_set([&](std::size_t k) {
    if (first) {
      acc = dual[k];
      first = false;
    } else {
      acc &= dual[k];
    }
  });
  if (first) acc = all_live();
  acc.reset(a_slot);
  acc.reset(b_slot);
  return acc.none();
}

}  // namespace

std::size_t homogeneous_rank(std::span<const HomPoint> points, const Tolerance& tol) {
  if (points.empty()) return 0;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(homogeneous_rows(points));
  lu.setThreshold(std::max(tol.eps_side, 1e-12));
  return static_cast<std::size_t>(lu.rank());
}

Halfspace hyperplane_through(std::span<const HomPoint> points, const Tolerance& tol) {
  if (points.empty()) throw DegenerateSpan("no points to fit a hyperplane through");
  const std::size_t d = points.front().dim();
  if (points.size() < d) throw DegenerateSpan("too few points to span a hyperplane");
  const Eigen::MatrixXd m = homogeneous_rows(points);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  // Need rank exactly d among d+1 columns.
  const Eigen::Index cols = static_cast<Eigen::Index>(d + 1);
  const double smax = sv.size() ? sv(0) : 0.0;
  const double thresh = std::max(1.0, smax) * std::max(tol.eps_side, 1e-12);
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > thresh) ++rank;
  }
  if (rank != cols - 1) throw DegenerateSpan("points do not span exactly a hyperplane");
  const Eigen::VectorXd z = svd.matrixV().col(cols - 1);
  Vector normal(d);
  for (std::size_t i = 0; i < d; ++i) normal[i] = z(static_cast<Eigen::Index>(i));
  if (max_norm(normal) <= tol.eps_zero) throw DegenerateSpan("hyperplane is the ideal plane");
  return Halfspace::make(std::move(normal), -z(cols - 1));
}

Halfspace new_facet_through(const HomPoint& apex, std::span<const HomPoint> points, const HomPoint& inside,
                            const Tolerance& tol) {
  std::vector<HomPoint> all;
  all.reserve(points.size() + 1);
  all.push_back(apex);
  all.insert(all.end(), points.begin(), points.end());
  Halfspace hs = hyperplane_through(all, tol);
  const double v = evaluate(inside, hs);
  if (classify(v, side_scale(inside, hs), tol) == Side::On) {
    throw DegenerateSpan("orientation witness lies on the new hyperplane");
  }
  return v < 0.0 ? hs.flipped() : hs;
}

DoubleDescription::DoubleDescription(std::size_t dim, Tolerance tol, EngineConfig cfg)
    : dim_(dim), tol_(tol), cfg_(cfg) {
  tol_.validate();
  if (dim == 0) throw std::invalid_argument("dimension must be positive");
}

DoubleDescription DoubleDescription::from_lists(std::size_t dim, const std::vector<HomPoint>& vertices,
                                                const std::vector<Halfspace>& facets, Tolerance tol,
                                                EngineConfig cfg) {
  DoubleDescription dd(dim, tol, cfg);
  for (const auto& f : facets) dd.alloc_facet(f);
  for (const auto& v : vertices) {
    const std::size_t s = dd.alloc_vertex(v);
    for (std::size_t f = 0; f < dd.facets_.size(); ++f) {
      const Side side = side_of(v, dd.facets_[f].value, dd.tol_);
      if (side == Side::Negative) throw std::invalid_argument("from_lists: vertex violates a facet");
      if (side == Side::On) {
        dd.vertex_adj_[s].set(f);
        dd.facet_adj_[f].set(s);
      }
    }
  }
  return dd;
}

DoubleDescription DoubleDescription::orthant_simplex(std::span<const double> apex, Tolerance tol,
                                                     EngineConfig cfg) {
  const std::size_t p = apex.size();
  std::vector<HomPoint> vertices;
  vertices.push_back(HomPoint::finite(Vector(apex.begin(), apex.end())));
  for (std::size_t i = 0; i < p; ++i) {
    Vector e(p, 0.0);
    e[i] = 1.0;
    vertices.push_back(HomPoint::ideal(std::move(e)));
  }
  std::vector<Halfspace> facets;
  facets.push_back(Halfspace::ideal_plane(p));
  for (std::size_t i = 0; i < p; ++i) {
    Vector e(p, 0.0);
    e[i] = 1.0;
    facets.push_back(Halfspace::make(std::move(e), apex[i]));
  }
  return from_lists(p, vertices, facets, tol, cfg);
}

std::vector<std::size_t> DoubleDescription::live_vertices() const {
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < vertices_.size(); ++v) {
    if (vertices_[v].live) out.push_back(v);
  }
  return out;
}

std::vector<std::size_t> DoubleDescription::live_facets() const {
  std::vector<std::size_t> out;
  for (std::size_t f = 0; f < facets_.size(); ++f) {
    if (facets_[f].live) out.push_back(f);
  }
  return out;
}

std::size_t DoubleDescription::find_vertex_by_serial(std::uint64_t serial) const {
  for (std::size_t v = 0; v < vertices_.size(); ++v) {
    if (vertices_[v].live && vertices_[v].serial == serial) return v;
  }
  return npos;
}

std::size_t DoubleDescription::find_facet_by_serial(std::uint64_t serial) const {
  for (std::size_t f = 0; f < facets_.size(); ++f) {
    if (facets_[f].live && facets_[f].serial == serial) return f;
  }
  return npos;
}

std::size_t DoubleDescription::alloc_vertex(HomPoint pt) {
  if (pt.dim() != dim_) throw std::invalid_argument("vertex dimension mismatch");
  std::size_t s;
  if (!spare_vertices_.empty()) {
    pop_smallest(spare_vertices_, s);
    vertices_[s] = Slot<HomPoint>{std::move(pt), true, false, next_vertex_serial_++, -1};
    vertex_adj_[s].clear();
  } else {
    s = vertices_.size();
    vertices_.push_back(Slot<HomPoint>{std::move(pt), true, false, next_vertex_serial_++, -1});
    vertex_adj_.emplace_back(facets_.size());
    for (auto& bv : facet_adj_) bv.resize(vertices_.size());
  }
  return s;
}

std::size_t DoubleDescription::alloc_facet(Halfspace hs) {
  if (hs.dim() != dim_) throw std::invalid_argument("facet dimension mismatch");
  std::size_t s;
  if (!spare_facets_.empty()) {
    pop_smallest(spare_facets_, s);
    facets_[s] = Slot<Halfspace>{std::move(hs), true, false, next_facet_serial_++, -1};
    facet_adj_[s].clear();
  } else {
    s = facets_.size();
    facets_.push_back(Slot<Halfspace>{std::move(hs), true, false, next_facet_serial_++, -1});
    facet_adj_.emplace_back(vertices_.size());
    for (auto& bv : vertex_adj_) bv.resize(facets_.size());
  }
  return s;
}

void DoubleDescription::retire_vertex(std::size_t v) {
  vertex_adj_[v].for_each_set([&](std::size_t f) { facet_adj_[f].reset(v); });
  vertex_adj_[v].clear();
  vertices_[v].live = false;
  vertices_[v].final = false;
  push_spare(spare_vertices_, v);
}

void DoubleDescription::retire_facet(std::size_t f) {
  facet_adj_[f].for_each_set([&](std::size_t v) { vertex_adj_[v].reset(f); });
  facet_adj_[f].clear();
  facets_[f].live = false;
  facets_[f].final = false;
  push_spare(spare_facets_, f);
}

Partition DoubleDescription::partition_vertices(const Halfspace& hs) const {
  Partition part;
  for (std::size_t v = 0; v < vertices_.size(); ++v) {
    if (!vertices_[v].live) continue;
    switch (side_of(vertices_[v].value, hs, tol_)) {
      case Side::Positive: part.positive.push_back(v); break;
      case Side::Negative: part.negative.push_back(v); break;
      case Side::On: part.on.push_back(v); break;
    }
  }
  return part;
}

Partition DoubleDescription::partition_facets(const HomPoint& pt) const {
  Partition part;
  for (std::size_t f = 0; f < facets_.size(); ++f) {
    if (!facets_[f].live) continue;
    switch (side_of(pt, facets_[f].value, tol_)) {
      case Side::Positive: part.positive.push_back(f); break;
      case Side::Negative: part.negative.push_back(f); break;
      case Side::On: part.on.push_back(f); break;
    }
  }
  return part;
}

bool DoubleDescription::is_edge(std::size_t v1, std::size_t v2) const {
  if (v1 == v2 || !vertices_[v1].live || !vertices_[v2].live) return false;
  return combinatorial_adjacent(vertex_adj_[v1], vertex_adj_[v2], v1, v2, dim_ - 1, facet_adj_, [&] {
    BitVector all(vertices_.size());
    for (std::size_t v : live_vertices()) all.set(v);
    return all;
  });
}

bool DoubleDescription::is_ridge(std::size_t f1, std::size_t f2) const {
  if (f1 == f2 || !facets_[f1].live || !facets_[f2].live) return false;
  return combinatorial_adjacent(facet_adj_[f1], facet_adj_[f2], f1, f2, dim_ - 1, vertex_adj_, [&] {
    BitVector all(facets_.size());
    for (std::size_t f : live_facets()) all.set(f);
    return all;
  });
}

CutReport DoubleDescription::cut_with_halfspace(const Halfspace& hs) {
  if (hs.dim() != dim_) throw std::invalid_argument("cut dimension mismatch");
  const Partition part = partition_vertices(hs);
  if (part.negative.empty() || part.positive.empty()) {
    throw InvalidCut("halfspace does not cut the polytope properly");
  }
  for (std::size_t v : part.negative) {
    if (vertices_[v].final) throw NumericalError("cut removes a vertex marked final");
  }

  auto hits = scan_edges(*this, part.positive, part.negative, hs, cfg_);

  CutReport report;
  report.removed_vertices = part.negative.size();
  report.kept_on_boundary = part.on.size();

  const std::size_t f_new = alloc_facet(hs);
  report.facet_slot = f_new;
  for (std::size_t v : part.on) {
    vertex_adj_[v].set(f_new);
    facet_adj_[f_new].set(v);
  }

  // Facets losing vertices may become redundant.
  BitVector touched(facets_.size());
  for (std::size_t v : part.negative) touched |= vertex_adj_[v];
  for (std::size_t v : part.negative) retire_vertex(v);

  for (auto& hit : hits) {
    const std::size_t s = alloc_vertex(std::move(hit.point));
    BitVector bits = std::move(hit.facets);
    bits.resize(facets_.size());
    bits.set(f_new);
    bits.for_each_set([&](std::size_t f) { facet_adj_[f].set(s); });
    vertex_adj_[s] = std::move(bits);
    report.new_vertices.push_back(s);
  }

  touched.for_each_set([&](std::size_t f) {
    if (f == f_new || !facets_[f].live || facets_[f].final) return;
    if (facet_adj_[f].count() < dim_) {
      retire_facet(f);
      ++report.dropped_facets;
    }
  });

  maybe_compact();
  return report;
}

AddReport DoubleDescription::add_vertex(const HomPoint& pt) {
  if (pt.dim() != dim_) throw std::invalid_argument("vertex dimension mismatch");
  const Partition part = partition_facets(pt);
  if (part.negative.empty()) throw InvalidAdd("point is not outside any facet");
  if (part.positive.empty()) throw InvalidAdd("point is outside every facet");
  for (std::size_t f : part.negative) {
    if (facets_[f].final) throw NumericalError("added vertex discards a facet marked final");
  }

  auto hits = scan_ridges(*this, part.positive, part.negative, pt, cfg_);

  AddReport report;
  report.removed_facets = part.negative.size();
  report.kept_through_vertex = part.on.size();

  const std::size_t v_new = alloc_vertex(pt);
  report.vertex_slot = v_new;
  for (std::size_t f : part.on) {
    facet_adj_[f].set(v_new);
    vertex_adj_[v_new].set(f);
  }

  BitVector touched(vertices_.size());
  for (std::size_t f : part.negative) touched |= facet_adj_[f];
  for (std::size_t f : part.negative) retire_facet(f);

  for (auto& hit : hits) {
    const std::size_t s = alloc_facet(std::move(hit.facet));
    BitVector bits = std::move(hit.vertices);
    bits.resize(vertices_.size());
    bits.set(v_new);
    bits.for_each_set([&](std::size_t v) { vertex_adj_[v].set(s); });
    facet_adj_[s] = std::move(bits);
    report.new_facets.push_back(s);
  }

  touched.for_each_set([&](std::size_t v) {
    if (v == v_new || !vertices_[v].live || vertices_[v].final) return;
    if (vertex_adj_[v].count() < dim_) {
      retire_vertex(v);
      ++report.dropped_vertices;
    }
  });

  maybe_compact();
  return report;
}

void DoubleDescription::maybe_compact() {
  auto over = [&](std::size_t spare, std::size_t slots) {
    return spare > std::max<std::size_t>(cfg_.compact_min_spare,
                                         static_cast<std::size_t>(cfg_.compact_spare_fraction * static_cast<double>(slots)));
  };
  if (over(spare_vertices_.size(), vertices_.size()) || over(spare_facets_.size(), facets_.size())) compact();
}

void DoubleDescription::compact() {
  if (spare_vertices_.empty() && spare_facets_.empty()) return;
  std::vector<std::size_t> vmap(vertices_.size(), npos), fmap(facets_.size(), npos);
  std::size_t nv = 0, nf = 0;
  for (std::size_t v = 0; v < vertices_.size(); ++v) {
    if (vertices_[v].live) vmap[v] = nv++;
  }
  for (std::size_t f = 0; f < facets_.size(); ++f) {
    if (facets_[f].live) fmap[f] = nf++;
  }

  std::vector<Slot<HomPoint>> vs;
  std::vector<BitVector> vadj;
  vs.reserve(nv);
  vadj.reserve(nv);
  for (std::size_t v = 0; v < vertices_.size(); ++v) {
    if (vmap[v] == npos) continue;
    vs.push_back(std::move(vertices_[v]));
    BitVector bits(nf);
    vertex_adj_[v].for_each_set([&](std::size_t f) { bits.set(fmap[f]); });
    vadj.push_back(std::move(bits));
  }
  std::vector<Slot<Halfspace>> fs;
  std::vector<BitVector> fadj;
  fs.reserve(nf);
  fadj.reserve(nf);
  for (std::size_t f = 0; f < facets_.size(); ++f) {
    if (fmap[f] == npos) continue;
    fs.push_back(std::move(facets_[f]));
    BitVector bits(nv);
    facet_adj_[f].for_each_set([&](std::size_t v) { bits.set(vmap[v]); });
    fadj.push_back(std::move(bits));
  }
  vertices_ = std::move(vs);
  facets_ = std::move(fs);
  vertex_adj_ = std::move(vadj);
  facet_adj_ = std::move(fadj);
  spare_vertices_.clear();
  spare_facets_.clear();
}

std::vector<std::string> DoubleDescription::check_consistency(bool numeric) const {
  std::vector<std::string> bad;
  auto report = [&](std::string s) {
    if (bad.size() < 20) bad.push_back(std::move(s));
  };
  for (std::size_t v = 0; v < vertices_.size(); ++v) {
    if (vertex_adj_[v].size() != facets_.size()) report("vertex " + std::to_string(v) + " bit vector size");
    if (!vertices_[v].live) {
      if (!vertex_adj_[v].none()) report("retired vertex " + std::to_string(v) + " has adjacency");
      continue;
    }
    if (vertex_adj_[v].count() < dim_) report("vertex " + std::to_string(v) + " on fewer than dim facets");
    for (std::size_t f = 0; f < facets_.size(); ++f) {
      const bool a = vertex_adj_[v].test(f);
      if (a != facet_adj_[f].test(v)) report("adjacency not transposed at (" + std::to_string(v) + "," + std::to_string(f) + ")");
      if (!facets_[f].live) {
        if (a) report("vertex adjacent to retired facet");
        continue;
      }
      if (!numeric) continue;
      const Side s = side_of(vertices_[v].value, facets_[f].value, tol_);
      if (s == Side::Negative) report("vertex " + std::to_string(v) + " violates facet " + std::to_string(f));
      if ((s == Side::On) != a) report("incidence mismatch at (" + std::to_string(v) + "," + std::to_string(f) + ")");
    }
  }
  for (std::size_t f = 0; f < facets_.size(); ++f) {
    if (facet_adj_[f].size() != vertices_.size()) report("facet " + std::to_string(f) + " bit vector size");
    if (!facets_[f].live) {
      if (!facet_adj_[f].none()) report("retired facet " + std::to_string(f) + " has adjacency");
      continue;
    }
    if (facet_adj_[f].count() < dim_) report("facet " + std::to_string(f) + " with fewer than dim vertices");
  }
  for (std::size_t s : spare_vertices_) {
    if (vertices_[s].live) report("live vertex in spare pool");
  }
  for (std::size_t s : spare_facets_) {
    if (facets_[s].live) report("live facet in spare pool");
  }
  return bad;
}

}  // namespace molp
