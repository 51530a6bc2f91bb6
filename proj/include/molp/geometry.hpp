#pragma once

// Oriented projective geometry in homogeneous coordinates.
//
// A point is (coords, weight) with weight >= 0. Finite points are stored with
// weight 1; ideal points (weight 0) encode ray directions and are stored with
// max-norm 1. A halfspace {y : h.y >= M} evaluates a homogeneous point as
// h.coords - M * weight, so a ray d is classified by the sign of h.d alone.

#include <cstddef>
#include <span>
#include <vector>

namespace molp {

using Vector = std::vector<double>;

struct Tolerance {
  /// Magnitudes below this are treated as zero.
  double eps_zero = 1e-10;
  /// Threshold for classifying a point against a hyperplane.
  double eps_side = 1e-8;

  /// Throws std::invalid_argument unless 0 < eps_zero <= eps_side < 1e-3.
  void validate() const;
};

enum class Side { Negative = -1, On = 0, Positive = 1 };

class HomPoint {
 public:
  HomPoint() = default;

  static HomPoint finite(Vector y);
  /// Ray direction; throws std::invalid_argument for the null vector.
  static HomPoint ideal(Vector direction);
  /// Normalizes an arbitrary homogeneous vector. A weight that is tiny relative
  /// to the coordinates is snapped to zero.
  static HomPoint homogeneous(Vector coords, double weight, const Tolerance& tol = {});

  bool is_ideal() const { return weight_ == 0.0; }
  double weight() const { return weight_; }
  std::span<const double> coords() const { return coords_; }
  double operator[](std::size_t i) const { return coords_[i]; }
  std::size_t dim() const { return coords_.size(); }

  friend bool operator==(const HomPoint&, const HomPoint&) = default;

 private:
  HomPoint(Vector coords, double weight) : coords_(std::move(coords)), weight_(weight) {}

  Vector coords_;
  double weight_ = 1.0;
};

class Halfspace {
 public:
  Halfspace() = default;

  /// {y : normal.y >= intercept}, rescaled so that max|normal_i| = 1.
  /// Throws std::invalid_argument for a null normal.
  static Halfspace make(Vector normal, double intercept);
  /// The hyperplane at infinity; every finite point is on its positive side.
  static Halfspace ideal_plane(std::size_t dim);

  std::span<const double> normal() const { return normal_; }
  double intercept() const { return intercept_; }
  bool is_ideal() const { return ideal_; }
  std::size_t dim() const { return normal_.size(); }

  /// Same halfspace with the opposite orientation.
  Halfspace flipped() const;

  friend bool operator==(const Halfspace&, const Halfspace&) = default;

 private:
  Halfspace(Vector normal, double intercept, bool ideal)
      : normal_(std::move(normal)), intercept_(intercept), ideal_(ideal) {}

  Vector normal_;
  double intercept_ = 0.0;
  bool ideal_ = false;
};

double dot(std::span<const double> a, std::span<const double> b);
double max_norm(std::span<const double> a);

/// Signed homogeneous value h.coords - M * weight (weight for the ideal plane).
double evaluate(const HomPoint& pt, const Halfspace& hs);

/// Magnitude against which evaluate() is compared; >= 1.
double side_scale(const HomPoint& pt, const Halfspace& hs);

/// Classifies a raw value at the given scale.
Side classify(double value, double scale, const Tolerance& tol);

Side side_of(const HomPoint& pt, const Halfspace& hs, const Tolerance& tol = {});

/// Point where the segment (or ray, when one end is ideal) between a and b
/// crosses the boundary of hs. a and b must lie strictly on opposite sides.
HomPoint intersect_edge(const HomPoint& a, const HomPoint& b, const Halfspace& hs,
                        const Tolerance& tol = {});

}  // namespace molp
