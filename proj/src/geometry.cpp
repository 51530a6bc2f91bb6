#include "molp/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace molp {

void Tolerance::validate() const {
  if (!(eps_zero > 0.0 && eps_zero <= eps_side && eps_side < 1e-3)) {
    throw std::invalid_argument("tolerance must satisfy 0 < eps_zero <= eps_side < 1e-3");
  }
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double max_norm(std::span<const double> a) {
  double m = 0.0;
  for (double x : a) m = std::max(m, std::abs(x));
  return m;
}

HomPoint HomPoint::finite(Vector y) { return HomPoint(std::move(y), 1.0); }

HomPoint HomPoint::ideal(Vector direction) {
  const double n = max_norm(direction);
  if (n == 0.0) throw std::invalid_argument("ideal point needs a non-null direction");
  for (double& x : direction) x /= n;
  return HomPoint(std::move(direction), 0.0);
}

HomPoint HomPoint::homogeneous(Vector coords, double weight, const Tolerance& tol) {
  if (weight < 0.0 && weight < -tol.eps_zero * std::max(1.0, max_norm(coords))) {
    throw std::invalid_argument("homogeneous point with negative weight");
  }
  const double n = max_norm(coords);
  if (weight > tol.eps_zero * n) {
    for (double& x : coords) x /= weight;
    return HomPoint(std::move(coords), 1.0);
  }
  return ideal(std::move(coords));
}

Halfspace Halfspace::make(Vector normal, double intercept) {
  const double n = max_norm(normal);
  if (n == 0.0) throw std::invalid_argument("halfspace needs a non-null normal");
  for (double& x : normal) x /= n;
  return Halfspace(std::move(normal), intercept / n, false);
}

Halfspace Halfspace::ideal_plane(std::size_t dim) { return Halfspace(Vector(dim, 0.0), 1.0, true); }

Halfspace Halfspace::flipped() const {
  if (ideal_) throw std::logic_error("the ideal plane has a fixed orientation");
  Vector n(normal_.size());
  std::transform(normal_.begin(), normal_.end(), n.begin(), [](double x) { return -x; });
  return Halfspace(std::move(n), -intercept_, false);
}

double evaluate(const HomPoint& pt, const Halfspace& hs) {
  if (hs.is_ideal()) return pt.weight();
  return dot(hs.normal(), pt.coords()) - hs.intercept() * pt.weight();
}

double side_scale(const HomPoint& pt, const Halfspace& hs) {
  if (hs.is_ideal() || pt.is_ideal()) return 1.0;
  return std::max({1.0, max_norm(pt.coords()), std::abs(hs.intercept())});
}

Side classify(double value, double scale, const Tolerance& tol) {
  const double t = tol.eps_side * scale;
  if (value > t) return Side::Positive;
  if (value < -t) return Side::Negative;
  return Side::On;
}

Side side_of(const HomPoint& pt, const Halfspace& hs, const Tolerance& tol) {
  return classify(evaluate(pt, hs), side_scale(pt, hs), tol);
}

HomPoint intersect_edge(const HomPoint& a, const HomPoint& b, const Halfspace& hs,
                        const Tolerance& tol) {
  const double va = evaluate(a, hs);
  const double vb = evaluate(b, hs);
  if (!((va > 0.0 && vb < 0.0) || (va < 0.0 && vb > 0.0))) {
    throw std::invalid_argument("intersect_edge: endpoints are not on opposite sides");
  }
  // |va| * b + |vb| * a evaluates to zero and has nonnegative weight.
  const double wa = std::abs(vb);
  const double wb = std::abs(va);
  Vector coords(a.dim());
  for (std::size_t i = 0; i < coords.size(); ++i) coords[i] = wa * a[i] + wb * b[i];
  return HomPoint::homogeneous(std::move(coords), wa * a.weight() + wb * b.weight(), tol);
}

}  // namespace molp
