#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "reuleaux/errors.hpp"

namespace reuleaux {

/// A point or displacement in the Euclidean plane. Coordinates are always finite.
class Point2 {
 public:
  constexpr Point2() = default;
  Point2(double x, double y) : x_(x), y_(y) {
    if (!std::isfinite(x) || !std::isfinite(y)) {
      throw Error(Errc::InvalidInput, "non-finite coordinate");
    }
  }

  double x() const noexcept { return x_; }
  double y() const noexcept { return y_; }

  Point2& operator+=(const Point2& o) { return *this = Point2(x_ + o.x_, y_ + o.y_); }
  Point2& operator-=(const Point2& o) { return *this = Point2(x_ - o.x_, y_ - o.y_); }
  Point2& operator*=(double s) { return *this = Point2(x_ * s, y_ * s); }

  friend Point2 operator+(Point2 a, const Point2& b) { return a += b; }
  friend Point2 operator-(Point2 a, const Point2& b) { return a -= b; }
  friend Point2 operator-(const Point2& a) { return Point2(-a.x_, -a.y_); }
  friend Point2 operator*(Point2 a, double s) { return a *= s; }
  friend Point2 operator*(double s, Point2 a) { return a *= s; }
  friend Point2 operator/(const Point2& a, double s) { return Point2(a.x_ / s, a.y_ / s); }
  friend bool operator==(const Point2&, const Point2&) = default;

 private:
  double x_ = 0.0;
  double y_ = 0.0;
};

using Mat2 = Eigen::Matrix2d;

inline double dot(const Point2& a, const Point2& b) { return a.x() * b.x() + a.y() * b.y(); }
/// z-component of the 3D cross product; positive when b is counter-clockwise from a.
inline double cross(const Point2& a, const Point2& b) { return a.x() * b.y() - a.y() * b.x(); }
inline double norm2(const Point2& a) { return dot(a, a); }
inline double norm(const Point2& a) { return std::hypot(a.x(), a.y()); }
inline double distance(const Point2& a, const Point2& b) { return norm(a - b); }
/// Rotation by +pi/2.
inline Point2 perp(const Point2& a) { return Point2(-a.y(), a.x()); }
inline Point2 rotate(const Point2& a, double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  return Point2(c * a.x() - s * a.y(), s * a.x() + c * a.y());
}
inline Point2 normalized(const Point2& a) {
  const double len = norm(a);
  if (len == 0.0) throw Error(Errc::InvalidInput, "cannot normalize the zero vector");
  return a / len;
}
inline Point2 unit_vector(double angle) { return Point2(std::cos(angle), std::sin(angle)); }

inline Eigen::Vector2d to_eigen(const Point2& p) { return {p.x(), p.y()}; }
inline Point2 from_eigen(const Eigen::Vector2d& v) { return Point2(v.x(), v.y()); }
inline Mat2 outer(const Point2& a, const Point2& b) { return to_eigen(a) * to_eigen(b).transpose(); }

/// Maps any integer onto [0, n).
inline int wrap_index(long i, int n) {
  const long r = i % n;
  return static_cast<int>(r < 0 ? r + n : r);
}

/// One velocity per vertex (or per disk center).
class PerturbationField {
 public:
  PerturbationField() = default;
  explicit PerturbationField(std::size_t n) : velocities_(n) {}
  explicit PerturbationField(std::vector<Point2> velocities) : velocities_(std::move(velocities)) {}

  std::size_t size() const noexcept { return velocities_.size(); }
  const Point2& operator[](std::size_t i) const { return velocities_[i]; }
  Point2& operator[](std::size_t i) { return velocities_[i]; }
  std::span<const Point2> velocities() const noexcept { return velocities_; }
  auto begin() const { return velocities_.begin(); }
  auto end() const { return velocities_.end(); }

  /// Flattened (x0, y0, x1, y1, ...) coordinates.
  Eigen::VectorXd flatten() const {
    Eigen::VectorXd out(2 * velocities_.size());
    for (std::size_t i = 0; i < velocities_.size(); ++i) {
      out[2 * i] = velocities_[i].x();
      out[2 * i + 1] = velocities_[i].y();
    }
    return out;
  }

 private:
  std::vector<Point2> velocities_;
};

}  // namespace reuleaux
