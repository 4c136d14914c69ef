#pragma once

#include <stdexcept>

namespace mima {

enum class DomainKind { disk, square };

struct Point {
  double x = 0.0;
  double y = 0.0;
};

/// Computational domain: the disk B(0, radius) centered at the origin, or the
/// square (0, side)^2. Both have homogeneous Dirichlet boundaries.
struct Geometry {
  DomainKind kind = DomainKind::disk;
  double radius = 1.0;  // disk only
  double side = 1.0;    // square only

  static Geometry disk(double radius = 1.0) {
    if (radius <= 0.0) throw std::invalid_argument("disk radius must be positive");
    return Geometry{DomainKind::disk, radius, 1.0};
  }
  static Geometry square(double side = 1.0) {
    if (side <= 0.0) throw std::invalid_argument("square side must be positive");
    return Geometry{DomainKind::square, 1.0, side};
  }

  double area() const {
    if (kind == DomainKind::disk) return 3.14159265358979323846 * radius * radius;
    return side * side;
  }

  bool strictly_inside(Point p) const {
    if (kind == DomainKind::disk) return p.x * p.x + p.y * p.y < radius * radius;
    return p.x > 0.0 && p.x < side && p.y > 0.0 && p.y < side;
  }
};

}  // namespace mima
