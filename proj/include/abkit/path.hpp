#pragma once

#include <memory>
#include <span>
#include <variant>
#include <vector>

#include "abkit/vec.hpp"

namespace abkit::geometry {

class Path;

struct StraightLine {
  Vec2 a;
  Vec2 b;
};

/// Arc of the circle |x - center| = radius, swept from phi_start to phi_end
/// (counterclockwise when phi_end > phi_start). |phi_end - phi_start| <= 2*pi.
struct CircularArc {
  Vec2 center;
  double radius = 0.0;
  double phi_start = 0.0;
  double phi_end = 0.0;
};

/// `count` traversals of a closed subpath.
struct Repeat {
  std::shared_ptr<const Path> path;
  int count = 1;
};

using Segment = std::variant<StraightLine, CircularArc, Repeat>;

Vec2 segment_start(const Segment& s);
Vec2 segment_end(const Segment& s);

/// Oriented, connected, piecewise parametric curve.
///
/// Segments are stored in traversal order; appending a segment whose start
/// does not meet the current end (within 1e-12 relative) throws
/// PreconditionError.
class Path {
 public:
  Path() = default;

  static Path line(const Vec2& a, const Vec2& b);
  static Path arc(const Vec2& center, double radius, double phi_start, double phi_end);
  /// Full counterclockwise circle starting at angle phi_start.
  static Path circle(const Vec2& center, double radius, double phi_start = 0.0);
  static Path polyline(std::span<const Vec2> vertices, bool close = false);
  /// Closed polygon with `sides` vertices on an axis-aligned ellipse.
  static Path polygon_ellipse(const Vec2& center, double semi_x, double semi_y, int sides);

  Path& append(Segment s);
  Path& append(const Path& other);
  friend Path operator+(Path lhs, const Path& rhs) { return lhs.append(rhs); }

  /// Same curve traversed backwards.
  Path reversed() const;
  /// n traversals of this path; requires a closed path when n > 1.
  Path repeated(int n) const;

  bool empty() const noexcept { return segments_.empty(); }
  Vec2 start() const;
  Vec2 end() const;
  bool closed() const;
  std::span<const Segment> segments() const noexcept { return segments_; }

 private:
  std::vector<Segment> segments_;
};

bool points_coincide(const Vec2& a, const Vec2& b);

}  // namespace abkit::geometry
