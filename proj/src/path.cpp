#include "abkit/path.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "abkit/errors.hpp"

namespace abkit::geometry {

namespace {

constexpr double kJoinTol = 1e-12;

}  // namespace

bool points_coincide(const Vec2& a, const Vec2& b) {
  const double scale = std::max({1.0, a.norm(), b.norm()});
  return (a - b).norm() <= kJoinTol * scale;
}

Vec2 segment_start(const Segment& s) {
  return std::visit(
      [](const auto& seg) -> Vec2 {
        using T = std::decay_t<decltype(seg)>;
        if constexpr (std::is_same_v<T, StraightLine>) {
          return seg.a;
        } else if constexpr (std::is_same_v<T, CircularArc>) {
          return seg.center + from_polar(seg.radius, seg.phi_start);
        } else {
          return seg.path->start();
        }
      },
      s);
}

Vec2 segment_end(const Segment& s) {
  return std::visit(
      [](const auto& seg) -> Vec2 {
        using T = std::decay_t<decltype(seg)>;
        if constexpr (std::is_same_v<T, StraightLine>) {
          return seg.b;
        } else if constexpr (std::is_same_v<T, CircularArc>) {
          return seg.center + from_polar(seg.radius, seg.phi_end);
        } else {
          return seg.path->end();
        }
      },
      s);
}

Path Path::line(const Vec2& a, const Vec2& b) {
  Path p;
  p.append(StraightLine{a, b});
  return p;
}

Path Path::arc(const Vec2& center, double radius, double phi_start, double phi_end) {
  if (!(radius > 0.0)) throw PreconditionError("arc radius must be positive");
  if (std::abs(phi_end - phi_start) > 2.0 * M_PI * (1.0 + 1e-14)) {
    throw PreconditionError("arc sweep exceeds 2*pi; use Repeat for multiple turns");
  }
  Path p;
  const double start = normalize_angle(phi_start);
  p.append(CircularArc{center, radius, start, start + (phi_end - phi_start)});
  return p;
}

Path Path::circle(const Vec2& center, double radius, double phi_start) {
  return arc(center, radius, phi_start, phi_start + 2.0 * M_PI);
}

Path Path::polyline(std::span<const Vec2> vertices, bool close) {
  if (vertices.size() < 2) throw PreconditionError("polyline needs at least two vertices");
  Path p;
  for (std::size_t i = 0; i + 1 < vertices.size(); ++i) {
    p.append(StraightLine{vertices[i], vertices[i + 1]});
  }
  if (close && !points_coincide(vertices.back(), vertices.front())) {
    p.append(StraightLine{vertices.back(), vertices.front()});
  }
  return p;
}

Path Path::polygon_ellipse(const Vec2& center, double semi_x, double semi_y, int sides) {
  if (sides < 3) throw PreconditionError("ellipse polygon needs at least three sides");
  std::vector<Vec2> v;
  v.reserve(sides);
  for (int i = 0; i < sides; ++i) {
    const double t = 2.0 * M_PI * i / sides;
    v.push_back(center + Vec2{semi_x * std::cos(t), semi_y * std::sin(t)});
  }
  return polyline(v, true);
}

Path& Path::append(Segment s) {
  if (const auto* rep = std::get_if<Repeat>(&s)) {
    if (!rep->path || rep->path->empty()) throw PreconditionError("repeat of an empty path");
    if (rep->count < 1) throw PreconditionError("repeat count must be >= 1");
    if (rep->count > 1 && !rep->path->closed()) {
      throw PreconditionError("repeat count > 1 requires a closed subpath");
    }
  }
  if (!segments_.empty() && !points_coincide(end(), segment_start(s))) {
    throw PreconditionError("path segments are not connected");
  }
  segments_.push_back(std::move(s));
  return *this;
}

Path& Path::append(const Path& other) {
  for (const auto& s : other.segments_) append(s);
  return *this;
}

Path Path::reversed() const {
  Path out;
  for (auto it = segments_.rbegin(); it != segments_.rend(); ++it) {
    std::visit(
        [&out](const auto& seg) {
          using T = std::decay_t<decltype(seg)>;
          if constexpr (std::is_same_v<T, StraightLine>) {
            out.segments_.push_back(StraightLine{seg.b, seg.a});
          } else if constexpr (std::is_same_v<T, CircularArc>) {
            // Keep phi_start normalized; the sweep flips sign.
            const double start = normalize_angle(seg.phi_end);
            out.segments_.push_back(
                CircularArc{seg.center, seg.radius, start, start - (seg.phi_end - seg.phi_start)});
          } else {
            out.segments_.push_back(
                Repeat{std::make_shared<const Path>(seg.path->reversed()), seg.count});
          }
        },
        *it);
  }
  return out;
}

Path Path::repeated(int n) const {
  Path out;
  out.append(Repeat{std::make_shared<const Path>(*this), n});
  return out;
}

Vec2 Path::start() const {
  if (segments_.empty()) throw PreconditionError("empty path has no start");
  return segment_start(segments_.front());
}

Vec2 Path::end() const {
  if (segments_.empty()) throw PreconditionError("empty path has no end");
  return segment_end(segments_.back());
}

bool Path::closed() const { return !segments_.empty() && points_coincide(start(), end()); }

}  // namespace abkit::geometry
