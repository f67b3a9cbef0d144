#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "planners/geometry.hpp"

namespace tcwb::planners {

// Evaluable map [0,1] -> space. Endpoints are cached: evaluation at exactly
// 0 or 1 returns them, and raw() exposes the underlying formula so drift
// between the two can be measured.
class Path {
 public:
  enum class Kind { constant, arc, group_track, concat, reverse, reparam, product, inclusion, custom };
  using Fn = std::function<Point(double)>;

  static Path constant(const Point& p);
  // Circle arc through angles from..to, linear in t.
  static Path arc(double from_angle, double to_angle);
  static Path make(Kind kind, Fn fn, Point start, Point end);
  static Path concat(const Path& a, const Path& b);
  static Path reverse(const Path& p);
  // t -> p(a + (b - a) t)
  static Path reparametrize(const Path& p, double a, double b);
  // Coordinatewise product of circle (or torus) paths into a torus.
  static Path product(const std::vector<Path>& factors);
  // Inclusion of a summand path into a wedge.
  static Path include(const Path& p, const Space& wedge, int side);

  Point operator()(double t) const;
  Point raw(double t) const;
  const Point& start() const { return impl_->start; }
  const Point& end() const { return impl_->end; }
  Kind kind() const { return impl_->kind; }
  bool is_constant() const { return impl_->kind == Kind::constant; }

 private:
  struct Impl {
    Kind kind;
    Fn fn;
    Point start, end;
  };
  explicit Path(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

}  // namespace tcwb::planners
