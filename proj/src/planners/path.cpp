#include "planners/path.hpp"

#include <algorithm>
#include <cmath>

#include "common/error.hpp"

namespace tcwb::planners {

Path Path::make(Kind kind, Fn fn, Point start, Point end) {
  return Path(std::make_shared<const Impl>(Impl{kind, std::move(fn), std::move(start), std::move(end)}));
}

Path Path::constant(const Point& p) {
  return make(Kind::constant, [p](double) { return p; }, p, p);
}

Path Path::arc(double from, double to) {
  auto at = [from, to](double t) { return torus_point({from + (to - from) * t}); };
  return make(Kind::arc, at, at(0), at(1));
}

Path Path::concat(const Path& a, const Path& b) {
  return make(
      Kind::concat, [a, b](double t) { return t < 0.5 ? a(2 * t) : b(2 * t - 1); }, a.start(), b.end());
}

Path Path::reverse(const Path& p) {
  return make(Kind::reverse, [p](double t) { return p(1 - t); }, p.end(), p.start());
}

Path Path::reparametrize(const Path& p, double a, double b) {
  if (a < 0 || a > 1 || b < 0 || b > 1) fail(ErrorCode::invalid_argument, "reparametrization must stay in [0,1]");
  return make(Kind::reparam, [p, a, b](double t) { return p(a + (b - a) * t); }, p(a), p(b));
}

Path Path::product(const std::vector<Path>& factors) {
  if (factors.empty()) fail(ErrorCode::invalid_argument, "empty product path");
  auto join = [factors](auto&& pick) {
    Point p;
    for (const auto& f : factors) {
      const Point q = pick(f);
      p.c.insert(p.c.end(), q.c.begin(), q.c.end());
    }
    return p;
  };
  Point s = join([](const Path& f) { return f.start(); });
  Point e = join([](const Path& f) { return f.end(); });
  bool all_constant = std::all_of(factors.begin(), factors.end(), [](const Path& f) { return f.is_constant(); });
  if (all_constant) return constant(s);
  return make(
      Kind::product, [factors, join](double t) { return join([t](const Path& f) { return f(t); }); }, s, e);
}

Path Path::include(const Path& p, const Space& wedge, int side) {
  auto lift = [wedge, side](const Point& q) { return wedge.canonical(Point{side, q.c}); };
  if (p.is_constant()) return constant(lift(p.start()));
  return make(
      Kind::inclusion, [p, lift](double t) { return lift(p(t)); }, lift(p.start()), lift(p.end()));
}

Point Path::operator()(double t) const {
  if (t <= 0) return impl_->start;
  if (t >= 1) return impl_->end;
  return impl_->fn(t);
}

Point Path::raw(double t) const { return impl_->fn(std::clamp(t, 0.0, 1.0)); }

}  // namespace tcwb::planners
