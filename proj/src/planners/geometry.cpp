#include "planners/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>

#include "bounds/expr.hpp"
#include "common/error.hpp"

namespace tcwb::planners {

namespace {

double circle_distance(std::complex<double> a, std::complex<double> b) { return std::abs(std::arg(b * std::conj(a))); }

double sphere_distance(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return 2 * std::asin(std::min(1.0, std::sqrt(s) / 2));
}

}  // namespace

Space Space::torus(std::size_t n) {
  if (n == 0) fail(ErrorCode::invalid_argument, "torus dimension must be positive");
  Space s;
  s.kind_ = SpaceKind::torus;
  s.n_ = n;
  return s;
}

Space Space::sphere(std::size_t n) {
  if (n == 0) fail(ErrorCode::invalid_argument, "sphere dimension must be positive");
  if (n == 1) return circle();
  Space s;
  s.kind_ = SpaceKind::sphere;
  s.n_ = n;
  return s;
}

Space Space::wedge(const Space& x, const Space& y) {
  if (x.kind_ == SpaceKind::wedge || y.kind_ == SpaceKind::wedge)
    fail(ErrorCode::invalid_argument, "wedge summands must be circles, tori or spheres");
  Space s;
  s.kind_ = SpaceKind::wedge;
  s.n_ = 0;
  s.x_ = std::make_shared<Space>(x);
  s.y_ = std::make_shared<Space>(y);
  return s;
}

std::string Space::name() const {
  switch (kind_) {
    case SpaceKind::torus: return n_ == 1 ? "S1" : "T" + std::to_string(n_);
    case SpaceKind::sphere: return "S" + std::to_string(n_);
    case SpaceKind::wedge: return "(" + x_->name() + " v " + y_->name() + ")";
  }
  return "?";
}

Point Space::basepoint() const {
  switch (kind_) {
    case SpaceKind::torus: return group_identity(n_);
    case SpaceKind::sphere: {
      Point p{0, std::vector<double>(n_ + 1, 0.0)};
      p.c[0] = 1.0;
      return p;
    }
    case SpaceKind::wedge: return Point{0, x_->basepoint().c};
  }
  return {};
}

Point Space::canonical(const Point& p) const {
  if (kind_ != SpaceKind::wedge) return Point{0, p.c};
  if (p.side == 1 && p.c == y_->basepoint().c) return basepoint();
  return p;
}

bool Space::valid(const Point& p, double tol) const {
  switch (kind_) {
    case SpaceKind::torus:
      if (p.side != 0 || p.c.size() != 2 * n_) return false;
      for (std::size_t i = 0; i < n_; ++i)
        if (std::abs(std::abs(coord(p, i)) - 1.0) > tol) return false;
      return true;
    case SpaceKind::sphere: {
      if (p.side != 0 || p.c.size() != n_ + 1) return false;
      double s = 0;
      for (double v : p.c) s += v * v;
      return std::abs(std::sqrt(s) - 1.0) <= tol;
    }
    case SpaceKind::wedge:
      if (p.side != 0 && p.side != 1) return false;
      return summand(p.side).valid(Point{0, p.c}, tol);
  }
  return false;
}

Point Space::normalize(const Point& p) const {
  if (!valid(p, 1e-3)) fail(ErrorCode::invalid_argument, "point " + format_point(p) + " is not on " + name());
  Point q = p;
  switch (kind_) {
    case SpaceKind::torus:
      for (std::size_t i = 0; i < n_; ++i) set_coord(q, i, coord(p, i) / std::abs(coord(p, i)));
      return q;
    case SpaceKind::sphere: {
      double s = 0;
      for (double v : p.c) s += v * v;
      s = std::sqrt(s);
      for (double& v : q.c) v /= s;
      return q;
    }
    case SpaceKind::wedge: {
      Point inner = summand(p.side).normalize(Point{0, p.c});
      return canonical(Point{p.side, inner.c});
    }
  }
  return q;
}

double Space::distance(const Point& p, const Point& q) const {
  switch (kind_) {
    case SpaceKind::torus: {
      double d = 0;
      for (std::size_t i = 0; i < n_; ++i) d = std::max(d, circle_distance(coord(p, i), coord(q, i)));
      return d;
    }
    case SpaceKind::sphere: return sphere_distance(p.c, q.c);
    case SpaceKind::wedge: {
      const Point a = canonical(p), b = canonical(q);
      if (a.side == b.side) return summand(a.side).distance(Point{0, a.c}, Point{0, b.c});
      const Space& sa = summand(a.side);
      const Space& sb = summand(b.side);
      return sa.distance(Point{0, a.c}, sa.basepoint()) + sb.distance(sb.basepoint(), Point{0, b.c});
    }
  }
  return 0;
}

Point Space::random_point(std::mt19937_64& rng) const {
  switch (kind_) {
    case SpaceKind::torus: {
      std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
      std::vector<double> a(n_);
      for (auto& v : a) v = angle(rng);
      return torus_point(a);
    }
    case SpaceKind::sphere: {
      std::normal_distribution<double> g;
      Point p{0, std::vector<double>(n_ + 1)};
      double s = 0;
      do {
        s = 0;
        for (auto& v : p.c) {
          v = g(rng);
          s += v * v;
        }
      } while (s < 1e-12);
      s = std::sqrt(s);
      for (auto& v : p.c) v /= s;
      return p;
    }
    case SpaceKind::wedge: {
      std::bernoulli_distribution coin(0.5);
      int side = coin(rng) ? 1 : 0;
      return canonical(Point{side, summand(side).random_point(rng).c});
    }
  }
  return {};
}

Point Space::perturb(const Point& p, double delta, std::mt19937_64& rng) const {
  switch (kind_) {
    case SpaceKind::torus: {
      std::uniform_real_distribution<double> d(-delta, delta);
      Point q = p;
      for (std::size_t i = 0; i < n_; ++i) set_coord(q, i, coord(p, i) * std::polar(1.0, d(rng)));
      return q;
    }
    case SpaceKind::sphere: {
      std::normal_distribution<double> g(0.0, delta / std::sqrt(double(n_ + 1)));
      Point q = p;
      double s = 0;
      for (auto& v : q.c) {
        v += g(rng);
        s += v * v;
      }
      s = std::sqrt(s);
      for (auto& v : q.c) v /= s;
      return q;
    }
    case SpaceKind::wedge: {
      const Point a = canonical(p);
      return canonical(Point{a.side, summand(a.side).perturb(Point{0, a.c}, delta, rng).c});
    }
  }
  return p;
}

std::vector<Point> Space::grid(std::size_t n) const {
  if (n == 0) fail(ErrorCode::invalid_argument, "grid size must be positive");
  std::vector<Point> out;
  switch (kind_) {
    case SpaceKind::torus: {
      std::size_t total = 1;
      for (std::size_t i = 0; i < n_; ++i) {
        total *= n;
        if (total > 1'000'000) fail(ErrorCode::guard, "grid too large");
      }
      for (std::size_t idx = 0; idx < total; ++idx) {
        std::vector<double> a(n_);
        std::size_t r = idx;
        for (std::size_t i = 0; i < n_; ++i) {
          a[i] = 2 * std::numbers::pi * double(r % n) / double(n);
          r /= n;
        }
        out.push_back(torus_point(a));
      }
      return out;
    }
    case SpaceKind::sphere: {
      std::mt19937_64 rng(n * 7919 + n_);
      std::size_t total = 1;
      for (std::size_t i = 0; i < n_; ++i) total *= n;
      total = std::min<std::size_t>(total, 1'000'000);
      out.push_back(basepoint());
      while (out.size() < total) out.push_back(random_point(rng));
      return out;
    }
    case SpaceKind::wedge: {
      for (int side : {0, 1})
        for (const auto& p : summand(side).grid(n)) {
          Point q = canonical(Point{side, p.c});
          if (std::find(out.begin(), out.end(), q) == out.end()) out.push_back(q);
        }
      return out;
    }
  }
  return out;
}

namespace {

std::optional<Space> torus_like(const bounds::ExprPtr& e) {
  using bounds::AtomKind;
  using bounds::NodeKind;
  if (e->kind == NodeKind::atom) {
    if (e->atom == AtomKind::torus) return Space::torus(e->n);
    if (e->atom == AtomKind::sphere && e->n == 1) return Space::circle();
    return std::nullopt;
  }
  if (e->kind == NodeKind::product) {
    auto a = torus_like(e->left);
    auto b = torus_like(e->right);
    if (a && b) return Space::torus(a->n() + b->n());
  }
  return std::nullopt;
}

Space summand_space(const bounds::ExprPtr& e) {
  if (auto t = torus_like(e)) return *t;
  if (e->kind == bounds::NodeKind::atom && e->atom == bounds::AtomKind::sphere) return Space::sphere(e->n);
  fail(ErrorCode::invalid_argument, "no planner model for '" + e->text() + "' (supported: S<n>, T<n>, products of circles)");
}

}  // namespace

Space parse_space(const std::string& text) {
  auto e = bounds::parse_expr(text);
  if (e->kind == bounds::NodeKind::wedge) {
    if (e->left->kind == bounds::NodeKind::wedge || e->right->kind == bounds::NodeKind::wedge)
      fail(ErrorCode::invalid_argument, "wedge planners take exactly two torus summands");
    auto x = torus_like(e->left);
    auto y = torus_like(e->right);
    if (!x || !y) fail(ErrorCode::invalid_argument, "wedge planners need circle or torus summands");
    return Space::wedge(*x, *y);
  }
  return summand_space(e);
}

std::complex<double> coord(const Point& p, std::size_t i) { return {p.c[2 * i], p.c[2 * i + 1]}; }

void set_coord(Point& p, std::size_t i, std::complex<double> z) {
  p.c[2 * i] = z.real();
  p.c[2 * i + 1] = z.imag();
}

Point torus_point(const std::vector<double>& angles) {
  Point p{0, std::vector<double>(2 * angles.size())};
  for (std::size_t i = 0; i < angles.size(); ++i) set_coord(p, i, {std::cos(angles[i]), std::sin(angles[i])});
  return p;
}

Point group_identity(std::size_t n) {
  Point p{0, std::vector<double>(2 * n, 0.0)};
  for (std::size_t i = 0; i < n; ++i) p.c[2 * i] = 1.0;
  return p;
}

Point group_mul(const Point& a, const Point& b) {
  Point p = a;
  for (std::size_t i = 0; i < a.c.size() / 2; ++i) set_coord(p, i, coord(a, i) * coord(b, i));
  return p;
}

Point group_inv(const Point& a) {
  Point p = a;
  for (std::size_t i = 0; i < a.c.size() / 2; ++i) set_coord(p, i, std::conj(coord(a, i)));
  return p;
}

std::string format_point(const Point& p) {
  std::ostringstream os;
  os.precision(17);
  if (p.side) os << "Y:";
  os << '(';
  for (std::size_t i = 0; i < p.c.size(); ++i) os << (i ? "," : "") << p.c[i];
  os << ')';
  return os.str();
}

}  // namespace tcwb::planners
