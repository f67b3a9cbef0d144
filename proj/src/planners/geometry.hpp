#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <random>
#include <string>
#include <vector>

namespace tcwb::planners {

inline constexpr double kDefaultTol = 1e-9;

// Coordinates of a point in one summand. Circle and torus points are stored
// as (re, im) per factor; sphere points as unit vectors. `side` selects the
// wedge summand (0 = X, 1 = Y) and is 0 elsewhere.
struct Point {
  int side = 0;
  std::vector<double> c;

  bool operator==(const Point& o) const { return side == o.side && c == o.c; }
  bool operator!=(const Point& o) const { return !(*this == o); }
};

enum class SpaceKind { torus, sphere, wedge };

class Space {
 public:
  static Space circle() { return torus(1); }
  static Space torus(std::size_t n);
  static Space sphere(std::size_t n);
  static Space wedge(const Space& x, const Space& y);

  SpaceKind kind() const { return kind_; }
  std::size_t n() const { return n_; }
  bool is_circle() const { return kind_ == SpaceKind::torus && n_ == 1; }
  const Space& summand(int side) const { return side == 0 ? *x_ : *y_; }
  std::string name() const;

  Point basepoint() const;
  // Wedge points equal to Y's basepoint are stored on side X.
  Point canonical(const Point& p) const;
  bool valid(const Point& p, double tol = 1e-6) const;
  Point normalize(const Point& p) const;
  double distance(const Point& p, const Point& q) const;

  Point random_point(std::mt19937_64& rng) const;
  Point perturb(const Point& p, double delta, std::mt19937_64& rng) const;
  // n points per circle factor; n^dim points on spheres via a seeded lattice.
  std::vector<Point> grid(std::size_t n) const;

 private:
  SpaceKind kind_ = SpaceKind::torus;
  std::size_t n_ = 1;
  std::shared_ptr<const Space> x_, y_;
};

// Builds a space from an expression: S1, S<n>, T<n>, products of circles and
// tori, and wedges of two such tori.
Space parse_space(const std::string& text);

std::complex<double> coord(const Point& p, std::size_t i);
void set_coord(Point& p, std::size_t i, std::complex<double> z);
Point torus_point(const std::vector<double>& angles);

// Torus group structure (coordinatewise multiplication).
Point group_identity(std::size_t n);
Point group_mul(const Point& a, const Point& b);
Point group_inv(const Point& a);

std::string format_point(const Point& p);

}  // namespace tcwb::planners
