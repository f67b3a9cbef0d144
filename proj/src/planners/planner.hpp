#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "planners/geometry.hpp"
#include "planners/path.hpp"

namespace tcwb::planners {

using Section = std::function<Path(const Point&, const Point&)>;
using PairList = std::vector<std::pair<Point, Point>>;

struct Region {
  std::string name;
  std::function<bool(const Point&, const Point&)> contains;
  Section section;
};

struct PointPair {
  Point first, second;
};

// Homotopy of pairs into the diagonal.
struct Deformation {
  std::function<PointPair(const Point&, const Point&, double)> eval;
  Point basepoint;
  bool strict = true;
  bool face_preserving = true;

  PointPair operator()(const Point& x, const Point& y, double t) const { return eval(x, y, t); }
};

struct Plan {
  std::size_t region = 0;
  Path path;
};

// Ordered regions with first-match semantics.
class MotionPlanner {
 public:
  MotionPlanner(std::string name, Space space, std::vector<Region> regions, bool reserved);

  const std::string& name() const { return name_; }
  const Space& space() const { return space_; }
  const std::vector<Region>& regions() const { return regions_; }
  std::size_t pieces() const { return regions_.size(); }
  bool reserved() const { return reserved_; }

  std::optional<std::size_t> region_of(const Point& x, const Point& y) const;
  // Throws Error(verification) for an uncovered pair.
  Plan plan(const Point& x, const Point& y) const;

  // Negative control: the same planner with one region removed.
  MotionPlanner without_region(std::size_t index) const;

  // Targeted pairs exercising region boundaries; added to verification runs.
  PairList battery;
  // Per-region strict deformations when the planner was assembled from them.
  std::vector<Deformation> deformations;
  // For assembled wedge planners: largest disagreement of the glued pieces on
  // pairs with a basepoint coordinate, over `samples` seeded draws.
  std::function<double(std::uint64_t seed, std::size_t samples)> face_audit;

 private:
  std::string name_;
  Space space_;
  std::vector<Region> regions_;
  bool reserved_;
};

// A set U in the torus group with a contraction h(g, s): h(g,0)=g, h(g,1)=e.
struct GroupRegion {
  std::string name;
  std::function<bool(const Point& g)> contains;
  std::function<Point(const Point& g, double s)> contract;
};

struct GroupCover {
  std::size_t n = 1;
  std::vector<GroupRegion> regions;
  std::vector<Point> special;  // boundary group elements for batteries
  double delta = 0;            // identity margin for regions k >= 2
  std::size_t certified_points = 0;
};

// n+1 sets on T^n (n <= 6): products of circle arcs avoiding distinct
// points p_k, with region 0 pinned at the identity.
GroupCover build_torus_cover(std::size_t n);

struct SideConditionReport {
  std::size_t samples = 0;
  double max_start_error = 0;  // |h(g,0) - g|
  double max_end_error = 0;    // |h(g,1) - e|
  bool identity_pinned = true;  // h_0(e,t) == e exactly
  std::vector<std::size_t> identity_outside_first;  // regions k>0 containing e
  bool ok(double tol = kDefaultTol) const {
    return max_start_error < tol && max_end_error < tol && identity_pinned && identity_outside_first.empty();
  }
};

SideConditionReport check_side_conditions(const GroupCover& cover, std::uint64_t seed, std::size_t samples);

// Sections a * h_i(a^-1 b, 1 - t) on W_i = {(a,b) : a^-1 b in U_i}. Throws
// Error(verification) if sampled side conditions fail.
MotionPlanner lie_planner(const Space& space, const GroupCover& cover);

// Three-region planner on S^n for n >= 2 (plumbing only).
MotionPlanner sphere_planner(std::size_t n);

// Standard planner for a parsed space expression.
MotionPlanner planner_for(const Space& space);

// D((x,y),t) = (s(x,y)(|x| t/(|x|+|y|)), s(x,y)(1 - |y| t/(|x|+|y|))), |x| = d(x, x0).
Deformation section_to_deformation(const Space& space, Section section, const Point& x0);
Deformation section_to_deformation(const MotionPlanner& planner, std::size_t region, const Point& x0);

// First half pr1 D(u, 2t), second half pr2 D(u, 2 - 2t). Paths throw
// Error(verification) when D(u,1) is off the diagonal by more than tol.
Section deformation_to_section(const Space& space, Deformation d, double tol = kDefaultTol);

// Reserved planner on X v Y with n+m+1 regions from reserved planners with
// n+1 and m+1 regions on circles or tori.
MotionPlanner wedge_planner(const MotionPlanner& px, const MotionPlanner& py, double tol = kDefaultTol);

struct SamplerConfig {
  std::size_t random_pairs = 10000;
  std::uint64_t seed = 1;
  std::size_t grid = 0;  // nonzero: all pairs of grid points instead of random pairs
  PairList pairs;        // nonempty: exactly these pairs
  std::size_t diagonal = 1000;
  bool battery = true;
  double tol = kDefaultTol;
  double delta = 1e-6;
  std::size_t continuity_pairs = 1000;
  std::size_t t_samples = 17;
  double near_radius = 0.05;
  std::size_t face_samples = 1000;
};

struct VerifyReport {
  std::string planner;
  std::size_t pieces = 0;
  std::size_t samples = 0;
  std::size_t covered = 0;
  double coverage = 0;
  double max_endpoint_err = 0;
  double max_raw_endpoint_err = 0;
  std::size_t diagonal_samples = 0;
  std::size_t reserved_violations = 0;
  double continuity_estimate = 0;
  std::size_t continuity_pairs = 0;
  std::size_t near_basepoint_samples = 0;
  double near_basepoint_continuity = 0;
  std::optional<double> face_mismatch;
  std::vector<std::size_t> region_counts;
  PairList uncovered_witnesses;
  std::uint64_t seed = 0;
  double tol = 0;
  double delta = 0;

  bool passed() const;
  std::string to_json() const;
};

VerifyReport verify_planner(const MotionPlanner& planner, const SamplerConfig& config = {});

// Pair file: one pair per line, "<x coords> | <y coords>"; wedge points take
// an "X:" or "Y:" prefix. Coordinates are projected onto the space.
PairList parse_pairs(const Space& space, const std::string& text);
PairList load_pairs(const Space& space, const std::string& path);

}  // namespace tcwb::planners
