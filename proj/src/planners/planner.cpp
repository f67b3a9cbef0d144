#include "planners/planner.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <memory>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "common/error.hpp"
#include "covers/covers.hpp"

namespace tcwb::planners {

namespace {

constexpr double kPi = std::numbers::pi;

Point unit_angle_coords(const Point& g, const std::function<double(std::complex<double>)>& angle_of) {
  Point out = g;
  for (std::size_t i = 0; i < g.c.size() / 2; ++i) set_coord(out, i, std::polar(1.0, angle_of(coord(g, i))));
  return out;
}

}  // namespace

MotionPlanner::MotionPlanner(std::string name, Space space, std::vector<Region> regions, bool reserved)
    : name_(std::move(name)), space_(std::move(space)), regions_(std::move(regions)), reserved_(reserved) {}

std::optional<std::size_t> MotionPlanner::region_of(const Point& x, const Point& y) const {
  const Point a = space_.canonical(x), b = space_.canonical(y);
  for (std::size_t i = 0; i < regions_.size(); ++i)
    if (regions_[i].contains(a, b)) return i;
  return std::nullopt;
}

Plan MotionPlanner::plan(const Point& x, const Point& y) const {
  const Point a = space_.canonical(x), b = space_.canonical(y);
  auto r = region_of(a, b);
  if (!r) fail(ErrorCode::verification, "pair " + format_point(a) + ", " + format_point(b) + " is not covered by " + name_);
  return {*r, regions_[*r].section(a, b)};
}

MotionPlanner MotionPlanner::without_region(std::size_t index) const {
  if (index >= regions_.size()) fail(ErrorCode::invalid_argument, "no region " + std::to_string(index));
  auto regions = regions_;
  regions.erase(regions.begin() + static_cast<std::ptrdiff_t>(index));
  MotionPlanner p(name_ + " minus region " + std::to_string(index), space_, std::move(regions), reserved_);
  p.battery = battery;
  return p;
}

GroupCover build_torus_cover(std::size_t n) {
  if (n == 0) fail(ErrorCode::invalid_argument, "torus dimension must be positive");
  if (n > 6) fail(ErrorCode::guard, "torus covers are built for n <= 6");

  // Removed points p_k and the antipodes q_k each set is first contracted to.
  std::vector<std::complex<double>> removed(n + 1);
  std::vector<double> target(n + 1);
  removed[0] = {-1.0, 0.0};
  target[0] = 0.0;
  if (n >= 1) {
    removed[1] = {1.0, 0.0};
    target[1] = kPi;
  }
  for (std::size_t k = 2; k <= n; ++k) {
    const double a = -kPi * double(k - 1) / double(n);
    removed[k] = std::polar(1.0, a);
    target[k] = kPi + a;
  }

  // The n-fold product of the 2-cover {S^1 - p_k} on a finite atom model
  // (the removed points plus one generic atom) must cover.
  std::vector<covers::SetSystem> factors;
  for (std::size_t j = 0; j < n; ++j) {
    covers::SetSystem s{n + 2, {}};
    for (std::size_t k = 0; k <= n; ++k) {
      covers::Set set;
      for (std::size_t atom = 0; atom < n + 2; ++atom)
        if (atom != k) set.push_back(atom);
      s.sets.push_back(set);
    }
    factors.push_back(s);
  }
  auto product = covers::nary_product_cover(factors, std::vector<std::size_t>(n, 2));

  GroupCover cover;
  cover.n = n;
  cover.delta = 2 * kPi / (8.0 * double(n + 1));
  cover.certified_points = product.ground_size();
  for (auto z : removed) {
    Point p = group_identity(n);
    set_coord(p, 0, z);
    cover.special.push_back(p);
  }
  for (std::size_t k = 0; k <= n; ++k) {
    const auto p = removed[k];
    const auto q = std::polar(1.0, target[k]);
    const double qa = target[k];
    const double delta = cover.delta;
    GroupRegion r;
    r.name = "U" + std::to_string(k);
    r.contains = [p, k, delta, n](const Point& g) {
      bool near_identity = true;
      for (std::size_t i = 0; i < n; ++i) {
        const auto z = coord(g, i);
        if (z == p) return false;
        if (std::abs(std::arg(z)) >= delta) near_identity = false;
      }
      return !(k >= 2 && near_identity);
    };
    if (k == 0) {
      r.contract = [](const Point& g, double s) {
        return unit_angle_coords(g, [s](std::complex<double> z) { return (1 - s) * std::arg(z); });
      };
    } else {
      r.contract = [q, qa](const Point& g, double s) {
        return unit_angle_coords(g, [q, qa, s](std::complex<double> z) {
          if (s <= 0.5) return qa + (1 - 2 * s) * std::arg(z * std::conj(q));
          return qa * (2 - 2 * s);
        });
      };
    }
    cover.regions.push_back(std::move(r));
  }
  return cover;
}

SideConditionReport check_side_conditions(const GroupCover& cover, std::uint64_t seed, std::size_t samples) {
  SideConditionReport rep;
  const Space t = Space::torus(cover.n);
  const Point e = group_identity(cover.n);
  std::mt19937_64 rng(seed);
  std::vector<Point> gs;
  for (std::size_t i = 0; i < samples; ++i) gs.push_back(t.random_point(rng));
  for (const auto& s : cover.special) {
    gs.push_back(s);
    gs.push_back(group_mul(s, t.random_point(rng)));
  }
  for (const auto& g : gs)
    for (const auto& r : cover.regions) {
      if (!r.contains(g)) continue;
      ++rep.samples;
      rep.max_start_error = std::max(rep.max_start_error, t.distance(r.contract(g, 0), g));
      rep.max_end_error = std::max(rep.max_end_error, t.distance(r.contract(g, 1), e));
    }
  if (cover.regions.empty() || !cover.regions[0].contains(e)) rep.identity_pinned = false;
  for (int i = 0; i <= 64 && rep.identity_pinned; ++i)
    if (cover.regions[0].contract(e, i / 64.0) != e) rep.identity_pinned = false;
  for (std::size_t k = 1; k < cover.regions.size(); ++k)
    if (cover.regions[k].contains(e)) rep.identity_outside_first.push_back(k);
  return rep;
}

MotionPlanner lie_planner(const Space& space, const GroupCover& cover) {
  if (space.kind() != SpaceKind::torus || space.n() != cover.n)
    fail(ErrorCode::invalid_argument, "group cover does not match " + space.name());
  auto rep = check_side_conditions(cover, 0x51de, 2000);
  if (!rep.ok()) {
    std::ostringstream os;
    os << "side conditions fail: start error " << rep.max_start_error << ", end error " << rep.max_end_error
       << ", identity pinned " << rep.identity_pinned << ", later regions containing e " << rep.identity_outside_first.size();
    fail(ErrorCode::verification, os.str());
  }
  const std::size_t n = cover.n;
  auto relative = [n](const Point& a, const Point& b) { return a == b ? group_identity(n) : group_mul(group_inv(a), b); };
  std::vector<Region> regions;
  for (const auto& gr : cover.regions) {
    Region r;
    r.name = "W" + gr.name.substr(1);
    r.contains = [gr, relative](const Point& a, const Point& b) { return gr.contains(relative(a, b)); };
    r.section = [gr, relative](const Point& a, const Point& b) {
      if (a == b) return Path::constant(a);
      const Point g = relative(a, b);
      auto h = gr.contract;
      return Path::make(
          Path::Kind::group_track, [a, g, h](double t) { return group_mul(a, h(g, 1 - t)); }, a, b);
    };
    regions.push_back(std::move(r));
  }
  MotionPlanner planner("lie(" + space.name() + ")", space, std::move(regions), true);

  // Quarter-turn basepoints keep a * g and a^-1 b exact.
  std::vector<Point> anchors;
  for (std::complex<double> z : {std::complex<double>(1, 0), {0, 1}, {-1, 0}, {0, -1}}) {
    Point a = group_identity(n);
    for (std::size_t i = 0; i < n; ++i) set_coord(a, i, i % 2 ? std::conj(z) : z);
    anchors.push_back(a);
  }
  std::vector<std::complex<double>> coords;
  for (const auto& s : cover.special) coords.push_back(coord(s, 0));
  coords.push_back(std::polar(1.0, 0.5));
  std::size_t combos = 1;
  for (std::size_t i = 0; i < n && combos <= 4096; ++i) combos *= coords.size();
  std::mt19937_64 rng(0xb0a7);
  std::uniform_int_distribution<std::size_t> pick(0, coords.size() - 1);
  for (std::size_t c = 0; c < std::min<std::size_t>(combos, 512); ++c) {
    Point g = group_identity(n);
    std::size_t r = c;
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t idx = combos <= 512 ? r % coords.size() : pick(rng);
      r /= coords.size();
      set_coord(g, i, coords[idx]);
    }
    for (const auto& a : anchors) planner.battery.emplace_back(a, group_mul(a, g));
  }
  for (const auto& a : anchors) planner.battery.emplace_back(a, a);
  return planner;
}

MotionPlanner sphere_planner(std::size_t n) {
  if (n < 2) fail(ErrorCode::invalid_argument, "sphere planners are for S^n with n >= 2");
  const Space space = Space::sphere(n);
  const Point e0 = space.basepoint();
  Point e1{0, std::vector<double>(n + 1, 0.0)};
  e1.c[1] = 1.0;
  auto antipodal = [](const Point& x, const Point& y) {
    for (std::size_t i = 0; i < x.c.size(); ++i)
      if (y.c[i] != -x.c[i]) return false;
    return true;
  };
  auto negate = [](Point p) {
    for (auto& v : p.c) v = -v;
    return p;
  };
  auto half_turn = [](const Point& x, const Point& y, Point v) {
    double d = 0;
    for (std::size_t i = 0; i < x.c.size(); ++i) d += v.c[i] * x.c[i];
    double s = 0;
    for (std::size_t i = 0; i < x.c.size(); ++i) {
      v.c[i] -= d * x.c[i];
      s += v.c[i] * v.c[i];
    }
    s = std::sqrt(s);
    for (auto& c : v.c) c /= s;
    return Path::make(
        Path::Kind::custom,
        [x, v](double t) {
          Point p = x;
          for (std::size_t i = 0; i < p.c.size(); ++i) p.c[i] = std::cos(kPi * t) * x.c[i] + std::sin(kPi * t) * v.c[i];
          return p;
        },
        x, y);
  };
  std::vector<Region> regions;
  regions.push_back({"geodesic", [antipodal](const Point& x, const Point& y) { return !antipodal(x, y); },
                     [space](const Point& x, const Point& y) {
                       if (x == y) return Path::constant(x);
                       double d = 0;
                       for (std::size_t i = 0; i < x.c.size(); ++i) d += x.c[i] * y.c[i];
                       Point v = y;
                       double s = 0;
                       for (std::size_t i = 0; i < x.c.size(); ++i) {
                         v.c[i] = y.c[i] - d * x.c[i];
                         s += v.c[i] * v.c[i];
                       }
                       s = std::sqrt(s);
                       const double w = space.distance(x, y);
                       for (auto& c : v.c) c = s > 0 ? c / s : 0.0;
                       return Path::make(
                           Path::Kind::custom,
                           [x, v, w](double t) {
                             Point p = x;
                             for (std::size_t i = 0; i < p.c.size(); ++i)
                               p.c[i] = std::cos(w * t) * x.c[i] + std::sin(w * t) * v.c[i];
                             return p;
                           },
                           x, y);
                     }});
  regions.push_back({"antipodal", [antipodal, e0, negate](const Point& x, const Point& y) {
                       return antipodal(x, y) && x != e0 && x != negate(e0);
                     },
                     [half_turn, e0](const Point& x, const Point& y) { return half_turn(x, y, e0); }});
  regions.push_back({"antipodal-axis", [antipodal](const Point& x, const Point& y) { return antipodal(x, y); },
                     [half_turn, e1](const Point& x, const Point& y) { return half_turn(x, y, e1); }});
  MotionPlanner planner("sphere(" + space.name() + ")", space, std::move(regions), true);
  std::mt19937_64 rng(0x5be7e);
  for (int i = 0; i < 64; ++i) {
    Point x = space.random_point(rng);
    planner.battery.emplace_back(x, negate(x));
  }
  planner.battery.emplace_back(e0, negate(e0));
  planner.battery.emplace_back(negate(e0), e0);
  return planner;
}

MotionPlanner planner_for(const Space& space) {
  switch (space.kind()) {
    case SpaceKind::torus: return lie_planner(space, build_torus_cover(space.n()));
    case SpaceKind::sphere: return sphere_planner(space.n());
    case SpaceKind::wedge: return wedge_planner(planner_for(space.summand(0)), planner_for(space.summand(1)));
  }
  fail(ErrorCode::internal, "unknown space kind");
}

Deformation section_to_deformation(const Space& space, Section section, const Point& x0) {
  Deformation d;
  d.basepoint = x0;
  d.eval = [space, section, x0](const Point& x, const Point& y, double t) -> PointPair {
    const double nx = space.distance(x, x0);
    const double ny = space.distance(y, x0);
    if (nx + ny == 0) return {x, y};
    const Path p = section(x, y);
    return {p(nx * t / (nx + ny)), p(1 - ny * t / (nx + ny))};
  };
  return d;
}

Deformation section_to_deformation(const MotionPlanner& planner, std::size_t region, const Point& x0) {
  if (!planner.reserved()) fail(ErrorCode::invalid_argument, "section must be reserved");
  return section_to_deformation(planner.space(), planner.regions().at(region).section, x0);
}

Section deformation_to_section(const Space& space, Deformation d, double tol) {
  return [space, d, tol](const Point& x, const Point& y) {
    if (x == y) return Path::constant(x);
    const PointPair mid = d(x, y, 1);
    const double gap = space.distance(mid.first, mid.second);
    if (gap > tol) {
      std::ostringstream os;
      os << "deformation ends off the diagonal by " << gap << " at " << format_point(x) << ", " << format_point(y);
      fail(ErrorCode::verification, os.str());
    }
    return Path::make(
        Path::Kind::custom, [d, x, y](double t) { return t <= 0.5 ? d(x, y, 2 * t).first : d(x, y, 2 - 2 * t).second; },
        x, y);
  };
}

namespace {

struct WedgeAssembly {
  Space wedge;
  MotionPlanner px, py;
  std::size_t n = 0, m = 0;
  Point x0, y0;
  std::vector<Deformation> dx, dy;

  WedgeAssembly(const MotionPlanner& a, const MotionPlanner& b)
      : wedge(Space::wedge(a.space(), b.space())), px(a), py(b) {}

  std::size_t rx(const Point& a, const Point& b) const {
    auto r = px.region_of(a, b);
    if (!r) fail(ErrorCode::verification, "X planner leaves a pair uncovered");
    return *r;
  }
  std::size_t ry(const Point& a, const Point& b) const {
    auto r = py.region_of(a, b);
    if (!r) fail(ErrorCode::verification, "Y planner leaves a pair uncovered");
    return *r;
  }
  Point lift(int side, const Point& p) const { return wedge.canonical(Point{side, p.c}); }

  std::size_t first_common(std::size_t kx, std::size_t ky) const {
    for (std::size_t k = 0; k <= n + m; ++k)
      if ((k > n || k == kx) && (k > m || k == ky)) return k;
    fail(ErrorCode::internal, "product sets failed to cover a mixed pair");
  }

  std::size_t classify(const Point& p, const Point& q) const {
    const Point a = wedge.canonical(p), b = wedge.canonical(q);
    const Point ia{0, a.c}, ib{0, b.c};
    if (a.side == 0 && b.side == 0) return rx(ia, ib);
    if (a.side == 1 && b.side == 1) return ry(ia, ib);
    if (a.side == 0) return first_common(rx(ia, x0), ry(y0, ib));
    return first_common(rx(x0, ib), ry(ia, y0));
  }

  PointPair xx(const Point& a, const Point& b, double t) const {
    auto d = dx[rx(a, b)](a, b, t);
    return {lift(0, d.first), lift(0, d.second)};
  }
  PointPair yy(const Point& a, const Point& b, double t) const {
    auto d = dy[ry(a, b)](a, b, t);
    return {lift(1, d.first), lift(1, d.second)};
  }
  PointPair xy(const Point& a, const Point& b, double t) const {
    return {lift(0, dx[rx(a, x0)](a, x0, t).first), lift(1, dy[ry(y0, b)](y0, b, t).second)};
  }
  PointPair yx(const Point& a, const Point& b, double t) const {
    return {lift(1, dy[ry(a, y0)](a, y0, t).first), lift(0, dx[rx(x0, b)](x0, b, t).second)};
  }

  PointPair glued(const Point& p, const Point& q, double t) const {
    const Point a = wedge.canonical(p), b = wedge.canonical(q);
    const Point ia{0, a.c}, ib{0, b.c};
    if (a.side == 0 && b.side == 0) return xx(ia, ib, t);
    if (a.side == 1 && b.side == 1) return yy(ia, ib, t);
    if (a.side == 0) return xy(ia, ib, t);
    return yx(ia, ib, t);
  }

  double gap(const PointPair& u, const PointPair& v) const {
    return std::max(wedge.distance(u.first, v.first), wedge.distance(u.second, v.second));
  }

  // Pairs with a basepoint coordinate viewed from both adjacent quadrants.
  double face_audit(std::uint64_t seed, std::size_t samples) const {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const Space& X = wedge.summand(0);
    const Space& Y = wedge.summand(1);
    double worst = 0;
    for (std::size_t i = 0; i < samples; ++i) {
      const Point x = X.random_point(rng), y = Y.random_point(rng);
      const double t = i == 0 ? 1.0 : unit(rng);
      worst = std::max(worst, gap(xx(x, x0, t), xy(x, y0, t)));
      worst = std::max(worst, gap(xx(x0, x, t), yx(y0, x, t)));
      worst = std::max(worst, gap(xy(x0, y, t), yy(y0, y, t)));
      worst = std::max(worst, gap(yx(y, x0, t), yy(y, y0, t)));
    }
    return worst;
  }
};

}  // namespace

MotionPlanner wedge_planner(const MotionPlanner& px, const MotionPlanner& py, double tol) {
  if (!px.reserved() || !py.reserved()) fail(ErrorCode::invalid_argument, "wedge planners need reserved summand planners");
  if (px.space().kind() != SpaceKind::torus || py.space().kind() != SpaceKind::torus)
    fail(ErrorCode::invalid_argument, "wedge planners are built for circle and torus summands");
  if (px.pieces() == 0 || py.pieces() == 0) fail(ErrorCode::invalid_argument, "summand planner has no regions");
  auto w = std::make_shared<WedgeAssembly>(px, py);
  w->n = px.pieces() - 1;
  w->m = py.pieces() - 1;
  w->x0 = px.space().basepoint();
  w->y0 = py.space().basepoint();
  for (std::size_t k = 0; k <= w->n; ++k) w->dx.push_back(section_to_deformation(px, k, w->x0));
  for (std::size_t k = 0; k <= w->m; ++k) w->dy.push_back(section_to_deformation(py, k, w->y0));

  const double mismatch = w->face_audit(0xface, 200);
  if (mismatch > tol) {
    std::ostringstream os;
    os << "quadrant boundary mismatch " << mismatch << " exceeds tolerance " << tol;
    fail(ErrorCode::verification, os.str());
  }

  std::vector<Region> regions;
  std::vector<Deformation> qs;
  for (std::size_t k = 0; k <= w->n + w->m; ++k) {
    Deformation q;
    q.basepoint = w->wedge.basepoint();
    q.eval = [w](const Point& a, const Point& b, double t) { return w->glued(a, b, t); };
    qs.push_back(q);
    Region r;
    r.name = "O" + std::to_string(k);
    r.contains = [w, k](const Point& a, const Point& b) { return w->classify(a, b) == k; };
    r.section = deformation_to_section(w->wedge, q, tol);
    regions.push_back(std::move(r));
  }
  MotionPlanner planner("wedge(" + px.name() + ", " + py.name() + ")", w->wedge, std::move(regions), true);
  planner.deformations = qs;
  planner.face_audit = [w](std::uint64_t seed, std::size_t samples) { return w->face_audit(seed, samples); };

  const Point v0 = w->wedge.basepoint();
  for (const auto& [a, b] : px.battery) planner.battery.emplace_back(w->lift(0, a), w->lift(0, b));
  for (const auto& [a, b] : py.battery) planner.battery.emplace_back(w->lift(1, a), w->lift(1, b));
  const std::size_t cross = std::min(px.battery.size(), py.battery.size());
  for (std::size_t i = 0; i < cross; ++i) {
    const Point x = w->lift(0, px.battery[i].second), y = w->lift(1, py.battery[i].second);
    planner.battery.emplace_back(x, y);
    planner.battery.emplace_back(y, x);
    planner.battery.emplace_back(x, v0);
    planner.battery.emplace_back(v0, y);
    planner.battery.emplace_back(y, v0);
    planner.battery.emplace_back(v0, x);
  }
  planner.battery.emplace_back(v0, v0);
  return planner;
}

bool VerifyReport::passed() const {
  return covered == samples && max_endpoint_err < tol && max_raw_endpoint_err < tol && reserved_violations == 0 &&
         (!face_mismatch || *face_mismatch < tol);
}

std::string VerifyReport::to_json() const {
  using nlohmann::json;
  json witnesses = json::array();
  for (const auto& [x, y] : uncovered_witnesses) witnesses.push_back({format_point(x), format_point(y)});
  json j = {{"planner", planner},
            {"pieces", pieces},
            {"samples", samples},
            {"coverage", coverage},
            {"max_endpoint_err", max_endpoint_err},
            {"max_raw_endpoint_err", max_raw_endpoint_err},
            {"diagonal_samples", diagonal_samples},
            {"reserved_violations", reserved_violations},
            {"continuity_estimate", continuity_estimate},
            {"continuity_pairs", continuity_pairs},
            {"near_basepoint_samples", near_basepoint_samples},
            {"near_basepoint_continuity", near_basepoint_continuity},
            {"face_mismatch", face_mismatch ? json(*face_mismatch) : json(nullptr)},
            {"region_counts", region_counts},
            {"uncovered_witnesses", witnesses},
            {"seed", seed},
            {"tol", tol},
            {"delta", delta},
            {"passed", passed()}};
  return j.dump(2);
}

VerifyReport verify_planner(const MotionPlanner& planner, const SamplerConfig& cfg) {
  const Space& space = planner.space();
  VerifyReport rep;
  rep.planner = planner.name();
  rep.pieces = planner.pieces();
  rep.seed = cfg.seed;
  rep.tol = cfg.tol;
  rep.delta = cfg.delta;
  rep.region_counts.assign(planner.pieces(), 0);
  std::mt19937_64 rng(cfg.seed);

  PairList pairs;
  if (!cfg.pairs.empty()) {
    pairs = cfg.pairs;
  } else if (cfg.grid > 0) {
    auto pts = space.grid(cfg.grid);
    if (pts.size() * pts.size() > 4'000'000) fail(ErrorCode::guard, "grid pair count exceeds 4e6");
    for (const auto& a : pts)
      for (const auto& b : pts) pairs.emplace_back(a, b);
  } else {
    for (std::size_t i = 0; i < cfg.random_pairs; ++i) {
      Point a = space.random_point(rng);
      Point b = space.random_point(rng);
      pairs.emplace_back(std::move(a), std::move(b));
    }
  }
  const std::size_t sampled = pairs.size();
  if (cfg.battery) pairs.insert(pairs.end(), planner.battery.begin(), planner.battery.end());

  for (const auto& [x0, y0] : pairs) {
    const Point x = space.canonical(x0), y = space.canonical(y0);
    ++rep.samples;
    auto r = planner.region_of(x, y);
    if (!r) {
      if (rep.uncovered_witnesses.size() < 10) rep.uncovered_witnesses.emplace_back(x, y);
      continue;
    }
    ++rep.covered;
    ++rep.region_counts[*r];
    const Path p = planner.regions()[*r].section(x, y);
    rep.max_endpoint_err = std::max({rep.max_endpoint_err, space.distance(p(0), x), space.distance(p(1), y)});
    rep.max_raw_endpoint_err =
        std::max({rep.max_raw_endpoint_err, space.distance(p.raw(0), x), space.distance(p.raw(1), y)});
  }
  rep.coverage = rep.samples ? double(rep.covered) / double(rep.samples) : 1.0;

  if (planner.reserved()) {
    for (std::size_t i = 0; i < cfg.diagonal; ++i) {
      const Point x = space.random_point(rng);
      ++rep.diagonal_samples;
      auto r = planner.region_of(x, x);
      if (!r) {
        ++rep.reserved_violations;
        continue;
      }
      const Path p = planner.regions()[*r].section(x, x);
      if (!p.is_constant() || p.start() != x || p.end() != x || p(0.37) != x) ++rep.reserved_violations;
    }
  }

  const bool wedge = space.kind() == SpaceKind::wedge;
  const Point v0 = space.basepoint();
  const std::size_t cont = std::min(cfg.continuity_pairs, sampled);
  for (std::size_t i = 0; i < cont; ++i) {
    const Point x = space.canonical(pairs[i].first), y = space.canonical(pairs[i].second);
    if (x == y) continue;
    auto r = planner.region_of(x, y);
    if (!r) continue;
    const Point x2 = space.perturb(x, cfg.delta, rng), y2 = space.perturb(y, cfg.delta, rng);
    if (planner.region_of(x2, y2) != r || x2 == y2) continue;
    const double din = std::max(space.distance(x, x2), space.distance(y, y2));
    if (din == 0) continue;
    const Path p1 = planner.regions()[*r].section(x, y);
    const Path p2 = planner.regions()[*r].section(x2, y2);
    double worst = 0;
    for (std::size_t s = 0; s < cfg.t_samples; ++s) {
      const double t = cfg.t_samples > 1 ? double(s) / double(cfg.t_samples - 1) : 0.5;
      worst = std::max(worst, space.distance(p1(t), p2(t)));
    }
    const double ratio = worst / din;
    const bool near = wedge && (space.distance(x, v0) < cfg.near_radius || space.distance(y, v0) < cfg.near_radius);
    if (near) {
      ++rep.near_basepoint_samples;
      rep.near_basepoint_continuity = std::max(rep.near_basepoint_continuity, ratio);
    } else {
      ++rep.continuity_pairs;
      rep.continuity_estimate = std::max(rep.continuity_estimate, ratio);
    }
  }
  if (planner.face_audit) rep.face_mismatch = planner.face_audit(cfg.seed ^ 0xf00d, cfg.face_samples);
  return rep;
}

PairList parse_pairs(const Space& space, const std::string& text) {
  PairList out;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  auto parse_point = [&](std::string part) {
    std::istringstream ps(part);
    std::string tok;
    Point p;
    bool first = true;
    while (ps >> tok) {
      if (first && (tok == "X:" || tok == "Y:")) {
        p.side = tok == "Y:" ? 1 : 0;
        first = false;
        continue;
      }
      if (first && (tok.rfind("X:", 0) == 0 || tok.rfind("Y:", 0) == 0)) {
        p.side = tok[0] == 'Y' ? 1 : 0;
        tok = tok.substr(2);
      }
      first = false;
      std::size_t used = 0;
      double v = 0;
      try {
        v = std::stod(tok, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != tok.size()) fail(ErrorCode::parse, "line " + std::to_string(lineno) + ": bad coordinate '" + tok + "'");
      p.c.push_back(v);
    }
    if (space.kind() != SpaceKind::wedge && p.side != 0)
      fail(ErrorCode::parse, "line " + std::to_string(lineno) + ": side prefix on a non-wedge space");
    if (!space.valid(p, 1e-3))
      fail(ErrorCode::parse, "line " + std::to_string(lineno) + ": point " + format_point(p) + " is not on " + space.name());
    return space.normalize(p);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto bar = line.find('|');
    if (bar == std::string::npos) fail(ErrorCode::parse, "line " + std::to_string(lineno) + ": expected 'x | y'");
    out.emplace_back(parse_point(line.substr(0, bar)), parse_point(line.substr(bar + 1)));
  }
  return out;
}

PairList load_pairs(const Space& space, const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::io, "cannot open pair file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_pairs(space, ss.str());
}

}  // namespace tcwb::planners
