// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 iff all pass.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "symsq/symsq.hpp"
#include "bounds/engine.hpp"
#include "common/error.hpp"
#include "cover_gen.hpp"
#include "covers/covers.hpp"
#include "planners/planner.hpp"
#include "ring/complex.hpp"
#include "ring/graded_ring.hpp"

using namespace tcwb;

namespace {

struct Outcome {
  bool ok = true;
  std::ostringstream detail;

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      if (!ok) detail << "; ";
      ok = false;
      detail << "FAILED " << what;
    }
  }
};

std::string interval(const bounds::Interval& i) {
  return "[" + std::to_string(i.lo) + "," + (i.hi ? std::to_string(*i.hi) : std::string("inf")) + "]";
}

const bounds::Interval& at(const bounds::Result& r, const std::string& node, bounds::Quantity q) {
  auto id = r.find(node);
  if (!id) fail(ErrorCode::internal, "missing node " + node);
  return r.interval(*id, q);
}

bool point_interval(const bounds::Interval& i, long v) { return i.lo == v && i.hi && *i.hi == v; }

// ---- 1 ----------------------------------------------------------------------
void covering_counterexample(Outcome& o) {
  using bounds::Quantity;
  const auto b = bounds::derive_bounds("(T2 v S1)");
  const auto& tc_b = b.interval(b.root(), Quantity::tc);
  o.expect(point_interval(tc_b, 4), "TC(T2 v S1) = [4,4], got " + interval(tc_b));

  const auto p = bounds::derive_bounds("((T2 v S1) x T2)");
  const auto& cat_p = p.interval(p.root(), Quantity::cat);
  o.expect(point_interval(cat_p, 5), "cat((T2 v S1) x T2) = [5,5], got " + interval(cat_p));

  // The double cover is a circle with two tori attached at antipodal points,
  // homotopy equivalent to (T2 v S1) v T2.
  bounds::Options opt;
  opt.declarations.coverings.push_back(bounds::parse_covering("(T2 v S1) v T2->T2 v S1"));
  const auto e = bounds::derive_bounds("(T2 v S1) v T2", opt);
  const auto& tc_e = e.interval(e.root(), Quantity::tc);
  const auto& tc_base = at(e, "T2 v S1", Quantity::tc);
  o.expect(tc_e.lo >= 5, "TC(E) >= 5, got " + interval(tc_e));
  o.expect(tc_base.hi && tc_e.lo > *tc_base.hi, "TC(E) > TC(B)");
  o.detail << "TC(B)=" << interval(tc_b) << " cat(Bx T)=" << interval(cat_p) << " TC(E)=" << interval(tc_e);
}

// ---- 2 ----------------------------------------------------------------------
void universal_cover_example(Outcome& o) {
  using bounds::Quantity;
  const auto x = bounds::derive_bounds("(S3 x S3) v S1");
  const auto& tc_x = x.interval(x.root(), Quantity::tc);
  o.expect(tc_x.hi && *tc_x.hi == 4, "TC((S3xS3) v S1) hi = 4, got " + interval(tc_x));

  const auto u = bounds::derive_bounds("(S3 x S3) v (S3 x S3)");
  const auto& tc_u = u.interval(u.root(), Quantity::tc);
  const auto& cat4 = at(u, "(S3 x S3) x (S3 x S3)", Quantity::cat);
  o.expect(cat4.lo >= 5, "cat(S3^4) >= 5, got " + interval(cat4));
  o.expect(tc_u.lo >= 5, "TC((S3xS3) v (S3xS3)) lo >= 5, got " + interval(tc_u));
  bool via_r6 = false;
  if (tc_u.lo_cert) via_r6 = u.certificates()[*tc_u.lo_cert].rule == "R6";
  o.expect(via_r6, "lower bound certified by the wedge-product rule");
  o.detail << "TC(X)=" << interval(tc_x) << " TC(cover)=" << interval(tc_u) << " cat(S3^4)=" << interval(cat4);
}

// ---- 3 ----------------------------------------------------------------------
void rp2_regression(Outcome& o, const std::string& data_dir) {
  const auto complex = ring::SimplicialComplex::load(data_dir + "/rp2.cplx");
  o.expect(complex.vertex_count() == 6, "six vertices");
  const auto r = ring::cohomology_ring(complex, ring::FieldTag::gf2);
  const auto cl = ring::cup_length(r);
  o.expect(cl == 2, "GF2 cup-length 2, got " + std::to_string(cl));

  bounds::Options opt;
  opt.fields = {ring::FieldTag::gf2};
  const auto b = bounds::derive_bounds("file:" + data_dir + "/rp2.cplx", opt);
  const auto& cat = b.interval(b.root(), bounds::Quantity::cat);
  o.expect(point_interval(cat, 3), "cat(RP2) = [3,3], got " + interval(cat));
  o.detail << "cuplength_F2=" << cl << " cat=" << interval(cat);
}

// ---- 4 ----------------------------------------------------------------------
void lie_and_monoidal_criterion(Outcome& o) {
  using bounds::Quantity;
  const auto s1 = bounds::derive_bounds("S1");
  const auto& tc = s1.interval(s1.root(), Quantity::tc);
  const auto& tcm = s1.interval(s1.root(), Quantity::tcm);
  o.expect(point_interval(tc, 2) && point_interval(tcm, 2), "TC(S1) = TCM(S1) = 2");
  bool r5 = false;
  for (const auto* iv : {&tc, &tcm})
    if (iv->hi_cert) r5 = r5 || s1.certificates()[*iv->hi_cert].rule == "R5";
  o.expect(r5, "upper bound certified by the Lie-group rule");

  const auto s3 = bounds::derive_bounds("S3");
  const bool applies = bounds::monoidal_criterion_applicable(s3, s3.root(), 2);
  o.expect(applies, "monoidal criterion applies to S3 at TC lo 2");
  const auto& tc3 = s3.interval(s3.root(), Quantity::tc);
  const auto& tcm3 = s3.interval(s3.root(), Quantity::tcm);
  o.expect(tc3.lo == tcm3.lo && tc3.hi == tcm3.hi && tc3.is_point(), "TCM(S3) = TC(S3) closed, got TC " +
                                                                       interval(tc3) + " TCM " + interval(tcm3));
  o.detail << "TC(S1)=" << interval(tc) << " TCM(S1)=" << interval(tcm) << " M(S3,2)=" << applies
           << " TC(S3)=" << interval(tc3) << " TCM(S3)=" << interval(tcm3);
}

// ---- 5 ----------------------------------------------------------------------

// Brute-force product coverage, independent of the library's enumerator.
bool oracle_product_covers(const std::vector<covers::SetSystem>& f) {
  std::vector<std::size_t> pt(f.size(), 0);
  const std::size_t sets = f[0].sets.size();
  while (true) {
    bool hit = false;
    for (std::size_t k = 0; k < sets && !hit; ++k) {
      bool all = true;
      for (std::size_t j = 0; j < f.size() && all; ++j)
        all = std::binary_search(f[j].sets[k].begin(), f[j].sets[k].end(), pt[j]);
      hit = all;
    }
    if (!hit) return false;
    std::size_t j = 0;
    while (j < f.size() && ++pt[j] == f[j].ground) pt[j++] = 0;
    if (j == f.size()) return true;
  }
}

void cover_calculus(Outcome& o) {
  std::mt19937_64 rng(20240601);
  std::size_t ext_fail = 0, prod_fail = 0, nary_fail = 0;

  std::uniform_int_distribution<std::size_t> ground(1, 12), sets(1, 8);
  for (int i = 0; i < 1000; ++i) {
    const std::size_t n1 = sets(rng);
    const auto c = testing::random_cover(rng, ground(rng), n1);
    const std::size_t m = n1 - 1 + std::uniform_int_distribution<std::size_t>(0, 8 - n1)(rng);
    const auto e = covers::extend_to_k_cover(c, m);
    bool ok = e.system.sets.size() == m + 1 && covers::is_k_cover(e.system, n1) &&
              testing::multiplicity_k_cover(e.system, n1);
    for (std::size_t k = 0; k < n1 && ok; ++k) ok = e.system.sets[k] == c.sets[k];
    for (std::size_t k = n1; k <= m && ok; ++k) {
      std::vector<int> seen(c.ground, 0);
      for (const auto& p : e.pieces[k])
        for (auto x : p.elements) {
          ++seen[x];
          ok = ok && c.contains(p.source, x);
        }
      for (int s : seen) ok = ok && s == 1;
    }
    ext_fail += !ok;
  }

  for (int i = 0; i < 200; ++i) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(0, 4)(rng);
    const std::size_t m = std::uniform_int_distribution<std::size_t>(0, 4 - n)(rng);
    std::uniform_int_distribution<std::size_t> g8(1, 8);
    const auto a = testing::random_k_cover(rng, g8(rng), n + 1, n + m + 1);
    const auto b = testing::random_k_cover(rng, g8(rng), m + 1, n + m + 1);
    bool ok = true;
    try {
      const auto p = covers::product_cover(a, b, n, m);
      ok = !p.uncovered() && oracle_product_covers({a, b});
    } catch (const Error&) {
      ok = false;
    }
    prod_fail += !ok;
  }

  for (int i = 0; i < 50; ++i) {
    const std::size_t r = std::uniform_int_distribution<std::size_t>(2, 4)(rng);
    std::vector<std::size_t> ks;
    std::size_t count = 1;
    for (std::size_t j = 0; j < r; ++j) {
      ks.push_back(std::uniform_int_distribution<std::size_t>(1, 3)(rng));
      count += ks.back() - 1;
    }
    std::vector<covers::SetSystem> sys;
    for (std::size_t j = 0; j < r; ++j)
      sys.push_back(testing::random_k_cover(rng, std::uniform_int_distribution<std::size_t>(1, 6)(rng), ks[j], count));
    bool ok = true;
    try {
      ok = !covers::nary_product_cover(sys, ks).uncovered() && oracle_product_covers(sys);
    } catch (const Error&) {
      ok = false;
    }
    nary_fail += !ok;
  }
  o.expect(ext_fail == 0, std::to_string(ext_fail) + " extension failures");
  o.expect(prod_fail == 0, std::to_string(prod_fail) + " product failures");
  o.expect(nary_fail == 0, std::to_string(nary_fail) + " n-ary failures");
  o.detail << "extensions 1000, products 200, n-ary 50, failures " << ext_fail + prod_fail + nary_fail;
}

// ---- 6 ----------------------------------------------------------------------
void planner_verification(Outcome& o) {
  using namespace planners;
  SamplerConfig cfg;
  cfg.random_pairs = 10000;
  cfg.diagonal = 1000;
  cfg.seed = 2024;
  const auto torus = lie_planner(Space::torus(2), build_torus_cover(2));
  const auto wedge = wedge_planner(planner_for(Space::circle()), planner_for(Space::circle()));
  for (const auto* p : {&torus, &wedge}) {
    const auto rep = verify_planner(*p, cfg);
    const std::string name = p->space().name();
    o.expect(p->pieces() == 3, name + " has 3 pieces, got " + std::to_string(p->pieces()));
    o.expect(rep.coverage == 1.0 && rep.samples >= 10000, name + " coverage 1.0");
    o.expect(rep.max_endpoint_err < 1e-9, name + " endpoint error < 1e-9");
    o.expect(rep.max_raw_endpoint_err < 1e-9, name + " uncached endpoint error < 1e-9");
    o.expect(rep.reserved_violations == 0 && rep.diagonal_samples >= 1000, name + " reserved violations 0");
    o.detail << name << ": pieces " << p->pieces() << " coverage " << rep.coverage << " endpoint "
             << rep.max_endpoint_err << " (raw " << rep.max_raw_endpoint_err << ")" << " reserved " << rep.reserved_violations << "/" << rep.diagonal_samples << "  ";
  }
}

// ---- 7 ----------------------------------------------------------------------
void section_deformation_roundtrip(Outcome& o) {
  using namespace planners;
  std::mt19937_64 rng(77);
  double start_err = 0, diag_err = 0, end_err = 0, mid_err = 0;
  std::size_t strict_bad = 0, face_bad = 0, reserved_bad = 0, pairs = 0, faces = 0;

  const std::vector<MotionPlanner> planners = {planner_for(Space::circle()), planner_for(Space::torus(2)),
                                               planner_for(Space::sphere(2))};
  for (const auto& p : planners) {
    const Space& X = p.space();
    const Point x0 = X.basepoint();
    std::vector<Deformation> ds;
    std::vector<Section> back;
    for (std::size_t k = 0; k < p.pieces(); ++k) {
      ds.push_back(section_to_deformation(p, k, x0));
      back.push_back(deformation_to_section(X, ds.back()));
    }
    const std::size_t n = 10000 / planners.size() + 1;
    for (std::size_t i = 0; i < n; ++i, ++pairs) {
      const Point x = X.random_point(rng), y = X.random_point(rng);
      const std::size_t k = *p.region_of(x, y);
      const auto d0 = ds[k](x, y, 0), d1 = ds[k](x, y, 1);
      start_err = std::max({start_err, X.distance(d0.first, x), X.distance(d0.second, y)});
      diag_err = std::max(diag_err, X.distance(d1.first, d1.second));
      const Path s = back[k](x, y);
      end_err = std::max({end_err, X.distance(s(0), x), X.distance(s(1), y), X.distance(s.raw(0), x),
                          X.distance(s.raw(1), y)});
      mid_err = std::max(mid_err, X.distance(s.raw(0.5), s.raw(std::nextafter(0.5, 1.0))));

      // Faces through the basepoint and the diagonal.
      for (const auto& [a, b] : {std::pair{x, x0}, std::pair{x0, y}, std::pair{x, x}}) {
        const auto kk = p.region_of(a, b);
        if (!kk) continue;
        ++faces;
        for (double t : {0.0, 0.25, 0.5, 0.75, 1.0}) {
          const auto u = ds[*kk](a, b, t);
          if (a == b) {
            strict_bad += !(u.first == a && u.second == b);
          } else if (b == x0) {
            face_bad += !(u.second == x0);
          } else {
            face_bad += !(u.first == x0);
          }
        }
        if (a == b) reserved_bad += !back[*kk](a, a).is_constant();
      }
    }
  }
  o.expect(start_err < 1e-9, "D(u,0) = u");
  o.expect(diag_err < 1e-9, "D(u,1) on the diagonal");
  o.expect(strict_bad == 0, "strictness exact");
  o.expect(face_bad == 0, "faces preserved exactly");
  o.expect(end_err < 1e-9, "section endpoints");
  o.expect(reserved_bad == 0, "section reserved on the diagonal");
  o.expect(mid_err < 1e-9, "midpoint continuity");
  o.detail << pairs << " pairs, " << faces << " face samples; D(u,0) " << start_err << ", D(u,1) " << diag_err
           << ", endpoints " << end_err << ", midpoint " << mid_err;
}

// ---- 8 ----------------------------------------------------------------------
void symmetric_square(Outcome& o) {
  const auto rep = symsq::verify_symsq(10000, 8);
  o.expect(rep.roundtrip_err < 1e-8 && rep.pair_roundtrip_err < 1e-8, "random round trip < 1e-8");
  o.expect(rep.degenerate_err < 1e-6 && rep.degenerate_cases > 0, "degenerate battery < 1e-6");
  o.expect(rep.equivariance_err < 1e-10, "equivariance < 1e-10");
  o.expect(rep.unclassified == 0 && rep.in_u + rep.in_f == rep.samples, "U/F partition");
  o.expect(rep.contraction_end_err < 1e-9 && rep.contraction_start_err < 1e-9, "contraction endpoints < 1e-9");
  o.expect(rep.passed(), "full report passes");
  o.detail << "roundtrip " << rep.roundtrip_err << ", degenerate " << rep.degenerate_err << ", equivariance "
           << rep.equivariance_err << ", U/F " << rep.in_u << "/" << rep.in_f << ", contraction end "
           << rep.contraction_end_err;
}

// ---- 9 ----------------------------------------------------------------------
bool mentions_conjecture(const std::string& s) {
  std::string low;
  for (char c : s) low += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return low.find("wedge-conjecture") != std::string::npos || low.find("conjectur") != std::string::npos;
}

void honesty(Outcome& o) {
  using bounds::Quantity;
  const auto s2 = bounds::derive_bounds("S2");
  const auto& tc = s2.interval(s2.root(), Quantity::tc);
  o.expect(!tc.is_point(), "TC(S2) is not a point interval, got " + interval(tc));

  std::size_t scanned = 0, hits = 0, annotated = 0;
  for (const char* expr : {"S2", "(T2 v S1)", "(S3 x S3) v S1", "S2 v S2", "(T2 v S1) v T2", "RP2 v S1"}) {
    const auto r = bounds::derive_bounds(expr);
    for (const auto& c : r.certificates()) {
      ++scanned;
      hits += mentions_conjecture(c.rule) || mentions_conjecture(c.citation) || mentions_conjecture(c.note);
    }
    for (std::size_t n = 0; n < r.nodes().size(); ++n) annotated += r.wedge_conjecture_annotation(n).has_value();
  }
  bool rejected = false;
  try {
    auto rules = bounds::RuleSet::all();
    rules.enable("WEDGE-CONJECTURE");
  } catch (const Error&) {
    rejected = true;
  }
  o.expect(hits == 0, "no certificate cites the conjecture");
  o.expect(rejected, "conjectural rule cannot be enabled");
  o.expect(annotated > 0, "annotation present outside certificates");
  o.detail << "TC(S2)=" << interval(tc) << ", " << scanned << " certificates scanned, " << hits << " hits, "
           << annotated << " annotations";
}

}  // namespace

int main(int argc, char** argv) {
  const std::string data = argc > 1 ? argv[1] : "data";
  struct Criterion {
    int id;
    const char* name;
    double limit_s;
    std::function<void(Outcome&)> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "covering map raises TC", 10, covering_counterexample},
      {2, "universal cover raises TC", 10, universal_cover_example},
      {3, "RP2 category via GF2 cup-length", 1, [&](Outcome& o) { rp2_regression(o, data); }},
      {4, "Lie rule and monoidal closure", 10, lie_and_monoidal_criterion},
      {5, "cover calculus properties", 30, cover_calculus},
      {6, "planner verification", 30, planner_verification},
      {7, "section/deformation round trip", 30, section_deformation_roundtrip},
      {8, "symmetric square suite", 30, symmetric_square},
      {9, "honesty of reported intervals", 10, honesty},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.expect(false, std::string("exception: ") + e.what());
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    o.expect(s < c.limit_s, "time limit " + std::to_string(c.limit_s) + " s");
    failed += !o.ok;
    std::printf("%s  [%d] %-34s %7.3f s  %s\n", o.ok ? "PASS" : "FAIL", c.id, c.name, s, o.detail.str().c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
