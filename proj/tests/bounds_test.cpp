#include <gtest/gtest.h>

#include <fstream>
#include <set>

#include "bounds/engine.hpp"
#include "common/error.hpp"

using namespace tcwb;
using namespace tcwb::bounds;

namespace {

const Interval& at(const Result& r, const std::string& expr, Quantity q) {
  auto id = r.find(expr);
  if (!id) throw std::runtime_error("node not found: " + expr);
  return r.interval(*id, q);
}

void expect_point(const Interval& i, long v) {
  EXPECT_EQ(i.lo, v);
  ASSERT_TRUE(i.hi.has_value());
  EXPECT_EQ(*i.hi, v);
}

// Collect rule ids reachable from a certificate.
void rules_below(const Result& r, std::size_t cert, std::multiset<std::string>& out) {
  const auto& c = r.certificates()[cert];
  out.insert(c.rule);
  for (auto p : c.premises) rules_below(r, p, out);
}

}  // namespace

TEST(Expr, ParsesPrecedenceAndAttributes) {
  EXPECT_EQ(parse_expr("S1 x S1 v S2")->text(), parse_expr("((S1 x S1) v S2)")->text());
  EXPECT_EQ(parse_expr("T2 v S1 v S1")->text(), parse_expr("((T2 v S1) v S1)")->text());
  auto e = parse_expr("S3{conn=2}");
  ASSERT_TRUE(e->conn.has_value());
  EXPECT_EQ(*e->conn, 2);
  EXPECT_TRUE(parse_expr("file:x.cplx{lie}")->lie);
}

TEST(Expr, RejectsMalformed) {
  for (const char* bad : {"", "S0", "T0", "S1 x", "(S1 v S2", "S1 S2", "Q3", "S1{foo}", "S1{conn=}", "file:"}) {
    try {
      parse_expr(bad);
      ADD_FAILURE() << "accepted '" << bad << "'";
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::parse) << bad;
    }
  }
}

TEST(Bounds, TorusWedgeCircle) {
  auto r = derive_bounds("T2 v S1");
  expect_point(at(r, "T2 v S1", Quantity::tc), 4);
  expect_point(at(r, "T2 x S1", Quantity::cat), 4);
  expect_point(at(r, "T2", Quantity::cat), 3);

  const auto& tc = at(r, "T2 v S1", Quantity::tc);
  std::multiset<std::string> hi_rules;
  rules_below(r, *tc.hi_cert, hi_rules);
  EXPECT_EQ(r.certificates()[*tc.hi_cert].rule, "R7");
  EXPECT_GE(hi_rules.count("R5"), 2u);
  EXPECT_EQ(r.certificates()[*tc.lo_cert].rule, "R6");

  auto text = r.explain(*r.find("T2 v S1"), Quantity::tc, Side::hi);
  auto r7 = text.find("R7");
  auto r5 = text.find("R5", r7);
  ASSERT_NE(r7, std::string::npos);
  ASSERT_NE(r5, std::string::npos);
  EXPECT_NE(text.find("R5", r5 + 1), std::string::npos);
}

TEST(Bounds, DoubleCoverModel) {
  auto r = derive_bounds("(T2 v S1) x T2");
  expect_point(at(r, "(T2 v S1) x T2", Quantity::cat), 5);
  expect_point(at(r, "(T2 v S1) x T2", Quantity::cuplen), 4);
  auto text = r.explain(r.root(), Quantity::cat, Side::lo);
  EXPECT_EQ(text.rfind("cat", 0), 0u);
  EXPECT_NE(text.find("R1"), std::string::npos);
  EXPECT_NE(text.find("RING"), std::string::npos);
  EXPECT_NE(text.find("tensor_ring"), std::string::npos);
}

TEST(Bounds, Point) {
  auto r = derive_bounds("point");
  for (auto q : {Quantity::cat, Quantity::tc, Quantity::tcm}) expect_point(r.interval(r.root(), q), 1);
  const auto& c = r.certificates()[*r.interval(r.root(), Quantity::cat).lo_cert];
  EXPECT_EQ(c.rule, "AX-nonempty");
  EXPECT_TRUE(c.is_axiom());
}

TEST(Bounds, Sphere3SquaredWedgeCircle) {
  auto r = derive_bounds("(S3 x S3) v S1");
  expect_point(at(r, "(S3 x S3) v S1", Quantity::tc), 4);
  expect_point(at(r, "(S3 x S3) x S1", Quantity::cat), 4);
  expect_point(at(r, "S3 x S3", Quantity::cat), 3);
}

TEST(Bounds, FourfoldSphere) {
  auto r = derive_bounds("(S3 x S3) v (S3 x S3)");
  EXPECT_GE(at(r, "(S3 x S3) v (S3 x S3)", Quantity::tc).lo, 5);
  EXPECT_GE(at(r, "(S3 x S3) x (S3 x S3)", Quantity::cat).lo, 5);
}

TEST(Bounds, ProjectivePlane) {
  auto r = derive_bounds("RP2");
  expect_point(r.interval(r.root(), Quantity::cat), 3);
  const auto& c = r.certificates()[*r.interval(r.root(), Quantity::cuplen).lo_cert];
  EXPECT_NE(c.note.find("GF2"), std::string::npos);
}

TEST(Bounds, CircleAndMonoidalCriterion) {
  auto r = derive_bounds("S1");
  expect_point(r.interval(r.root(), Quantity::tc), 2);
  expect_point(r.interval(r.root(), Quantity::tcm), 2);
  EXPECT_TRUE(monoidal_criterion_applicable(2, 3, 2));
  EXPECT_FALSE(monoidal_criterion_applicable(0, 1, 2));
  EXPECT_TRUE(monoidal_criterion_applicable(0, 0, 1, true));
  auto s3 = derive_bounds("S3");
  EXPECT_TRUE(monoidal_criterion_applicable(s3, s3.root(), 2));
  auto p = derive_bounds("point");
  EXPECT_TRUE(monoidal_criterion_applicable(p, p.root(), 1));
}

TEST(Bounds, EvenSphereStaysHonest) {
  auto r = derive_bounds("S2");
  const auto& tc = r.interval(r.root(), Quantity::tc);
  EXPECT_EQ(tc.lo, 3);  // zdcl 2 over Q
  EXPECT_FALSE(tc.hi.has_value());  // no listed rule bounds TC of an even sphere from above
  EXPECT_FALSE(tc.is_point());
  expect_point(r.interval(r.root(), Quantity::cat), 2);
}

TEST(Bounds, WedgeConjectureNeverCertifies) {
  for (const char* e : {"T2 v S1", "(S3 x S3) v S1", "(T2 v S1) x T2", "S2 v S2", "RP2 v T2"}) {
    auto r = derive_bounds(e);
    for (const auto& c : r.certificates()) {
      EXPECT_EQ(c.rule.find("WEDGE-CONJECTURE"), std::string::npos);
      EXPECT_EQ(c.citation.find("conjectur"), std::string::npos);
      EXPECT_EQ(c.citation.find("Conjectur"), std::string::npos);
    }
    EXPECT_EQ(r.to_json().find("\"rule\": \"WEDGE-CONJECTURE"), std::string::npos);
  }
  RuleSet rules;
  EXPECT_THROW(rules.enable("WEDGE-CONJECTURE"), Error);
  auto r = derive_bounds("T2 v S1");
  auto f = r.wedge_conjecture_annotation(r.root());
  ASSERT_TRUE(f.has_value());
  EXPECT_EQ(*f, 4);
}

TEST(Bounds, Deterministic) {
  for (const char* e : {"T2 v S1", "(T2 v S1) x T2", "RP2 x S3 v T3"}) {
    EXPECT_EQ(derive_bounds(e).to_json(), derive_bounds(e).to_json());
  }
}

TEST(Bounds, SoundnessFixtures) {
  struct Fixture {
    const char* expr;
    Quantity q;
    long value;
  };
  const Fixture fixtures[] = {
      {"S1", Quantity::tc, 2},  {"T2", Quantity::cat, 3},  {"S1", Quantity::cat, 2},  {"S2", Quantity::tc, 3},
      {"S3", Quantity::tc, 2},  {"T3", Quantity::tc, 4},   {"RP2", Quantity::cat, 3}, {"S2", Quantity::cat, 2},
  };
  for (const auto& f : fixtures) {
    auto r = derive_bounds(f.expr);
    const auto& i = r.interval(r.root(), f.q);
    EXPECT_LE(i.lo, f.value) << f.expr;
    if (i.hi) EXPECT_GE(*i.hi, f.value) << f.expr;
  }
}

TEST(Bounds, CertificateCompleteness) {
  auto r = derive_bounds("(T2 v S1) x T2 v RP2");
  const auto& certs = r.certificates();
  for (const auto& c : certs) {
    if (!c.is_axiom()) EXPECT_FALSE(c.premises.empty()) << c.rule << " #" << c.id;
    for (auto p : c.premises) EXPECT_LT(p, c.id);  // acyclic
  }
  for (const auto& n : r.nodes())
    for (auto q : kQuantities) {
      const auto& i = r.interval(n.id, q);
      if (i.lo > 1 || (q == Quantity::cuplen || q == Quantity::zdcl || q == Quantity::dim) ) {
        if (i.lo > 0) EXPECT_TRUE(i.lo_cert.has_value()) << n.text;
      }
      if (i.hi) EXPECT_TRUE(i.hi_cert.has_value()) << n.text;
    }
}

TEST(Bounds, DisablingRulesOnlyWidens) {
  const std::string expr = "(T2 v S1) x T2";
  auto full = derive_bounds(expr);
  for (const auto& rule : RuleSet::known_rules()) {
    Options opt;
    opt.rules.disable(rule);
    auto partial = derive_bounds(expr, opt);
    for (const auto& n : full.nodes()) {
      auto id = partial.find(n.text);
      ASSERT_TRUE(id.has_value());
      for (auto q : kQuantities) {
        const auto& a = full.interval(n.id, q);
        const auto& b = partial.interval(*id, q);
        EXPECT_LE(b.lo, a.lo) << rule << " " << n.text;
        if (a.hi && b.hi) EXPECT_GE(*b.hi, *a.hi) << rule << " " << n.text;
        if (!a.hi) EXPECT_FALSE(b.hi.has_value());
      }
    }
  }
}

TEST(Bounds, SingleFieldMatchesExpectation) {
  Options q;
  q.fields = {ring::FieldTag::rational};
  auto r = derive_bounds("RP2", q);
  EXPECT_EQ(r.interval(r.root(), Quantity::cuplen).lo, 0);
  EXPECT_EQ(r.interval(r.root(), Quantity::cat).lo, 1);
}

TEST(Bounds, RetractDeclaration) {
  Options opt;
  opt.declarations.retracts.push_back(parse_retract("S1 x S2{conn=0}>S1 v S1"));
  auto r = derive_bounds("S1 x S2{conn=0}", opt);
  EXPECT_GE(r.interval(r.root(), Quantity::tc).lo, at(r, "S1 v S1", Quantity::tc).lo);
  const auto& c = r.certificates();
  bool found = false;
  for (const auto& x : c) found |= x.rule == "R9" && x.node == r.root();
  EXPECT_TRUE(found || r.interval(r.root(), Quantity::tc).lo > at(r, "S1 v S1", Quantity::tc).lo);
}

TEST(Bounds, CoveringDeclaration) {
  Options opt;
  opt.declarations.coverings.push_back(parse_covering("(T2 v S1) x T2->file:never_loaded"));
  // Base atom must resolve; use a builtin base instead.
  opt.declarations.coverings.clear();
  opt.declarations.coverings.push_back(parse_covering("T3->T2 x S1"));
  auto r = derive_bounds("T2 x S1", opt);
  EXPECT_GE(r.interval(r.root(), Quantity::cat).lo, 4);
}

TEST(Bounds, QuotientFact) {
  Options opt;
  opt.rules.add_quotient_cat("S2", 4);
  auto r = derive_bounds("S2", opt);
  EXPECT_EQ(r.interval(r.root(), Quantity::tcm).lo, 4);
  EXPECT_THROW(opt.rules.add_quotient_cat("S2", 0), Error);
}

TEST(Bounds, InconsistencyNamesBothCertificates) {
  Options opt;
  opt.rules.add_quotient_cat("S1", 7);
  try {
    derive_bounds("S1", opt);
    FAIL() << "expected inconsistency";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::inconsistent);
    std::string w = e.what();
    EXPECT_NE(w.find("certificate"), std::string::npos);
    EXPECT_NE(w.find("R12"), std::string::npos);
  }
}

TEST(Bounds, FileAtom) {
  const std::string path = ::testing::TempDir() + "rp2_bounds.cplx";
  {
    std::ofstream f(path);
    f << "# minimal RP2\n0 1 2\n0 2 3\n0 3 4\n0 4 5\n0 1 5\n1 2 4\n2 3 5\n1 3 4\n2 4 5\n1 3 5\n";
  }
  auto r = derive_bounds("file:" + path);
  expect_point(r.interval(r.root(), Quantity::cat), 3);
  EXPECT_THROW(derive_bounds("file:/nonexistent/x.cplx"), Error);
}

TEST(Bounds, JsonShape) {
  auto r = derive_bounds("T2 v S1");
  auto j = r.to_json();
  EXPECT_NE(j.find("\"certificates\""), std::string::npos);
  EXPECT_NE(j.find("\"wedge_conjecture_tc_hi\""), std::string::npos);
  EXPECT_NE(j.find("\"aux\": true"), std::string::npos);
}
