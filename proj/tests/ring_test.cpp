#include <gtest/gtest.h>

#include <bitset>
#include <set>
#include <vector>

#include "common/error.hpp"
#include "ring/complex.hpp"
#include "ring/graded_ring.hpp"

using namespace tcwb::ring;

namespace {

std::vector<GradedRing> sample_rings(FieldTag f) {
  std::vector<GradedRing> rings;
  rings.push_back(point_ring(f));
  rings.push_back(sphere_ring(1, f));
  rings.push_back(sphere_ring(2, f));
  rings.push_back(sphere_ring(3, f));
  rings.push_back(torus_ring(2, f));
  rings.push_back(torus_ring(3, f));
  rings.push_back(wedge_ring(torus_ring(2, f), sphere_ring(1, f)));
  rings.push_back(tensor_ring(sphere_ring(2, f), sphere_ring(3, f)));
  rings.push_back(cohomology_ring(rp2_minimal(), f));
  rings.push_back(cohomology_ring(torus_minimal(), f));
  return rings;
}

// Mod-2 rank by dense elimination on bitsets; test-only oracle independent of
// the sparse echelon code.
std::size_t rank_mod2(std::vector<std::bitset<64>> rows) {
  std::size_t rank = 0;
  for (std::size_t col = 0; col < 64 && rank < rows.size(); ++col) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && !rows[pivot][col]) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    for (std::size_t r = 0; r < rows.size(); ++r)
      if (r != rank && rows[r][col]) rows[r] ^= rows[rank];
    ++rank;
  }
  return rank;
}

}  // namespace

TEST(Complex, RejectsMalformedInput) {
  EXPECT_THROW(SimplicialComplex(3, {{0, 1}, {1, 3}}), tcwb::Error);
  EXPECT_THROW(SimplicialComplex(3, {{1, 0}}), tcwb::Error);
  EXPECT_THROW(SimplicialComplex(3, {{0, 1, 2}, {0, 1}}), tcwb::Error);
  EXPECT_THROW(SimplicialComplex(3, {{0, 1}, {0, 1}}), tcwb::Error);
  EXPECT_THROW(SimplicialComplex::parse("0 1\n1 x\n"), tcwb::Error);
}

TEST(Complex, ParsesTextFormat) {
  auto c = SimplicialComplex::parse("# circle\n0 1\n1 2\n\n0 2\n");
  EXPECT_EQ(c.vertex_count(), 3u);
  EXPECT_EQ(c.dimension(), 1u);
  EXPECT_EQ(c.count(0), 3u);
  EXPECT_EQ(c.count(1), 3u);
}

TEST(Betti, CircleAndPoint) {
  EXPECT_EQ(betti(simplex_boundary(1), FieldTag::gf2), (std::vector<std::size_t>{1, 1}));
  EXPECT_EQ(betti(SimplicialComplex(1, {{0}}), FieldTag::rational), (std::vector<std::size_t>{1}));
}

TEST(Betti, RP2DependsOnField) {
  EXPECT_EQ(betti(rp2_minimal(), FieldTag::gf2), (std::vector<std::size_t>{1, 1, 1}));
  EXPECT_EQ(betti(rp2_minimal(), FieldTag::rational), (std::vector<std::size_t>{1, 0, 0}));
}

TEST(Betti, RP2Mod2MatchesDenseOracle) {
  const auto c = rp2_minimal();
  // Rows of delta_d as bitsets over (d+1)-simplices.
  auto delta_rows = [&](std::size_t d) {
    std::vector<std::bitset<64>> rows(c.count(d));
    for (std::size_t t = 0; t < c.count(d + 1); ++t) {
      const auto& tau = c.simplices(d + 1)[t];
      for (std::size_t i = 0; i < tau.size(); ++i) {
        Simplex face;
        for (std::size_t k = 0; k < tau.size(); ++k)
          if (k != i) face.push_back(tau[k]);
        rows[c.index_of(face)].flip(t);
      }
    }
    return rows;
  };
  const std::size_t r0 = rank_mod2(delta_rows(0));
  const std::size_t r1 = rank_mod2(delta_rows(1));
  std::vector<std::size_t> oracle{c.count(0) - r0, c.count(1) - r1 - r0, c.count(2) - r1};
  EXPECT_EQ(betti(c, FieldTag::gf2), oracle);
}

TEST(Betti, TorsionFreeComplexesAgreeAcrossFields) {
  for (std::size_t n = 1; n <= 4; ++n)
    EXPECT_EQ(betti(simplex_boundary(n), FieldTag::gf2), betti(simplex_boundary(n), FieldTag::rational));
  EXPECT_EQ(betti(torus_minimal(), FieldTag::gf2), (std::vector<std::size_t>{1, 2, 1}));
  EXPECT_EQ(betti(torus_minimal(), FieldTag::rational), (std::vector<std::size_t>{1, 2, 1}));
}

TEST(CohomologyRing, CircleGeneratorSquaresToZero) {
  for (auto f : {FieldTag::gf2, FieldTag::rational}) {
    auto r = cohomology_ring(simplex_boundary(1), f);
    EXPECT_EQ(r.dims(), (std::vector<std::size_t>{1, 1}));
    EXPECT_TRUE(r.product(1, 1).empty());
  }
}

TEST(CohomologyRing, RP2GeneratorSquareIsNonzeroMod2) {
  auto r = cohomology_ring(rp2_minimal(), FieldTag::gf2);
  ASSERT_EQ(r.dims(), (std::vector<std::size_t>{1, 1, 1}));
  const auto& sq = r.product(1, 1);
  ASSERT_EQ(sq.size(), 1u);
  EXPECT_EQ(sq[0].index, 2u);
}

// Exhaustive cochain-level oracle: over GF2 every 1-cochain of the 6-vertex
// RP2 is enumerated; some cocycle that is not a coboundary has a cup square
// that is not a coboundary.
TEST(CohomologyRing, RP2CupSquareOracle) {
  const auto c = rp2_minimal();
  const auto& edges = c.simplices(1);
  const auto& tris = c.simplices(2);
  ASSERT_EQ(edges.size(), 15u);
  auto delta0 = [&](unsigned f) {  // f: bitmask over vertices
    unsigned out = 0;
    for (std::size_t e = 0; e < edges.size(); ++e)
      if (((f >> edges[e][0]) ^ (f >> edges[e][1])) & 1u) out |= 1u << e;
    return out;
  };
  auto delta1 = [&](unsigned g) {
    unsigned out = 0;
    for (std::size_t t = 0; t < tris.size(); ++t) {
      const auto& s = tris[t];
      unsigned v = ((g >> c.index_of({s[1], s[2]})) ^ (g >> c.index_of({s[0], s[2]})) ^ (g >> c.index_of({s[0], s[1]}))) & 1u;
      out |= v << t;
    }
    return out;
  };
  auto cup11 = [&](unsigned a, unsigned b) {
    unsigned out = 0;
    for (std::size_t t = 0; t < tris.size(); ++t) {
      const auto& s = tris[t];
      unsigned v = (a >> c.index_of({s[0], s[1]})) & (b >> c.index_of({s[1], s[2]})) & 1u;
      out |= v << t;
    }
    return out;
  };
  std::set<unsigned> exact1, exact2;
  for (unsigned f = 0; f < 64; ++f) exact1.insert(delta0(f));
  for (unsigned g = 0; g < (1u << 15); ++g) exact2.insert(delta1(g));
  bool found_nonzero_square = false;
  for (unsigned a = 0; a < (1u << 15); ++a) {
    if (delta1(a) != 0 || exact1.count(a)) continue;
    if (!exact2.count(cup11(a, a))) found_nonzero_square = true;
  }
  EXPECT_TRUE(found_nonzero_square);
  EXPECT_EQ(cup_length(cohomology_ring(c, FieldTag::gf2)), 2u);
  EXPECT_EQ(cup_length(cohomology_ring(c, FieldTag::rational)), 0u);
}

TEST(CohomologyRing, S3TopClassSquaresToZero) {
  auto r = cohomology_ring(simplex_boundary(3), FieldTag::rational);
  EXPECT_EQ(r.dims(), (std::vector<std::size_t>{1, 0, 0, 1}));
  EXPECT_TRUE(r.product(1, 1).empty());
}

TEST(CohomologyRing, BoundaryOfSimplexMatchesSphereRing) {
  for (auto f : {FieldTag::gf2, FieldTag::rational})
    for (std::size_t n = 1; n <= 3; ++n) {
      auto tri = cohomology_ring(simplex_boundary(n), f);
      auto model = sphere_ring(n, f);
      EXPECT_EQ(tri.dims(), model.dims());
      EXPECT_EQ(cup_length(tri), cup_length(model));
      EXPECT_TRUE(tri.product(1, 1).empty());
    }
}

TEST(CohomologyRing, MinimalTorusMatchesTensorModel) {
  auto tri = cohomology_ring(torus_minimal(), FieldTag::rational);
  EXPECT_EQ(tri.dims(), (std::vector<std::size_t>{1, 2, 1}));
  EXPECT_EQ(cup_length(tri), 2u);
  EXPECT_EQ(zero_divisor_cup_length(tri), 2u);
}

TEST(SphereRing, Shapes) {
  EXPECT_THROW(sphere_ring(0, FieldTag::rational), tcwb::Error);
  auto s1 = sphere_ring(1, FieldTag::gf2);
  EXPECT_EQ(s1.dims(), (std::vector<std::size_t>{1, 1}));
  auto s3 = sphere_ring(3, FieldTag::rational);
  EXPECT_EQ(s3.dims(), (std::vector<std::size_t>{1, 0, 0, 1}));
  EXPECT_EQ(s3.degree_of(1), 3u);
  auto s2 = sphere_ring(2, FieldTag::rational);
  EXPECT_TRUE(s2.product(1, 1).empty());
}

TEST(TensorRing, TorusStructureConstants) {
  auto t = tensor_ring(sphere_ring(1, FieldTag::rational), sphere_ring(1, FieldTag::rational));
  ASSERT_EQ(t.dims(), (std::vector<std::size_t>{1, 2, 1}));
  EXPECT_TRUE(t.product(1, 1).empty());
  EXPECT_TRUE(t.product(2, 2).empty());
  const auto& ab = t.product(1, 2);
  const auto& ba = t.product(2, 1);
  ASSERT_EQ(ab.size(), 1u);
  ASSERT_EQ(ba.size(), 1u);
  EXPECT_EQ(ab[0].index, 3u);
  EXPECT_EQ(ab[0].value, -ba[0].value);
}

TEST(TensorRing, UnitLawAndFieldMismatch) {
  auto a = torus_ring(2, FieldTag::rational);
  auto ap = tensor_ring(a, point_ring(FieldTag::rational));
  EXPECT_EQ(ap.dims(), a.dims());
  EXPECT_THROW(tensor_ring(a, point_ring(FieldTag::gf2)), tcwb::Error);
  EXPECT_THROW(wedge_ring(a, point_ring(FieldTag::gf2)), tcwb::Error);
}

TEST(TensorRing, FourfoldS3TopComponent) {
  const auto s3 = sphere_ring(3, FieldTag::rational);
  auto r = tensor_ring(tensor_ring(tensor_ring(s3, s3), s3), s3);
  ASSERT_EQ(r.top_degree(), 12u);
  EXPECT_EQ(r.dims()[12], 1u);
  std::vector<std::size_t> gens;
  for (std::size_t i = 0; i < r.total_dim(); ++i)
    if (r.degree_of(i) == 3) gens.push_back(i);
  ASSERT_EQ(gens.size(), 4u);
  SparseVector prod = unit_vector(gens[0]);
  for (std::size_t k = 1; k < 4; ++k) prod = r.multiply(prod, unit_vector(gens[k]));
  ASSERT_EQ(prod.size(), 1u);
  EXPECT_EQ(prod[0].index, r.offset(12));
  EXPECT_EQ(cup_length(r), 4u);
}

TEST(WedgeRing, Shapes) {
  const auto s1 = sphere_ring(1, FieldTag::rational);
  auto w = wedge_ring(s1, s1);
  EXPECT_EQ(w.dims(), (std::vector<std::size_t>{1, 2}));
  EXPECT_TRUE(w.product(1, 1).empty());
  EXPECT_TRUE(w.product(1, 2).empty());
  EXPECT_TRUE(w.product(2, 2).empty());
  auto tp = wedge_ring(torus_ring(2, FieldTag::rational), point_ring(FieldTag::rational));
  EXPECT_EQ(tp.dims(), (std::vector<std::size_t>{1, 2, 1}));
  EXPECT_EQ(wedge_ring(torus_ring(2, FieldTag::rational), s1).dims(), (std::vector<std::size_t>{1, 3, 1}));
}

TEST(CupLength, Values) {
  EXPECT_EQ(cup_length(point_ring(FieldTag::rational)), 0u);
  EXPECT_EQ(cup_length(sphere_ring(2, FieldTag::rational)), 1u);
  EXPECT_EQ(cup_length(torus_ring(3, FieldTag::gf2)), 3u);
}

namespace {

// Exterior algebra on g generators (all degree 1), monomials as bitmasks.
// Test-only oracle for zero-divisor products in H*(T^k) (x) H*(T^k).
using Ext = std::vector<long>;  // coefficient per monomial mask

Ext ext_mul(const Ext& a, const Ext& b) {
  Ext out(a.size(), 0);
  for (std::size_t m = 0; m < a.size(); ++m) {
    if (!a[m]) continue;
    for (std::size_t n = 0; n < b.size(); ++n) {
      if (!b[n] || (m & n)) continue;
      // sign: number of pairs (i in m, j in n) with i > j
      int inversions = 0;
      for (std::size_t i = 0; i < 16; ++i)
        if (m >> i & 1u)
          for (std::size_t j = 0; j < i; ++j)
            if (n >> j & 1u) ++inversions;
      out[m | n] += (inversions % 2 ? -1 : 1) * a[m] * b[n];
    }
  }
  return out;
}

bool ext_nonzero(const Ext& a) {
  for (long v : a)
    if (v) return true;
  return false;
}

// Zero-divisor cup length of H*(T^k) by brute-force search over products of
// the generators z_S = m_S(left) - m_S(right) for every nonempty monomial S.
std::size_t zdcl_torus_oracle(std::size_t k) {
  const std::size_t g = 2 * k;
  std::vector<Ext> zs;
  for (std::size_t s = 1; s < (1u << k); ++s) {
    Ext z(1u << g, 0);
    z[s] += 1;        // generators 0..k-1: left copy
    z[s << k] -= 1;   // generators k..2k-1: right copy
    zs.push_back(z);
  }
  std::size_t best = 0;
  std::vector<Ext> layer = zs;
  for (std::size_t len = 1; len <= g && !layer.empty(); ++len) {
    std::vector<Ext> next;
    bool any = false;
    for (const auto& p : layer)
      if (ext_nonzero(p)) {
        any = true;
        for (const auto& z : zs) next.push_back(ext_mul(p, z));
      }
    if (!any) break;
    best = len;
    layer = std::move(next);
  }
  return best;
}

}  // namespace

TEST(ZeroDivisorCupLength, MatchesExteriorAlgebraOracle) {
  EXPECT_EQ(zero_divisor_cup_length(point_ring(FieldTag::rational)), 0u);
  EXPECT_EQ(zdcl_torus_oracle(1), 1u);
  EXPECT_EQ(zdcl_torus_oracle(2), 2u);
  for (auto f : {FieldTag::gf2, FieldTag::rational}) EXPECT_EQ(zero_divisor_cup_length(sphere_ring(1, f)), 1u);
  EXPECT_EQ(zero_divisor_cup_length(torus_ring(2, FieldTag::rational)), zdcl_torus_oracle(2));
}

TEST(ZeroDivisorCupLength, EvenSphereDependsOnField) {
  EXPECT_EQ(zero_divisor_cup_length(sphere_ring(2, FieldTag::rational)), 2u);
  EXPECT_EQ(zero_divisor_cup_length(sphere_ring(2, FieldTag::gf2)), 1u);
}

TEST(RingProperties, AxiomsHoldOnConstructedRings) {
  for (auto f : {FieldTag::gf2, FieldTag::rational})
    for (const auto& r : sample_rings(f)) {
      auto rep = check_ring_axioms(r);
      EXPECT_TRUE(rep.ok()) << (rep.violations.empty() ? "" : rep.violations.front());
    }
}

TEST(RingProperties, RandomisedAxiomCheckBeyondExhaustiveLimit) {
  auto big = tensor_ring(torus_ring(3, FieldTag::rational), torus_ring(4, FieldTag::rational));
  ASSERT_GT(big.total_dim(), 64u);
  auto rep = check_ring_axioms(big, 7, 3000);
  EXPECT_FALSE(rep.exhaustive);
  EXPECT_TRUE(rep.ok());
}

TEST(RingProperties, CupLengthUnderTensorAndWedge) {
  for (auto f : {FieldTag::gf2, FieldTag::rational}) {
    auto rings = sample_rings(f);
    for (std::size_t i = 0; i < rings.size(); ++i)
      for (std::size_t j = 0; j < rings.size(); ++j) {
        if (rings[i].total_dim() * rings[j].total_dim() > 64) continue;
        EXPECT_GE(cup_length(tensor_ring(rings[i], rings[j])), cup_length(rings[i]) + cup_length(rings[j]));
        EXPECT_EQ(cup_length(wedge_ring(rings[i], rings[j])), std::max(cup_length(rings[i]), cup_length(rings[j])));
      }
  }
}

TEST(RingProperties, ZeroDivisorCupLengthDominatesCupLength) {
  for (auto f : {FieldTag::gf2, FieldTag::rational})
    for (const auto& r : sample_rings(f)) {
      if (r.total_dim() > 16) continue;
      EXPECT_GE(zero_divisor_cup_length(r), cup_length(r));
    }
}
