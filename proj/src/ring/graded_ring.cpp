#include "ring/graded_ring.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <unordered_map>

#include "common/error.hpp"

namespace tcwb::ring {

namespace {

Scalar koszul_sign(const Field& f, std::size_t p, std::size_t q) { return f.from_int((p * q) % 2 == 0 ? 1 : -1); }

bool same_vector(const SparseVector& a, const SparseVector& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].index != b[i].index || a[i].value != b[i].value) return false;
  return true;
}

std::size_t vector_degree(const GradedRing& r, const SparseVector& v) { return r.degree_of(v.front().index); }

void require_same_field(const GradedRing& a, const GradedRing& b) {
  if (a.field_tag() != b.field_tag())
    fail(ErrorCode::invalid_argument, "field mismatch: " + std::string(field_name(a.field_tag())) + " vs " +
                                          std::string(field_name(b.field_tag())));
}

// Repeatedly multiplies a span by `generators` until the product span dies.
// Returns the largest k such that the k-fold product span is nonzero.
std::size_t product_span_length(const GradedRing& r, const std::vector<SparseVector>& generators) {
  if (generators.empty()) return 0;
  Echelon first(r.field(), false);
  for (const auto& g : generators)
    if (!g.empty()) first.insert(g);
  if (first.rank() == 0) return 0;
  std::vector<SparseVector> current = first.basis();
  std::size_t k = 1;
  while (true) {
    Echelon next(r.field(), false);
    for (const auto& s : current) {
      const std::size_t ds = vector_degree(r, s);
      for (const auto& g : generators) {
        if (g.empty() || ds + vector_degree(r, g) > r.top_degree()) continue;
        SparseVector p = r.multiply(s, g);
        if (!p.empty()) next.insert(p);
      }
    }
    if (next.rank() == 0) return k;
    current = next.basis();
    ++k;
  }
}

std::vector<std::size_t> tensor_layout(const GradedRing& a, const GradedRing& b) {
  const std::size_t na = a.total_dim(), nb = b.total_dim();
  std::vector<std::size_t> layout(na * nb);
  std::size_t next = 0;
  for (std::size_t d = 0; d <= a.top_degree() + b.top_degree(); ++d)
    for (std::size_t i = 0; i < na; ++i)
      for (std::size_t j = 0; j < nb; ++j)
        if (a.degree_of(i) + b.degree_of(j) == d) layout[i * nb + j] = next++;
  return layout;
}

}  // namespace

GradedRing::GradedRing(FieldTag field, std::vector<BasisElement> basis, std::vector<SparseVector> products)
    : field_(field), basis_(std::move(basis)), products_(std::move(products)) {
  const std::size_t n = basis_.size();
  if (n == 0 || basis_[0].degree != 0) fail(ErrorCode::invalid_argument, "ring basis must start with a degree-0 unit");
  if (products_.size() != n * n) fail(ErrorCode::invalid_argument, "structure constant table has wrong size");
  for (std::size_t i = 1; i < n; ++i)
    if (basis_[i].degree < basis_[i - 1].degree) fail(ErrorCode::invalid_argument, "ring basis not ordered by degree");
  dims_.assign(basis_.back().degree + 1, 0);
  for (const auto& b : basis_) ++dims_[b.degree];
  offsets_.assign(dims_.size(), 0);
  for (std::size_t d = 1; d < dims_.size(); ++d) offsets_[d] = offsets_[d - 1] + dims_[d - 1];
  for (const auto& v : products_)
    for (const auto& e : v)
      if (e.index >= n) fail(ErrorCode::invalid_argument, "structure constant index out of range");
}

SparseVector GradedRing::multiply(const SparseVector& a, const SparseVector& b) const {
  std::unordered_map<std::size_t, Scalar> acc;
  for (const auto& x : a)
    for (const auto& y : b) {
      const auto& p = product(x.index, y.index);
      if (p.empty()) continue;
      Scalar c = field_.mul(x.value, y.value);
      for (const auto& e : p) accumulate(field_, acc, e.index, field_.mul(c, e.value));
    }
  return from_accumulator(std::move(acc));
}

SparseVector CohomologyClass::as_vector() const {
  if (coefficients.size() != ring->dims().at(degree)) fail(ErrorCode::invalid_argument, "class length mismatch");
  SparseVector v;
  for (std::size_t i = 0; i < coefficients.size(); ++i)
    if (sgn(coefficients[i]) != 0) v.push_back({ring->offset(degree) + i, ring->field().reduce(coefficients[i])});
  return v;
}

namespace {

// coboundary[d][j] = delta of the dual of the j-th d-simplex, as a vector over
// (d+1)-simplices.
std::vector<std::vector<SparseVector>> coboundaries(const SimplicialComplex& c, const Field& f) {
  const std::size_t top = c.dimension();
  std::vector<std::vector<SparseVector>> cob(top + 1);
  for (std::size_t d = 0; d <= top; ++d) {
    cob[d].resize(c.count(d));
    if (d == top) continue;
    const auto& cofaces = c.simplices(d + 1);
    for (std::size_t t = 0; t < cofaces.size(); ++t) {
      const Simplex& tau = cofaces[t];
      for (std::size_t i = 0; i < tau.size(); ++i) {
        Simplex face;
        face.reserve(tau.size() - 1);
        for (std::size_t k = 0; k < tau.size(); ++k)
          if (k != i) face.push_back(tau[k]);
        cob[d][c.index_of(face)].push_back({t, f.from_int(i % 2 == 0 ? 1 : -1)});
      }
    }
    for (auto& v : cob[d]) {
      std::sort(v.begin(), v.end(), [](const SparseEntry& a, const SparseEntry& b) { return a.index < b.index; });
      SparseVector cleaned;
      for (auto& e : v)
        if (sgn(e.value) != 0) cleaned.push_back(std::move(e));
      v = std::move(cleaned);
    }
  }
  return cob;
}

struct DegreeData {
  std::vector<SparseVector> kernel;
  std::size_t coboundary_rank = 0;
};

DegreeData kernel_of(const std::vector<SparseVector>& columns, const Field& f) {
  DegreeData out;
  Echelon e(f, true);
  for (std::size_t j = 0; j < columns.size(); ++j) {
    auto ins = e.insert(columns[j]);
    if (ins.independent) continue;
    // column_j - sum c_g column_g = 0.
    SparseVector k = axpy(f, unit_vector(j), f.from_int(-1), ins.dependency);
    out.kernel.push_back(std::move(k));
  }
  out.coboundary_rank = e.rank();
  return out;
}

}  // namespace

std::vector<std::size_t> betti(const SimplicialComplex& complex, FieldTag tag) {
  const Field f(tag);
  auto cob = coboundaries(complex, f);
  const std::size_t top = complex.dimension();
  std::vector<std::size_t> rank(top + 1, 0);
  for (std::size_t d = 0; d < top; ++d) {
    Echelon e(f, false);
    for (const auto& col : cob[d]) e.insert(col);
    rank[d] = e.rank();
  }
  std::vector<std::size_t> out(top + 1);
  for (std::size_t d = 0; d <= top; ++d) out[d] = complex.count(d) - rank[d] - (d > 0 ? rank[d - 1] : 0);
  return out;
}

GradedRing cohomology_ring(const SimplicialComplex& complex, FieldTag tag) {
  const Field f(tag);
  auto cob = coboundaries(complex, f);
  const std::size_t top = complex.dimension();

  // For each degree: an echelon seeded with the coboundaries (so that
  // decomposition ignores exact cochains) followed by the chosen cocycle
  // representatives, whose generator ids map to basis positions.
  std::vector<Echelon> classes;
  std::vector<std::vector<SparseVector>> reps(top + 1);
  std::vector<std::unordered_map<std::size_t, std::size_t>> rep_of_generator(top + 1);
  classes.reserve(top + 1);
  for (std::size_t d = 0; d <= top; ++d) {
    classes.emplace_back(f, true);
    Echelon& h = classes.back();
    if (d > 0)
      for (const auto& col : cob[d - 1]) h.insert(col);
    std::vector<SparseVector> candidates;
    if (d == 0) {
      SparseVector ones;
      for (std::size_t v = 0; v < complex.count(0); ++v) ones.push_back({v, Scalar(1)});
      candidates.push_back(std::move(ones));
    }
    if (d < top) {
      auto kd = kernel_of(cob[d], f);
      for (auto& k : kd.kernel) candidates.push_back(std::move(k));
    } else {
      for (std::size_t j = 0; j < complex.count(d); ++j) candidates.push_back(unit_vector(j));
    }
    for (auto& cand : candidates) {
      auto ins = h.insert(cand);
      if (!ins.independent) continue;
      rep_of_generator[d].emplace(ins.generator, reps[d].size());
      reps[d].push_back(std::move(cand));
    }
  }

  std::size_t last = top;
  while (last > 0 && reps[last].empty()) --last;
  std::vector<GradedRing::BasisElement> basis;
  std::vector<std::size_t> offset(last + 1, 0);
  for (std::size_t d = 0; d <= last; ++d) {
    offset[d] = basis.size();
    for (std::size_t i = 0; i < reps[d].size(); ++i)
      basis.push_back({d, d == 0 && i == 0 ? std::string("1") : "h" + std::to_string(d) + "_" + std::to_string(i)});
  }
  const std::size_t n = basis.size();
  std::vector<SparseVector> products(n * n);

  std::vector<std::vector<std::vector<Scalar>>> dense(last + 1);
  for (std::size_t d = 0; d <= last; ++d)
    for (const auto& r : reps[d]) {
      std::vector<Scalar> v(complex.count(d), Scalar(0));
      for (const auto& e : r) v[e.index] = e.value;
      dense[d].push_back(std::move(v));
    }

  for (std::size_t p = 0; p <= last; ++p)
    for (std::size_t q = 0; p + q <= last; ++q) {
      const std::size_t d = p + q;
      const auto& cells = complex.simplices(d);
      std::vector<std::pair<std::size_t, std::size_t>> split(cells.size());
      for (std::size_t t = 0; t < cells.size(); ++t) {
        const Simplex& tau = cells[t];
        Simplex front(tau.begin(), tau.begin() + static_cast<std::ptrdiff_t>(p + 1));
        Simplex back(tau.begin() + static_cast<std::ptrdiff_t>(p), tau.end());
        split[t] = {complex.index_of(front), complex.index_of(back)};
      }
      for (std::size_t i = 0; i < reps[p].size(); ++i)
        for (std::size_t j = 0; j < reps[q].size(); ++j) {
          SparseVector cup;
          for (std::size_t t = 0; t < cells.size(); ++t) {
            const Scalar& a = dense[p][i][split[t].first];
            if (sgn(a) == 0) continue;
            const Scalar& b = dense[q][j][split[t].second];
            if (sgn(b) == 0) continue;
            cup.push_back({t, f.mul(a, b)});
          }
          auto coords = classes[d].decompose(cup);
          if (!coords) fail(ErrorCode::internal, "cup product of cocycles is not a cocycle");
          SparseVector out;
          for (const auto& e : *coords) {
            auto it = rep_of_generator[d].find(e.index);
            if (it != rep_of_generator[d].end()) out.push_back({offset[d] + it->second, e.value});
          }
          std::sort(out.begin(), out.end(), [](const SparseEntry& a, const SparseEntry& b) { return a.index < b.index; });
          products[(offset[p] + i) * n + offset[q] + j] = std::move(out);
        }
    }
  return GradedRing(tag, std::move(basis), std::move(products));
}

GradedRing point_ring(FieldTag tag) { return GradedRing(tag, {{0, "1"}}, {unit_vector(0)}); }

GradedRing sphere_ring(std::size_t n, FieldTag tag) {
  if (n == 0) fail(ErrorCode::invalid_argument, "sphere_ring requires n >= 1");
  std::vector<SparseVector> products(4);
  products[0] = unit_vector(0);
  products[1] = unit_vector(1);
  products[2] = unit_vector(1);
  return GradedRing(tag, {{0, "1"}, {n, "s" + std::to_string(n)}}, std::move(products));
}

std::size_t tensor_index(const GradedRing& a, const GradedRing& b, std::size_t i, std::size_t j) {
  return tensor_layout(a, b).at(i * b.total_dim() + j);
}

GradedRing tensor_ring(const GradedRing& a, const GradedRing& b) {
  require_same_field(a, b);
  const Field& f = a.field();
  const std::size_t na = a.total_dim(), nb = b.total_dim();
  const auto layout = tensor_layout(a, b);
  const std::size_t n = na * nb;
  std::vector<std::pair<std::size_t, std::size_t>> pair_of(n);
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < nb; ++j) pair_of[layout[i * nb + j]] = {i, j};

  std::vector<GradedRing::BasisElement> basis(n);
  for (std::size_t k = 0; k < n; ++k) {
    auto [i, j] = pair_of[k];
    std::string label = (i == 0 && j == 0) ? "1" : a.label(i) + "|" + b.label(j);
    basis[k] = {a.degree_of(i) + b.degree_of(j), std::move(label)};
  }
  const std::size_t top = a.top_degree() + b.top_degree();
  std::vector<SparseVector> products(n * n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      if (basis[x].degree + basis[y].degree > top) continue;
      auto [i, j] = pair_of[x];
      auto [i2, j2] = pair_of[y];
      const auto& pa = a.product(i, i2);
      if (pa.empty()) continue;
      const auto& pb = b.product(j, j2);
      if (pb.empty()) continue;
      Scalar sign = koszul_sign(f, b.degree_of(j), a.degree_of(i2));
      SparseVector out;
      for (const auto& ea : pa)
        for (const auto& eb : pb) {
          Scalar v = f.mul(sign, f.mul(ea.value, eb.value));
          if (sgn(v) != 0) out.push_back({layout[ea.index * nb + eb.index], std::move(v)});
        }
      std::sort(out.begin(), out.end(), [](const SparseEntry& l, const SparseEntry& r) { return l.index < r.index; });
      products[x * n + y] = std::move(out);
    }
  return GradedRing(a.field_tag(), std::move(basis), std::move(products));
}

GradedRing wedge_ring(const GradedRing& a, const GradedRing& b) {
  require_same_field(a, b);
  if (a.dims()[0] != 1 || b.dims()[0] != 1) fail(ErrorCode::invalid_argument, "wedge_ring requires connected summands");
  const std::size_t top = std::max(a.top_degree(), b.top_degree());
  std::vector<GradedRing::BasisElement> basis{{0, "1"}};
  std::vector<std::size_t> from_a(a.total_dim()), from_b(b.total_dim());
  from_a[0] = from_b[0] = 0;
  for (std::size_t d = 1; d <= top; ++d) {
    for (std::size_t i = 1; i < a.total_dim(); ++i)
      if (a.degree_of(i) == d) {
        from_a[i] = basis.size();
        basis.push_back({d, "L." + a.label(i)});
      }
    for (std::size_t j = 1; j < b.total_dim(); ++j)
      if (b.degree_of(j) == d) {
        from_b[j] = basis.size();
        basis.push_back({d, "R." + b.label(j)});
      }
  }
  const std::size_t n = basis.size();
  std::vector<SparseVector> products(n * n);
  auto remap = [](const SparseVector& v, const std::vector<std::size_t>& map) {
    SparseVector out;
    for (const auto& e : v) out.push_back({map[e.index], e.value});
    std::sort(out.begin(), out.end(), [](const SparseEntry& l, const SparseEntry& r) { return l.index < r.index; });
    return out;
  };
  for (std::size_t i = 0; i < a.total_dim(); ++i)
    for (std::size_t k = 0; k < a.total_dim(); ++k) products[from_a[i] * n + from_a[k]] = remap(a.product(i, k), from_a);
  for (std::size_t j = 1; j < b.total_dim(); ++j) {
    products[from_b[j]] = unit_vector(from_b[j]);
    products[from_b[j] * n] = unit_vector(from_b[j]);
    for (std::size_t k = 1; k < b.total_dim(); ++k) products[from_b[j] * n + from_b[k]] = remap(b.product(j, k), from_b);
  }
  return GradedRing(a.field_tag(), std::move(basis), std::move(products));
}

GradedRing torus_ring(std::size_t n, FieldTag tag) {
  if (n == 0) return point_ring(tag);
  GradedRing r = sphere_ring(1, tag);
  for (std::size_t k = 1; k < n; ++k) r = tensor_ring(r, sphere_ring(1, tag));
  return r;
}

std::size_t cup_length(const GradedRing& ring) {
  std::vector<SparseVector> gens;
  for (std::size_t i = 0; i < ring.total_dim(); ++i)
    if (ring.degree_of(i) > 0) gens.push_back(unit_vector(i));
  return product_span_length(ring, gens);
}

std::size_t zero_divisor_cup_length(const GradedRing& ring) {
  const GradedRing square = tensor_ring(ring, ring);
  const Field& f = ring.field();
  const auto layout = tensor_layout(ring, ring);
  const std::size_t n = ring.total_dim();
  std::vector<SparseVector> gens;
  for (std::size_t x = 0; x < n; ++x) {
    if (ring.degree_of(x) == 0) continue;
    // x|1 - 1|x
    SparseVector z{{layout[x * n], Scalar(1)}, {layout[x], f.from_int(-1)}};
    std::sort(z.begin(), z.end(), [](const SparseEntry& l, const SparseEntry& r) { return l.index < r.index; });
    gens.push_back(std::move(z));
  }
  return product_span_length(square, gens);
}

AxiomReport check_ring_axioms(const GradedRing& r, std::uint64_t seed, std::size_t random_triples) {
  AxiomReport rep;
  const std::size_t n = r.total_dim();
  const Field& f = r.field();
  auto note = [&](const std::string& what) {
    if (rep.violations.size() < 32) rep.violations.push_back(what);
  };
  for (std::size_t i = 0; i < n; ++i) {
    if (!same_vector(r.product(0, i), unit_vector(i)) || !same_vector(r.product(i, 0), unit_vector(i)))
      note("unit law fails on " + r.label(i));
    for (std::size_t j = 0; j < n; ++j) {
      const auto& p = r.product(i, j);
      for (const auto& e : p)
        if (r.degree_of(e.index) != r.degree_of(i) + r.degree_of(j))
          note("degree additivity fails on " + r.label(i) + "*" + r.label(j));
      if (!same_vector(p, scale(f, koszul_sign(f, r.degree_of(i), r.degree_of(j)), r.product(j, i))))
        note("graded commutativity fails on " + r.label(i) + "," + r.label(j));
      ++rep.checked_tuples;
    }
  }
  auto assoc = [&](std::size_t i, std::size_t j, std::size_t k) {
    SparseVector left = r.multiply(r.product(i, j), unit_vector(k));
    SparseVector right = r.multiply(unit_vector(i), r.product(j, k));
    if (!same_vector(left, right)) note("associativity fails on " + r.label(i) + "," + r.label(j) + "," + r.label(k));
    ++rep.checked_tuples;
  };
  if (n <= 64) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) assoc(i, j, k);
  } else {
    rep.exhaustive = false;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    for (std::size_t t = 0; t < random_triples; ++t) assoc(pick(rng), pick(rng), pick(rng));
  }
  return rep;
}

}  // namespace tcwb::ring
