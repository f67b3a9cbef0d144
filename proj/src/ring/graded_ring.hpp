#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "ring/complex.hpp"
#include "ring/field.hpp"
#include "ring/linalg.hpp"

namespace tcwb::ring {

// Finite-dimensional graded-commutative algebra over an exact field, given by
// a homogeneous basis (ordered by degree) and structure constants. Basis
// element 0 is the unit. Products landing above the top degree are zero and
// are never stored.
class GradedRing {
 public:
  struct BasisElement {
    std::size_t degree;
    std::string label;
  };

  // `products[i * n + j]` is the product of basis i and basis j. Shape errors
  // throw; the algebra axioms are checked separately by check_ring_axioms().
  GradedRing(FieldTag field, std::vector<BasisElement> basis, std::vector<SparseVector> products);

  FieldTag field_tag() const { return field_.tag(); }
  const Field& field() const { return field_; }
  std::size_t total_dim() const { return basis_.size(); }
  std::size_t top_degree() const { return dims_.size() - 1; }
  const std::vector<std::size_t>& dims() const { return dims_; }
  std::size_t offset(std::size_t degree) const { return offsets_.at(degree); }
  std::size_t degree_of(std::size_t i) const { return basis_[i].degree; }
  const std::string& label(std::size_t i) const { return basis_[i].label; }
  const std::vector<BasisElement>& basis() const { return basis_; }
  static constexpr std::size_t unit_index() { return 0; }

  const SparseVector& product(std::size_t i, std::size_t j) const { return products_[i * basis_.size() + j]; }
  SparseVector multiply(const SparseVector& a, const SparseVector& b) const;

 private:
  Field field_;
  std::vector<BasisElement> basis_;
  std::vector<SparseVector> products_;
  std::vector<std::size_t> dims_;
  std::vector<std::size_t> offsets_;
};

// A homogeneous element of a ring.
struct CohomologyClass {
  const GradedRing* ring;
  std::size_t degree;
  std::vector<Scalar> coefficients;  // length dims[degree]

  SparseVector as_vector() const;
};

std::vector<std::size_t> betti(const SimplicialComplex& complex, FieldTag field);
GradedRing cohomology_ring(const SimplicialComplex& complex, FieldTag field);
GradedRing point_ring(FieldTag field);
GradedRing sphere_ring(std::size_t n, FieldTag field);
GradedRing tensor_ring(const GradedRing& a, const GradedRing& b);
GradedRing wedge_ring(const GradedRing& a, const GradedRing& b);
// n-fold tensor power of the circle ring.
GradedRing torus_ring(std::size_t n, FieldTag field);

// Index of basis pair (i, j) inside tensor_ring(a, b).
std::size_t tensor_index(const GradedRing& a, const GradedRing& b, std::size_t i, std::size_t j);

std::size_t cup_length(const GradedRing& ring);
std::size_t zero_divisor_cup_length(const GradedRing& ring);

struct AxiomReport {
  bool exhaustive = true;
  std::size_t checked_tuples = 0;
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

// Unit law, degree additivity, Koszul graded commutativity and associativity.
// Exhaustive up to total dimension 64, seeded random triples beyond.
AxiomReport check_ring_axioms(const GradedRing& ring, std::uint64_t seed = 1, std::size_t random_triples = 20000);

}  // namespace tcwb::ring
