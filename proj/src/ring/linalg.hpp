#pragma once

#include <cstddef>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ring/field.hpp"

namespace tcwb::ring {

// Sorted by index, no stored zeros.
struct SparseEntry {
  std::size_t index;
  Scalar value;
};
using SparseVector = std::vector<SparseEntry>;

SparseVector unit_vector(std::size_t index);
// y + a*x over `field`.
SparseVector axpy(const Field& field, const SparseVector& y, const Scalar& a, const SparseVector& x);
SparseVector scale(const Field& field, const Scalar& a, const SparseVector& x);
Scalar coefficient(const SparseVector& v, std::size_t index);
// Accumulates value at index into an unsorted map; used by product loops.
void accumulate(const Field& field, std::unordered_map<std::size_t, Scalar>& acc, std::size_t index,
                const Scalar& value);
SparseVector from_accumulator(std::unordered_map<std::size_t, Scalar>&& acc);

// Incremental row-echelon basis of a span. Every inserted generator gets an id
// (its insertion ordinal); each stored row remembers which combination of
// generators produced it, so membership queries can return coordinates.
class Echelon {
 public:
  explicit Echelon(Field field, bool track = true) : field_(field), track_(track) {}

  struct Insertion {
    std::size_t generator;
    bool independent;
    // For dependent generators: coefficients c_g with generator = sum c_g * g.
    SparseVector dependency;
  };

  Insertion insert(const SparseVector& v);
  // Coordinates of v in terms of generator ids, or nullopt if v is outside the span.
  std::optional<SparseVector> decompose(const SparseVector& v) const;
  bool contains(const SparseVector& v) const;

  std::size_t rank() const { return rows_.size(); }
  std::size_t generator_count() const { return generators_; }
  // Reduced rows (pivot coefficient 1), in insertion order.
  std::vector<SparseVector> basis() const;

 private:
  struct Row {
    SparseVector vec;
    SparseVector combo;
  };
  // Returns residual; when tracking, `combo` receives minus the multipliers used.
  SparseVector reduce(SparseVector v, SparseVector* combo) const;

  Field field_;
  bool track_;
  std::size_t generators_ = 0;
  std::vector<Row> rows_;
  std::unordered_map<std::size_t, std::size_t> pivot_row_;
};

}  // namespace tcwb::ring
