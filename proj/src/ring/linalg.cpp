#include "ring/linalg.hpp"

#include <algorithm>

namespace tcwb::ring {

SparseVector unit_vector(std::size_t index) { return SparseVector{{index, Scalar(1)}}; }

SparseVector axpy(const Field& field, const SparseVector& y, const Scalar& a, const SparseVector& x) {
  SparseVector out;
  out.reserve(y.size() + x.size());
  auto yi = y.begin();
  auto xi = x.begin();
  while (yi != y.end() || xi != x.end()) {
    if (xi == x.end() || (yi != y.end() && yi->index < xi->index)) {
      out.push_back(*yi++);
    } else if (yi == y.end() || xi->index < yi->index) {
      Scalar v = field.mul(a, xi->value);
      if (sgn(v) != 0) out.push_back({xi->index, std::move(v)});
      ++xi;
    } else {
      Scalar v = field.add(yi->value, field.mul(a, xi->value));
      if (sgn(v) != 0) out.push_back({yi->index, std::move(v)});
      ++xi;
      ++yi;
    }
  }
  return out;
}

SparseVector scale(const Field& field, const Scalar& a, const SparseVector& x) {
  SparseVector out;
  if (sgn(a) == 0) return out;
  out.reserve(x.size());
  for (const auto& e : x) {
    Scalar v = field.mul(a, e.value);
    if (sgn(v) != 0) out.push_back({e.index, std::move(v)});
  }
  return out;
}

Scalar coefficient(const SparseVector& v, std::size_t index) {
  auto it = std::lower_bound(v.begin(), v.end(), index,
                             [](const SparseEntry& e, std::size_t i) { return e.index < i; });
  if (it != v.end() && it->index == index) return it->value;
  return Scalar(0);
}

void accumulate(const Field& field, std::unordered_map<std::size_t, Scalar>& acc, std::size_t index,
                const Scalar& value) {
  auto [it, inserted] = acc.try_emplace(index, value);
  if (!inserted) it->second = field.add(it->second, value);
}

SparseVector from_accumulator(std::unordered_map<std::size_t, Scalar>&& acc) {
  SparseVector out;
  out.reserve(acc.size());
  for (auto& [i, v] : acc)
    if (sgn(v) != 0) out.push_back({i, std::move(v)});
  std::sort(out.begin(), out.end(), [](const SparseEntry& a, const SparseEntry& b) { return a.index < b.index; });
  return out;
}

SparseVector Echelon::reduce(SparseVector v, SparseVector* combo) const {
  // Rows only have entries at or after their pivot, so sweeping v left to
  // right never reintroduces an index that was already cleared.
  std::size_t cursor = 0;
  while (cursor < v.size()) {
    auto found = pivot_row_.find(v[cursor].index);
    if (found == pivot_row_.end()) {
      ++cursor;
      continue;
    }
    const Row& row = rows_[found->second];
    Scalar factor = field_.neg(v[cursor].value);
    std::size_t cleared = v[cursor].index;
    v = axpy(field_, v, factor, row.vec);
    if (combo) *combo = axpy(field_, *combo, factor, row.combo);
    cursor = static_cast<std::size_t>(
        std::upper_bound(v.begin(), v.end(), cleared,
                         [](std::size_t i, const SparseEntry& e) { return i < e.index; }) -
        v.begin());
  }
  return v;
}

Echelon::Insertion Echelon::insert(const SparseVector& v) {
  const std::size_t id = generators_++;
  SparseVector combo;
  if (track_) combo = unit_vector(id);
  SparseVector residual = reduce(v, track_ ? &combo : nullptr);
  if (residual.empty()) {
    // combo = g_id - sum(multipliers * g) and combo represents zero, so
    // g_id = -(combo - g_id).
    SparseVector dependency;
    if (track_) dependency = scale(field_, field_.from_int(-1), axpy(field_, combo, field_.from_int(-1), unit_vector(id)));
    return {id, false, std::move(dependency)};
  }
  Scalar lead_inv = field_.inv(residual.front().value);
  Row row{scale(field_, lead_inv, residual), track_ ? scale(field_, lead_inv, combo) : SparseVector{}};
  pivot_row_.emplace(row.vec.front().index, rows_.size());
  rows_.push_back(std::move(row));
  return {id, true, {}};
}

std::optional<SparseVector> Echelon::decompose(const SparseVector& v) const {
  SparseVector combo;
  SparseVector residual = reduce(v, &combo);
  if (!residual.empty()) return std::nullopt;
  // residual = v + combo_as_vectors = 0, so v = -combo.
  return scale(field_, field_.from_int(-1), combo);
}

bool Echelon::contains(const SparseVector& v) const { return reduce(v, nullptr).empty(); }

std::vector<SparseVector> Echelon::basis() const {
  std::vector<SparseVector> out;
  out.reserve(rows_.size());
  for (const auto& r : rows_) out.push_back(r.vec);
  return out;
}

}  // namespace tcwb::ring
