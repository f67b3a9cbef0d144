#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace tcwb::ring {

enum class FieldTag : std::uint8_t { rational, gf2 };

std::string_view field_name(FieldTag tag);
// Accepts "q", "Q", "rational", "f2", "F2", "gf2", "GF2".
FieldTag parse_field(std::string_view text);

// Exact scalar. Rational values are kept canonical by GMP (lowest terms,
// positive denominator); GF2 values are the integers 0 and 1.
using Scalar = mpq_class;

class Field {
 public:
  constexpr explicit Field(FieldTag tag) : tag_(tag) {}

  constexpr FieldTag tag() const { return tag_; }
  bool operator==(const Field&) const = default;

  Scalar reduce(const Scalar& x) const;
  Scalar add(const Scalar& a, const Scalar& b) const { return reduce(a + b); }
  Scalar sub(const Scalar& a, const Scalar& b) const { return reduce(a - b); }
  Scalar mul(const Scalar& a, const Scalar& b) const { return reduce(a * b); }
  Scalar neg(const Scalar& a) const { return reduce(-a); }
  // Precondition: a != 0.
  Scalar inv(const Scalar& a) const;
  Scalar from_int(long v) const { return reduce(Scalar(v)); }

 private:
  FieldTag tag_;
};

}  // namespace tcwb::ring
