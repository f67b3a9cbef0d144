#include "ring/field.hpp"

#include "common/error.hpp"

namespace tcwb::ring {

std::string_view field_name(FieldTag tag) { return tag == FieldTag::gf2 ? "GF2" : "Rational"; }

FieldTag parse_field(std::string_view text) {
  if (text == "q" || text == "Q" || text == "rational" || text == "Rational") return FieldTag::rational;
  if (text == "f2" || text == "F2" || text == "gf2" || text == "GF2") return FieldTag::gf2;
  fail(ErrorCode::invalid_argument, "unknown field '" + std::string(text) + "' (expected q or f2)");
}

Scalar Field::reduce(const Scalar& x) const {
  if (tag_ == FieldTag::rational) return x;
  if (x.get_den() != 1) fail(ErrorCode::internal, "non-integral value in GF2 arithmetic");
  return mpz_odd_p(x.get_num_mpz_t()) ? Scalar(1) : Scalar(0);
}

Scalar Field::inv(const Scalar& a) const {
  if (sgn(a) == 0) fail(ErrorCode::internal, "division by zero");
  if (tag_ == FieldTag::gf2) return Scalar(1);
  Scalar r = 1 / a;
  r.canonicalize();
  return r;
}

}  // namespace tcwb::ring
