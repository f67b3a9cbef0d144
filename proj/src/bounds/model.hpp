#pragma once

#include "bounds/expr.hpp"
#include "ring/graded_ring.hpp"

namespace tcwb::bounds {

// Cohomology ring of an expression: Kunneth for products, reduced sum for
// wedges, simplicial cohomology for RP2 and file atoms.
ring::GradedRing model_ring(const Expr& e, ring::FieldTag field);

}  // namespace tcwb::bounds
