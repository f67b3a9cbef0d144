#include "bounds/model.hpp"

#include "ring/complex.hpp"

namespace tcwb::bounds {

ring::GradedRing model_ring(const Expr& e, ring::FieldTag field) {
  switch (e.kind) {
    case NodeKind::product: return ring::tensor_ring(model_ring(*e.left, field), model_ring(*e.right, field));
    case NodeKind::wedge: return ring::wedge_ring(model_ring(*e.left, field), model_ring(*e.right, field));
    case NodeKind::atom: break;
  }
  switch (e.atom) {
    case AtomKind::sphere: return ring::sphere_ring(e.n, field);
    case AtomKind::torus: return ring::torus_ring(e.n, field);
    case AtomKind::rp2: return ring::cohomology_ring(ring::rp2_minimal(), field);
    case AtomKind::file: return ring::cohomology_ring(ring::SimplicialComplex::load(e.path), field);
    case AtomKind::point: break;
  }
  return ring::point_ring(field);
}

}  // namespace tcwb::bounds
