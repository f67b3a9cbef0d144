#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace tcwb::ring {

using Simplex = std::vector<std::size_t>;

// Finite simplicial complex on the vertex set {0..vertex_count-1}, described by
// its maximal simplices. Vertex order is global and drives the cup product.
class SimplicialComplex {
 public:
  // Throws Error(invalid_argument) when an index is out of range, a simplex is
  // not strictly increasing, or one maximal simplex is a face of another.
  SimplicialComplex(std::size_t vertex_count, std::vector<Simplex> maximal_simplices);

  // Text format: one maximal simplex per line, whitespace-separated vertex
  // indices, '#' comment lines; vertex_count = 1 + max index.
  static SimplicialComplex parse(std::istream& in);
  static SimplicialComplex parse(const std::string& text);
  static SimplicialComplex load(const std::string& path);

  std::size_t vertex_count() const { return vertex_count_; }
  const std::vector<Simplex>& maximal_simplices() const { return maximal_; }
  std::size_t dimension() const { return faces_.size() - 1; }

  // All d-simplices in lexicographic order.
  const std::vector<Simplex>& simplices(std::size_t d) const;
  std::size_t count(std::size_t d) const { return d < faces_.size() ? faces_[d].size() : 0; }
  // Position of s in simplices(s.size()-1); throws if s is not a face.
  std::size_t index_of(const Simplex& s) const;

 private:
  std::size_t vertex_count_;
  std::vector<Simplex> maximal_;
  std::vector<std::vector<Simplex>> faces_;
  std::vector<std::map<Simplex, std::size_t>> index_;
};

// Boundary of the (n+1)-simplex: a triangulated n-sphere.
SimplicialComplex simplex_boundary(std::size_t n);
// Six-vertex triangulation of the real projective plane.
SimplicialComplex rp2_minimal();
// Seven-vertex (Moebius) torus.
SimplicialComplex torus_minimal();

}  // namespace tcwb::ring
