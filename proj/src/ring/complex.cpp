#include "ring/complex.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>

#include "common/error.hpp"

namespace tcwb::ring {

namespace {

constexpr std::size_t kMaxSimplexDim = 20;

std::string show(const Simplex& s) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < s.size(); ++i) os << (i ? " " : "") << s[i];
  os << ']';
  return os.str();
}

}  // namespace

SimplicialComplex::SimplicialComplex(std::size_t vertex_count, std::vector<Simplex> maximal_simplices)
    : vertex_count_(vertex_count), maximal_(std::move(maximal_simplices)) {
  if (maximal_.empty()) fail(ErrorCode::invalid_argument, "complex has no simplices");
  std::size_t top = 0;
  for (const auto& s : maximal_) {
    if (s.empty()) fail(ErrorCode::invalid_argument, "empty simplex");
    if (s.size() > kMaxSimplexDim + 1) fail(ErrorCode::guard, "simplex dimension above 20: " + show(s));
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] >= vertex_count_) fail(ErrorCode::invalid_argument, "vertex index out of range in " + show(s));
      if (i > 0 && s[i - 1] >= s[i]) fail(ErrorCode::invalid_argument, "simplex not strictly increasing: " + show(s));
    }
    top = std::max(top, s.size() - 1);
  }
  for (std::size_t i = 0; i < maximal_.size(); ++i)
    for (std::size_t j = 0; j < maximal_.size(); ++j) {
      if (i == j) continue;
      const auto& a = maximal_[i];
      const auto& b = maximal_[j];
      if (a.size() <= b.size() && std::includes(b.begin(), b.end(), a.begin(), a.end()) && (a.size() < b.size() || i > j))
        fail(ErrorCode::invalid_argument, "simplex " + show(a) + " is a face of " + show(b));
    }

  std::vector<std::set<Simplex>> closure(top + 1);
  for (const auto& s : maximal_) {
    const std::size_t k = s.size();
    for (std::size_t mask = 1; mask < (std::size_t{1} << k); ++mask) {
      Simplex face;
      for (std::size_t b = 0; b < k; ++b)
        if (mask & (std::size_t{1} << b)) face.push_back(s[b]);
      closure[face.size() - 1].insert(std::move(face));
    }
  }
  faces_.resize(top + 1);
  index_.resize(top + 1);
  for (std::size_t d = 0; d <= top; ++d) {
    faces_[d].assign(closure[d].begin(), closure[d].end());
    for (std::size_t i = 0; i < faces_[d].size(); ++i) index_[d].emplace(faces_[d][i], i);
  }
}

SimplicialComplex SimplicialComplex::parse(std::istream& in) {
  std::vector<Simplex> simplices;
  std::size_t max_index = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    Simplex s;
    std::string tok;
    while (ls >> tok) {
      if (tok.find_first_not_of("0123456789") != std::string::npos)
        fail(ErrorCode::parse, "line " + std::to_string(line_no) + ": not a nonnegative integer: '" + tok + "'");
      s.push_back(std::stoul(tok));
      max_index = std::max(max_index, s.back());
    }
    simplices.push_back(std::move(s));
  }
  if (simplices.empty()) fail(ErrorCode::parse, "complex file contains no simplices");
  return SimplicialComplex(max_index + 1, std::move(simplices));
}

SimplicialComplex SimplicialComplex::parse(const std::string& text) {
  std::istringstream in(text);
  return parse(in);
}

SimplicialComplex SimplicialComplex::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::io, "cannot open complex file '" + path + "'");
  return parse(in);
}

const std::vector<Simplex>& SimplicialComplex::simplices(std::size_t d) const {
  static const std::vector<Simplex> empty;
  return d < faces_.size() ? faces_[d] : empty;
}

std::size_t SimplicialComplex::index_of(const Simplex& s) const {
  if (s.empty() || s.size() > faces_.size()) fail(ErrorCode::invalid_argument, "not a face: " + show(s));
  const auto& idx = index_[s.size() - 1];
  auto it = idx.find(s);
  if (it == idx.end()) fail(ErrorCode::invalid_argument, "not a face: " + show(s));
  return it->second;
}

SimplicialComplex simplex_boundary(std::size_t n) {
  std::vector<Simplex> facets;
  for (std::size_t skip = 0; skip <= n + 1; ++skip) {
    Simplex s;
    for (std::size_t v = 0; v <= n + 1; ++v)
      if (v != skip) s.push_back(v);
    facets.push_back(std::move(s));
  }
  return SimplicialComplex(n + 2, std::move(facets));
}

SimplicialComplex rp2_minimal() {
  return SimplicialComplex(6, {{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 5}, {0, 1, 5},
                               {1, 2, 4}, {2, 3, 5}, {1, 3, 4}, {2, 4, 5}, {1, 3, 5}});
}

SimplicialComplex torus_minimal() {
  std::vector<Simplex> facets;
  for (std::size_t i = 0; i < 7; ++i) {
    for (std::size_t step : {1, 2}) {
      Simplex s{i, (i + step) % 7, (i + 3) % 7};
      std::sort(s.begin(), s.end());
      facets.push_back(s);
    }
  }
  return SimplicialComplex(7, std::move(facets));
}

}  // namespace tcwb::ring
