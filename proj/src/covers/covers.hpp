#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace tcwb::covers {

using Set = std::vector<std::size_t>;  // sorted, duplicate-free

// Finite ground set {0..ground-1} with an ordered family of subsets.
struct SetSystem {
  std::size_t ground = 0;
  std::vector<Set> sets;

  // Throws Error(invalid_argument) on out-of-range or unsorted members.
  void validate() const;
  bool covers_ground() const;
  bool contains(std::size_t set, std::size_t element) const;

  // Text format: first non-comment line N, then one set per line as
  // whitespace-separated integers; a line "-" is the empty set.
  static SetSystem parse(std::istream& in);
  static SetSystem parse(const std::string& text);
  static SetSystem load(const std::string& path);
  std::string to_text() const;
};

// Exhaustive bound on C(m,k) subfamilies and on product ground sizes.
inline constexpr std::size_t kEnumerationGuard = 1'000'000;

struct KCoverCheck {
  bool ok = true;
  std::vector<std::size_t> violating;  // a k-subfamily that misses...
  std::optional<std::size_t> missed;   // ...this element
};

// Exhaustive over all k-subfamilies; throws Error(guard) past the guard and
// Error(invalid_argument) if k is 0 or exceeds the set count.
KCoverCheck check_k_cover(const SetSystem& s, std::size_t k);
bool is_k_cover(const SetSystem& s, std::size_t k);

// Smallest k for which s is a k-cover, if s covers the ground at all.
std::optional<std::size_t> minimal_k(const SetSystem& s);

struct Piece {
  std::size_t source = 0;  // index of the original set containing it
  Set elements;
};

struct Extension {
  SetSystem system;
  // pieces[k] for every k; the original sets are a single piece of themselves.
  std::vector<std::vector<Piece>> pieces;
};

// C covers the ground with n+1 sets; returns m+1 sets, each extra one the
// disjoint union of V_i = U_i minus (U_0 u ... u U_{i-1}).
Extension extend_to_k_cover(const SetSystem& c, std::size_t m);

struct SpotCertificate {
  std::vector<std::size_t> point;       // coordinates in each factor
  std::vector<std::size_t> covering_x;  // indices of A-sets containing the first coordinate
  std::size_t witness = 0;              // an index whose product set contains the point
};

struct ProductSystem {
  std::vector<SetSystem> factors;
  std::size_t set_count = 0;
  std::size_t ground_size() const;
  bool contains(std::size_t k, const std::vector<std::size_t>& point) const;
  // First index whose product set contains the point.
  std::optional<std::size_t> first_cover(const std::vector<std::size_t>& point) const;
  // Exhaustive; returns the first uncovered point, if any.
  std::optional<std::vector<std::size_t>> uncovered() const;
  // Product ground enumerated in lexicographic order.
  std::vector<std::size_t> unrank(std::size_t index) const;
};

// A is an (n+1)-cover and B an (m+1)-cover, each with n+m+1 sets. Throws
// Error(verification) naming the violating subfamily otherwise.
ProductSystem product_cover(const SetSystem& a, const SetSystem& b, std::size_t n, std::size_t m);

// Spot certificate following the counting argument for a binary product.
SpotCertificate certify_pair(const ProductSystem& p, std::size_t x, std::size_t y);

// Generalised product: system j a k_j-cover with sum(k_j - 1) + 1 sets.
// Always verified exhaustively; throws Error(verification) on failure.
ProductSystem nary_product_cover(const std::vector<SetSystem>& systems, const std::vector<std::size_t>& strengths);

}  // namespace tcwb::covers
