#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace tcwb::bounds {

enum class NodeKind { atom, product, wedge };
enum class AtomKind { sphere, torus, rp2, point, file };

// Parsed space expression. Binary product/wedge nodes; `x` binds tighter than
// `v`, both left-associative.
struct Expr {
  NodeKind kind = NodeKind::atom;
  AtomKind atom = AtomKind::point;
  std::size_t n = 0;  // sphere/torus dimension
  std::string path;   // file atoms
  std::optional<long> conn;
  bool lie = false;
  std::shared_ptr<const Expr> left, right;

  // Canonical text; structurally equal expressions print identically.
  std::string text() const;
};

using ExprPtr = std::shared_ptr<const Expr>;

// Grammar:
//   expr    := term ('v' term)*
//   term    := factor ('x' factor)*
//   factor  := primary ('{' attr (',' attr)* '}')*
//   primary := '(' expr ')' | S<n> | T<n> | RP2 | point | file:<path>
//   attr    := 'lie' | 'conn=' <int>
// Throws Error(parse) with the 1-based character position.
ExprPtr parse_expr(const std::string& text);

ExprPtr make_product(ExprPtr a, ExprPtr b);
ExprPtr make_wedge(ExprPtr a, ExprPtr b);

}  // namespace tcwb::bounds
