#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bounds/expr.hpp"
#include "ring/field.hpp"

namespace tcwb::bounds {

// Unreduced conventions throughout: cat(point) = TC(point) = 1.
enum class Quantity { cat, tc, tcm, cuplen, zdcl, dim, conn };
inline constexpr std::array<Quantity, 7> kQuantities{Quantity::cat,    Quantity::tc,  Quantity::tcm, Quantity::cuplen,
                                                     Quantity::zdcl,   Quantity::dim, Quantity::conn};
std::string_view quantity_name(Quantity q);
Quantity parse_quantity(std::string_view name);

enum class Side { lo, hi };
std::string_view side_name(Side s);

struct Interval {
  long lo = 0;
  std::optional<long> hi;  // nullopt = unbounded
  std::optional<std::size_t> lo_cert;
  std::optional<std::size_t> hi_cert;

  bool is_point() const { return hi && *hi == lo; }
};

struct Certificate {
  std::size_t id = 0;
  std::size_t node = 0;
  Quantity quantity = Quantity::cat;
  Side side = Side::lo;
  long value = 0;
  std::string rule;
  std::string citation;
  std::vector<std::size_t> premises;
  std::string note;

  bool is_axiom() const { return rule.rfind("AX-", 0) == 0 || rule == "RING"; }
};

// Rule identifiers R1..R13. Conjectural statements are not rules and are
// rejected by enable().
class RuleSet {
 public:
  static RuleSet all();
  static const std::vector<std::string>& known_rules();

  void enable(const std::string& rule);
  void disable(const std::string& rule);
  bool enabled(const std::string& rule) const { return enabled_.count(rule) != 0; }
  const std::set<std::string>& enabled_rules() const { return enabled_; }

  // R12 input: a known lower bound for cat((X x X)/diagonal), keyed by X.
  void add_quotient_cat(const std::string& space_expr, long value);
  const std::vector<std::pair<std::string, long>>& quotient_cat() const { return quotient_cat_; }

 private:
  std::set<std::string> enabled_;
  std::vector<std::pair<std::string, long>> quotient_cat_;
};

struct Declarations {
  std::vector<std::pair<std::string, std::string>> retracts;   // (space, retract of it)
  std::vector<std::pair<std::string, std::string>> coverings;  // (covering space, base)
};

// Parses "A>B" (B is a retract of A) and "A->B" (A covers B).
std::pair<std::string, std::string> parse_retract(const std::string& text);
std::pair<std::string, std::string> parse_covering(const std::string& text);

struct Options {
  std::vector<ring::FieldTag> fields{ring::FieldTag::rational, ring::FieldTag::gf2};
  RuleSet rules = RuleSet::all();
  Declarations declarations;
  // Zero-divisor cup-length works in the tensor square; skipped above this
  // ring dimension.
  std::size_t zdcl_max_ring_dim = 40;
  std::size_t max_rounds = 10000;
};

struct Node {
  std::size_t id = 0;
  NodeKind kind = NodeKind::atom;
  std::string text;
  std::vector<std::size_t> children;
  bool aux = false;
  bool lie = false;
  bool contractible = false;
  ExprPtr expr;
};

class Result {
 public:
  const std::vector<Node>& nodes() const { return nodes_; }
  std::size_t root() const { return root_; }
  const Interval& interval(std::size_t node, Quantity q) const;
  // Looks a node up by any expression text that canonicalises to it.
  std::optional<std::size_t> find(const std::string& expr_text) const;
  const std::vector<Certificate>& certificates() const { return certs_; }
  std::size_t rounds() const { return rounds_; }

  // Annotation only: the conjectured wedge bound
  // max{TC X, TC Y, cat X + cat Y - 1}; never used as a certificate.
  std::optional<long> wedge_conjecture_annotation(std::size_t node) const;

  std::string explain(std::size_t node, Quantity q, Side side) const;
  std::string to_json() const;

 private:
  friend class Engine;
  std::vector<Node> nodes_;
  std::map<std::string, std::size_t> by_text_;
  std::vector<std::array<Interval, kQuantities.size()>> intervals_;
  std::vector<Certificate> certs_;
  std::vector<ring::FieldTag> fields_;
  std::vector<std::pair<std::size_t, std::size_t>> retracts_;
  std::vector<std::pair<std::size_t, std::size_t>> coverings_;
  std::size_t root_ = 0;
  std::size_t rounds_ = 0;
};

// Throws Error(inconsistent) when a rule would push lo above hi; the message
// names both certificates.
Result derive_bounds(const std::string& expr, const Options& options = {});

// (k+1) * tc_lo > dim + 1, or the space is contractible.
bool monoidal_criterion_applicable(long connectivity, long dim, long tc_lo, bool contractible = false);
bool monoidal_criterion_applicable(const Result& result, std::size_t node, long tc_lo);

}  // namespace tcwb::bounds
