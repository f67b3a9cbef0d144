#include "bounds/engine.hpp"

#include <algorithm>
#include <functional>
#include <memory>
#include <sstream>

#include <json.hpp>

#include "common/error.hpp"
#include "ring/complex.hpp"
#include "ring/graded_ring.hpp"

namespace tcwb::bounds {

using ring::FieldTag;
using ring::GradedRing;

std::string_view quantity_name(Quantity q) {
  switch (q) {
    case Quantity::cat: return "cat";
    case Quantity::tc: return "TC";
    case Quantity::tcm: return "TCM";
    case Quantity::cuplen: return "cuplen";
    case Quantity::zdcl: return "zdcl";
    case Quantity::dim: return "dim";
    case Quantity::conn: return "conn";
  }
  return "?";
}

Quantity parse_quantity(std::string_view name) {
  for (auto q : kQuantities)
    if (quantity_name(q) == name) return q;
  if (name == "tc") return Quantity::tc;
  if (name == "tcm") return Quantity::tcm;
  fail(ErrorCode::invalid_argument, "unknown quantity '" + std::string(name) + "'");
}

std::string_view side_name(Side s) { return s == Side::lo ? "lo" : "hi"; }

const std::vector<std::string>& RuleSet::known_rules() {
  static const std::vector<std::string> rules{"R1", "R2", "R3", "R4",  "R5",  "R6", "R7",
                                              "R8", "R9", "R10", "R11", "R12", "R13"};
  return rules;
}

RuleSet RuleSet::all() {
  RuleSet r;
  for (const auto& id : known_rules()) r.enabled_.insert(id);
  return r;
}

void RuleSet::enable(const std::string& rule) {
  const auto& known = known_rules();
  if (std::find(known.begin(), known.end(), rule) == known.end())
    fail(ErrorCode::invalid_argument, "'" + rule + "' is not a rule (conjectural statements cannot be enabled)");
  enabled_.insert(rule);
}

void RuleSet::disable(const std::string& rule) {
  const auto& known = known_rules();
  if (std::find(known.begin(), known.end(), rule) == known.end())
    fail(ErrorCode::invalid_argument, "unknown rule '" + rule + "'");
  enabled_.erase(rule);
}

void RuleSet::add_quotient_cat(const std::string& space_expr, long value) {
  if (value < 1) fail(ErrorCode::invalid_argument, "cat of a nonempty space is at least 1");
  quotient_cat_.emplace_back(space_expr, value);
}

namespace {

std::pair<std::string, std::string> split_decl(const std::string& text, const std::string& sep, const char* what) {
  std::string body = text;
  const std::string prefix = std::string(what) + "(";
  if (body.rfind(prefix, 0) == 0 && body.size() > prefix.size() && body.back() == ')')
    body = body.substr(prefix.size(), body.size() - prefix.size() - 1);
  auto at = body.find(sep);
  if (at == std::string::npos || at == 0 || at + sep.size() >= body.size())
    fail(ErrorCode::parse, std::string(what) + " declaration must look like A" + sep + "B: '" + text + "'");
  return {body.substr(0, at), body.substr(at + sep.size())};
}

const char* citation_for(const std::string& rule) {
  static const std::map<std::string, const char*> table{
      {"AX-nonempty", "cat, TC, TC^M of a nonempty space are >= 1"},
      {"AX-dim", "dimension of the model; dim(X x Y) = dim X + dim Y, dim(X v Y) = max"},
      {"AX-conn", "declared connectivity; a product or wedge is min-connected"},
      {"AX-sphere-cover", "S^n is covered by two open caps, each contractible in S^n"},
      {"AX-user", "user-supplied lower bound for cat((X x X)/diagonal)"},
      {"RING", "computed from the cohomology ring"},
      {"R1", "cuplength(X) <= Cat(X) <= dim(X), Cat = cat - 1"},
      {"R2", "Cat(X x Y) <= Cat(X) + Cat(Y)"},
      {"R3", "cat(X v Y) = max{cat X, cat Y}"},
      {"R4", "TC(X) <= TC^M(X) <= TC(X) + 1"},
      {"R5", "TC(G) = TC^M(G) = cat(G) for a connected Lie group G"},
      {"R6", "max{TC(X), TC(Y), cat(X x Y)} <= TC(X v Y)"},
      {"R7", "TC(X v Y) <= TC^M(X v Y) <= TC^M(X) + TC^M(Y) - 1"},
      {"R8", "TC(X) = TC^M(X) for k-connected X with (k+1) TC(X) > dim(X) + 1"},
      {"R9", "TC(X) >= TC(A) for a retract A of X"},
      {"R10", "TC(X) >= zero-divisor cup-length + 1"},
      {"R11", "TC(X x Y) <= TC(X) + TC(Y) - 1"},
      {"R12", "cat((X x X)/diagonal) <= TC^M(X)"},
      {"R13", "cat(B) >= cat(E) for a covering map E -> B"},
  };
  return table.at(rule);
}

std::size_t qi(Quantity q) { return static_cast<std::size_t>(q); }

}  // namespace

std::pair<std::string, std::string> parse_retract(const std::string& text) { return split_decl(text, ">", "retract"); }
std::pair<std::string, std::string> parse_covering(const std::string& text) { return split_decl(text, "->", "cover"); }

bool monoidal_criterion_applicable(long connectivity, long dim, long tc_lo, bool contractible) {
  if (contractible) return true;
  return (connectivity + 1) * tc_lo > dim + 1;
}

bool monoidal_criterion_applicable(const Result& result, std::size_t node, long tc_lo) {
  const auto& n = result.nodes().at(node);
  const auto& dim = result.interval(node, Quantity::dim);
  const auto& conn = result.interval(node, Quantity::conn);
  if (!dim.hi) return false;
  return monoidal_criterion_applicable(conn.lo, *dim.hi, tc_lo, n.contractible);
}

class Engine {
 public:
  Engine(const Options& options) : opt_(options) { res_.fields_ = options.fields; }

  Result run(const std::string& text) {
    if (opt_.fields.empty()) fail(ErrorCode::invalid_argument, "no coefficient field selected");
    res_.root_ = intern(parse_expr(text));
    for (const auto& [space, sub] : opt_.declarations.retracts)
      res_.retracts_.emplace_back(intern(parse_expr(space)), intern(parse_expr(sub)));
    for (const auto& [cover, base] : opt_.declarations.coverings)
      res_.coverings_.emplace_back(intern(parse_expr(cover)), intern(parse_expr(base)));
    for (const auto& [space, value] : opt_.rules.quotient_cat()) quotient_.emplace_back(intern(parse_expr(space)), value);
    // R6 needs cat(X x Y) for every wedge; materialise those products.
    for (std::size_t i = 0; i < res_.nodes_.size(); ++i) {
      if (res_.nodes_[i].kind != NodeKind::wedge) continue;
      const auto& e = res_.nodes_[i].expr;
      const bool existed = res_.by_text_.count(make_product(e->left, e->right)->text()) != 0;
      std::size_t p = intern(make_product(e->left, e->right));
      if (!existed) res_.nodes_[p].aux = true;
      aux_product_[i] = p;
    }
    // Each wedge's auxiliary product is visited before the wedge itself.
    std::vector<bool> placed(res_.nodes_.size(), false);
    for (std::size_t i = 0; i < res_.nodes_.size(); ++i) {
      if (auto it = aux_product_.find(i); it != aux_product_.end() && !placed[it->second]) {
        placed[it->second] = true;
        order_.push_back(it->second);
      }
      if (!placed[i]) {
        placed[i] = true;
        order_.push_back(i);
      }
    }
    res_.intervals_.resize(res_.nodes_.size());
    for (std::size_t i = 0; i < res_.nodes_.size(); ++i) initialise(i);
    propagate();
    return std::move(res_);
  }

 private:
  std::size_t intern(const ExprPtr& e) {
    auto key = e->text();
    if (auto it = res_.by_text_.find(key); it != res_.by_text_.end()) return it->second;
    Node n;
    n.kind = e->kind;
    n.text = key;
    n.expr = e;
    if (e->kind != NodeKind::atom) {
      n.children = {intern(e->left), intern(e->right)};
    }
    n.id = res_.nodes_.size();
    const auto& kids = n.children;
    switch (e->kind) {
      case NodeKind::atom:
        n.lie = e->lie || e->atom == AtomKind::point || e->atom == AtomKind::torus ||
                (e->atom == AtomKind::sphere && (e->n == 1 || e->n == 3));
        n.contractible = e->atom == AtomKind::point;
        break;
      case NodeKind::product:
        n.lie = e->lie || (res_.nodes_[kids[0]].lie && res_.nodes_[kids[1]].lie);
        n.contractible = res_.nodes_[kids[0]].contractible && res_.nodes_[kids[1]].contractible;
        break;
      case NodeKind::wedge:
        n.lie = e->lie;
        n.contractible = res_.nodes_[kids[0]].contractible && res_.nodes_[kids[1]].contractible;
        break;
    }
    res_.nodes_.push_back(n);
    res_.by_text_.emplace(key, n.id);
    return n.id;
  }

  Interval& iv(std::size_t node, Quantity q) { return res_.intervals_[node][qi(q)]; }

  std::vector<std::size_t> certs_of(std::initializer_list<std::optional<std::size_t>> ids) {
    std::vector<std::size_t> out;
    for (const auto& id : ids)
      if (id && std::find(out.begin(), out.end(), *id) == out.end()) out.push_back(*id);
    return out;
  }

  std::size_t add_cert(std::size_t node, Quantity q, Side side, long value, const std::string& rule,
                       std::vector<std::size_t> premises, std::string note = {}) {
    Certificate c;
    c.id = res_.certs_.size();
    c.node = node;
    c.quantity = q;
    c.side = side;
    c.value = value;
    c.rule = rule;
    c.citation = citation_for(rule);
    c.premises = std::move(premises);
    c.note = std::move(note);
    res_.certs_.push_back(std::move(c));
    return res_.certs_.back().id;
  }

  void check_consistent(std::size_t node, Quantity q) {
    const auto& i = iv(node, q);
    if (i.hi && i.lo > *i.hi) {
      std::ostringstream os;
      os << "inconsistent interval for " << quantity_name(q) << "[" << res_.nodes_[node].text << "]: lo " << i.lo
         << " (certificate " << *i.lo_cert << ", " << res_.certs_[*i.lo_cert].rule << ") > hi " << *i.hi
         << " (certificate " << *i.hi_cert << ", " << res_.certs_[*i.hi_cert].rule << ")";
      fail(ErrorCode::inconsistent, os.str());
    }
  }

  bool raise_lo(std::size_t node, Quantity q, long value, const std::string& rule, std::vector<std::size_t> premises,
                std::string note = {}) {
    auto& i = iv(node, q);
    if (value <= i.lo) return false;
    i.lo = value;
    i.lo_cert = add_cert(node, q, Side::lo, value, rule, std::move(premises), std::move(note));
    check_consistent(node, q);
    return true;
  }

  bool lower_hi(std::size_t node, Quantity q, long value, const std::string& rule, std::vector<std::size_t> premises,
                std::string note = {}) {
    auto& i = iv(node, q);
    if (i.hi && value >= *i.hi) return false;
    i.hi = value;
    i.hi_cert = add_cert(node, q, Side::hi, value, rule, std::move(premises), std::move(note));
    check_consistent(node, q);
    return true;
  }

  const GradedRing& ring_of(std::size_t node, FieldTag f) {
    auto key = std::make_pair(node, f);
    if (auto it = rings_.find(key); it != rings_.end()) return *it->second;
    const Node& n = res_.nodes_[node];
    std::unique_ptr<GradedRing> r;
    if (n.kind == NodeKind::product) {
      r = std::make_unique<GradedRing>(ring::tensor_ring(ring_of(n.children[0], f), ring_of(n.children[1], f)));
    } else if (n.kind == NodeKind::wedge) {
      r = std::make_unique<GradedRing>(ring::wedge_ring(ring_of(n.children[0], f), ring_of(n.children[1], f)));
    } else {
      const Expr& e = *n.expr;
      switch (e.atom) {
        case AtomKind::sphere: r = std::make_unique<GradedRing>(ring::sphere_ring(e.n, f)); break;
        case AtomKind::torus: r = std::make_unique<GradedRing>(ring::torus_ring(e.n, f)); break;
        case AtomKind::point: r = std::make_unique<GradedRing>(ring::point_ring(f)); break;
        case AtomKind::rp2: r = std::make_unique<GradedRing>(ring::cohomology_ring(ring::rp2_minimal(), f)); break;
        case AtomKind::file: r = std::make_unique<GradedRing>(ring::cohomology_ring(complex_of(e.path), f)); break;
      }
    }
    return *rings_.emplace(key, std::move(r)).first->second;
  }

  const ring::SimplicialComplex& complex_of(const std::string& path) {
    auto it = complexes_.find(path);
    if (it == complexes_.end())
      it = complexes_.emplace(path, std::make_unique<ring::SimplicialComplex>(ring::SimplicialComplex::load(path))).first;
    return *it->second;
  }

  void initialise(std::size_t id) {
    const Node& n = res_.nodes_[id];
    const Expr& e = *n.expr;
    for (auto q : {Quantity::cat, Quantity::tc, Quantity::tcm}) raise_lo(id, q, 1, "AX-nonempty", {});

    // dim
    if (n.kind == NodeKind::atom) {
      long d = 0;
      std::string note;
      switch (e.atom) {
        case AtomKind::sphere: d = static_cast<long>(e.n); break;
        case AtomKind::torus: d = static_cast<long>(e.n); break;
        case AtomKind::rp2: d = 2; break;
        case AtomKind::point: d = 0; break;
        case AtomKind::file:
          d = static_cast<long>(complex_of(e.path).dimension());
          note = "simplicial complex " + e.path;
          break;
      }
      raise_lo(id, Quantity::dim, d, "AX-dim", {}, note);
      lower_hi(id, Quantity::dim, d, "AX-dim", {}, note);
    } else {
      const auto& a = iv(n.children[0], Quantity::dim);
      const auto& b = iv(n.children[1], Quantity::dim);
      long d = n.kind == NodeKind::product ? a.lo + b.lo : std::max(a.lo, b.lo);
      auto prem = certs_of({a.hi_cert, b.hi_cert});
      raise_lo(id, Quantity::dim, d, "AX-dim", prem);
      lower_hi(id, Quantity::dim, d, "AX-dim", prem);
    }

    // connectivity (a lower bound; contractible children do not constrain it)
    if (n.kind == NodeKind::atom) {
      long k = 0;
      if (e.atom == AtomKind::sphere) k = static_cast<long>(e.n) - 1;
      if (e.conn) k = *e.conn;
      raise_lo(id, Quantity::conn, k, "AX-conn", {}, e.conn ? "declared" : "builtin");
    } else {
      std::optional<long> k;
      std::vector<std::size_t> prem;
      for (auto c : n.children) {
        if (res_.nodes_[c].contractible) continue;
        const auto& ci = iv(c, Quantity::conn);
        if (!k || ci.lo < *k) {
          k = ci.lo;
          prem = certs_of({ci.lo_cert});
        }
      }
      if (e.conn && (!k || *e.conn > *k)) {
        k = *e.conn;
        prem.clear();
      }
      if (k) raise_lo(id, Quantity::conn, *k, "AX-conn", prem, e.conn ? "declared" : "");
    }

    if (n.kind == NodeKind::atom && e.atom == AtomKind::sphere)
      lower_hi(id, Quantity::cat, 2, "AX-sphere-cover", {}, "builtin S" + std::to_string(e.n));

    ring_facts(id);
  }

  void ring_facts(std::size_t id) {
    const Node& n = res_.nodes_[id];
    std::optional<std::pair<std::size_t, FieldTag>> best_cup, best_zd;
    for (auto f : opt_.fields) {
      const GradedRing& r = ring_of(id, f);
      std::size_t c = ring::cup_length(r);
      if (!best_cup || c > best_cup->first) best_cup = std::make_pair(c, f);
      if (r.total_dim() <= opt_.zdcl_max_ring_dim) {
        std::size_t z = ring::zero_divisor_cup_length(r);
        if (!best_zd || z > best_zd->first) best_zd = std::make_pair(z, f);
      }
    }
    const GradedRing& r0 = ring_of(id, best_cup->second);
    std::string trail;
    std::vector<std::size_t> prem;
    if (n.kind == NodeKind::atom) {
      trail = "ring of " + n.text;
    } else {
      trail = std::string(n.kind == NodeKind::product ? "tensor_ring" : "wedge_ring") + "(" +
              res_.nodes_[n.children[0]].text + ", " + res_.nodes_[n.children[1]].text + ")";
      prem = certs_of({iv(n.children[0], Quantity::cuplen).hi_cert, iv(n.children[1], Quantity::cuplen).hi_cert});
    }
    std::ostringstream note;
    note << "cup-length over " << ring::field_name(best_cup->second) << ", " << trail << ", dims [";
    for (std::size_t d = 0; d < r0.dims().size(); ++d) note << (d ? "," : "") << r0.dims()[d];
    note << "]";
    const long c = static_cast<long>(best_cup->first);
    iv(id, Quantity::cuplen).lo = c;
    iv(id, Quantity::cuplen).lo_cert = add_cert(id, Quantity::cuplen, Side::lo, c, "RING", prem, note.str());
    lower_hi(id, Quantity::cuplen, c, "RING", prem, note.str());
    if (best_zd) {
      const long z = static_cast<long>(best_zd->first);
      std::string zn = "zero-divisor cup-length over " + std::string(ring::field_name(best_zd->second)) + ", " + trail;
      iv(id, Quantity::zdcl).lo = z;
      iv(id, Quantity::zdcl).lo_cert = add_cert(id, Quantity::zdcl, Side::lo, z, "RING", {}, zn);
      lower_hi(id, Quantity::zdcl, z, "RING", {}, zn);
    }
  }

  bool apply_rules(std::size_t id) {
    const RuleSet& rules = opt_.rules;
    const Node& n = res_.nodes_[id];
    bool changed = false;
    auto on = [&](const char* r) { return rules.enabled(r); };
    const bool is_product = n.kind == NodeKind::product;
    const bool is_wedge = n.kind == NodeKind::wedge;
    const std::size_t L = is_product || is_wedge ? n.children[0] : 0;
    const std::size_t R = is_product || is_wedge ? n.children[1] : 0;

    if (on("R1")) {
      const auto& cl = iv(id, Quantity::cuplen);
      changed |= raise_lo(id, Quantity::cat, cl.lo + 1, "R1", certs_of({cl.lo_cert}));
      const auto& d = iv(id, Quantity::dim);
      if (d.hi) changed |= lower_hi(id, Quantity::cat, *d.hi + 1, "R1", certs_of({d.hi_cert}));
    }
    if (on("R2") && is_product) {
      const auto& a = iv(L, Quantity::cat);
      const auto& b = iv(R, Quantity::cat);
      if (a.hi && b.hi) changed |= lower_hi(id, Quantity::cat, *a.hi + *b.hi - 1, "R2", certs_of({a.hi_cert, b.hi_cert}));
    }
    if (on("R3") && is_wedge) {
      const auto& a = iv(L, Quantity::cat);
      const auto& b = iv(R, Quantity::cat);
      const auto& big = a.lo >= b.lo ? a : b;
      changed |= raise_lo(id, Quantity::cat, big.lo, "R3", certs_of({big.lo_cert}));
      if (a.hi && b.hi)
        changed |= lower_hi(id, Quantity::cat, std::max(*a.hi, *b.hi), "R3", certs_of({a.hi_cert, b.hi_cert}));
    }
    if (on("R4")) {
      const auto tc = iv(id, Quantity::tc);
      const auto tcm = iv(id, Quantity::tcm);
      changed |= raise_lo(id, Quantity::tcm, tc.lo, "R4", certs_of({tc.lo_cert}));
      if (tcm.hi) changed |= lower_hi(id, Quantity::tc, *tcm.hi, "R4", certs_of({tcm.hi_cert}));
      if (tc.hi) changed |= lower_hi(id, Quantity::tcm, *tc.hi + 1, "R4", certs_of({tc.hi_cert}));
      changed |= raise_lo(id, Quantity::tc, tcm.lo - 1, "R4", certs_of({tcm.lo_cert}));
    }
    if (on("R5") && n.lie) {
      const std::string note = n.expr->lie ? "declared Lie group" : "Lie group";
      for (auto from : {Quantity::cat, Quantity::tc, Quantity::tcm})
        for (auto to : {Quantity::cat, Quantity::tc, Quantity::tcm}) {
          if (from == to) continue;
          const auto src = iv(id, from);
          changed |= raise_lo(id, to, src.lo, "R5", certs_of({src.lo_cert}), note);
          if (src.hi) changed |= lower_hi(id, to, *src.hi, "R5", certs_of({src.hi_cert}), note);
        }
    }
    if (on("R6") && is_wedge) {
      for (auto [src, q] : {std::pair{L, Quantity::tc}, std::pair{R, Quantity::tc}, std::pair{aux_product_.at(id), Quantity::cat}}) {
        const auto s = iv(src, q);
        changed |= raise_lo(id, Quantity::tc, s.lo, "R6", certs_of({s.lo_cert}));
      }
    }
    if (on("R7") && is_wedge) {
      const auto& a = iv(L, Quantity::tcm);
      const auto& b = iv(R, Quantity::tcm);
      if (a.hi && b.hi) {
        const long v = *a.hi + *b.hi - 1;
        changed |= lower_hi(id, Quantity::tcm, v, "R7", certs_of({a.hi_cert, b.hi_cert}));
        changed |= lower_hi(id, Quantity::tc, v, "R7", certs_of({a.hi_cert, b.hi_cert}));
      }
    }
    if (on("R8")) {
      const auto tc = iv(id, Quantity::tc);
      const auto tcm = iv(id, Quantity::tcm);
      const auto& d = iv(id, Quantity::dim);
      const auto& k = iv(id, Quantity::conn);
      if (d.hi && monoidal_criterion_applicable(k.lo, *d.hi, tc.lo, n.contractible)) {
        auto prem = certs_of({tc.lo_cert, d.hi_cert, k.lo_cert});
        if (tc.hi) {
          auto p = prem;
          if (tc.hi_cert) p.push_back(*tc.hi_cert);
          changed |= lower_hi(id, Quantity::tcm, *tc.hi, "R8", p);
        }
        auto p = prem;
        if (tcm.lo_cert) p.push_back(*tcm.lo_cert);
        changed |= raise_lo(id, Quantity::tc, tcm.lo, "R8", p);
      }
    }
    if (on("R9")) {
      auto apply = [&](std::size_t sub, const std::string& note) {
        const auto s = iv(sub, Quantity::tc);
        changed |= raise_lo(id, Quantity::tc, s.lo, "R9", certs_of({s.lo_cert}), note);
      };
      if (is_wedge) {
        apply(L, "wedge summand " + res_.nodes_[L].text);
        apply(R, "wedge summand " + res_.nodes_[R].text);
      }
      for (const auto& [space, sub] : res_.retracts_)
        if (space == id) apply(sub, "declared retract " + res_.nodes_[sub].text);
    }
    if (on("R10")) {
      const auto& z = iv(id, Quantity::zdcl);
      if (z.lo_cert) changed |= raise_lo(id, Quantity::tc, z.lo + 1, "R10", certs_of({z.lo_cert}));
    }
    if (on("R11") && is_product) {
      const auto& a = iv(L, Quantity::tc);
      const auto& b = iv(R, Quantity::tc);
      if (a.hi && b.hi) changed |= lower_hi(id, Quantity::tc, *a.hi + *b.hi - 1, "R11", certs_of({a.hi_cert, b.hi_cert}));
    }
    if (on("R12")) {
      for (auto& [node, value] : quotient_)
        if (node == id) {
          auto& fact = quotient_certs_[node];
          if (!fact) fact = add_cert(id, Quantity::tcm, Side::lo, value, "AX-user", {}, "cat((X x X)/diagonal) >= " + std::to_string(value));
          changed |= raise_lo(id, Quantity::tcm, value, "R12", {*fact});
        }
    }
    if (on("R13")) {
      for (const auto& [cover, base] : res_.coverings_) {
        if (base == id) {
          const auto c = iv(cover, Quantity::cat);
          changed |= raise_lo(id, Quantity::cat, c.lo, "R13", certs_of({c.lo_cert}), "covered by " + res_.nodes_[cover].text);
        }
        if (cover == id) {
          const auto b = iv(base, Quantity::cat);
          if (b.hi) changed |= lower_hi(id, Quantity::cat, *b.hi, "R13", certs_of({b.hi_cert}), "covers " + res_.nodes_[base].text);
        }
      }
    }
    return changed;
  }

  void propagate() {
    bool changed = true;
    while (changed) {
      if (res_.rounds_ >= opt_.max_rounds) fail(ErrorCode::internal, "bound propagation did not converge");
      ++res_.rounds_;
      changed = false;
      for (auto i : order_) changed |= apply_rules(i);
    }
  }

  const Options& opt_;
  Result res_;
  std::map<std::size_t, std::size_t> aux_product_;
  std::vector<std::size_t> order_;
  std::map<std::pair<std::size_t, FieldTag>, std::unique_ptr<GradedRing>> rings_;
  std::map<std::string, std::unique_ptr<ring::SimplicialComplex>> complexes_;
  std::vector<std::pair<std::size_t, long>> quotient_;
  std::map<std::size_t, std::optional<std::size_t>> quotient_certs_;
};

Result derive_bounds(const std::string& expr, const Options& options) { return Engine(options).run(expr); }

const Interval& Result::interval(std::size_t node, Quantity q) const {
  if (node >= intervals_.size()) fail(ErrorCode::invalid_argument, "unknown node " + std::to_string(node));
  return intervals_[node][qi(q)];
}

std::optional<std::size_t> Result::find(const std::string& expr_text) const {
  auto it = by_text_.find(parse_expr(expr_text)->text());
  if (it == by_text_.end()) return std::nullopt;
  return it->second;
}

std::optional<long> Result::wedge_conjecture_annotation(std::size_t node) const {
  const Node& n = nodes_.at(node);
  if (n.kind != NodeKind::wedge) return std::nullopt;
  const auto& tx = interval(n.children[0], Quantity::tc);
  const auto& ty = interval(n.children[1], Quantity::tc);
  const auto& cx = interval(n.children[0], Quantity::cat);
  const auto& cy = interval(n.children[1], Quantity::cat);
  if (!tx.hi || !ty.hi || !cx.hi || !cy.hi) return std::nullopt;
  return std::max({*tx.hi, *ty.hi, *cx.hi + *cy.hi - 1});
}

std::string Result::explain(std::size_t node, Quantity q, Side side) const {
  const Interval& i = interval(node, q);
  auto root = side == Side::lo ? i.lo_cert : i.hi_cert;
  std::ostringstream os;
  if (!root) {
    os << quantity_name(q) << "[" << nodes_[node].text << "] " << (side == Side::lo ? ">= " : "<= ")
       << (side == Side::lo ? std::to_string(i.lo) : std::string("inf")) << "  (no certificate: trivial bound)\n";
    return os.str();
  }
  std::function<void(std::size_t, std::size_t)> walk = [&](std::size_t id, std::size_t depth) {
    const Certificate& c = certs_[id];
    os << std::string(2 * depth, ' ') << quantity_name(c.quantity) << "[" << nodes_[c.node].text << "] "
       << (c.side == Side::lo ? ">= " : "<= ") << c.value << "  " << c.rule << ": " << c.citation;
    if (!c.note.empty()) os << "  {" << c.note << "}";
    os << "  #" << c.id << "\n";
    for (auto p : c.premises) walk(p, depth + 1);
  };
  walk(*root, 0);
  return os.str();
}

std::string Result::to_json() const {
  using nlohmann::json;
  auto bound = [](const std::optional<long>& v) { return v ? json(*v) : json(nullptr); };
  auto cert = [](const std::optional<std::size_t>& v) { return v ? json(*v) : json(nullptr); };
  json j;
  j["root"] = root_;
  j["root_expr"] = nodes_[root_].text;
  json fields = json::array();
  for (auto f : fields_) fields.push_back(std::string(ring::field_name(f)));
  j["fields"] = fields;
  j["rounds"] = rounds_;
  json nodes = json::array();
  for (const auto& n : nodes_) {
    json jn;
    jn["id"] = n.id;
    jn["expr"] = n.text;
    jn["kind"] = n.kind == NodeKind::atom ? "atom" : n.kind == NodeKind::product ? "product" : "wedge";
    jn["children"] = n.children;
    jn["aux"] = n.aux;
    jn["lie"] = n.lie;
    json qs;
    for (auto q : kQuantities) {
      const auto& i = interval(n.id, q);
      qs[std::string(quantity_name(q))] = {{"lo", i.lo}, {"hi", bound(i.hi)}, {"lo_cert", cert(i.lo_cert)}, {"hi_cert", cert(i.hi_cert)}};
    }
    jn["quantities"] = qs;
    if (auto f = wedge_conjecture_annotation(n.id))
      jn["annotations"] = {{"wedge_conjecture_tc_hi", *f}, {"status", "conjectural; not used in any certificate"}};
    nodes.push_back(jn);
  }
  j["nodes"] = nodes;
  json cj = json::object();
  for (const auto& c : certs_) {
    cj[std::to_string(c.id)] = {{"node", c.node},
                                {"quantity", std::string(quantity_name(c.quantity))},
                                {"side", std::string(side_name(c.side))},
                                {"value", c.value},
                                {"rule", c.rule},
                                {"citation", c.citation},
                                {"premises", c.premises},
                                {"note", c.note}};
  }
  j["certificates"] = cj;
  return j.dump(2);
}

}  // namespace tcwb::bounds
