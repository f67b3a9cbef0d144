#include <memory>
#include <optional>

#include <json.hpp>

#include "bounds/engine.hpp"
#include "bounds/model.hpp"
#include "capi/guard.hpp"
#include "ring/complex.hpp"
#include "ring/graded_ring.hpp"

using namespace tcwb;
using capi::guarded;
using capi::require;

struct tcwb_complex {
  ring::SimplicialComplex complex;
};

struct tcwb_ring {
  ring::GradedRing ring;
};

struct tcwb_bounds_options {
  bounds::Options options;
};

struct tcwb_bounds {
  bounds::Result result;
};

namespace {

ring::FieldTag tag_of(tcwb_field f) {
  switch (f) {
    case TCWB_FIELD_Q: return ring::FieldTag::rational;
    case TCWB_FIELD_F2: return ring::FieldTag::gf2;
  }
  fail(ErrorCode::invalid_argument, "unknown field value");
}

std::size_t node_of(const bounds::Result& r, const char* node) {
  if (node == nullptr) return r.root();
  auto id = r.find(node);
  if (!id) fail(ErrorCode::invalid_argument, std::string("no node for expression '") + node + "'");
  return *id;
}

}  // namespace

extern "C" {

tcwb_status tcwb_complex_parse(const char* text, tcwb_complex** out) {
  return guarded([&] {
    require(text, "text");
    require(out, "out");
    *out = new tcwb_complex{ring::SimplicialComplex::parse(std::string(text))};
  });
}

tcwb_status tcwb_complex_load(const char* path, tcwb_complex** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = new tcwb_complex{ring::SimplicialComplex::load(path)};
  });
}

void tcwb_complex_free(tcwb_complex* c) { delete c; }

tcwb_status tcwb_complex_info(const tcwb_complex* c, size_t* vertices, size_t* dimension) {
  return guarded([&] {
    require(c, "complex");
    if (vertices) *vertices = c->complex.vertex_count();
    if (dimension) *dimension = c->complex.dimension();
  });
}

tcwb_status tcwb_ring_from_complex(const tcwb_complex* c, tcwb_field field, tcwb_ring** out) {
  return guarded([&] {
    require(c, "complex");
    require(out, "out");
    *out = new tcwb_ring{ring::cohomology_ring(c->complex, tag_of(field))};
  });
}

tcwb_status tcwb_ring_from_expr(const char* expr, tcwb_field field, tcwb_ring** out) {
  return guarded([&] {
    require(expr, "expr");
    require(out, "out");
    *out = new tcwb_ring{bounds::model_ring(*bounds::parse_expr(expr), tag_of(field))};
  });
}

void tcwb_ring_free(tcwb_ring* r) { delete r; }

tcwb_status tcwb_ring_total_dim(const tcwb_ring* r, size_t* out) {
  return guarded([&] {
    require(r, "ring");
    require(out, "out");
    *out = r->ring.total_dim();
  });
}

tcwb_status tcwb_ring_cup_length(const tcwb_ring* r, size_t* out) {
  return guarded([&] {
    require(r, "ring");
    require(out, "out");
    *out = ring::cup_length(r->ring);
  });
}

tcwb_status tcwb_ring_zero_divisor_cup_length(const tcwb_ring* r, size_t* out) {
  return guarded([&] {
    require(r, "ring");
    require(out, "out");
    *out = ring::zero_divisor_cup_length(r->ring);
  });
}

tcwb_status tcwb_ring_report(const tcwb_ring* r, size_t zdcl_max_dim, uint64_t seed, char** json) {
  return guarded([&] {
    require(r, "ring");
    require(json, "json");
    const auto& g = r->ring;
    nlohmann::json basis = nlohmann::json::array();
    for (const auto& b : g.basis()) basis.push_back({{"degree", b.degree}, {"label", b.label}});
    const auto axioms = ring::check_ring_axioms(g, seed);
    nlohmann::json j = {{"field", ring::field_name(g.field_tag())},
                        {"total_dim", g.total_dim()},
                        {"dims", g.dims()},
                        {"basis", basis},
                        {"cup_length", ring::cup_length(g)},
                        {"axioms",
                         {{"ok", axioms.ok()},
                          {"exhaustive", axioms.exhaustive},
                          {"checked_tuples", axioms.checked_tuples},
                          {"violations", axioms.violations}}}};
    if (g.total_dim() <= zdcl_max_dim)
      j["zero_divisor_cup_length"] = ring::zero_divisor_cup_length(g);
    else
      j["zero_divisor_cup_length"] = nullptr;
    *json = capi::dup_string(j.dump(2));
  });
}

tcwb_status tcwb_bounds_options_new(tcwb_bounds_options** out) {
  return guarded([&] {
    require(out, "out");
    *out = new tcwb_bounds_options{};
  });
}

void tcwb_bounds_options_free(tcwb_bounds_options* o) { delete o; }

tcwb_status tcwb_bounds_options_set_field(tcwb_bounds_options* o, tcwb_field field) {
  return guarded([&] {
    require(o, "options");
    o->options.fields = {tag_of(field)};
  });
}

tcwb_status tcwb_bounds_options_add_retract(tcwb_bounds_options* o, const char* decl) {
  return guarded([&] {
    require(o, "options");
    require(decl, "decl");
    o->options.declarations.retracts.push_back(bounds::parse_retract(decl));
  });
}

tcwb_status tcwb_bounds_options_add_covering(tcwb_bounds_options* o, const char* decl) {
  return guarded([&] {
    require(o, "options");
    require(decl, "decl");
    o->options.declarations.coverings.push_back(bounds::parse_covering(decl));
  });
}

tcwb_status tcwb_bounds_options_add_quotient_cat(tcwb_bounds_options* o, const char* space, long value) {
  return guarded([&] {
    require(o, "options");
    require(space, "space");
    o->options.rules.add_quotient_cat(space, value);
  });
}

tcwb_status tcwb_bounds_options_disable_rule(tcwb_bounds_options* o, const char* rule) {
  return guarded([&] {
    require(o, "options");
    require(rule, "rule");
    o->options.rules.disable(rule);
  });
}

tcwb_status tcwb_bounds_options_enable_rule(tcwb_bounds_options* o, const char* rule) {
  return guarded([&] {
    require(o, "options");
    require(rule, "rule");
    o->options.rules.enable(rule);
  });
}

tcwb_status tcwb_bounds_derive(const char* expr, const tcwb_bounds_options* options, tcwb_bounds** out) {
  return guarded([&] {
    require(expr, "expr");
    require(out, "out");
    *out = new tcwb_bounds{bounds::derive_bounds(expr, options ? options->options : bounds::Options{})};
  });
}

void tcwb_bounds_free(tcwb_bounds* b) { delete b; }

tcwb_status tcwb_bounds_interval(const tcwb_bounds* b, const char* node, const char* quantity, long* lo, long* hi,
                                 int* hi_bounded) {
  return guarded([&] {
    require(b, "bounds");
    require(quantity, "quantity");
    const auto& iv = b->result.interval(node_of(b->result, node), bounds::parse_quantity(quantity));
    if (lo) *lo = iv.lo;
    if (hi) *hi = iv.hi.value_or(0);
    if (hi_bounded) *hi_bounded = iv.hi.has_value() ? 1 : 0;
  });
}

tcwb_status tcwb_bounds_report(const tcwb_bounds* b, char** json) {
  return guarded([&] {
    require(b, "bounds");
    require(json, "json");
    *json = capi::dup_string(b->result.to_json());
  });
}

tcwb_status tcwb_bounds_explain(const tcwb_bounds* b, const char* node, const char* quantity, const char* side,
                                char** text) {
  return guarded([&] {
    require(b, "bounds");
    require(quantity, "quantity");
    require(side, "side");
    require(text, "text");
    const std::string s(side);
    if (s != "lo" && s != "hi") fail(ErrorCode::invalid_argument, "side must be lo or hi");
    *text = capi::dup_string(b->result.explain(node_of(b->result, node), bounds::parse_quantity(quantity),
                                               s == "lo" ? bounds::Side::lo : bounds::Side::hi));
  });
}

tcwb_status tcwb_monoidal_criterion_applicable(long connectivity, long dim, long tc_lo, int* out) {
  return guarded([&] {
    require(out, "out");
    *out = bounds::monoidal_criterion_applicable(connectivity, dim, tc_lo) ? 1 : 0;
  });
}

}  // extern "C"
