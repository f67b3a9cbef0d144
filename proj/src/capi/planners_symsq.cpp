#include <memory>

#include <json.hpp>

#include "symsq/symsq.hpp"
#include "capi/guard.hpp"
#include "planners/planner.hpp"

using namespace tcwb;
using capi::guarded;
using capi::require;
using nlohmann::json;

struct tcwb_planner {
  std::unique_ptr<planners::MotionPlanner> planner;
};

namespace {

json point_json(const planners::Point& p) { return {{"side", p.side}, {"coords", p.c}}; }

json ak_part(const json& full, const std::string& part, bool& passed) {
  const auto num = [&](const char* k) { return full.at(k).get<double>(); };
  if (part == "roundtrip") {
    passed = num("roundtrip_err") < 1e-8 && num("pair_roundtrip_err") < 1e-8 && num("degenerate_err") < 1e-6;
    return {{"roundtrip_err", full["roundtrip_err"]},
            {"pair_roundtrip_err", full["pair_roundtrip_err"]},
            {"degenerate_err", full["degenerate_err"]},
            {"degenerate_cases", full["degenerate_cases"]},
            {"thresholds", {{"random", 1e-8}, {"degenerate", 1e-6}}}};
  }
  if (part == "equivariance") {
    passed = num("equivariance_err") < 1e-10 && num("involution_err") < 1e-12 &&
             full["fixed_mismatches"].get<std::size_t>() == 0 && num("contraction_equivariance_err") < 1e-10;
    return {{"equivariance_err", full["equivariance_err"]},
            {"involution_err", full["involution_err"]},
            {"fixed_mismatches", full["fixed_mismatches"]},
            {"contraction_equivariance_err", full["contraction_equivariance_err"]},
            {"thresholds", {{"equivariance", 1e-10}, {"involution", 1e-12}}}};
  }
  if (part == "cover") {
    const auto& c = full["charts"];
    passed = c["unclassified"].get<std::size_t>() == 0 &&
             c["U"].get<std::size_t>() + c["F"].get<std::size_t>() == full["samples"].get<std::size_t>() &&
             num("contraction_start_err") < 1e-9 && num("contraction_end_err") < 1e-9;
    return {{"charts", c},
            {"contraction_start_err", full["contraction_start_err"]},
            {"contraction_end_err", full["contraction_end_err"]},
            {"neighbourhood", full["neighbourhood"]},
            {"thresholds", {{"contraction", 1e-9}}}};
  }
  fail(ErrorCode::invalid_argument, "unknown check '" + part + "' (roundtrip, equivariance, cover, all)");
}

}  // namespace

extern "C" {

void tcwb_verify_config_default(tcwb_verify_config* c) {
  if (c == nullptr) return;
  const planners::SamplerConfig d;
  c->random_pairs = d.random_pairs;
  c->seed = d.seed;
  c->grid = 0;
  c->pairs_file = nullptr;
  c->diagonal = d.diagonal;
  c->continuity_pairs = d.continuity_pairs;
  c->tol = d.tol;
}

tcwb_status tcwb_planner_create(const char* space, tcwb_planner** out) {
  return guarded([&] {
    require(space, "space");
    require(out, "out");
    auto p = std::make_unique<planners::MotionPlanner>(planners::planner_for(planners::parse_space(space)));
    *out = new tcwb_planner{std::move(p)};
  });
}

void tcwb_planner_free(tcwb_planner* p) { delete p; }

tcwb_status tcwb_planner_pieces(const tcwb_planner* p, size_t* out) {
  return guarded([&] {
    require(p, "planner");
    require(out, "out");
    *out = p->planner->pieces();
  });
}

tcwb_status tcwb_planner_describe(const tcwb_planner* p, char** json_out) {
  return guarded([&] {
    require(p, "planner");
    require(json_out, "json");
    const auto& mp = *p->planner;
    json regions = json::array();
    for (const auto& r : mp.regions()) regions.push_back(r.name);
    json j = {{"name", mp.name()},
              {"space", mp.space().name()},
              {"pieces", mp.pieces()},
              {"reserved", mp.reserved()},
              {"regions", regions}};
    *json_out = capi::dup_string(j.dump(2));
  });
}

tcwb_status tcwb_planner_plan(const tcwb_planner* p, const char* pair, size_t samples, char** json_out) {
  return guarded([&] {
    require(p, "planner");
    require(pair, "pair");
    require(json_out, "json");
    if (samples == 0) fail(ErrorCode::invalid_argument, "samples must be positive");
    const auto& mp = *p->planner;
    const auto pairs = planners::parse_pairs(mp.space(), pair);
    if (pairs.size() != 1) fail(ErrorCode::invalid_argument, "expected exactly one pair");
    const auto& [x, y] = pairs.front();
    const auto plan = mp.plan(x, y);
    json path = json::array();
    for (std::size_t i = 0; i <= samples; ++i) {
      const double t = static_cast<double>(i) / static_cast<double>(samples);
      path.push_back({{"t", t}, {"point", point_json(plan.path(t))}});
    }
    json j = {{"from", point_json(x)},
              {"to", point_json(y)},
              {"region", plan.region},
              {"region_name", mp.regions()[plan.region].name},
              {"start_err", mp.space().distance(plan.path(0), x)},
              {"end_err", mp.space().distance(plan.path(1), y)},
              {"path", path}};
    *json_out = capi::dup_string(j.dump(2));
  });
}

tcwb_status tcwb_planner_verify(const tcwb_planner* p, const tcwb_verify_config* config, int* passed,
                                char** json_out) {
  return guarded([&] {
    require(p, "planner");
    require(passed, "passed");
    require(json_out, "json");
    tcwb_verify_config c;
    tcwb_verify_config_default(&c);
    if (config) c = *config;
    planners::SamplerConfig sc;
    sc.random_pairs = c.random_pairs;
    sc.seed = c.seed;
    sc.grid = c.grid;
    sc.diagonal = c.diagonal;
    sc.continuity_pairs = c.continuity_pairs;
    sc.tol = c.tol;
    if (c.pairs_file) sc.pairs = planners::load_pairs(p->planner->space(), c.pairs_file);
    const auto rep = planners::verify_planner(*p->planner, sc);
    *passed = rep.passed() ? 1 : 0;
    *json_out = capi::dup_string(rep.to_json());
  });
}

tcwb_status tcwb_ak_verify(const char* part, size_t samples, uint64_t seed, int* passed, char** json_out) {
  return guarded([&] {
    require(part, "part");
    require(passed, "passed");
    require(json_out, "json");
    if (samples == 0) fail(ErrorCode::invalid_argument, "samples must be positive");
    const auto rep = symsq::verify_symsq(samples, seed);
    const json full = json::parse(rep.to_json());
    const std::string which(part);
    json out;
    bool ok = false;
    if (which == "all") {
      out = full;
      ok = rep.passed();
    } else {
      out = ak_part(full, which, ok);
      out["samples"] = full["samples"];
      out["seed"] = full["seed"];
      out["check"] = which;
      out["passed"] = ok;
    }
    *passed = ok ? 1 : 0;
    *json_out = capi::dup_string(out.dump(2));
  });
}

tcwb_status tcwb_ak_roots(const char* a, const char* b, const char* c, char** json_out) {
  return guarded([&] {
    require(a, "a");
    require(b, "b");
    require(c, "c");
    require(json_out, "json");
    const auto p = symsq::make_point(symsq::parse_complex(a), symsq::parse_complex(b), symsq::parse_complex(c));
    const auto r = symsq::roots(p);
    json j = {{"point", symsq::format(p)}, {"roots", {symsq::format(r.first), symsq::format(r.second)}}};
    *json_out = capi::dup_string(j.dump(2));
  });
}

tcwb_status tcwb_ak_quadratic(const char* w1, const char* w2, char** json_out) {
  return guarded([&] {
    require(w1, "w1");
    require(w2, "w2");
    require(json_out, "json");
    const auto pr = symsq::UnorderedPair::of(symsq::parse_sphere_point(w1), symsq::parse_sphere_point(w2));
    const auto q = symsq::quadratic_from_pair(pr);
    json j = {{"pair", {symsq::format(pr.first), symsq::format(pr.second)}},
              {"point", symsq::format(q)},
              {"roundtrip_err", symsq::distance(symsq::roots(q), pr)}};
    *json_out = capi::dup_string(j.dump(2));
  });
}

tcwb_status tcwb_ak_classify(const char* w1, const char* w2, char** json_out) {
  return guarded([&] {
    require(w1, "w1");
    require(w2, "w2");
    require(json_out, "json");
    const auto o = symsq::OrbitPoint::of(symsq::UnorderedPair::of(symsq::parse_sphere_point(w1), symsq::parse_sphere_point(w2)));
    const auto cls = symsq::classify(o);
    json j = {{"orbit", {symsq::format(o.rep.first), symsq::format(o.rep.second)}},
              {"chart", cls.chart == symsq::Chart::U ? "U" : "F"},
              {"in_v", symsq::in_v(o)}};
    if (cls.chart == symsq::Chart::F) j["f_coordinate"] = symsq::format(cls.f_coordinate);
    *json_out = capi::dup_string(j.dump(2));
  });
}

}  // extern "C"
