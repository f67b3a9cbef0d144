#include <algorithm>
#include <vector>

#include <json.hpp>

#include "capi/guard.hpp"
#include "covers/covers.hpp"

using namespace tcwb;
using capi::guarded;
using capi::require;
using nlohmann::json;

struct tcwb_set_system {
  covers::SetSystem system;
};

namespace {

constexpr std::size_t kSpotCertificates = 16;

json hypothesis(const covers::SetSystem& s, std::size_t k) {
  json j = {{"k", k}, {"sets", s.sets.size()}};
  if (k == 0 || k > s.sets.size()) {
    j["holds"] = false;
    j["reason"] = "k outside 1..set count";
    return j;
  }
  const auto check = covers::check_k_cover(s, k);
  j["holds"] = check.ok;
  if (!check.ok) {
    j["violating"] = check.violating;
    j["missed"] = *check.missed;
  }
  return j;
}

json product_json(const covers::ProductSystem& p) {
  const auto gap = p.uncovered();
  json j = {{"set_count", p.set_count}, {"ground_size", p.ground_size()}, {"covered", !gap.has_value()}};
  j["uncovered"] = gap ? json(*gap) : json(nullptr);
  std::vector<std::size_t> counts(p.set_count, 0);
  for (std::size_t i = 0; i < p.ground_size(); ++i)
    if (auto k = p.first_cover(p.unrank(i))) ++counts[*k];
  j["first_cover_counts"] = counts;
  return j;
}

}  // namespace

extern "C" {

tcwb_status tcwb_set_system_parse(const char* text, tcwb_set_system** out) {
  return guarded([&] {
    require(text, "text");
    require(out, "out");
    *out = new tcwb_set_system{covers::SetSystem::parse(std::string(text))};
  });
}

tcwb_status tcwb_set_system_load(const char* path, tcwb_set_system** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = new tcwb_set_system{covers::SetSystem::load(path)};
  });
}

void tcwb_set_system_free(tcwb_set_system* s) { delete s; }

tcwb_status tcwb_set_system_to_text(const tcwb_set_system* s, char** text) {
  return guarded([&] {
    require(s, "system");
    require(text, "text");
    *text = capi::dup_string(s->system.to_text());
  });
}

tcwb_status tcwb_cover_verify(const tcwb_set_system* s, size_t k, int* is_cover, char** json_out) {
  return guarded([&] {
    require(s, "system");
    require(is_cover, "is_cover");
    require(json_out, "json");
    const auto& sys = s->system;
    json j = {{"ground", sys.ground}, {"sets", sys.sets.size()}, {"covers_ground", sys.covers_ground()}};
    const auto mk = covers::minimal_k(sys);
    j["minimal_k"] = mk ? json(*mk) : json(nullptr);
    bool ok = false;
    if (k == 0) {
      ok = mk.has_value();
    } else {
      const auto check = covers::check_k_cover(sys, k);
      ok = check.ok;
      j["k"] = k;
      if (!ok) j["witness"] = {{"violating", check.violating}, {"missed", *check.missed}};
    }
    j["verdict"] = ok ? "k-cover" : "not a k-cover";
    j["is_k_cover"] = ok;
    *is_cover = ok ? 1 : 0;
    *json_out = capi::dup_string(j.dump(2));
  });
}

tcwb_status tcwb_cover_extend(const tcwb_set_system* s, size_t m, tcwb_set_system** out, char** json_out) {
  return guarded([&] {
    require(s, "system");
    require(json_out, "json");
    const auto ext = covers::extend_to_k_cover(s->system, m);
    const std::size_t n = s->system.sets.size() - 1;
    json pieces = json::array();
    for (const auto& per_set : ext.pieces) {
      json row = json::array();
      for (const auto& p : per_set) row.push_back({{"source", p.source}, {"elements", p.elements}});
      pieces.push_back(row);
    }
    const bool ok = covers::is_k_cover(ext.system, n + 1);
    json j = {{"n", n},
              {"m", m},
              {"ground", ext.system.ground},
              {"sets", ext.system.sets},
              {"pieces", pieces},
              {"is_k_cover", ok},
              {"k", n + 1},
              {"verdict", ok ? "extended" : "extension failed"}};
    *json_out = capi::dup_string(j.dump(2));
    if (out) *out = new tcwb_set_system{ext.system};
  });
}

tcwb_status tcwb_cover_product(const tcwb_set_system* a, const tcwb_set_system* b, size_t n, size_t m,
                               char** json_out) {
  tcwb_status verification = TCWB_OK;
  const tcwb_status st = guarded([&] {
    require(a, "a");
    require(b, "b");
    require(json_out, "json");
    json j = {{"n", n}, {"m", m}};
    j["hypotheses"] = {{"a", hypothesis(a->system, n + 1)}, {"b", hypothesis(b->system, m + 1)}};
    const bool sized = a->system.sets.size() == n + m + 1 && b->system.sets.size() == n + m + 1;
    j["hypotheses"]["set_counts_ok"] = sized;
    if (!sized || !j["hypotheses"]["a"]["holds"].get<bool>() || !j["hypotheses"]["b"]["holds"].get<bool>()) {
      j["verdict"] = "hypothesis violated";
      *json_out = capi::dup_string(j.dump(2));
      capi::set_error("product cover hypotheses violated");
      verification = TCWB_ERR_VERIFICATION;
      return;
    }
    const auto p = covers::product_cover(a->system, b->system, n, m);
    j["product"] = product_json(p);

    // Counting argument: every x lies in at least m+1 sets of A.
    std::size_t min_mult = p.set_count;
    for (std::size_t x = 0; x < a->system.ground; ++x) {
      std::size_t c = 0;
      for (std::size_t k = 0; k < p.set_count; ++k) c += a->system.contains(k, x);
      min_mult = std::min(min_mult, c);
    }
    j["min_multiplicity_a"] = min_mult;

    json spots = json::array();
    const std::size_t total = p.ground_size();
    const std::size_t step = std::max<std::size_t>(1, total / kSpotCertificates);
    for (std::size_t i = 0; i < total && spots.size() < kSpotCertificates; i += step) {
      const auto pt = p.unrank(i);
      const auto cert = covers::certify_pair(p, pt[0], pt[1]);
      spots.push_back({{"point", cert.point}, {"covering_x", cert.covering_x}, {"witness", cert.witness}});
    }
    j["spot_certificates"] = spots;
    const bool ok = j["product"]["covered"].get<bool>() && min_mult >= m + 1;
    j["verdict"] = ok ? "covered" : "not covered";
    *json_out = capi::dup_string(j.dump(2));
    if (!ok) {
      capi::set_error("product family does not cover the product ground set");
      verification = TCWB_ERR_VERIFICATION;
    }
  });
  return st != TCWB_OK ? st : verification;
}

tcwb_status tcwb_cover_nary(const tcwb_set_system* const* systems, const size_t* strengths, size_t count,
                            char** json_out) {
  tcwb_status verification = TCWB_OK;
  const tcwb_status st = guarded([&] {
    require(systems, "systems");
    require(strengths, "strengths");
    require(json_out, "json");
    std::vector<covers::SetSystem> sys;
    std::vector<std::size_t> ks(strengths, strengths + count);
    json hyp = json::array();
    bool holds = true;
    std::size_t expected = 1;
    for (std::size_t i = 0; i < count; ++i) {
      require(systems[i], "system");
      sys.push_back(systems[i]->system);
      hyp.push_back(hypothesis(sys.back(), ks[i]));
      holds = holds && hyp.back()["holds"].get<bool>();
      expected += ks[i] == 0 ? 0 : ks[i] - 1;
    }
    json j = {{"factors", count}, {"strengths", ks}, {"expected_sets", expected}, {"hypotheses", hyp}};
    for (const auto& s : sys) holds = holds && s.sets.size() == expected;
    if (count == 0 || !holds) {
      j["verdict"] = "hypothesis violated";
      *json_out = capi::dup_string(j.dump(2));
      capi::set_error("n-ary product hypotheses violated");
      verification = TCWB_ERR_VERIFICATION;
      return;
    }
    try {
      j["product"] = product_json(covers::nary_product_cover(sys, ks));
      j["verdict"] = "covered";
    } catch (const Error& e) {
      if (e.code() != ErrorCode::verification) throw;
      j["verdict"] = "not covered";
      j["error"] = e.what();
      capi::set_error(e.what());
      verification = TCWB_ERR_VERIFICATION;
    }
    *json_out = capi::dup_string(j.dump(2));
  });
  return st != TCWB_OK ? st : verification;
}

}  // extern "C"
