// Command-line front end. Talks to the library only through tcwb.h.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <cstdio>
#include <iomanip>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "tcwb/tcwb.h"

using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerification = 1;
constexpr int kExitUsage = 2;

// Failure of a library call, carrying the exit code it maps to.
struct CallError {
  tcwb_status status;
  std::string message;
};

int exit_code_for(tcwb_status s) {
  return s == TCWB_ERR_VERIFICATION || s == TCWB_ERR_INCONSISTENT ? kExitVerification : kExitUsage;
}

void check(tcwb_status s, const std::string& context) {
  if (s != TCWB_OK) throw CallError{s, context + ": " + tcwb_last_error()};
}

// Owns a string returned by the library.
std::string take(char* s) {
  if (s == nullptr) return {};
  std::string out(s);
  tcwb_string_free(s);
  return out;
}

template <class T, void (*Free)(T*)>
struct Handle {
  T* p = nullptr;
  Handle() = default;
  Handle(const Handle&) = delete;
  Handle& operator=(const Handle&) = delete;
  Handle(Handle&& o) noexcept : p(o.p) { o.p = nullptr; }
  ~Handle() { Free(p); }
};

using SetSystemH = Handle<tcwb_set_system, tcwb_set_system_free>;

struct Globals {
  bool json = false;
  std::uint64_t seed = 1;
  std::size_t samples = 10000;
  double tol = 1e-9;
  std::string field = "q";
};

struct Report {
  json header;
  json body;
  bool ok = true;
  std::string summary;
};

// ---- rendering -------------------------------------------------------------

std::string scalar_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "-";
  return v.dump();
}

bool is_flat_array(const json& v) {
  if (!v.is_array()) return false;
  for (const auto& e : v)
    if (e.is_object() || (e.is_array() && !is_flat_array(e))) return false;
  return true;
}

void render_generic(std::ostream& os, const json& v, const std::string& prefix) {
  if (v.is_object()) {
    for (const auto& [k, e] : v.items()) render_generic(os, e, prefix.empty() ? k : prefix + "." + k);
  } else if (v.is_array() && !is_flat_array(v)) {
    for (std::size_t i = 0; i < v.size(); ++i) render_generic(os, v[i], prefix + "[" + std::to_string(i) + "]");
  } else {
    os << "  " << std::left << std::setw(36) << prefix << " " << (v.is_array() ? v.dump() : scalar_text(v)) << "\n";
  }
}

std::string interval_text(const json& q) {
  std::string hi = q["hi"].is_null() ? "inf" : q["hi"].dump();
  if (!q["hi"].is_null() && q["hi"] == q["lo"]) return q["lo"].dump();
  return "[" + q["lo"].dump() + "," + hi + "]";
}

void render_bounds(std::ostream& os, const json& body) {
  static const std::vector<std::string> cols = {"cat", "TC", "TCM", "cuplen", "zdcl", "dim", "conn"};
  os << "  " << std::left << std::setw(34) << "node";
  for (const auto& c : cols) os << std::setw(10) << c;
  os << "\n";
  std::set<long> used;
  const json& certs = body["certificates"];
  std::vector<long> stack;
  for (const auto& n : body["nodes"]) {
    std::string name = n["expr"].get<std::string>();
    if (n["aux"].get<bool>()) name += " (aux)";
    if (n["id"] == body["root"]) name = "* " + name;
    os << "  " << std::left << std::setw(34) << name;
    for (const auto& c : cols) {
      const json& q = n["quantities"][c];
      os << std::setw(10) << interval_text(q);
      for (const char* side : {"lo_cert", "hi_cert"})
        if (!q[side].is_null()) stack.push_back(q[side].get<long>());
    }
    os << "\n";
  }
  while (!stack.empty()) {
    const long id = stack.back();
    stack.pop_back();
    if (!used.insert(id).second) continue;
    for (const auto& p : certs[std::to_string(id)]["premises"]) stack.push_back(p.get<long>());
  }
  os << "\n  certificates supporting the final intervals:\n";
  for (long id : used) {
    const json& c = certs[std::to_string(id)];
    os << "  #" << std::left << std::setw(5) << id << std::setw(14) << c["rule"].get<std::string>()
       << body["nodes"][c["node"].get<std::size_t>()]["expr"].get<std::string>() << "  " << c["quantity"].get<std::string>()
       << " " << (c["side"] == "lo" ? ">=" : "<=") << " " << c["value"].dump();
    if (!c["premises"].empty()) os << "  from " << c["premises"].dump();
    os << "\n         " << c["citation"].get<std::string>();
    if (!c["note"].get<std::string>().empty()) os << "; " << c["note"].get<std::string>();
    os << "\n";
  }
  for (const auto& n : body["nodes"])
    if (n.contains("wedge_conjecture_annotation") && !n["wedge_conjecture_annotation"].is_null())
      os << "\n  annotation (conjectural, not a certificate): " << n["expr"].get<std::string>() << " TC <= "
         << scalar_text(n["wedge_conjecture_annotation"]) << "\n";
  if (body.contains("explanations"))
    for (const auto& [k, v] : body["explanations"].items()) os << "\n  explain " << k << ":\n" << v.get<std::string>();
}

void emit(const Report& r, const Globals& g, const std::string& kind) {
  if (g.json) {
    json out = {{"header", r.header},
                {"body", r.body},
                {"verdict", {{"ok", r.ok}, {"summary", r.summary}}}};
    std::cout << out.dump(2) << "\n";
    return;
  }
  std::cout << "tcwb " << r.header["version"].get<std::string>() << "  command: " << r.header["command"].get<std::string>()
            << "\n";
  for (const auto& [k, v] : r.header.items())
    if (k != "version" && k != "command" && k != "tool") std::cout << "  " << std::left << std::setw(12) << k << scalar_text(v) << "\n";
  std::cout << "\n";
  if (kind == "bounds")
    render_bounds(std::cout, r.body);
  else
    render_generic(std::cout, r.body, "");
  std::cout << "\nverdict: " << (r.ok ? "OK" : "FAILED") << "  " << r.summary << "\n";
}

json make_header(const std::string& command, const Globals& g, json inputs, bool field_used, bool seed_used) {
  return {{"tool", "tcwb"},
          {"version", tcwb_version()},
          {"command", command},
          {"inputs", std::move(inputs)},
          {"seed", seed_used ? json(g.seed) : json(nullptr)},
          {"field", field_used ? json(g.field) : json(nullptr)},
          {"tolerance", g.tol}};
}

tcwb_field field_of(const Globals& g) {
  tcwb_field f;
  check(tcwb_field_parse(g.field.c_str(), &f), "--field");
  return f;
}

// ---- subcommands -----------------------------------------------------------

struct BoundsArgs {
  std::string expr;
  bool field_given = false;
  std::vector<std::string> retracts, coverings, quotient_cat, disabled, explain;
};

Report run_bounds(const BoundsArgs& a, const Globals& g) {
  Handle<tcwb_bounds_options, tcwb_bounds_options_free> opt;
  check(tcwb_bounds_options_new(&opt.p), "options");
  if (a.field_given) check(tcwb_bounds_options_set_field(opt.p, field_of(g)), "--field");
  for (const auto& r : a.retracts) check(tcwb_bounds_options_add_retract(opt.p, r.c_str()), "--retract " + r);
  for (const auto& c : a.coverings) check(tcwb_bounds_options_add_covering(opt.p, c.c_str()), "--cover " + c);
  for (const auto& q : a.quotient_cat) {
    const auto eq = q.rfind('=');
    if (eq == std::string::npos) throw CallError{TCWB_ERR_INVALID_ARGUMENT, "--quotient-cat expects SPACE=VALUE"};
    long v = 0;
    try {
      v = std::stol(q.substr(eq + 1));
    } catch (...) {
      throw CallError{TCWB_ERR_INVALID_ARGUMENT, "--quotient-cat value is not an integer: " + q};
    }
    check(tcwb_bounds_options_add_quotient_cat(opt.p, q.substr(0, eq).c_str(), v), "--quotient-cat " + q);
  }
  for (const auto& r : a.disabled) check(tcwb_bounds_options_disable_rule(opt.p, r.c_str()), "--disable-rule " + r);

  Report rep;
  rep.header = make_header("bounds", g,
                           {{"expr", a.expr},
                            {"retracts", a.retracts},
                            {"coverings", a.coverings},
                            {"quotient_cat", a.quotient_cat},
                            {"disabled_rules", a.disabled}},
                           true, false);
  if (!a.field_given) rep.header["field"] = "q,f2";
  Handle<tcwb_bounds, tcwb_bounds_free> b;
  check(tcwb_bounds_derive(a.expr.c_str(), opt.p, &b.p), "bounds");
  char* s = nullptr;
  check(tcwb_bounds_report(b.p, &s), "report");
  rep.body = json::parse(take(s));
  for (const auto& e : a.explain) {
    const auto colon = e.find(':');
    if (colon == std::string::npos) throw CallError{TCWB_ERR_INVALID_ARGUMENT, "--explain expects QUANTITY:lo|hi"};
    check(tcwb_bounds_explain(b.p, nullptr, e.substr(0, colon).c_str(), e.substr(colon + 1).c_str(), &s),
          "--explain " + e);
    rep.body["explanations"][e] = take(s);
  }
  const json& root = rep.body["nodes"][rep.body["root"].get<std::size_t>()]["quantities"];
  rep.summary = rep.body["root_expr"].get<std::string>() + ": cat " + interval_text(root["cat"]) + ", TC " +
                interval_text(root["TC"]) + ", TCM " + interval_text(root["TCM"]);
  return rep;
}

Report run_ring(const std::string& expr, std::size_t zdcl_max, const Globals& g) {
  Handle<tcwb_ring, tcwb_ring_free> r;
  check(tcwb_ring_from_expr(expr.c_str(), field_of(g), &r.p), "ring");
  char* s = nullptr;
  check(tcwb_ring_report(r.p, zdcl_max, g.seed, &s), "ring report");
  Report rep;
  rep.header = make_header("ring", g, {{"expr", expr}}, true, true);
  rep.body = json::parse(take(s));
  rep.ok = rep.body["axioms"]["ok"].get<bool>();
  rep.summary = "cuplength " + rep.body["cup_length"].dump() + ", zdcl " + scalar_text(rep.body["zero_divisor_cup_length"]) +
                (rep.ok ? ", ring axioms hold" : ", ring axioms violated");
  return rep;
}

SetSystemH load_system(const std::string& path) {
  SetSystemH h;
  check(tcwb_set_system_load(path.c_str(), &h.p), path);
  return h;
}

Report run_cover_verify(const std::string& path, std::size_t k, const Globals& g) {
  auto s = load_system(path);
  int ok = 0;
  char* j = nullptr;
  check(tcwb_cover_verify(s.p, k, &ok, &j), "cover verify");
  Report rep;
  rep.header = make_header("cover verify", g, {{"file", path}, {"k", k == 0 ? json(nullptr) : json(k)}}, false, false);
  rep.body = json::parse(take(j));
  rep.ok = ok != 0;
  rep.summary = k == 0 ? (rep.ok ? "minimal k = " + rep.body["minimal_k"].dump() : "does not cover the ground set")
                       : rep.body["verdict"].get<std::string>() + " (k = " + std::to_string(k) + ")";
  return rep;
}

Report run_cover_extend(const std::string& path, std::size_t m, const std::string& out, const Globals& g) {
  auto s = load_system(path);
  SetSystemH e;
  char* j = nullptr;
  check(tcwb_cover_extend(s.p, m, &e.p, &j), "cover extend");
  Report rep;
  rep.header = make_header("cover extend", g, {{"file", path}, {"m", m}}, false, false);
  rep.body = json::parse(take(j));
  rep.ok = rep.body["is_k_cover"].get<bool>();
  rep.summary = rep.body["verdict"].get<std::string>() + ": " + std::to_string(rep.body["sets"].size()) + " sets, " +
                rep.body["k"].dump() + "-cover";
  if (!out.empty()) {
    char* text = nullptr;
    check(tcwb_set_system_to_text(e.p, &text), "serialise");
    std::FILE* f = std::fopen(out.c_str(), "w");
    if (f == nullptr) {
      tcwb_string_free(text);
      throw CallError{TCWB_ERR_IO, "cannot write " + out};
    }
    std::fputs(text, f);
    std::fclose(f);
    tcwb_string_free(text);
    rep.body["written"] = out;
  }
  return rep;
}

Report run_cover_product(const std::string& a, const std::string& b, std::optional<std::size_t> n,
                         std::optional<std::size_t> m, const Globals& g) {
  auto sa = load_system(a);
  auto sb = load_system(b);
  // Default split: the same strength on both sides.
  std::size_t nn = 0, mm = 0;
  if (n && m) {
    nn = *n;
    mm = *m;
  } else {
    char* t = nullptr;
    check(tcwb_set_system_to_text(sa.p, &t), "serialise");
    std::istringstream in(take(t));
    std::string line;
    std::size_t lines = 0;
    while (std::getline(in, line))
      if (!line.empty() && line[0] != '#') ++lines;
    const std::size_t sets = lines == 0 ? 0 : lines - 1;
    if (sets == 0) throw CallError{TCWB_ERR_INVALID_ARGUMENT, "empty set system"};
    nn = n ? *n : (m ? sets - 1 - *m : (sets - 1) / 2);
    mm = m ? *m : sets - 1 - nn;
  }
  char* j = nullptr;
  const tcwb_status st = tcwb_cover_product(sa.p, sb.p, nn, mm, &j);
  if (st != TCWB_OK && st != TCWB_ERR_VERIFICATION) check(st, "cover product");
  Report rep;
  rep.header = make_header("cover product", g, {{"a", a}, {"b", b}, {"n", nn}, {"m", mm}}, false, false);
  rep.body = j ? json::parse(take(j)) : json::object();
  rep.ok = st == TCWB_OK;
  rep.summary = rep.body.value("verdict", std::string("error"));
  return rep;
}

Report run_cover_nary(const std::vector<std::string>& specs, const Globals& g) {
  std::vector<SetSystemH> systems;
  std::vector<const tcwb_set_system*> ptrs;
  std::vector<std::size_t> ks;
  json inputs = json::array();
  for (const auto& spec : specs) {
    const auto colon = spec.rfind(':');
    if (colon == std::string::npos) throw CallError{TCWB_ERR_INVALID_ARGUMENT, "--system expects FILE:K"};
    std::size_t k = 0;
    try {
      k = std::stoul(spec.substr(colon + 1));
    } catch (...) {
      throw CallError{TCWB_ERR_INVALID_ARGUMENT, "bad strength in " + spec};
    }
    systems.push_back(load_system(spec.substr(0, colon)));
    ptrs.push_back(systems.back().p);
    ks.push_back(k);
    inputs.push_back({{"file", spec.substr(0, colon)}, {"k", k}});
  }
  char* j = nullptr;
  const tcwb_status st = tcwb_cover_nary(ptrs.data(), ks.data(), ptrs.size(), &j);
  if (st != TCWB_OK && st != TCWB_ERR_VERIFICATION) check(st, "cover nary");
  Report rep;
  rep.header = make_header("cover nary", g, {{"systems", inputs}}, false, false);
  rep.body = j ? json::parse(take(j)) : json::object();
  rep.ok = st == TCWB_OK;
  rep.summary = rep.body.value("verdict", std::string("error"));
  return rep;
}

struct PlanArgs {
  std::string space;
  bool pieces_only = false;
  std::string pairs_file;
  std::size_t grid = 0;
  std::optional<std::size_t> random;
  std::string pair;
  std::size_t path_samples = 8;
};

Report run_plan(const PlanArgs& a, const Globals& g) {
  Handle<tcwb_planner, tcwb_planner_free> p;
  check(tcwb_planner_create(a.space.c_str(), &p.p), "planner");
  char* s = nullptr;
  check(tcwb_planner_describe(p.p, &s), "describe");
  const json info = json::parse(take(s));
  Report rep;
  json inputs = {{"space", a.space}};
  if (a.pieces_only) {
    rep.header = make_header("plan", g, inputs, false, false);
    rep.body = info;
    rep.summary = "pieces=" + info["pieces"].dump();
    return rep;
  }
  if (!a.pair.empty()) {
    inputs["pair"] = a.pair;
    check(tcwb_planner_plan(p.p, a.pair.c_str(), a.path_samples, &s), "plan");
    rep.header = make_header("plan", g, inputs, false, false);
    rep.body = {{"planner", info}, {"plan", json::parse(take(s))}};
    const double err = std::max(rep.body["plan"]["start_err"].get<double>(), rep.body["plan"]["end_err"].get<double>());
    rep.ok = err < g.tol;
    rep.summary = "region " + rep.body["plan"]["region_name"].get<std::string>() + ", endpoint error " + json(err).dump();
    return rep;
  }
  tcwb_verify_config cfg;
  tcwb_verify_config_default(&cfg);
  cfg.seed = g.seed;
  cfg.tol = g.tol;
  cfg.random_pairs = a.random.value_or(g.samples);
  cfg.grid = a.grid;
  if (!a.pairs_file.empty()) cfg.pairs_file = a.pairs_file.c_str();
  if (!a.pairs_file.empty())
    inputs["pairs_file"] = a.pairs_file;
  else if (a.grid)
    inputs["grid"] = a.grid;
  else
    inputs["random"] = cfg.random_pairs;
  int passed = 0;
  check(tcwb_planner_verify(p.p, &cfg, &passed, &s), "verify");
  rep.header = make_header("plan", g, inputs, false, true);
  rep.body = json::parse(take(s));
  rep.body["regions"] = info["regions"];
  rep.ok = passed != 0;
  rep.summary = "pieces=" + rep.body["pieces"].dump() + ", coverage " + rep.body["coverage"].dump() +
                ", max endpoint error " + rep.body["max_endpoint_err"].dump() + ", reserved violations " +
                rep.body["reserved_violations"].dump();
  return rep;
}

Report run_ak_check(const std::string& part, const Globals& g) {
  int passed = 0;
  char* s = nullptr;
  check(tcwb_ak_verify(part.c_str(), g.samples, g.seed, &passed, &s), "ak " + part);
  Report rep;
  rep.header = make_header("ak " + part, g, {{"samples", g.samples}}, false, true);
  rep.body = json::parse(take(s));
  rep.ok = passed != 0;
  rep.summary = part + (rep.ok ? " checks passed" : " checks failed");
  return rep;
}

Report run_ak_literal(const std::string& what, const std::vector<std::string>& args, const Globals& g) {
  char* s = nullptr;
  if (what == "roots") {
    if (args.size() != 3) throw CallError{TCWB_ERR_INVALID_ARGUMENT, "ak roots expects three coefficients a b c"};
    check(tcwb_ak_roots(args[0].c_str(), args[1].c_str(), args[2].c_str(), &s), "ak roots");
  } else {
    if (args.size() != 2) throw CallError{TCWB_ERR_INVALID_ARGUMENT, "ak " + what + " expects two sphere points"};
    check((what == "quadratic" ? tcwb_ak_quadratic : tcwb_ak_classify)(args[0].c_str(), args[1].c_str(), &s),
          "ak " + what);
  }
  Report rep;
  rep.header = make_header("ak " + what, g, {{"args", args}}, false, false);
  rep.body = json::parse(take(s));
  if (what == "roots")
    rep.summary = "roots " + rep.body["roots"][0].get<std::string>() + ", " + rep.body["roots"][1].get<std::string>();
  else if (what == "quadratic")
    rep.summary = rep.body["point"].get<std::string>();
  else
    rep.summary = "chart " + rep.body["chart"].get<std::string>();
  return rep;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Category and topological complexity toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_flag("--json", g.json, "Emit the JSON report instead of a table");
  app.add_option("--seed", g.seed, "Seed for randomised checks")->capture_default_str();
  app.add_option("--samples", g.samples, "Sample count for randomised checks")->capture_default_str();
  app.add_option("--tol", g.tol, "Numerical tolerance")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--field", g.field, "Coefficient field: q or f2")->check(CLI::IsMember({"q", "f2", "Q", "F2"}));

  std::function<Report()> action;
  std::string kind;

  auto* bounds = app.add_subcommand("bounds", "Certified intervals for cat, TC, TCM and ring invariants");
  BoundsArgs ba;
  bounds->add_option("expr", ba.expr, "Space expression, e.g. \"(T2 v S1) x T2\"")->required();
  bounds->add_option("--retract", ba.retracts, "Declare a retraction A>B");
  bounds->add_option("--cover", ba.coverings, "Declare a covering A->B");
  bounds->add_option("--quotient-cat", ba.quotient_cat, "Known lower bound SPACE=VALUE for cat((X x X)/diagonal)");
  bounds->add_option("--disable-rule", ba.disabled, "Disable a rule (R1..R13)");
  bounds->add_option("--explain", ba.explain, "Print the derivation of QUANTITY:lo|hi at the root");
  bounds->callback([&] {
    ba.field_given = app.count("--field") > 0;
    kind = "bounds";
    action = [&] { return run_bounds(ba, g); };
  });

  auto* ring = app.add_subcommand("ring", "Cohomology ring of a space expression or file:<complex>");
  std::string ring_expr;
  std::size_t zdcl_max = 64;
  ring->add_option("expr", ring_expr, "Space expression")->required();
  ring->add_option("--zdcl-max-dim", zdcl_max, "Skip zero-divisor cup-length above this ring dimension")
      ->capture_default_str();
  ring->callback([&] {
    kind = "ring";
    action = [&] { return run_ring(ring_expr, zdcl_max, g); };
  });

  auto* cover = app.add_subcommand("cover", "Finite k-cover calculus");
  cover->require_subcommand(1);
  auto* cverify = cover->add_subcommand("verify", "Check the k-cover property (minimal k when --k is omitted)");
  std::string cv_file;
  std::size_t cv_k = 0;
  cverify->add_option("file", cv_file, "Set-system file")->required()->check(CLI::ExistingFile);
  cverify->add_option("--k", cv_k, "Subfamily size");
  cverify->callback([&] {
    kind = "cover";
    action = [&] { return run_cover_verify(cv_file, cv_k, g); };
  });
  auto* cextend = cover->add_subcommand("extend", "Extend an (n+1)-set cover to m+1 sets");
  std::string ce_file, ce_out;
  std::size_t ce_m = 0;
  cextend->add_option("file", ce_file, "Set-system file")->required()->check(CLI::ExistingFile);
  cextend->add_option("--m", ce_m, "Target index m (m+1 sets)")->required();
  cextend->add_option("--out", ce_out, "Write the extended system here");
  cextend->callback([&] {
    kind = "cover";
    action = [&] { return run_cover_extend(ce_file, ce_m, ce_out, g); };
  });
  auto* cproduct = cover->add_subcommand("product", "Coordinatewise product of an (n+1)-cover and an (m+1)-cover");
  std::string cp_a, cp_b;
  std::optional<std::size_t> cp_n, cp_m;
  cproduct->add_option("--a", cp_a, "First factor")->required()->check(CLI::ExistingFile);
  cproduct->add_option("--b", cp_b, "Second factor")->required()->check(CLI::ExistingFile);
  cproduct->add_option("--n", cp_n, "Strength of A is n+1");
  cproduct->add_option("--m", cp_m, "Strength of B is m+1");
  cproduct->callback([&] {
    kind = "cover";
    action = [&] { return run_cover_product(cp_a, cp_b, cp_n, cp_m, g); };
  });
  auto* cnary = cover->add_subcommand("nary", "Coordinatewise product of several k_j-covers");
  std::vector<std::string> cn_specs;
  cnary->add_option("--system", cn_specs, "FILE:K, repeated")->required();
  cnary->callback([&] {
    kind = "cover";
    action = [&] { return run_cover_nary(cn_specs, g); };
  });

  auto* plan = app.add_subcommand("plan", "Build and verify a motion planner");
  PlanArgs pa;
  std::string report_mode;
  plan->add_option("space", pa.space, "S1, T<n>, products of circles, S<n>, or a wedge of two tori")->required();
  plan->add_flag("--pieces", pa.pieces_only, "Only describe the pieces");
  auto* o_pairs = plan->add_option("--pairs", pa.pairs_file, "File of pairs \"x | y\"")->check(CLI::ExistingFile);
  auto* o_grid = plan->add_option("--grid", pa.grid, "All pairs of an n-point grid");
  auto* o_random = plan->add_option("--random", pa.random, "Number of seeded random pairs");
  o_pairs->excludes(o_grid)->excludes(o_random);
  o_grid->excludes(o_random);
  plan->add_option("--pair", pa.pair, "Plan one pair \"x | y\" and print the sampled path");
  plan->add_option("--path-samples", pa.path_samples, "Path sample count for --pair")->capture_default_str();
  plan->add_option("--report", report_mode, "Report format")->check(CLI::IsMember({"json", "table"}));
  plan->callback([&] {
    if (report_mode == "json") g.json = true;
    kind = "plan";
    action = [&] { return run_plan(pa, g); };
  });

  auto* akc = app.add_subcommand("ak", "Symmetric square of the sphere and the projective plane");
  akc->require_subcommand(1);
  for (const char* part : {"roundtrip", "equivariance", "cover", "all"}) {
    auto* sub = akc->add_subcommand(part, std::string("Run the ") + part + " checks");
    sub->callback([&, part] {
      kind = "ak";
      action = [&, part] { return run_ak_check(part, g); };
    });
  }
  std::vector<std::string> ak_args;
  for (const char* what : {"roots", "quadratic", "classify"}) {
    auto* sub = akc->add_subcommand(what, std::string("Evaluate ") + what + " on literals (a+bi or inf)");
    sub->add_option("values", ak_args, "Literals")->required();
    sub->callback([&, what] {
      kind = "ak";
      action = [&, what] { return run_ak_literal(what, ak_args, g); };
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    const Report rep = action();
    emit(rep, g, kind);
    return rep.ok ? kExitOk : kExitVerification;
  } catch (const CallError& e) {
    std::cerr << "error: " << e.message << "\n";
    if (g.json) {
      json out = {{"error", {{"status", tcwb_status_name(e.status)}, {"message", e.message}}},
                  {"verdict", {{"ok", false}, {"summary", e.message}}}};
      std::cout << out.dump(2) << "\n";
    }
    return exit_code_for(e.status);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
