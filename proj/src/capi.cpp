#include "nbtrace.h"

#include <cstring>
#include <functional>
#include <map>
#include <string>

#include "nbt/json_io.hpp"
#include "nbt/match.hpp"
#include "nbt/spectral.hpp"

struct nbt_graph {
  nbt::Graph g;
};
struct nbt_bgraph {
  nbt::BGraph g;
};

namespace {

thread_local std::string g_last_error;

nbt_status map_code(nbt::Errc code) {
  using nbt::Errc;
  switch (code) {
    case Errc::parse_error: return NBT_ERR_PARSE;
    case Errc::invalid_involution: return NBT_ERR_INVALID_INVOLUTION;
    case Errc::dangling_reference: return NBT_ERR_DANGLING_REFERENCE;
    case Errc::validation: return NBT_ERR_VALIDATION;
    case Errc::parity_mismatch: return NBT_ERR_PARITY_MISMATCH;
    case Errc::half_loop_unsupported: return NBT_ERR_HALF_LOOP_UNSUPPORTED;
    case Errc::not_a_bead: return NBT_ERR_NOT_A_BEAD;
    case Errc::component_swallowed: return NBT_ERR_COMPONENT_SWALLOWED;
    case Errc::root_bracket_failure: return NBT_ERR_ROOT_BRACKET_FAILURE;
    case Errc::tolerance_ambiguous: return NBT_ERR_TOLERANCE_AMBIGUOUS;
    case Errc::cap_unverified: return NBT_ERR_CAP_UNVERIFIED;
    case Errc::too_large: return NBT_ERR_TOO_LARGE;
    case Errc::ill_conditioned: return NBT_ERR_ILL_CONDITIONED;
    case Errc::generator_not_positive: return NBT_ERR_GENERATOR_NOT_POSITIVE;
  }
  return NBT_ERR_UNKNOWN;
}

template <class F>
nbt_status guarded(F&& f) {
  try {
    f();
    return NBT_OK;
  } catch (const nbt::Error& e) {
    g_last_error = e.what();
    return map_code(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return NBT_ERR_UNKNOWN;
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

using nbt::Json;

// "type" inputs accept either an ordered graph ({"graph":...}) or a plain
// graph, which gets the default ordering.
nbt::OrderedGraph ordered_or_default(const Json& j) {
  if (j.is_object() && j.contains("graph")) return nbt::ordered_graph_from_json(j);
  return nbt::default_ordering(nbt::graph_from_json(j));
}

const Json& field(const Json& j, const char* name) {
  auto it = j.find(name);
  nbt::require(it != j.end(), nbt::Errc::parse_error,
               std::string("missing parameter '") + name + "'");
  return *it;
}

Json cmd_mu1(const Json& p) {
  if (p.contains("type")) {
    nbt::LengthedType t = nbt::LengthedType::build(
        ordered_or_default(p["type"]), field(p, "lengths").get<std::vector<int>>());
    return Json{{"mu1", nbt::shannon_mu1(t)}, {"method", "shannon"}};
  }
  return Json{{"mu1", nbt::mu1(nbt::graph_from_json(field(p, "graph")))},
              {"method", "power-iteration"}};
}

Json cmd_trace(const Json& p) {
  nbt::Graph g = nbt::graph_from_json(field(p, "graph"));
  nbt::Bigint t = nbt::trace_hashimoto_pow(g, field(p, "k").get<int>());
  return Json{{"trace", t.convert_to<std::string>()}};
}

Json cmd_snbc(const Json& p) {
  nbt::Graph g = nbt::graph_from_json(field(p, "graph"));
  int k = field(p, "k").get<int>();
  Json out{{"snbc", nbt::count_snbc(g, k)}};
  if (p.contains("r")) {
    auto split = nbt::count_snbc_order_split(g, k, p["r"].get<int>());
    out["below"] = split.below;
    out["at_or_above"] = split.at_or_above;
  }
  return out;
}

Json cmd_suppress(const Json& p) {
  nbt::OrderedGraph s = ordered_or_default(field(p, "graph"));
  auto [red, lengths] = nbt::bead_suppress(s, field(p, "keep").get<std::vector<std::string>>());
  return Json{{"reduction", nbt::to_json(red)}, {"lengths", lengths}};
}

Json cmd_vlg(const Json& p) {
  nbt::LengthedType t = nbt::LengthedType::build(
      ordered_or_default(field(p, "type")), field(p, "lengths").get<std::vector<int>>());
  return Json{{"graph", nbt::to_json(nbt::build_vlg(t))}};
}

Json cmd_certificates(const Json& p) {
  nbt::CertificateSet cs =
      nbt::minimal_certificates(ordered_or_default(field(p, "type")), field(p, "nu").get<double>(),
                                p.value("strict", true), p.value("cap", 12));
  return nbt::to_json(cs);
}

Json cmd_cert_trace(const Json& p) {
  nbt::Graph g = nbt::graph_from_json(field(p, "graph"));
  double nu = field(p, "nu").get<double>();
  int r = field(p, "r").get<int>();
  int k = field(p, "k").get<int>();
  bool strict = p.value("strict", true);
  std::string method = p.value("method", "both");
  Json out;
  if (method == "direct" || method == "both")
    out["direct"] = nbt::cert_trace_direct(g, nu, r, k, strict);
  if (method == "incl-excl" || method == "both")
    out["incl_excl"] = nbt::cert_trace_incl_excl(g, nu, r, k, strict);
  return out;
}

Json cmd_tangles(const Json& p) {
  nbt::TangleSpec spec = nbt::minimal_tangles(field(p, "nu").get<double>(),
                                              field(p, "r").get<int>(), p.value("cap", 8));
  return nbt::to_json(spec);
}

Json cmd_has_tangle(const Json& p) {
  nbt::Graph g = nbt::graph_from_json(field(p, "graph"));
  if (p.value("bruteforce", false)) {
    bool hit = nbt::has_tangle_bruteforce(g, field(p, "nu").get<double>(),
                                          field(p, "r").get<int>());
    return Json{{"has_tangle", hit}, {"method", "bruteforce"}};
  }
  nbt::TangleSpec spec =
      p.contains("spec") ? nbt::tangle_spec_from_json(p["spec"])
                         : nbt::minimal_tangles(field(p, "nu").get<double>(),
                                                field(p, "r").get<int>(), p.value("cap", 8));
  return Json{{"has_tangle", nbt::has_tangle(g, spec)},
              {"method", "generators"},
              {"verified", spec.verified}};
}

std::vector<nbt::BGraph> parse_generators(const Json& p) {
  std::vector<nbt::BGraph> gens;
  for (const auto& g : field(p, "generators")) gens.push_back(nbt::bgraph_from_json(g));
  return gens;
}

Json cmd_mobius(const Json& p) {
  return nbt::to_json(nbt::derived_classes(parse_generators(p), field(p, "r").get<int>()));
}

Json cmd_indicator(const Json& p) {
  nbt::BGraph g = nbt::bgraph_from_json(field(p, "graph"));
  auto gens = parse_generators(p);
  int r = field(p, "r").get<int>();
  nbt::Rational ind = nbt::truncated_indicator(g, gens, r);
  auto [image, ord] = nbt::psi_image(g, gens);
  return Json{{"indicator",
               {{"num", numerator(ind).convert_to<std::string>()},
                {"den", denominator(ind).convert_to<std::string>()}}},
              {"ord_psi", ord},
              {"meets", !image.graph().empty()}};
}

Json cmd_sample_cover(const Json& p) {
  nbt::Graph base = nbt::graph_from_json(field(p, "base"));
  const Json& model = field(p, "model");
  nbt::CoverSample s =
      nbt::sample_cover(base, field(model, "n").get<int>(),
                        nbt::CoverModel::parse(field(model, "kind").get<std::string>()),
                        field(model, "seed").get<std::uint64_t>());
  nbt::BGraph cover = nbt::realize(s);
  return Json{{"sample", nbt::to_json(s)},
              {"cover", nbt::to_json(cover)},
              {"valid", nbt::validate_cover(cover)}};
}

Json cmd_estimate(const Json& p) {
  nbt::ExperimentConfig cfg = nbt::experiment_config_from_json(field(p, "config"));
  nbt::ExpansionReport rep = nbt::estimate_functional(cfg);
  if (p.contains("fit_r")) nbt::fit_expansion(rep, p["fit_r"].get<int>());
  Json out = nbt::to_json(rep);
  out["config"] = nbt::to_json(cfg);
  return out;
}

Json cmd_fit(const Json& p) {
  nbt::ExpansionReport rep = nbt::report_from_json(field(p, "report"));
  nbt::fit_expansion(rep, field(p, "r").get<int>());
  Json out = nbt::to_json(rep);
  if (field(p, "report").contains("config")) out["config"] = field(p, "report")["config"];
  return out;
}

Json cmd_subgraph_prob(const Json& p) {
  nbt::Graph base = nbt::graph_from_json(field(p, "base"));
  nbt::CoverModel model =
      nbt::CoverModel::parse(field(field(p, "model"), "kind").get<std::string>());
  nbt::BGraph s = nbt::bgraph_from_json(field(p, "subgraph"));
  nbt::ExpansionReport rep = nbt::estimate_subgraph_prob(
      base, model, s, field(p, "n_list").get<std::vector<int>>(),
      field(p, "samples").get<int>(), field(p, "seed").get<std::uint64_t>(), p.value("jobs", 1));
  return nbt::to_json(rep);
}

Json cmd_high_order(const Json& p) {
  nbt::Graph base = nbt::graph_from_json(field(p, "base"));
  nbt::CoverModel model =
      nbt::CoverModel::parse(field(field(p, "model"), "kind").get<std::string>());
  nbt::ExpansionReport rep = nbt::estimate_high_order_snbc(
      base, model, field(p, "r").get<int>(), field(p, "k").get<int>(),
      field(p, "n_list").get<std::vector<int>>(), field(p, "samples").get<int>(),
      field(p, "seed").get<std::uint64_t>(), p.value("jobs", 1));
  return nbt::to_json(rep);
}

Json cmd_c0(const Json& p) {
  nbt::Graph base = nbt::graph_from_json(field(p, "base"));
  nbt::Bigint c = nbt::reference_c0(base, field(p, "k").get<int>());
  return Json{{"c0", c.convert_to<std::string>()}};
}

const std::map<std::string, Json (*)(const Json&)>& command_table() {
  static const std::map<std::string, Json (*)(const Json&)> table = {
      {"mu1", cmd_mu1},
      {"trace", cmd_trace},
      {"snbc", cmd_snbc},
      {"suppress", cmd_suppress},
      {"vlg", cmd_vlg},
      {"certificates", cmd_certificates},
      {"cert-trace", cmd_cert_trace},
      {"tangles", cmd_tangles},
      {"has-tangle", cmd_has_tangle},
      {"mobius", cmd_mobius},
      {"indicator", cmd_indicator},
      {"sample-cover", cmd_sample_cover},
      {"estimate", cmd_estimate},
      {"fit", cmd_fit},
      {"subgraph-prob", cmd_subgraph_prob},
      {"high-order", cmd_high_order},
      {"c0", cmd_c0},
  };
  return table;
}

}  // namespace

extern "C" {

const char* nbt_last_error(void) { return g_last_error.c_str(); }

void nbt_string_free(char* s) { std::free(s); }

nbt_status nbt_graph_parse(const char* json, nbt_graph** out) {
  return guarded([&] {
    nbt::Graph g = nbt::graph_from_json(nbt::parse_json(json));
    *out = new nbt_graph{std::move(g)};
  });
}

nbt_status nbt_graph_to_json(const nbt_graph* g, char** json_out) {
  return guarded([&] { *json_out = dup_string(nbt::dump_json(nbt::to_json(g->g))); });
}

void nbt_graph_free(nbt_graph* g) { delete g; }

nbt_status nbt_graph_order(const nbt_graph* g, int64_t* out) {
  return guarded([&] { *out = g->g.order(); });
}

nbt_status nbt_graph_euler_char(const nbt_graph* g, int64_t* num, int64_t* den) {
  return guarded([&] {
    nbt::Rational chi = g->g.euler_char();
    *num = numerator(chi).convert_to<int64_t>();
    *den = denominator(chi).convert_to<int64_t>();
  });
}

nbt_status nbt_graph_prune(const nbt_graph* g, nbt_graph** out) {
  return guarded([&] { *out = new nbt_graph{g->g.pruned()}; });
}

nbt_status nbt_graph_is_positive(const nbt_graph* g, int* out) {
  return guarded([&] { *out = g->g.is_positive() ? 1 : 0; });
}

nbt_status nbt_graph_canonical_label(const nbt_graph* g, char** out) {
  return guarded([&] { *out = dup_string(nbt::canonical_label(g->g)); });
}

nbt_status nbt_graph_mu1(const nbt_graph* g, double* out) {
  return guarded([&] { *out = nbt::mu1(g->g); });
}

nbt_status nbt_graph_trace_pow(const nbt_graph* g, int k, char** decimal_out) {
  return guarded([&] {
    *decimal_out = dup_string(nbt::trace_hashimoto_pow(g->g, k).convert_to<std::string>());
  });
}

nbt_status nbt_graph_count_snbc(const nbt_graph* g, int k, int64_t* out) {
  return guarded([&] { *out = nbt::count_snbc(g->g, k); });
}

nbt_status nbt_bgraph_parse(const char* json, nbt_bgraph** out) {
  return guarded([&] {
    nbt::BGraph g = nbt::bgraph_from_json(nbt::parse_json(json));
    *out = new nbt_bgraph{std::move(g)};
  });
}

nbt_status nbt_bgraph_to_json(const nbt_bgraph* g, char** json_out) {
  return guarded([&] { *json_out = dup_string(nbt::dump_json(nbt::to_json(g->g))); });
}

void nbt_bgraph_free(nbt_bgraph* g) { delete g; }

nbt_status nbt_bgraph_canonical_label(const nbt_bgraph* g, char** out) {
  return guarded([&] { *out = dup_string(nbt::canonical_label(g->g)); });
}

nbt_status nbt_count_injections(const nbt_bgraph* s, const nbt_bgraph* g, int64_t* out) {
  return guarded([&] { *out = nbt::count_injections(s->g, g->g); });
}

nbt_status nbt_aut_count(const nbt_bgraph* s, int64_t* out) {
  return guarded([&] { *out = nbt::aut_count(s->g); });
}

nbt_status nbt_validate_cover(const nbt_bgraph* g, int* out) {
  return guarded([&] { *out = nbt::validate_cover(g->g) ? 1 : 0; });
}

nbt_status nbt_run(const char* command, const char* params_json, char** result_json) {
  return guarded([&] {
    const auto& table = command_table();
    auto it = table.find(command ? command : "");
    nbt::require(it != table.end(), nbt::Errc::parse_error,
                 "unknown command '" + std::string(command ? command : "") + "'");
    Json params = nbt::parse_json(params_json ? params_json : "{}");
    Json result = it->second(params);
    *result_json = dup_string(nbt::dump_json(result));
  });
}

}  // extern "C"
