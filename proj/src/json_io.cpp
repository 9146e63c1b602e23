#include "nbt/json_io.hpp"

#include <algorithm>

namespace nbt {
namespace {

const Json& field(const Json& j, const char* name) {
  auto it = j.find(name);
  require(it != j.end(), Errc::parse_error, std::string("missing field '") + name + "'");
  return *it;
}

std::string bigint_str(const Bigint& b) { return b.convert_to<std::string>(); }

}  // namespace

Json parse_json(const std::string& text) {
  Json j = Json::parse(text, nullptr, false);
  require(!j.is_discarded(), Errc::parse_error, "malformed JSON");
  return j;
}

std::string dump_json(const Json& j) { return j.dump(); }

Json to_json(const Graph& g) {
  Json dedges = Json::array();
  for (int e = 0; e < static_cast<int>(g.num_dedges()); ++e) {
    dedges.push_back({{"id", g.dedge_ids()[e]},
                      {"tail", g.vertex_ids()[g.tail(e)]},
                      {"head", g.vertex_ids()[g.head(e)]},
                      {"inv", g.dedge_ids()[g.inv(e)]}});
  }
  return Json{{"vertices", g.vertex_ids()}, {"dedges", dedges}};
}

Graph graph_from_json(const Json& j) {
  require(j.is_object(), Errc::parse_error, "graph must be an object");
  std::vector<std::string> vertices;
  for (const auto& v : field(j, "vertices")) vertices.push_back(v.get<std::string>());
  std::vector<DedgeSpec> dedges;
  for (const auto& d : field(j, "dedges"))
    dedges.push_back({field(d, "id").get<std::string>(), field(d, "tail").get<std::string>(),
                      field(d, "head").get<std::string>(), field(d, "inv").get<std::string>()});
  return Graph::build(std::move(vertices), std::move(dedges));
}

Json to_json(const BGraph& g) {
  Json j = to_json(g.graph());
  j["base"] = to_json(g.base());
  Json vmap = Json::object(), emap = Json::object();
  for (std::size_t v = 0; v < g.graph().num_vertices(); ++v)
    vmap[g.graph().vertex_ids()[v]] = g.base().vertex_ids()[g.vmap(static_cast<int>(v))];
  for (std::size_t e = 0; e < g.graph().num_dedges(); ++e)
    emap[g.graph().dedge_ids()[e]] = g.base().dedge_ids()[g.emap(static_cast<int>(e))];
  j["vmap"] = vmap;
  j["emap"] = emap;
  return j;
}

BGraph bgraph_from_json(const Json& j) {
  Graph graph = graph_from_json(j);
  Graph base = graph_from_json(field(j, "base"));
  std::map<std::string, std::string> vmap, emap;
  for (const auto& [k, v] : field(j, "vmap").items()) vmap[k] = v.get<std::string>();
  for (const auto& [k, v] : field(j, "emap").items()) emap[k] = v.get<std::string>();
  return BGraph::build(std::move(graph), std::move(base), vmap, emap);
}

Json to_json(const OrderedGraph& g) {
  Json j;
  j["graph"] = to_json(g.graph());
  Json orient = Json::array(), vorder = Json::array();
  for (int e : g.edge_order()) orient.push_back(g.graph().dedge_ids()[e]);
  for (int v : g.vertex_order()) vorder.push_back(g.graph().vertex_ids()[v]);
  j["edge_order"] = orient;
  j["vertex_order"] = vorder;
  return j;
}

OrderedGraph ordered_graph_from_json(const Json& j) {
  Graph g = graph_from_json(field(j, "graph"));
  std::vector<int> eorder, vorder;
  for (const auto& id : field(j, "edge_order")) {
    int e = g.dedge_index(id.get<std::string>());
    require(e >= 0, Errc::dangling_reference, "edge_order references a missing dedge");
    eorder.push_back(e);
  }
  for (const auto& id : field(j, "vertex_order")) {
    int v = g.vertex_index(id.get<std::string>());
    require(v >= 0, Errc::dangling_reference, "vertex_order references a missing vertex");
    vorder.push_back(v);
  }
  return OrderedGraph::build(std::move(g), eorder, vorder, eorder);
}

Json to_json(const LengthedType& t) {
  return Json{{"type", to_json(t.otype)}, {"lengths", t.lengths}};
}

LengthedType lengthed_type_from_json(const Json& j) {
  OrderedGraph ot = ordered_graph_from_json(field(j, "type"));
  std::vector<int> lengths = field(j, "lengths").get<std::vector<int>>();
  return LengthedType::build(std::move(ot), std::move(lengths));
}

Json to_json(const CoverSample& s) {
  Json sigma = Json::object();
  for (int e = 0; e < static_cast<int>(s.base.num_dedges()); ++e)
    if (s.base.orbit_rep(e) == e) sigma[s.base.dedge_ids()[e]] = s.sigma[e];
  return Json{{"base", to_json(s.base)}, {"n", s.n}, {"sigma", sigma}};
}

CoverSample cover_sample_from_json(const Json& j) {
  CoverSample s;
  s.base = graph_from_json(field(j, "base"));
  s.n = field(j, "n").get<int>();
  require(s.n >= 1, Errc::validation, "cover degree must be >= 1");
  s.sigma.assign(s.base.num_dedges(), {});
  for (const auto& [id, perm] : field(j, "sigma").items()) {
    int e = s.base.dedge_index(id);
    require(e >= 0, Errc::dangling_reference, "sigma references a missing dedge");
    std::vector<int> p = perm.get<std::vector<int>>();
    require(static_cast<int>(p.size()) == s.n, Errc::validation, "sigma size mismatch");
    std::vector<char> seen(s.n, 0);
    for (int x : p) {
      require(x >= 0 && x < s.n && !seen[x], Errc::validation, "sigma is not a permutation");
      seen[x] = 1;
    }
    s.sigma[e] = p;
    if (s.base.inv(e) != e) {
      std::vector<int> inv(s.n);
      for (int i = 0; i < s.n; ++i) inv[p[i]] = i;
      s.sigma[s.base.inv(e)] = std::move(inv);
    } else {
      for (int i = 0; i < s.n; ++i)
        require(p[p[i]] == i, Errc::validation, "half-loop sigma must be an involution");
    }
  }
  for (int e = 0; e < static_cast<int>(s.base.num_dedges()); ++e)
    require(!s.sigma[e].empty(), Errc::validation, "sigma missing an orientation edge");
  return s;
}

Json to_json(const CertificateSet& c) {
  return Json{{"type", to_json(c.type)},   {"type_label", c.type_label}, {"nu", c.nu},
              {"strict", c.strict},        {"minima", c.minima},         {"cap", c.cap_used},
              {"verified", c.verified}};
}

CertificateSet certificate_set_from_json(const Json& j) {
  CertificateSet c;
  c.type = ordered_graph_from_json(field(j, "type"));
  c.type_label = field(j, "type_label").get<std::string>();
  c.nu = field(j, "nu").get<double>();
  c.strict = field(j, "strict").get<bool>();
  c.minima = field(j, "minima").get<std::vector<std::vector<int>>>();
  c.cap_used = field(j, "cap").get<int>();
  c.verified = field(j, "verified").get<bool>();
  return c;
}

Json to_json(const TangleSpec& s) {
  Json gens = Json::array();
  for (const auto& g : s.generators) gens.push_back(to_json(g));
  return Json{{"nu", s.nu},
              {"r", s.r},
              {"cap", s.cap},
              {"verified", s.verified},
              {"generators", gens}};
}

TangleSpec tangle_spec_from_json(const Json& j) {
  TangleSpec s;
  s.nu = field(j, "nu").get<double>();
  s.r = field(j, "r").get<int>();
  s.cap = field(j, "cap").get<int>();
  s.verified = field(j, "verified").get<bool>();
  for (const auto& g : field(j, "generators")) s.generators.push_back(graph_from_json(g));
  return s;
}

Json to_json(const IsoClassTable& t) {
  Json classes = Json::array();
  for (const auto& e : t.classes) {
    classes.push_back({{"label", e.label},
                       {"rep", to_json(e.rep)},
                       {"order", e.order},
                       {"mobius", {{"num", bigint_str(numerator(e.mobius))},
                                   {"den", bigint_str(denominator(e.mobius))}}}});
  }
  return Json{{"classes", classes}};
}

Json to_json(const ExperimentConfig& c) {
  Json j{{"base", to_json(c.base)},
         {"model", {{"kind", c.model.name()}}},
         {"nu", c.nu},
         {"r", c.r},
         {"k_list", c.k_list},
         {"n_list", c.n_list},
         {"samples_per_n", c.samples_per_n},
         {"seed", c.seed},
         {"trace_kind", trace_kind_name(c.trace_kind)},
         {"guard_c", c.guard_c},
         {"tangle_cap", c.tangle_cap},
         {"jobs", c.jobs}};
  if (c.subgraph) j["subgraph"] = to_json(*c.subgraph);
  return j;
}

ExperimentConfig experiment_config_from_json(const Json& j) {
  ExperimentConfig c;
  c.base = graph_from_json(field(j, "base"));
  c.model = CoverModel::parse(field(field(j, "model"), "kind").get<std::string>());
  if (j.contains("nu")) c.nu = j["nu"].get<double>();
  if (j.contains("r")) c.r = j["r"].get<int>();
  if (j.contains("k_list")) c.k_list = j["k_list"].get<std::vector<int>>();
  c.n_list = field(j, "n_list").get<std::vector<int>>();
  c.samples_per_n = field(j, "samples_per_n").get<int>();
  c.seed = field(j, "seed").get<std::uint64_t>();
  c.trace_kind = trace_kind_parse(field(j, "trace_kind").get<std::string>());
  if (j.contains("guard_c")) c.guard_c = j["guard_c"].get<double>();
  if (j.contains("tangle_cap")) c.tangle_cap = j["tangle_cap"].get<int>();
  if (j.contains("jobs")) c.jobs = j["jobs"].get<int>();
  if (j.contains("subgraph")) c.subgraph = bgraph_from_json(j["subgraph"]);
  return c;
}

Json to_json(const ExpansionReport& r) {
  Json raw = Json::array();
  for (const auto& row : r.raw) {
    Json jr = Json::array();
    for (const auto& cell : row)
      jr.push_back({{"mean", cell.mean}, {"se", cell.std_error}, {"count", cell.count}});
    raw.push_back(jr);
  }
  Json coeff = Json::array();
  for (const auto& row : r.coefficients) {
    Json jr = Json::array();
    for (const auto& c : row) jr.push_back({{"estimate", c.estimate}, {"se", c.std_error}});
    coeff.push_back(jr);
  }
  Json ref = Json::array();
  for (const auto& b : r.reference_c0) ref.push_back(bigint_str(b));
  return Json{{"k_list", r.k_list},
              {"n_list", r.n_list},
              {"raw", raw},
              {"coefficients", coeff},
              {"reference_c0", ref},
              {"fit_residuals", r.fit_residuals},
              {"flags", r.flags}};
}

ExpansionReport report_from_json(const Json& j) {
  ExpansionReport r;
  r.k_list = field(j, "k_list").get<std::vector<int>>();
  r.n_list = field(j, "n_list").get<std::vector<int>>();
  for (const auto& row : field(j, "raw")) {
    std::vector<RawCell> cells;
    for (const auto& c : row)
      cells.push_back({field(c, "mean").get<double>(), field(c, "se").get<double>(),
                       field(c, "count").get<long long>()});
    r.raw.push_back(std::move(cells));
  }
  if (j.contains("coefficients"))
    for (const auto& row : j["coefficients"]) {
      std::vector<Coefficient> cs;
      for (const auto& c : row)
        cs.push_back({field(c, "estimate").get<double>(), field(c, "se").get<double>()});
      r.coefficients.push_back(std::move(cs));
    }
  if (j.contains("reference_c0"))
    for (const auto& s : j["reference_c0"]) r.reference_c0.push_back(Bigint(s.get<std::string>()));
  if (j.contains("fit_residuals"))
    r.fit_residuals = j["fit_residuals"].get<std::vector<std::vector<double>>>();
  if (j.contains("flags")) r.flags = j["flags"].get<std::vector<std::string>>();
  return r;
}

}  // namespace nbt
