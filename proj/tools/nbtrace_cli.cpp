// Command-line front end for the nbtrace shared library.  Every subcommand
// assembles a JSON parameter object from its flags, hands it to nbt_run, and
// prints the JSON result; all randomness sits behind explicit --seed flags.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "nbtrace.h"

namespace {

using Json = nlohmann::json;

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CLI::ValidationError("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  Json j = Json::parse(buf.str(), nullptr, false);
  if (j.is_discarded()) throw CLI::ValidationError("malformed JSON in '" + path + "'");
  return j;
}

std::vector<int> parse_int_list(const std::string& csv) {
  std::vector<int> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
  return out;
}

std::vector<std::string> parse_str_list(const std::string& csv) {
  std::vector<std::string> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

int run_command(const std::string& name, const Json& params, bool require_verified,
                const std::string& csv_path = "") {
  char* result = nullptr;
  nbt_status status = nbt_run(name.c_str(), params.dump().c_str(), &result);
  if (status != NBT_OK) {
    Json err{{"error", {{"code", static_cast<int>(status)}, {"message", nbt_last_error()}}}};
    std::cout << err.dump() << "\n";
    return 2;
  }
  std::string text = result;
  nbt_string_free(result);
  std::cout << text << "\n";
  Json parsed = Json::parse(text);
  if (!csv_path.empty()) {
    std::ofstream csv(csv_path);
    csv << "k,n,mean,se\n";
    const auto& ks = parsed["k_list"];
    const auto& ns = parsed["n_list"];
    for (std::size_t ki = 0; ki < ks.size(); ++ki)
      for (std::size_t ni = 0; ni < ns.size(); ++ni) {
        const auto& cell = parsed["raw"][ki][ni];
        csv << ks[ki] << "," << ns[ni] << "," << cell["mean"] << "," << cell["se"] << "\n";
      }
  }
  if (require_verified && parsed.contains("verified") && !parsed["verified"].get<bool>())
    return 3;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"non-backtracking trace machinery for random covering graphs"};
  app.require_subcommand(1);

  std::string graph_file, base_file, type_file, spec_file, report_file, config_file;
  std::string subgraph_file, generators_csv, keep_csv, lengths_csv, n_list_csv, kind, method;
  std::string csv_path;
  int k = 1, r = 1, cap = 12, n = 1, samples = 1000, jobs = 1, fit_r = 0;
  double nu = 1.8;
  std::uint64_t seed = 0;
  bool weak = false, require_verified = false, bruteforce = false;

  auto* c_trace = app.add_subcommand("trace", "exact Trace(H^k)");
  c_trace->add_option("--graph", graph_file)->required();
  c_trace->add_option("--k", k)->required();

  auto* c_mu1 = app.add_subcommand("mu1", "Perron-Frobenius eigenvalue of H");
  c_mu1->add_option("--graph", graph_file);
  c_mu1->add_option("--type", type_file);
  c_mu1->add_option("--lengths", lengths_csv);

  auto* c_snbc = app.add_subcommand("snbc", "strictly non-backtracking closed walk counts");
  c_snbc->add_option("--graph", graph_file)->required();
  c_snbc->add_option("--k", k)->required();
  auto* snbc_r = c_snbc->add_option("--r", r);

  auto* c_sup = app.add_subcommand("suppress", "bead suppression to the homotopy type");
  c_sup->add_option("--graph", graph_file)->required();
  c_sup->add_option("--keep", keep_csv)->required();

  auto* c_vlg = app.add_subcommand("vlg", "build the variable-length graph");
  c_vlg->add_option("--type", type_file)->required();
  c_vlg->add_option("--lengths", lengths_csv)->required();

  auto* c_cert = app.add_subcommand("certificates", "minimal certificates of the upper set");
  c_cert->add_option("--type", type_file)->required();
  c_cert->add_option("--nu", nu)->required();
  c_cert->add_flag("--weak", weak);
  c_cert->add_option("--cap", cap);
  c_cert->add_flag("--require-verified", require_verified);

  auto* c_ct = app.add_subcommand("cert-trace", "certified traces, direct and inclusion-exclusion");
  c_ct->add_option("--graph", graph_file)->required();
  c_ct->add_option("--nu", nu)->required();
  c_ct->add_option("--r", r)->required();
  c_ct->add_option("--k", k)->required();
  c_ct->add_flag("--weak", weak);
  c_ct->add_option("--method", method)->default_val("both");

  auto* c_tg = app.add_subcommand("tangles", "enumerate minimal tangles");
  c_tg->add_option("--nu", nu)->required();
  c_tg->add_option("--r", r)->required();
  c_tg->add_option("--cap", cap);
  c_tg->add_flag("--require-verified", require_verified);

  auto* c_ht = app.add_subcommand("has-tangle", "tangle detection");
  c_ht->add_option("--graph", graph_file)->required();
  c_ht->add_option("--spec", spec_file);
  c_ht->add_option("--nu", nu);
  c_ht->add_option("--r", r);
  c_ht->add_option("--cap", cap);
  c_ht->add_flag("--bruteforce", bruteforce);

  auto* c_mb = app.add_subcommand("mobius", "derived classes and the Mobius function");
  c_mb->add_option("--generators", generators_csv)->required();
  c_mb->add_option("--r", r)->required();

  auto* c_ind = app.add_subcommand("indicator", "truncated Psi-indicator value");
  c_ind->add_option("--graph", graph_file)->required();
  c_ind->add_option("--generators", generators_csv)->required();
  c_ind->add_option("--r", r)->required();

  auto* c_sc = app.add_subcommand("sample-cover", "draw a coordinatized random cover");
  c_sc->add_option("--base", base_file)->required();
  c_sc->add_option("--kind", kind)->required();
  c_sc->add_option("--n", n)->required();
  c_sc->add_option("--seed", seed)->required();

  auto* c_est = app.add_subcommand("estimate", "Monte Carlo estimation of a trace functional");
  c_est->add_option("--config", config_file)->required();
  auto* est_fit = c_est->add_option("--fit", fit_r);
  c_est->add_option("--csv", csv_path);
  auto* est_seed = c_est->add_option("--seed", seed);
  auto* est_jobs = c_est->add_option("--jobs", jobs);

  auto* c_fit = app.add_subcommand("fit", "fit expansion coefficients to a report");
  c_fit->add_option("--report", report_file)->required();
  c_fit->add_option("--r", r)->required();
  c_fit->add_option("--csv", csv_path);

  auto* c_sp = app.add_subcommand("subgraph-prob", "empirical subgraph-presence probability");
  c_sp->add_option("--base", base_file)->required();
  c_sp->add_option("--kind", kind)->required();
  c_sp->add_option("--subgraph", subgraph_file)->required();
  c_sp->add_option("--n-list", n_list_csv)->required();
  c_sp->add_option("--samples", samples)->required();
  c_sp->add_option("--seed", seed)->required();
  c_sp->add_option("--jobs", jobs);

  auto* c_ho = app.add_subcommand("high-order", "empirical high-order SNBC counts");
  c_ho->add_option("--base", base_file)->required();
  c_ho->add_option("--kind", kind)->required();
  c_ho->add_option("--r", r)->required();
  c_ho->add_option("--k", k)->required();
  c_ho->add_option("--n-list", n_list_csv)->required();
  c_ho->add_option("--samples", samples)->required();
  c_ho->add_option("--seed", seed)->required();
  c_ho->add_option("--jobs", jobs);

  auto* c_c0 = app.add_subcommand("c0", "reference zeroth coefficient");
  c_c0->add_option("--base", base_file)->required();
  c_c0->add_option("--k", k)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (c_trace->parsed())
      return run_command("trace", {{"graph", read_json_file(graph_file)}, {"k", k}}, false);
    if (c_mu1->parsed()) {
      Json p;
      if (!type_file.empty()) {
        p["type"] = read_json_file(type_file);
        p["lengths"] = parse_int_list(lengths_csv);
      } else if (!graph_file.empty()) {
        p["graph"] = read_json_file(graph_file);
      } else {
        std::cerr << "mu1 needs --graph or --type\n";
        return 2;
      }
      return run_command("mu1", p, false);
    }
    if (c_snbc->parsed()) {
      Json p{{"graph", read_json_file(graph_file)}, {"k", k}};
      if (snbc_r->count()) p["r"] = r;
      return run_command("snbc", p, false);
    }
    if (c_sup->parsed())
      return run_command(
          "suppress", {{"graph", read_json_file(graph_file)}, {"keep", parse_str_list(keep_csv)}},
          false);
    if (c_vlg->parsed())
      return run_command(
          "vlg", {{"type", read_json_file(type_file)}, {"lengths", parse_int_list(lengths_csv)}},
          false);
    if (c_cert->parsed())
      return run_command("certificates",
                         {{"type", read_json_file(type_file)},
                          {"nu", nu},
                          {"strict", !weak},
                          {"cap", cap}},
                         require_verified);
    if (c_ct->parsed())
      return run_command("cert-trace",
                         {{"graph", read_json_file(graph_file)},
                          {"nu", nu},
                          {"r", r},
                          {"k", k},
                          {"strict", !weak},
                          {"method", method}},
                         false);
    if (c_tg->parsed())
      return run_command("tangles", {{"nu", nu}, {"r", r}, {"cap", cap}}, require_verified);
    if (c_ht->parsed()) {
      Json p{{"graph", read_json_file(graph_file)}};
      if (!spec_file.empty())
        p["spec"] = read_json_file(spec_file);
      else {
        p["nu"] = nu;
        p["r"] = r;
        p["cap"] = cap;
      }
      if (bruteforce) p["bruteforce"] = true;
      return run_command("has-tangle", p, false);
    }
    if (c_mb->parsed() || c_ind->parsed()) {
      Json gens = Json::array();
      for (const auto& f : parse_str_list(generators_csv)) gens.push_back(read_json_file(f));
      Json p{{"generators", gens}, {"r", r}};
      if (c_ind->parsed()) {
        p["graph"] = read_json_file(graph_file);
        return run_command("indicator", p, false);
      }
      return run_command("mobius", p, false);
    }
    if (c_sc->parsed())
      return run_command("sample-cover",
                         {{"base", read_json_file(base_file)},
                          {"model", {{"kind", kind}, {"n", n}, {"seed", seed}}}},
                         false);
    if (c_est->parsed()) {
      Json cfg = read_json_file(config_file);
      if (est_seed->count()) cfg["seed"] = seed;
      if (est_jobs->count()) cfg["jobs"] = jobs;
      Json p{{"config", cfg}};
      if (est_fit->count()) p["fit_r"] = fit_r;
      return run_command("estimate", p, false, csv_path);
    }
    if (c_fit->parsed())
      return run_command("fit", {{"report", read_json_file(report_file)}, {"r", r}}, false,
                         csv_path);
    if (c_sp->parsed())
      return run_command("subgraph-prob",
                         {{"base", read_json_file(base_file)},
                          {"model", {{"kind", kind}}},
                          {"subgraph", read_json_file(subgraph_file)},
                          {"n_list", parse_int_list(n_list_csv)},
                          {"samples", samples},
                          {"seed", seed},
                          {"jobs", jobs}},
                         false);
    if (c_ho->parsed())
      return run_command("high-order",
                         {{"base", read_json_file(base_file)},
                          {"model", {{"kind", kind}}},
                          {"r", r},
                          {"k", k},
                          {"n_list", parse_int_list(n_list_csv)},
                          {"samples", samples},
                          {"seed", seed},
                          {"jobs", jobs}},
                         false);
    if (c_c0->parsed())
      return run_command("c0", {{"base", read_json_file(base_file)}, {"k", k}}, false);
  } catch (const CLI::ValidationError& e) {
    Json err{{"error", {{"code", 1}, {"message", e.what()}}}};
    std::cout << err.dump() << "\n";
    return 2;
  }
  return 2;
}
