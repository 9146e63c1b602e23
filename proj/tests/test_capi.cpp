// Exercises the shared-library C surface end to end: handles, error codes,
// and the JSON command dispatcher.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstring>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "nbtrace.h"

namespace {

const char* kC3 =
    R"({"dedges":[{"head":"v1","id":"e0","inv":"e0~","tail":"v0"},)"
    R"({"head":"v0","id":"e0~","inv":"e0","tail":"v1"},)"
    R"({"head":"v2","id":"e1","inv":"e1~","tail":"v1"},)"
    R"({"head":"v1","id":"e1~","inv":"e1","tail":"v2"},)"
    R"({"head":"v0","id":"e2","inv":"e2~","tail":"v2"},)"
    R"({"head":"v2","id":"e2~","inv":"e2","tail":"v0"}],)"
    R"("vertices":["v0","v1","v2"]})";

const char* kBouquet2 =
    R"({"dedges":[{"head":"v","id":"l0","inv":"l0~","tail":"v"},)"
    R"({"head":"v","id":"l0~","inv":"l0","tail":"v"},)"
    R"({"head":"v","id":"l1","inv":"l1~","tail":"v"},)"
    R"({"head":"v","id":"l1~","inv":"l1","tail":"v"}],"vertices":["v"]})";

std::string take(char* s) {
  std::string out = s;
  nbt_string_free(s);
  return out;
}

std::string run_ok(const char* cmd, const nlohmann::json& params) {
  char* out = nullptr;
  nbt_status st = nbt_run(cmd, params.dump().c_str(), &out);
  REQUIRE(st == NBT_OK);
  return take(out);
}

}  // namespace

TEST_CASE("graph handles: parse, query, round-trip") {
  nbt_graph* g = nullptr;
  REQUIRE(nbt_graph_parse(kC3, &g) == NBT_OK);

  int64_t order = -1;
  CHECK(nbt_graph_order(g, &order) == NBT_OK);
  CHECK(order == 0);

  int64_t num = 0, den = 0;
  CHECK(nbt_graph_euler_char(g, &num, &den) == NBT_OK);
  CHECK(num == 0);
  CHECK(den == 1);

  double mu = -1;
  CHECK(nbt_graph_mu1(g, &mu) == NBT_OK);
  CHECK(mu == doctest::Approx(1.0).epsilon(1e-9));

  char* trace = nullptr;
  CHECK(nbt_graph_trace_pow(g, 3, &trace) == NBT_OK);
  CHECK(take(trace) == "6");

  int64_t snbc = 0;
  CHECK(nbt_graph_count_snbc(g, 3, &snbc) == NBT_OK);
  CHECK(snbc == 6);

  int positive = -1;
  CHECK(nbt_graph_is_positive(g, &positive) == NBT_OK);
  CHECK(positive == 0);

  char* json1 = nullptr;
  CHECK(nbt_graph_to_json(g, &json1) == NBT_OK);
  std::string text1 = take(json1);
  nbt_graph* g2 = nullptr;
  REQUIRE(nbt_graph_parse(text1.c_str(), &g2) == NBT_OK);
  char* json2 = nullptr;
  CHECK(nbt_graph_to_json(g2, &json2) == NBT_OK);
  CHECK(take(json2) == text1);  // byte-identical round trip

  nbt_graph* pruned = nullptr;
  CHECK(nbt_graph_prune(g, &pruned) == NBT_OK);
  char* la = nullptr;
  char* lb = nullptr;
  CHECK(nbt_graph_canonical_label(g, &la) == NBT_OK);
  CHECK(nbt_graph_canonical_label(pruned, &lb) == NBT_OK);
  CHECK(take(la) == take(lb));

  nbt_graph_free(pruned);
  nbt_graph_free(g2);
  nbt_graph_free(g);
}

TEST_CASE("error codes and messages surface through the C API") {
  const char* bad =
      R"({"dedges":[{"head":"w","id":"e","inv":"f","tail":"u"},)"
      R"({"head":"w","id":"f","inv":"e","tail":"u"}],"vertices":["u","w"]})";
  nbt_graph* g = nullptr;
  CHECK(nbt_graph_parse(bad, &g) == NBT_ERR_INVALID_INVOLUTION);
  CHECK(std::strlen(nbt_last_error()) > 0);
  CHECK(nbt_graph_parse("{not json", &g) == NBT_ERR_PARSE);

  char* out = nullptr;
  CHECK(nbt_run("no-such-command", "{}", &out) == NBT_ERR_PARSE);
  CHECK(nbt_run("trace", R"({"graph":{"vertices":[],"dedges":[]}})", &out) ==
        NBT_ERR_PARSE);  // missing k parameter
  CHECK(nbt_run("trace", R"({"graph":{"vertices":[],"dedges":[]},"k":0})", &out) ==
        NBT_ERR_VALIDATION);
}

TEST_CASE("bgraph handles and injections") {
  nlohmann::json b2 = nlohmann::json::parse(kBouquet2);
  nlohmann::json eight = b2;
  eight["base"] = b2;
  eight["vmap"] = {{"v", "v"}};
  eight["emap"] = {{"l0", "l0"}, {"l0~", "l0~"}, {"l1", "l1"}, {"l1~", "l1~"}};
  nbt_bgraph* s = nullptr;
  REQUIRE(nbt_bgraph_parse(eight.dump().c_str(), &s) == NBT_OK);
  int64_t aut = 0;
  CHECK(nbt_aut_count(s, &aut) == NBT_OK);
  CHECK(aut == 1);  // distinct edge labels leave only the identity
  int64_t inj = 0;
  CHECK(nbt_count_injections(s, s, &inj) == NBT_OK);
  CHECK(inj == aut);
  int valid = -1;
  CHECK(nbt_validate_cover(s, &valid) == NBT_OK);
  CHECK(valid == 1);  // the identity cover of degree 1
  nbt_bgraph_free(s);
}

TEST_CASE("command dispatcher worked examples") {
  nlohmann::json c3 = nlohmann::json::parse(kC3);
  nlohmann::json b2 = nlohmann::json::parse(kBouquet2);

  auto trace = nlohmann::json::parse(run_ok("trace", {{"graph", c3}, {"k", 3}}));
  CHECK(trace["trace"] == "6");

  auto c0 = nlohmann::json::parse(run_ok("c0", {{"base", b2}, {"k", 4}}));
  CHECK(c0["c0"] == "100");

  auto mu = nlohmann::json::parse(run_ok("mu1", {{"graph", b2}}));
  CHECK(mu["mu1"].get<double>() == doctest::Approx(3.0));

  auto certs = nlohmann::json::parse(
      run_ok("certificates", {{"type", b2}, {"nu", 1.5}, {"strict", true}, {"cap", 12}}));
  CHECK(certs["verified"].get<bool>());
  CHECK(certs["minima"].size() > 0);

  auto tangles = nlohmann::json::parse(run_ok("tangles", {{"nu", 3.0}, {"r", 2}, {"cap", 8}}));
  CHECK(tangles["generators"].size() == 1);
  CHECK(tangles["verified"].get<bool>());

  auto ht = nlohmann::json::parse(
      run_ok("has-tangle", {{"graph", b2}, {"nu", 3.0}, {"r", 2}, {"cap", 8}}));
  CHECK(ht["has_tangle"].get<bool>());

  auto ct = nlohmann::json::parse(run_ok(
      "cert-trace", {{"graph", b2}, {"nu", 2.0}, {"r", 5}, {"k", 2}, {"strict", true}}));
  CHECK(ct["direct"].get<long long>() == 4);
  CHECK(ct["incl_excl"].get<long long>() == 4);

  auto vlg = nlohmann::json::parse(
      run_ok("vlg", {{"type", b2}, {"lengths", std::vector<int>{2, 3}}}));
  CHECK(vlg["graph"]["vertices"].size() == 4);

  auto sup = nlohmann::json::parse(run_ok(
      "suppress", {{"graph", c3}, {"keep", std::vector<std::string>{"v0"}}}));
  CHECK(sup["lengths"] == nlohmann::json::array({3}));
}

TEST_CASE("estimate is byte-deterministic and composes with fit") {
  nlohmann::json b2 = nlohmann::json::parse(kBouquet2);
  nlohmann::json cfg{{"base", b2},
                     {"model", {{"kind", "permutation"}}},
                     {"k_list", {2, 3}},
                     {"n_list", {8, 16, 24, 32}},
                     {"samples_per_n", 60},
                     {"seed", 424242},
                     {"trace_kind", "plain"}};
  std::string once = run_ok("estimate", {{"config", cfg}});
  std::string twice = run_ok("estimate", {{"config", cfg}});
  CHECK(once == twice);

  // estimate --fit equals estimate piped through fit, byte for byte
  std::string fused = run_ok("estimate", {{"config", cfg}, {"fit_r", 2}});
  nlohmann::json report = nlohmann::json::parse(once);
  std::string composed = run_ok("fit", {{"report", report}, {"r", 2}});
  CHECK(fused == composed);

  auto sampled = nlohmann::json::parse(run_ok(
      "sample-cover",
      {{"base", b2}, {"model", {{"kind", "permutation"}, {"n", 5}, {"seed", 9}}}}));
  CHECK(sampled["valid"].get<bool>());
  nbt_bgraph* cover = nullptr;
  REQUIRE(nbt_bgraph_parse(sampled["cover"].dump().c_str(), &cover) == NBT_OK);
  int valid = 0;
  CHECK(nbt_validate_cover(cover, &valid) == NBT_OK);
  CHECK(valid == 1);
  nbt_bgraph_free(cover);
}
