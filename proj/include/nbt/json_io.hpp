#pragma once

#include <json.hpp>

#include "nbt/certificates.hpp"
#include "nbt/covers.hpp"
#include "nbt/expansion.hpp"
#include "nbt/graph.hpp"
#include "nbt/mobius.hpp"
#include "nbt/tangles.hpp"
#include "nbt/walks.hpp"

namespace nbt {

// nlohmann::json with the default (ordered) object map: keys serialize
// sorted, which makes dumps byte-stable.
using Json = nlohmann::json;

Json parse_json(const std::string& text);      // wraps parse failures
std::string dump_json(const Json& j);          // compact, trailing newline free

Json to_json(const Graph& g);
Graph graph_from_json(const Json& j);

Json to_json(const BGraph& g);
BGraph bgraph_from_json(const Json& j);

Json to_json(const OrderedGraph& g);
OrderedGraph ordered_graph_from_json(const Json& j);

Json to_json(const LengthedType& t);
LengthedType lengthed_type_from_json(const Json& j);

Json to_json(const CoverSample& s);
CoverSample cover_sample_from_json(const Json& j);

Json to_json(const CertificateSet& c);
CertificateSet certificate_set_from_json(const Json& j);

Json to_json(const TangleSpec& s);
TangleSpec tangle_spec_from_json(const Json& j);

Json to_json(const IsoClassTable& t);

Json to_json(const ExperimentConfig& c);
ExperimentConfig experiment_config_from_json(const Json& j);

Json to_json(const ExpansionReport& r);
ExpansionReport report_from_json(const Json& j);

}  // namespace nbt
