#pragma once

#include <optional>
#include <string>

#include "json.hpp"

#include "forge/decomposition.hpp"
#include "forge/graph.hpp"
#include "forge/problems.hpp"
#include "forge/reductions.hpp"

namespace forge {

using Json = nlohmann::json;

constexpr int kSchemaVersion = 1;

// One instance file. Object keys are kept sorted, so dumping is canonical.
struct Document {
    std::string type;  // mcc | aonf | co | upward | rect
    CapGraph graph;
    std::optional<Embedding> emb;
    Json parameters = Json::object();
    Json provenance = Json::object();
    std::optional<PathDecomposition> pd;
};

std::string dump_document(const Document& d);
/// ParseError on malformed text, missing fields or dangling ids.
Document parse_document(const std::string& text);

Document document_of(const MccInstance& inst);
Document document_of(const AonfStage& st);
Document document_of(const CoStage& st);
Document document_of(const NormalStage& st);
Document document_of(const UpwardStage& st);
Document document_of(const RectStage& st);

MccInstance mcc_of(const Document& d);
FlowNetwork network_of(const Document& d);

// Certificates
Json certificate_json(const Clique& c);
Json certificate_json(const AoNFlow& f);
Json certificate_json(const Orientation& o);
Json certificate_json(const UpwardCertificate& c);
Json certificate_json(const RectCertificate& c);

Clique clique_of(const Json& j);
AoNFlow flow_of(const Json& j, int arcs);
Orientation orientation_of(const Json& j);
UpwardCertificate upward_certificate_of(const Json& j);
RectCertificate rect_certificate_of(const Json& j);

/// Graphviz text; capacities label the edges and tag prefixes become clusters.
std::string export_dot(const Document& d);

}  // namespace forge
