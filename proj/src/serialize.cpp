#include <algorithm>
#include <map>
#include <sstream>

#include "forge/serialize.hpp"

namespace forge {

namespace {

const Json& need(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
    return j.at(key);
}

template <class T>
T get(const Json& j, const char* key) {
    try {
        return need(j, key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("field '") + key + "': " + e.what());
    }
}

Json bools(const std::vector<bool>& v) {
    Json a = Json::array();
    for (bool b : v) a.push_back(b ? 1 : 0);
    return a;
}

std::vector<bool> bools_of(const Json& j, const char* key) {
    std::vector<bool> out;
    for (int x : get<std::vector<int>>(j, key)) {
        if (x != 0 && x != 1) throw ParseError(std::string("field '") + key + "' holds a non-boolean");
        out.push_back(x == 1);
    }
    return out;
}

Document base_document(const std::string& type, const CapGraph& g, const Embedding* e, const PathDecomposition* pd) {
    Document d;
    d.type = type;
    d.graph = g;
    if (e) d.emb = *e;
    if (pd) d.pd = *pd;
    return d;
}

// Leading tag segment used for clustering, e.g. "vs:1:2" of "vs:1:2:3:0".
std::string cluster_of(const std::string& tag) {
    if (tag.rfind("tendril:", 0) == 0) return tag.substr(0, tag.find(':', 8));
    if (tag.rfind("vs:", 0) == 0 || tag.rfind("ch:", 0) == 0) {
        size_t a = tag.find(':', 3);
        return a == std::string::npos ? tag : tag.substr(0, a);
    }
    return {};
}

}  // namespace

std::string dump_document(const Document& d) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["type"] = d.type;
    Json vs = Json::array();
    for (int v = 0; v < d.graph.g.n; ++v) vs.push_back({{"id", v}, {"name", d.graph.g.vname[v]}});
    j["vertices"] = vs;
    Json es = Json::array();
    for (const auto& e : d.graph.g.edges)
        es.push_back({{"id", e.id},
                      {"u", e.u},
                      {"v", e.v},
                      {"cap", d.graph.cap[e.id]},
                      {"directed", e.directed},
                      {"tag", d.graph.g.etag[e.id]}});
    j["edges"] = es;
    if (d.emb) j["embedding"] = {{"rotation", d.emb->rot}, {"outer_face", d.emb->outer}};
    j["parameters"] = d.parameters;
    j["provenance"] = d.provenance;
    if (d.pd) j["decomposition"] = {{"bags", d.pd->bags}, {"width", d.pd->width()}};
    return j.dump(2) + "\n";
}

Document parse_document(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
    if (get<int>(j, "schema_version") != kSchemaVersion) throw ParseError("unsupported schema_version");
    Document d;
    d.type = get<std::string>(j, "type");
    static const std::vector<std::string> kinds{"mcc", "aonf", "co", "upward", "rect"};
    if (std::find(kinds.begin(), kinds.end(), d.type) == kinds.end()) throw ParseError("unknown type " + d.type);
    const Json& vs = need(j, "vertices");
    if (!vs.is_array()) throw ParseError("vertices must be an array");
    for (size_t i = 0; i < vs.size(); ++i) {
        if (get<int>(vs[i], "id") != static_cast<int>(i)) throw ParseError("vertex ids must be 0..n-1 in order");
        d.graph.g.add_vertex(get<std::string>(vs[i], "name"));
    }
    const Json& es = need(j, "edges");
    if (!es.is_array()) throw ParseError("edges must be an array");
    for (size_t i = 0; i < es.size(); ++i) {
        const Json& e = es[i];
        if (get<int>(e, "id") != static_cast<int>(i)) throw ParseError("edge ids must be 0..m-1 in order");
        int u = get<int>(e, "u"), v = get<int>(e, "v");
        if (u < 0 || v < 0 || u >= d.graph.g.n || v >= d.graph.g.n)
            throw ParseError("edge " + std::to_string(i) + " names an unknown vertex");
        i64 c = get<i64>(e, "cap");
        if (c < 0) throw ParseError("negative capacity on edge " + std::to_string(i));
        d.graph.add_edge(u, v, c, get<std::string>(e, "tag"), get<bool>(e, "directed"));
    }
    if (j.contains("embedding")) {
        Embedding emb;
        emb.rot = get<std::vector<std::vector<int>>>(j["embedding"], "rotation");
        emb.outer = get<int>(j["embedding"], "outer_face");
        if (static_cast<int>(emb.rot.size()) != d.graph.g.n) throw ParseError("rotation needs one list per vertex");
        for (const auto& l : emb.rot)
            for (int id : l)
                if (id < 0 || id >= d.graph.g.m()) throw ParseError("rotation names an unknown edge");
        d.emb = emb;
    }
    d.parameters = need(j, "parameters");
    d.provenance = need(j, "provenance");
    if (!d.parameters.is_object() || !d.provenance.is_object()) throw ParseError("parameters and provenance are objects");
    if (j.contains("decomposition")) {
        PathDecomposition pd;
        pd.bags = get<std::vector<std::vector<int>>>(j["decomposition"], "bags");
        for (const auto& b : pd.bags)
            for (int v : b)
                if (v < 0 || v >= d.graph.g.n) throw ParseError("bag names an unknown vertex");
        d.pd = pd;
    }
    if (d.type == "mcc") {
        get<int>(d.parameters, "k");
        get<int>(d.parameters, "N");
        get<std::vector<std::vector<int>>>(d.parameters, "parts");
    }
    if (d.type == "aonf") {
        get<i64>(d.parameters, "F");
        get<int>(d.parameters, "s");
        get<int>(d.parameters, "t");
    }
    return d;
}

Document document_of(const MccInstance& inst) {
    CapGraph g;
    g.g = inst.g;
    g.cap.assign(inst.g.m(), 1);
    Document d = base_document("mcc", g, nullptr, nullptr);
    d.parameters = {{"k", inst.k}, {"N", inst.N}, {"parts", inst.parts}};
    return d;
}

MccInstance mcc_of(const Document& d) {
    if (d.type != "mcc") throw ParseError("expected an mcc document, got " + d.type);
    MccInstance inst;
    inst.g = d.graph.g;
    inst.k = get<int>(d.parameters, "k");
    inst.N = get<int>(d.parameters, "N");
    inst.parts = get<std::vector<std::vector<int>>>(d.parameters, "parts");
    for (const auto& p : inst.parts)
        for (int v : p)
            if (v < 0 || v >= inst.g.n) throw ParseError("part names an unknown vertex");
    inst.check();
    return inst;
}

Document document_of(const AonfStage& st) {
    Document d = base_document("aonf", st.net.net, &st.emb, &st.pd);
    d.parameters = {{"k", st.k}, {"N", st.N}, {"m", st.m}, {"F", st.net.F}, {"s", st.net.s}, {"t", st.net.t}};
    Json ne = Json::array();
    for (const auto& x : st.nonedges) ne.push_back({x.i, x.a, x.l, x.b});
    d.provenance = {{"nonedges", ne}, {"f1", st.f1}, {"f2", st.f2}};
    return d;
}

FlowNetwork network_of(const Document& d) {
    if (d.type != "aonf") throw ParseError("expected an aonf document, got " + d.type);
    FlowNetwork fn;
    fn.net = d.graph;
    fn.F = get<i64>(d.parameters, "F");
    fn.s = get<int>(d.parameters, "s");
    fn.t = get<int>(d.parameters, "t");
    if (fn.s < 0 || fn.t < 0 || fn.s >= fn.net.g.n || fn.t >= fn.net.g.n) throw ParseError("s or t out of range");
    for (const auto& e : fn.net.g.edges)
        if (!e.directed) throw ParseError("flow networks need directed arcs");
    return fn;
}

Document document_of(const CoStage& st) {
    Document d = base_document("co", st.graph, &st.emb, &st.pd);
    d.parameters = {{"alpha", st.alpha},
                    {"beta", st.beta},
                    {"xi", st.xi},
                    {"equivalence_guaranteed", st.equivalence_guaranteed},
                    {"s", st.s},
                    {"t", st.t},
                    {"S", st.S},
                    {"T", st.T}};
    d.provenance = {{"source_arc", st.source_arc}, {"cycle", std::vector<int>(st.cycle, st.cycle + 4)}};
    return d;
}

Document document_of(const NormalStage& st) {
    Document d = base_document("co", st.graph, &st.emb, &st.pd);
    d.parameters = {{"normalized", true}, {"subdivision_width", st.subdivision_width}};
    d.provenance = {{"parent", st.parent}, {"position", st.position}};
    return d;
}

Document document_of(const UpwardStage& st) {
    CapGraph g;
    g.g = st.skeleton;
    for (const auto& s : st.tendrils) g.cap.push_back(s.w);
    Document d = base_document("upward", g, &st.skel_emb, &st.skel_pd);
    d.parameters = {{"s", st.s},
                    {"t", st.t},
                    {"composed_width_bound", st.composed_width_bound},
                    {"tendril_check_limit", kTendrilCheckLimit}};
    Json ts = Json::array();
    for (const auto& s : st.tendrils) ts.push_back({{"edge", s.edge}, {"primal", s.primal}, {"w", s.w}});
    d.provenance = {{"tendrils", ts}, {"face_of_vertex", st.face_of_vertex}};
    return d;
}

Document document_of(const RectStage& st) {
    Document d = base_document("rect", st.skeleton, &st.skel_emb, &st.skel_pd);
    d.parameters = {{"theta", st.theta}, {"composed_width_bound", st.composed_width_bound}};
    Json ts = Json::array();
    for (const auto& s : st.tendrils) ts.push_back({{"edge", s.edge}, {"primal", s.primal}, {"w", s.w}});
    d.provenance = {{"tendrils", ts}, {"rep", st.rep}, {"face_of_vertex", st.face_of_vertex}};
    return d;
}

Json certificate_json(const Clique& c) { return {{"type", "clique"}, {"pick", c}}; }

Json certificate_json(const AoNFlow& f) {
    std::vector<int> on;
    for (size_t e = 0; e < f.active.size(); ++e)
        if (f.active[e]) on.push_back(static_cast<int>(e));
    return {{"type", "flow"}, {"active", on}};
}

Json certificate_json(const Orientation& o) { return {{"type", "orientation"}, {"forward", bools(o.forward)}}; }

Json certificate_json(const UpwardCertificate& c) {
    return {{"type", "upward-certificate"}, {"flip", bools(c.flip)}, {"outer", c.outer}, {"base", c.base}};
}

Json certificate_json(const RectCertificate& c) {
    return {{"type", "rect-certificate"}, {"flip", bools(c.flip)}, {"sp", c.sp}, {"sq", c.sq},
            {"outer", c.outer},           {"base", c.base}};
}

namespace {

void expect_type(const Json& j, const char* t) {
    if (get<std::string>(j, "type") != t) throw ParseError(std::string("expected a ") + t + " certificate");
}

}  // namespace

Clique clique_of(const Json& j) {
    expect_type(j, "clique");
    return get<std::vector<int>>(j, "pick");
}

AoNFlow flow_of(const Json& j, int arcs) {
    expect_type(j, "flow");
    AoNFlow f;
    f.active.assign(arcs, false);
    for (int e : get<std::vector<int>>(j, "active")) {
        if (e < 0 || e >= arcs) throw ParseError("active arc id out of range");
        f.active[e] = true;
    }
    return f;
}

Orientation orientation_of(const Json& j) {
    expect_type(j, "orientation");
    return Orientation{bools_of(j, "forward")};
}

UpwardCertificate upward_certificate_of(const Json& j) {
    expect_type(j, "upward-certificate");
    return UpwardCertificate{bools_of(j, "flip"), get<int>(j, "outer"), get<std::vector<int>>(j, "base")};
}

RectCertificate rect_certificate_of(const Json& j) {
    expect_type(j, "rect-certificate");
    return RectCertificate{bools_of(j, "flip"), get<std::vector<int>>(j, "sp"), get<std::vector<int>>(j, "sq"),
                           get<int>(j, "outer"), get<std::vector<int>>(j, "base")};
}

std::string export_dot(const Document& d) {
    const Multigraph& g = d.graph.g;
    bool directed = std::any_of(g.edges.begin(), g.edges.end(), [](const Edge& e) { return e.directed; });
    std::ostringstream os;
    os << (directed ? "digraph" : "graph") << " \"" << d.type << "\" {\n";
    for (int v = 0; v < g.n; ++v) os << "  " << v << " [label=\"" << (g.vname[v].empty() ? std::to_string(v) : g.vname[v]) << "\"];\n";
    std::map<std::string, std::vector<int>> clusters;
    for (const auto& e : g.edges) clusters[cluster_of(g.etag[e.id])].push_back(e.id);
    int ci = 0;
    for (const auto& [name, ids] : clusters) {
        bool boxed = !name.empty();
        if (boxed) os << "  subgraph \"cluster_" << ci++ << "\" {\n    label=\"" << name << "\";\n";
        for (int id : ids) {
            const Edge& e = g.edges[id];
            os << (boxed ? "    " : "  ") << e.u << (directed ? " -> " : " -- ") << e.v << " [label=\""
               << d.graph.cap[id] << "\"" << (directed && !e.directed ? ", dir=none" : "") << "];\n";
        }
        if (boxed) os << "  }\n";
    }
    os << "}\n";
    return os.str();
}

}  // namespace forge
