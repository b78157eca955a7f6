#include <algorithm>
#include <cmath>

#include "forge/planar.hpp"
#include "forge/reductions.hpp"

namespace forge {

namespace {

constexpr double kSpread = 0.02;

double angle_to(const Point& a, const Point& b) { return std::atan2(b.second - a.second, b.first - a.first); }

struct NetBuilder {
    AonfStage& st;
    std::map<std::string, int> ids;

    int vertex(const std::string& name, Point p) {
        auto it = ids.find(name);
        if (it != ids.end()) return it->second;
        int v = st.net.net.g.add_vertex(name);
        st.pos.push_back(p);
        ids[name] = v;
        return v;
    }
    int arc(int a, int b, i64 cap, const std::string& tag, double at_a, double at_b) {
        st.ends.push_back({at_a, at_b});
        return st.net.net.add_edge(a, b, cap, tag, true);
    }
    void merge(const Gadget& gd) {
        std::vector<int> map(gd.body.g.n);
        for (int v = 0; v < gd.body.g.n; ++v) map[v] = vertex(gd.body.g.vname[v], gd.pos[v]);
        for (const auto& e : gd.body.g.edges)
            arc(map[e.u], map[e.v], gd.body.cap[e.id], gd.body.g.etag[e.id], gd.ends[e.id].first,
                gd.ends[e.id].second);
    }
};

std::vector<NonEdge> cross_part_nonedges(const MccInstance& inst) {
    std::vector<NonEdge> out;
    for (int i = 1; i <= inst.k; ++i)
        for (int a = 1; a <= inst.N; ++a)
            for (int l = i + 1; l <= inst.k; ++l)
                for (int b = 1; b <= inst.N; ++b)
                    if (!inst.adjacent(inst.parts[i - 1][a - 1], inst.parts[l - 1][b - 1])) out.push_back({i, a, l, b});
    return out;
}

std::vector<int> arcs_with_prefix(const Multigraph& g, const std::string& prefix) {
    std::vector<int> out;
    for (int e = 0; e < g.m(); ++e)
        if (g.etag[e].rfind(prefix, 0) == 0) out.push_back(e);
    return out;
}

}  // namespace

// Offsets used for the s/t bundles; slot N+1 is left for the CO edge.
double bundle_offset(int slot, int N) { return kSpread * (slot - (N + 1) / 2.0); }

AonfStage mcc_to_aonf(const MccInstance& inst) {
    inst.check();
    AonfStage st;
    st.k = inst.k;
    st.N = inst.N;
    st.nonedges = cross_part_nonedges(inst);
    st.m = static_cast<int>(st.nonedges.size());
    const int k = st.k, N = st.N, m = st.m;
    ColumnLayout L{k, N};
    NetBuilder b{st, {}};
    double ymid = (L.row_mid(1) + L.row_mid(k)) / 2;
    int s = b.vertex("s", {0, ymid});
    for (int i = 1; i <= k; ++i) b.vertex(name_V(i, 1), {L.col_x(1), L.row_mid(i)});
    for (int j = 1; j <= m; ++j) b.merge(build_ch_gadget(j, st.nonedges[j - 1], k, N));
    int t = b.vertex("t", {L.col_x(m + 1) + 10, ymid});

    for (int i = 1; i <= k; ++i) {
        int V = b.ids.at(name_V(i, 1));
        double d = angle_to(st.pos[s], st.pos[V]), back = angle_to(st.pos[V], st.pos[s]);
        for (int q = 0; q <= N; ++q) {
            double off = bundle_offset(q, N);
            b.arc(s, V, q == 0 ? 2LL * k * N : 2, "src:" + std::to_string(i) + ":" + std::to_string(q), d + off,
                  back - off);
        }
    }
    for (int i = 1; i <= k; ++i) {
        int V = b.ids.at(name_V(i, m + 1));
        double d = angle_to(st.pos[V], st.pos[t]), back = angle_to(st.pos[t], st.pos[V]);
        for (int q = 0; q <= N; ++q) {
            double off = bundle_offset(q, N);
            b.arc(V, t, q == 0 ? 2LL * k * N : 2, "snk:" + std::to_string(i) + ":" + std::to_string(q), d - off,
                  back + off);
        }
    }
    // A wraps below everything; innermost arc first
    int A = k * (N - 1);
    for (int idx = 0; idx < A; ++idx) {
        double f = A > 1 ? static_cast<double>(idx) / (A - 1) : 0.0;
        b.arc(s, t, 2, "A:" + std::to_string(idx), -2 * M_PI / 3 - f * M_PI / 6, -M_PI / 3 + f * M_PI / 6);
    }
    st.net.s = s;
    st.net.t = t;
    st.net.F = static_cast<i64>(k) * (2LL * k * N + 2LL * N);
    st.net.check();

    const Multigraph& g = st.net.net.g;
    st.emb = rotation_from_angles(g, st.ends);
    FaceSet fs = trace_faces(g, st.emb);
    int deg_s = static_cast<int>(st.emb.rot[s].size());
    st.f1 = fs.corner_face[fs.corner_base[s] + deg_s - 1];
    st.f2 = fs.corner_face[fs.corner_base[s] + k * (N + 1) - 1];
    st.emb.outer = st.f1;
    validate_embedding(g, st.emb);
    st.pd = mcc_network_decomposition(g, k, N, m);
    validate_decomposition(g, st.pd);
    return st;
}

AoNFlow lift_mcc_solution_to_flow(const AonfStage& out, const Clique& clique) {
    const Multigraph& g = out.net.net.g;
    const int k = out.k, N = out.N;
    if (static_cast<int>(clique.size()) != k) throw CliqueInvalid("expected one index per part");
    for (int a : clique)
        if (a < 1 || a > N) throw CliqueInvalid("index out of range");
    for (const auto& ne : out.nonedges)
        if (clique[ne.i - 1] == ne.a && clique[ne.l - 1] == ne.b) throw CliqueInvalid("picked pair is a non-edge");
    AoNFlow f;
    f.active.assign(g.m(), false);
    std::map<std::string, int> by_tag;
    for (int e = 0; e < g.m(); ++e) by_tag[g.etag[e]] = e;
    auto on = [&](const std::string& tag) { f.active[by_tag.at(tag)] = true; };
    i64 sent = 0;
    for (int i = 1; i <= k; ++i) {
        int a = clique[i - 1];
        for (int q = 0; q <= a; ++q) {
            on("src:" + std::to_string(i) + ":" + std::to_string(q));
            on("snk:" + std::to_string(i) + ":" + std::to_string(q));
        }
        sent += 2LL * k * N + 2LL * a;
        for (int j = 1; j <= out.m; ++j)
            for (int r = 0; r <= 5; ++r)
                on("vs:" + std::to_string(i) + ":" + std::to_string(j) + ":" + std::to_string(a) + ":" +
                   std::to_string(r));
    }
    for (int j = 1; j <= out.m; ++j) {
        const NonEdge& ne = out.nonedges[j - 1];
        std::string pre = "ch:" + std::to_string(j) + ":";
        auto route = [&](char first, char last) {
            for (char p : {first, 'w', last})
                for (int e : arcs_with_prefix(g, pre + p + ":")) f.active[e] = true;
        };
        if (clique[ne.i - 1] == ne.a) route('v', 'g');
        if (clique[ne.l - 1] == ne.b) route('u', 'h');
    }
    for (i64 idx = 0; idx < (out.net.F - sent) / 2; ++idx) on("A:" + std::to_string(idx));
    std::string why;
    if (!verify_aonf_flow(out.net, f, &why)) throw FlowInvalid("lifted flow rejected: " + why);
    return f;
}

Clique extract_clique_from_flow(const AonfStage& out, const AoNFlow& flow) {
    const Multigraph& g = out.net.net.g;
    if (static_cast<int>(flow.active.size()) != g.m()) throw DecodeFailure("active set has wrong length");
    const int k = out.k, N = out.N;
    Clique c(k, 0);
    for (int i = 1; i <= k; ++i) {
        int V = g.find_vertex(name_V(i, 1));
        i64 in = 0;
        for (const auto& e : g.edges)
            if (e.v == V && flow.active[e.id]) in += out.net.net.cap[e.id];
        i64 rest = in - 2LL * k * N;
        if (rest < 2 || rest > 2LL * N || rest % 2 != 0)
            throw DecodeFailure("inflow " + std::to_string(in) + " into " + name_V(i, 1) + " is not 2kN+2a");
        c[i - 1] = static_cast<int>(rest / 2);
    }
    std::string why;
    if (!verify_aonf_flow(out.net, flow, &why)) throw DecodeFailure("flow rejected: " + why);
    for (const auto& ne : out.nonedges)
        if (c[ne.i - 1] == ne.a && c[ne.l - 1] == ne.b) throw DecodeFailure("decoded indices hit a non-edge");
    return c;
}

}  // namespace forge
