#include <algorithm>
#include <cmath>

#include "forge/planar.hpp"
#include "forge/reductions.hpp"

namespace forge {

double bundle_offset(int slot, int N);

namespace {

double angle_to(const Point& a, const Point& b) { return std::atan2(b.second - a.second, b.first - a.first); }

// Angle in [lo, lo + 2pi).
double wrap_from(double a, double lo) {
    while (a < lo) a += 2 * M_PI;
    while (a >= lo + 2 * M_PI) a -= 2 * M_PI;
    return a;
}

}  // namespace

i64 co_alpha(int k, int N) {
    i64 a = 0;
    for (int q = 1; q <= N - 1; ++q) a += 2LL * k * N + 2LL * q;
    return a;
}

i64 co_beta(int k, int N) {
    i64 F = static_cast<i64>(k) * (2LL * k * N + 2LL * N);
    i64 dplus = F + 2LL * k * (N - 1);
    return 2 * F - dplus;
}

i64 co_xi(int k, int N) { return 100LL * k * k * N * N; }

CoStage aonf_to_co(const AonfStage& in, bool force) {
    const int k = in.k, N = in.N, m = in.m;
    if (N < 10 * k && !force)
        throw PreconditionN("N = " + std::to_string(N) + " is below 10k = " + std::to_string(10 * k));
    CoStage out;
    out.equivalence_guaranteed = N >= 10 * k;
    out.alpha = co_alpha(k, N);
    out.beta = co_beta(k, N);
    out.xi = co_xi(k, N);
    const Multigraph& src = in.net.net.g;
    CapGraph& H = out.graph;
    for (int v = 0; v < src.n; ++v) H.g.add_vertex(src.vname[v]);
    std::vector<std::pair<double, double>> ends = in.ends;
    std::vector<Point> pos = in.pos;
    for (const auto& e : src.edges) {
        H.add_edge(e.u, e.v, in.net.net.cap[e.id], src.etag[e.id]);
        out.source_arc.push_back(e.id);
    }
    int s = in.net.s, t = in.net.t;
    out.s = s;
    out.t = t;
    auto special = [&](int a, int b, i64 c, const std::string& tag, double at_a, double at_b) {
        ends.push_back({at_a, at_b});
        out.source_arc.push_back(-1);
        return H.add_edge(a, b, c, tag);
    };

    // free sectors at s and t, read from the existing ends
    double top_s = -M_PI, bot_s = M_PI, top_t = 2 * M_PI, bot_t = 0;
    for (const auto& e : src.edges) {
        const std::string& tag = src.etag[e.id];
        if (tag.rfind("src:", 0) == 0) {
            top_s = std::max(top_s, ends[e.id].first);
            bot_s = std::min(bot_s, ends[e.id].first);
        } else if (tag.rfind("snk:", 0) == 0) {
            double a = wrap_from(ends[e.id].second, 0);
            top_t = std::min(top_t, a);
            bot_t = std::max(bot_t, a);
        }
    }
    double off = bundle_offset(N + 1, N);
    for (int i = 1; i <= k; ++i) {
        int V = src.find_vertex(name_V(i, 1));
        double d = angle_to(pos[s], pos[V]), back = angle_to(pos[V], pos[s]);
        special(V, s, out.alpha, "alpha:in:" + std::to_string(i), back - off, d + off);
        top_s = std::max(top_s, d + off);
    }
    for (int i = 1; i <= k; ++i) {
        int V = src.find_vertex(name_V(i, m + 1));
        double d = angle_to(pos[V], pos[t]), back = angle_to(pos[t], pos[V]);
        special(t, V, out.alpha, "alpha:out:" + std::to_string(i), back + off, d - off);
        top_t = std::min(top_t, wrap_from(back + off, 0));
    }

    double xmid = (pos[s].first + pos[t].first) / 2;
    out.S = H.g.add_vertex("S");
    pos.push_back({xmid, -1e4});
    out.T = H.g.add_vertex("T");
    pos.push_back({xmid, 1e4});
    const int S = out.S, T = out.T;
    for (int j = 1; j <= m; ++j) {
        int y = src.find_vertex(name_y(j));
        special(y, S, 1, "ys:" + std::to_string(j), -M_PI / 2, angle_to(pos[S], pos[y]));
    }
    for (int j = 1; j <= m; ++j) {
        int x = src.find_vertex(name_x(j));
        special(T, x, 1, "tx:" + std::to_string(j), angle_to(pos[T], pos[x]), M_PI / 2);
    }
    // the A arcs occupy [-150, -120] degrees at s and [-60, -30] at t
    double s_low = (bot_s - 2 * M_PI / 3) / 2;
    double s_high = (top_s + M_PI) / 2;
    double t_low = (bot_t + 5 * M_PI / 3) / 2;
    double t_high = (top_t - M_PI / 6) / 2;
    out.cycle[0] = special(S, s, out.xi + out.beta + m, "cycle:Ss", M_PI - 1e-3, s_low);
    out.cycle[1] = special(s, T, out.xi + k * out.alpha + m, "cycle:sT", s_high, M_PI + 1e-3);
    out.cycle[2] = special(T, t, out.xi + k * out.alpha, "cycle:Tt", -1e-3, t_high);
    out.cycle[3] = special(t, S, out.xi + out.beta, "cycle:tS", t_low, 1e-3);

    out.emb = rotation_from_angles(H.g, ends);
    FaceSet fs = trace_faces(H.g, out.emb);
    out.emb.outer = fs.corner_face[fs.corner_base[T] + static_cast<int>(out.emb.rot[T].size()) - 1];
    validate_embedding(H.g, out.emb);
    out.pd = add_to_all_bags(in.pd, {s, t, S, T});
    validate_decomposition(H.g, out.pd);
    return out;
}

Orientation lift_flow_to_orientation(const AonfStage& in, const CoStage& out, const AoNFlow& flow) {
    std::string why;
    if (!verify_aonf_flow(in.net, flow, &why)) throw FlowInvalid("source flow rejected: " + why);
    Orientation o;
    o.forward.assign(out.graph.g.m(), true);
    for (int e = 0; e < out.graph.g.m(); ++e)
        if (out.source_arc[e] >= 0) o.forward[e] = flow.active[out.source_arc[e]];
    if (!verify_circulating(out.graph, o, &why)) throw FlowInvalid("lifted orientation rejected: " + why);
    return o;
}

AoNFlow extract_flow_from_orientation(const AonfStage& in, const CoStage& out, const Orientation& o) {
    if (static_cast<int>(o.forward.size()) != out.graph.g.m()) throw OrientationInvalid("orientation has wrong length");
    std::string why;
    if (!verify_circulating(out.graph, o, &why)) throw OrientationInvalid("not circulating: " + why);
    int fwd = 0;
    for (int c : out.cycle) fwd += o.forward[c] ? 1 : 0;
    if (fwd != 0 && fwd != 4) throw OrientationInvalid("the 4-cycle is not oriented cyclically");
    bool flip = fwd == 0;
    AoNFlow f;
    f.active.assign(in.net.net.g.m(), false);
    for (int e = 0; e < out.graph.g.m(); ++e)
        if (out.source_arc[e] >= 0) f.active[out.source_arc[e]] = o.forward[e] != flip;
    if (!verify_aonf_flow(in.net, f, &why)) throw OrientationInvalid("extracted flow rejected: " + why);
    return f;
}

NormalStage co_normalize(const CapGraph& g, const Embedding& e, const PathDecomposition* pd) {
    validate_embedding(g.g, e);
    Subdivision sub = subdivide_all(g, 1, &e);
    PathDecomposition base = pd ? *pd : greedy_path_decomposition(g.g);
    std::vector<GadgetPlacement> paths;
    for (const auto& ed : g.g.edges) {
        int x = sub.out.g.edges[sub.chain_start[ed.id]].v;
        paths.push_back({ed.id, ed.u, ed.v, PathDecomposition{{{ed.u, x, ed.v}}}});
    }
    std::vector<int> ident(g.g.n);
    for (int v = 0; v < g.g.n; ++v) ident[v] = v;
    PathDecomposition subpd = compose_gadget_decomposition(g.g, base, paths, ident);

    NormalStage out;
    out.subdivision_width = validate_decomposition(sub.out.g, subpd);
    Triangulation tri = triangulate(sub.out, sub.emb);
    out.graph = tri.out;
    out.emb = tri.emb;
    int M = sub.out.g.m();
    for (int id = 0; id < out.graph.g.m(); ++id) {
        out.parent.push_back(id < M ? sub.parent[id] : -1);
        out.position.push_back(id < M ? sub.position[id] : -1);
    }
    out.pd = greedy_path_decomposition(out.graph.g);
    validate_decomposition(out.graph.g, out.pd);
    std::string why;
    if (!audit_normalized(out, &why)) throw CannotTriangulateSimple("normalized graph failed its audit: " + why);
    return out;
}

Orientation lift_to_normalized(const CapGraph& src, const NormalStage& out, const Orientation& o) {
    std::string why;
    if (static_cast<int>(o.forward.size()) != src.g.m()) throw OrientationInvalid("orientation has wrong length");
    Orientation r;
    r.forward.assign(out.graph.g.m(), true);
    for (int e = 0; e < out.graph.g.m(); ++e)
        if (out.parent[e] >= 0) r.forward[e] = o.forward[out.parent[e]];
    if (!verify_circulating(out.graph, r, &why)) throw OrientationInvalid("lifted orientation rejected: " + why);
    return r;
}

Orientation extract_from_normalized(const CapGraph& src, const NormalStage& out, const Orientation& o) {
    std::string why;
    if (static_cast<int>(o.forward.size()) != out.graph.g.m()) throw OrientationInvalid("orientation has wrong length");
    if (!verify_circulating(out.graph, o, &why)) throw OrientationInvalid("not circulating: " + why);
    Orientation r;
    r.forward.assign(src.g.m(), true);
    for (int e = 0; e < out.graph.g.m(); ++e)
        if (out.parent[e] >= 0 && out.position[e] == 0) r.forward[out.parent[e]] = o.forward[e];
    for (int e = 0; e < out.graph.g.m(); ++e) {
        int p = out.parent[e];
        if (p >= 0 && out.position[e] == 1 && src.cap[p] > 0 && r.forward[p] != o.forward[e])
            throw OrientationInvalid("halves of edge " + std::to_string(p) + " disagree");
    }
    if (!verify_circulating(src, r, &why)) throw OrientationInvalid("extracted orientation rejected: " + why);
    return r;
}

bool audit_normalized(const NormalStage& n, std::string* why) {
    auto fail = [&](const std::string& m) {
        if (why) *why = m;
        return false;
    };
    const Multigraph& g = n.graph.g;
    if (!g.is_simple()) return fail("not simple");
    if (!is_planar_rotation(g, n.emb)) return fail("rotation is not planar");
    FaceSet fs = trace_faces(g, n.emb);
    for (const auto& f : fs.faces)
        if (f.size() != 3) return fail("face of length " + std::to_string(f.size()));
    if (!is_triconnected(g)) return fail("not triconnected");
    return true;
}

}  // namespace forge
