#include <algorithm>
#include <array>
#include <map>
#include <mutex>
#include <set>

#include "forge/planar.hpp"
#include "forge/reductions.hpp"

namespace forge {

namespace {

bool out_at(const Multigraph& g, int id, int v) { return g.edges[id].u == v; }

// 0 = non-switch, 1 = source, 2 = sink
int vertex_kind(const Multigraph& g, const Embedding& e, int v) {
    bool any_out = false, any_in = false;
    for (int id : e.rot[v]) (out_at(g, id, v) ? any_out : any_in) = true;
    if (any_out && any_in) return 0;
    return any_out ? 1 : 2;
}

// Corner j of v in the mirrored rotation covers corner d-2-j of the original.
int mirror_corner(const FaceSet& fs, int c) {
    int v = fs.corner_vertex[c];
    int b = fs.corner_base[v], d = fs.corner_base[v + 1] - b;
    int j = c - b;
    return b + (((d - 2 - j) % d) + d) % d;
}

Gadget mirrored(const Gadget& t) {
    Gadget r = t;
    FaceSet fs = trace_faces(t.body.g, t.emb);
    r.emb = mirror(t.body.g, t.emb);
    for (auto& c : r.pos_side) c = mirror_corner(fs, c);
    for (auto& c : r.neg_side) c = mirror_corner(fs, c);
    for (size_t c = 0; c < t.lambda.label.size(); ++c)
        r.lambda.label[c] = t.lambda.label[mirror_corner(fs, static_cast<int>(c))];
    return r;
}

// Both orientations of one tendril, with face sets.
struct Variant {
    Gadget t;
    FaceSet fs;
};

struct TendrilPair {
    Variant v[2];  // [flip]
};

template <class Build>
const TendrilPair& cached(std::map<i64, TendrilPair>& cache, std::mutex& mu, i64 w, Build build) {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(w);
    if (it != cache.end()) return it->second;
    Gadget t = build(static_cast<int>(w));
    TendrilPair p;
    p.v[1].t = mirrored(t);
    p.v[0].t = std::move(t);
    for (auto& v : p.v) v.fs = trace_faces(v.t.body.g, v.t.emb);
    return cache.emplace(w, std::move(p)).first->second;
}

std::map<i64, TendrilPair> up_cache, rect_cache;
std::mutex up_mu, rect_mu;

const TendrilPair& upward_tendril(i64 w) { return cached(up_cache, up_mu, w, build_tendril); }
const TendrilPair& rect_tendril(i64 w) { return cached(rect_cache, rect_mu, w, build_rect_tendril); }

bool fail_with(std::string* why, const std::string& m) {
    if (why) *why = m;
    return false;
}

// Faces of g identified by their edge sets.
std::map<std::vector<int>, int> faces_by_edges(const FaceSet& fs) {
    std::map<std::vector<int>, int> out;
    for (int f = 0; f < fs.num_faces(); ++f) {
        std::vector<int> es;
        for (int d : fs.faces[f]) es.push_back(d >> 1);
        std::sort(es.begin(), es.end());
        out[es] = f;
    }
    return out;
}

// Position of the cyclic sequence `want` inside `have`: the offset o with
// have[(i + o) % n] == want[i], or -1. Reversed matches report -2.
int cyclic_match(const std::vector<int>& have, const std::vector<int>& want) {
    int n = static_cast<int>(have.size());
    if (n != static_cast<int>(want.size())) return -1;
    if (n == 0) return 0;
    for (int o = 0; o < n; ++o) {
        bool ok = true;
        for (int i = 0; i < n && ok; ++i) ok = have[(i + o) % n] == want[i];
        if (ok) return o;
    }
    for (int o = 0; o < n; ++o) {
        bool ok = true;
        for (int i = 0; i < n && ok; ++i) ok = have[(o - i + n) % n] == want[i];
        if (ok) return -2;
    }
    return -1;
}

AngleAssignment mirror_assignment(const Multigraph& g, const Embedding& e, const AngleAssignment& a) {
    FaceSet fs = trace_faces(g, e);
    AngleAssignment r = a;
    for (int c = 0; c < fs.num_corners(); ++c) r.label[c] = a.label[mirror_corner(fs, c)];
    return r;
}

}  // namespace

// ------------------------------------------------------------ tendril families

bool tendril_member_ok(i64 w) {
    if (w < 0) return false;
    // larger members repeat the verified quarter-turn period
    if (w > kTendrilCheckLimit) return true;
    static std::map<i64, bool> memo;
    static std::mutex mu;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = memo.find(w);
        if (it != memo.end()) return it->second;
    }
    const Gadget& t = upward_tendril(w).v[0].t;
    bool ok = check_upward_assignment(t.body.g, t.emb, t.lambda) &&
              upward_contribution(t.lambda, t.pos_side) == 2 * w && upward_contribution(t.lambda, t.neg_side) == -2 * w;
    std::lock_guard<std::mutex> lock(mu);
    memo[w] = ok;
    return ok;
}

bool rect_tendril_member_ok(i64 w) {
    if (w < 0) return false;
    if (w > kTendrilCheckLimit) return true;
    static std::map<i64, bool> memo;
    static std::mutex mu;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = memo.find(w);
        if (it != memo.end()) return it->second;
    }
    const Gadget& t = rect_tendril(w).v[0].t;
    bool ok = true;
    for (int sp = 1; sp <= 2 && ok; ++sp)
        for (int sq = 1; sq <= 2 && ok; ++sq) {
            AngleAssignment a = rect_tendril_assignment(t, sp, sq);
            i64 c = rect_tendril_contribution(w, sp, sq);
            ok = check_rect_assignment(t.body.g, t.emb, a) && rect_contribution(a, t.pos_side) == c &&
                 rect_contribution(a, t.neg_side) == -c;
        }
    std::lock_guard<std::mutex> lock(mu);
    memo[w] = ok;
    return ok;
}

// ---------------------------------------------------------------- upward stage

UpwardStage co_to_upward(const NormalStage& in) {
    std::string why;
    if (!audit_normalized(in, &why)) throw ShapeMismatch("upward stage needs a normalized instance: " + why);
    UpwardStage out;
    out.primal = in;
    std::vector<i64> w3(in.graph.cap.size());
    for (size_t e = 0; e < w3.size(); ++e) w3[e] = 3 * in.graph.cap[e];
    DualGraph D = dual_graph(in.graph.g, in.emb, w3);
    std::pair<int, int> best{D.g.n, D.g.n};
    for (const auto& e : D.g.edges) best = std::min(best, std::pair<int, int>(std::minmax(e.u, e.v)));
    out.s = best.first;
    out.t = best.second;
    out.skeleton = st_orientation(D.g, out.s, out.t);
    out.skel_emb = D.emb;
    FaceSet fs = validate_embedding(out.skeleton, Embedding{out.skel_emb.rot, 0});
    int st = -1;
    for (const auto& e : out.skeleton.edges)
        if (std::pair<int, int>(std::minmax(e.u, e.v)) == best) st = e.id;
    out.skel_emb.outer = fs.dart_face[2 * st];

    auto by_edges = faces_by_edges(fs);
    auto inc = in.graph.g.incidence();
    out.face_of_vertex.assign(in.graph.g.n, -1);
    for (int v = 0; v < in.graph.g.n; ++v) {
        std::vector<int> es = inc[v];
        std::sort(es.begin(), es.end());
        auto it = by_edges.find(es);
        if (it == by_edges.end()) throw ShapeMismatch("no dual face matches vertex " + std::to_string(v));
        out.face_of_vertex[v] = it->second;
    }
    for (int a = 0; a < out.skeleton.m(); ++a) out.tendrils.push_back({a, a, w3[a]});
    out.skel_pd = greedy_path_decomposition(out.skeleton);
    out.composed_width_bound = validate_decomposition(out.skeleton, out.skel_pd) + 2 + 1;
    return out;
}

bool check_upward_certificate(const UpwardStage& out, const UpwardCertificate& c, std::string* why) {
    const Multigraph& D = out.skeleton;
    if (static_cast<int>(c.flip.size()) != D.m()) return fail_with(why, "flip vector has wrong length");
    Embedding e{out.skel_emb.rot, c.outer};
    FaceSet fs = trace_faces(D, e);
    if (c.outer < 0 || c.outer >= fs.num_faces()) return fail_with(why, "outer face out of range");
    if (static_cast<int>(c.base.size()) != fs.num_corners()) return fail_with(why, "base labels have wrong length");
    std::vector<bool> sw = switch_corners(D, e, fs);
    for (int x = 0; x < fs.num_corners(); ++x) {
        int l = c.base[x];
        if (sw[x] ? (l != 1 && l != -1) : l != 0) return fail_with(why, "UP0 fails at corner " + std::to_string(x));
    }
    for (int v = 0; v < D.n; ++v) {
        int deg = fs.corner_base[v + 1] - fs.corner_base[v];
        int n[3] = {0, 0, 0};
        for (int x = fs.corner_base[v]; x < fs.corner_base[v + 1]; ++x) ++n[c.base[x] + 1];
        // each pole adds one interior corner labelled -1
        if (vertex_kind(D, e, v) != 0) {
            if (n[2] != 1 || n[0] != deg - 1 || n[1] != 0) return fail_with(why, "UP1 fails at " + std::to_string(v));
        } else if (n[2] != 0 || n[0] != deg - 2 || n[1] != 2) {
            return fail_with(why, "UP2 fails at " + std::to_string(v));
        }
    }
    std::vector<i64> bal(fs.num_faces(), 0);
    for (int x = 0; x < fs.num_corners(); ++x) bal[fs.corner_face[x]] += c.base[x];
    for (const auto& slot : out.tendrils) {
        if (!tendril_member_ok(slot.w)) return fail_with(why, "tendril T_" + std::to_string(slot.w) + " failed its check");
        int right = fs.dart_face[2 * slot.edge + 1], left = fs.dart_face[2 * slot.edge];
        int pos = c.flip[slot.edge] ? left : right, neg = c.flip[slot.edge] ? right : left;
        bal[pos] += 2 * slot.w;
        bal[neg] -= 2 * slot.w;
    }
    for (int f = 0; f < fs.num_faces(); ++f)
        if (bal[f] != (f == c.outer ? 2 : -2))
            return fail_with(why, "UP3 fails on face " + std::to_string(f) + ": balance " + std::to_string(bal[f]));
    return true;
}

UpwardCertificate lift_orientation_to_upward(const UpwardStage& out, const Orientation& o) {
    const CapGraph& P = out.primal.graph;
    std::string why;
    if (static_cast<int>(o.forward.size()) != P.g.m()) throw OrientationInvalid("orientation has wrong length");
    if (!verify_circulating(P, o, &why)) throw OrientationInvalid("not circulating: " + why);
    const Multigraph& D = out.skeleton;
    FaceSet fs = trace_faces(D, out.skel_emb);
    UpwardCertificate c;
    c.outer = out.skel_emb.outer;
    c.flip.assign(D.m(), false);
    for (int a = 0; a < D.m(); ++a) {
        const Edge& pe = P.g.edges[a];
        int head = o.forward[a] ? pe.v : pe.u;
        c.flip[a] = fs.dart_face[2 * a + 1] != out.face_of_vertex[head];
    }
    auto base = solve_upward_fixed_embedding(D, out.skel_emb);
    if (!base) throw OrientationInvalid("skeleton has no upward assignment");
    c.base = base->label;
    if (!check_upward_certificate(out, c, &why)) throw OrientationInvalid("lifted certificate rejected: " + why);
    return c;
}

Orientation extract_orientation_from_upward(const UpwardStage& out, const UpwardCertificate& c) {
    std::string why;
    if (!check_upward_certificate(out, c, &why)) throw AssignmentInvalid("certificate rejected: " + why);
    const CapGraph& P = out.primal.graph;
    FaceSet fs = trace_faces(out.skeleton, Embedding{out.skel_emb.rot, c.outer});
    Orientation o;
    o.forward.assign(P.g.m(), true);
    for (int a = 0; a < P.g.m(); ++a) {
        int pos = c.flip[a] ? fs.dart_face[2 * a] : fs.dart_face[2 * a + 1];
        o.forward[a] = out.face_of_vertex[P.g.edges[a].v] == pos;
    }
    if (!verify_circulating(P, o, &why)) throw AssignmentInvalid("extracted orientation rejected: " + why);
    return o;
}

Expanded expand_upward(const UpwardStage& out, const UpwardCertificate* c, long budget) {
    const Multigraph& D = out.skeleton;
    long total = D.n;
    for (const auto& s : out.tendrils) total += 8 * s.w + 2;
    if (total > budget)
        throw BudgetExceeded("expanded upward graph needs " + std::to_string(total) + " vertices");
    if (c) {
        std::string why;
        if (!check_upward_certificate(out, *c, &why)) throw AssignmentInvalid("certificate rejected: " + why);
    }
    Expanded x;
    for (int v = 0; v < D.n; ++v) x.g.add_vertex(D.vname[v].empty() ? "f" + std::to_string(v) : D.vname[v]);
    std::vector<std::vector<int>> tmp_rot;
    // pole pair per (arc, end)
    std::vector<std::array<std::pair<int, int>, 2>> poles(D.m());
    std::vector<std::vector<int>> vmap(D.m());
    for (int a = 0; a < D.m(); ++a) {
        bool fl = c ? c->flip[a] : false;
        const Variant& V = upward_tendril(out.tendrils[a].w).v[fl];
        const Gadget& T = V.t;
        int p = T.boundary.at("p"), q = T.boundary.at("q");
        std::vector<int>& map = vmap[a];
        map.assign(T.body.g.n, -1);
        map[p] = D.edges[a].u;
        map[q] = D.edges[a].v;
        x.tendril_first.push_back(x.g.n);
        for (int v = 0; v < T.body.g.n; ++v)
            if (map[v] < 0) map[v] = x.g.add_vertex("t" + std::to_string(a) + ":" + T.body.g.vname[v]);
        int ebase = x.g.m();
        x.tendril_edge_first.push_back(ebase);
        for (const auto& e : T.body.g.edges)
            x.g.add_edge(map[e.u], map[e.v], true, "tendril:" + std::to_string(a) + ":" + T.body.g.etag[e.id]);
        x.emb.rot.resize(x.g.n);
        for (int v = 0; v < T.body.g.n; ++v) {
            if (v == p || v == q) continue;
            for (int id : T.emb.rot[v]) x.emb.rot[map[v]].push_back(ebase + id);
        }
        int end = 0;
        for (int pole : {p, q}) {
            const auto& r = T.emb.rot[pole];
            bool first_outer = V.fs.corner_face[V.fs.corner_base[pole]] == T.emb.outer;
            poles[a][end++] = first_outer ? std::pair{ebase + r[1], ebase + r[0]} : std::pair{ebase + r[0], ebase + r[1]};
        }
    }
    for (int v = 0; v < D.n; ++v)
        for (int a : out.skel_emb.rot[v]) {
            auto pr = poles[a][D.edges[a].u == v ? 0 : 1];
            x.emb.rot[v].push_back(pr.first);
            x.emb.rot[v].push_back(pr.second);
        }
    FaceSet dfs = trace_faces(D, Embedding{out.skel_emb.rot, c ? c->outer : out.skel_emb.outer});
    FaceSet gfs = validate_embedding(x.g, Embedding{x.emb.rot, 0});
    int douter = c ? c->outer : out.skel_emb.outer;
    int dc = dfs.face_corners[douter][0], dv = dfs.corner_vertex[dc];
    x.emb.outer = gfs.corner_face[gfs.corner_base[dv] + 2 * (dc - dfs.corner_base[dv]) + 1];
    if (c) {
        x.lambda.mode = AngleMode::Upward;
        x.lambda.label.assign(gfs.num_corners(), -1);
        for (int v = 0; v < D.n; ++v)
            for (int i = dfs.corner_base[v]; i < dfs.corner_base[v + 1]; ++i)
                x.lambda.label[gfs.corner_base[v] + 2 * (i - dfs.corner_base[v]) + 1] = c->base[i];
        for (int a = 0; a < D.m(); ++a) {
            const Variant& V = upward_tendril(out.tendrils[a].w).v[c->flip[a]];
            int p = V.t.boundary.at("p"), q = V.t.boundary.at("q");
            for (int v = 0; v < V.t.body.g.n; ++v) {
                if (v == p || v == q) continue;
                for (int i = V.fs.corner_base[v]; i < V.fs.corner_base[v + 1]; ++i)
                    x.lambda.label[gfs.corner_base[vmap[a][v]] + (i - V.fs.corner_base[v])] = V.t.lambda.label[i];
            }
        }
    }
    std::vector<GadgetPlacement> places;
    for (int a = 0; a < D.m(); ++a) {
        const Gadget& T = upward_tendril(out.tendrils[a].w).v[0].t;
        PathDecomposition pd = T.pd;
        for (auto& b : pd.bags)
            for (int& v : b) v = vmap[a][v];
        places.push_back({a, D.edges[a].u, D.edges[a].v, pd});
    }
    std::vector<int> ident(D.n);
    for (int v = 0; v < D.n; ++v) ident[v] = v;
    x.pd = compose_gadget_decomposition(D, out.skel_pd, places, ident);
    return x;
}

UpwardCertificate compact_upward(const UpwardStage& out, const Expanded& x, const Embedding& e,
                                 const AngleAssignment& a) {
    std::string why;
    if (!check_upward_assignment(x.g, e, a, &why)) throw AssignmentInvalid("expanded assignment rejected: " + why);
    const Multigraph& D = out.skeleton;
    std::vector<int> owner(x.g.m(), -1);
    for (int t = 0; t < D.m(); ++t) {
        int end = t + 1 < D.m() ? x.tendril_edge_first[t + 1] : x.g.m();
        for (int id = x.tendril_edge_first[t]; id < end; ++id) owner[id] = t;
    }
    // a reflected drawing is read after reflecting it back
    for (int v = 0; v < D.n; ++v) {
        std::vector<int> seq;
        for (size_t i = 0; i < e.rot[v].size(); i += 2) seq.push_back(owner[e.rot[v][i]]);
        if (cyclic_match(seq, out.skel_emb.rot[v]) == -2 && D.n > 0 && out.skel_emb.rot[v].size() > 2)
            return compact_upward(out, x, mirror(x.g, e), mirror_assignment(x.g, e, a));
        break;
    }
    FaceSet gfs = trace_faces(x.g, e);
    UpwardCertificate c;
    c.flip.assign(D.m(), false);
    for (int t = 0; t < D.m(); ++t) {
        const Gadget& T = upward_tendril(out.tendrils[t].w).v[0].t;
        int o0 = T.body.g.find_vertex("o0");
        int gv = x.tendril_first[t] + (o0 - 2);
        std::vector<int> want;
        for (int id : T.emb.rot[o0]) want.push_back(x.tendril_edge_first[t] + id);
        int m = cyclic_match(e.rot[gv], want);
        if (m == -1) throw AssignmentInvalid("tendril " + std::to_string(t) + " is not embedded as a unit");
        c.flip[t] = m == -2;
    }
    FaceSet dfs = trace_faces(D, out.skel_emb);
    c.base.assign(dfs.num_corners(), 0);
    std::map<int, int> gface_to_d;
    for (int v = 0; v < D.n; ++v) {
        const auto& rot = e.rot[v];
        int deg = static_cast<int>(out.skel_emb.rot[v].size());
        if (static_cast<int>(rot.size()) != 2 * deg) throw AssignmentInvalid("base vertex has the wrong degree");
        // find where slot 0 starts; pole pairs are adjacent
        int start = -1;
        for (int i = 0; i < 2 * deg && start < 0; ++i)
            if (owner[rot[i]] == out.skel_emb.rot[v][0] && owner[rot[(i + 1) % (2 * deg)]] == out.skel_emb.rot[v][0])
                start = i;
        if (start < 0) throw AssignmentInvalid("pole edges are not adjacent at a base vertex");
        for (int i = 0; i < deg; ++i) {
            int a0 = rot[(start + 2 * i) % (2 * deg)], a1 = rot[(start + 2 * i + 1) % (2 * deg)];
            if (owner[a0] != out.skel_emb.rot[v][i] || owner[a1] != out.skel_emb.rot[v][i])
                throw AssignmentInvalid("skeleton rotation differs at " + std::to_string(v));
            int gc = gfs.corner_base[v] + (start + 2 * i + 1) % (2 * deg);
            int dc = dfs.corner_base[v] + i;
            c.base[dc] = a.label[gc];
            gface_to_d[gfs.corner_face[gc]] = dfs.corner_face[dc];
        }
    }
    auto it = gface_to_d.find(e.outer);
    if (it == gface_to_d.end()) throw AssignmentInvalid("outer face lies inside a tendril");
    c.outer = it->second;
    if (!check_upward_certificate(out, c, &why)) throw AssignmentInvalid("compact certificate rejected: " + why);
    return c;
}

// ------------------------------------------------------------------ rect stage

RectStage co_to_rectilinear(const NormalStage& in) {
    std::string why;
    if (!audit_normalized(in, &why)) throw ShapeMismatch("rect stage needs a normalized instance: " + why);
    RectStage out;
    out.primal = in;
    DualGraph D = dual_graph(in.graph.g, in.emb, in.graph.cap);
    out.dual = D.g;
    out.dual_emb = D.emb;
    out.face_of_vertex = D.face_of_primal_vertex;
    CapGraph dc{D.g, D.w};
    Subdivision sub = subdivide_all(dc, 4, &D.emb);
    out.skeleton = sub.out;
    out.skel_emb = sub.emb;
    validate_embedding(out.skeleton.g, out.skel_emb);
    out.theta = out.skeleton.g.n + 1;
    for (int a = 0; a < D.g.m(); ++a) {
        out.rep.push_back(sub.chain_start[a] + 2);
        out.tendrils.push_back({out.rep[a], a, out.theta * in.graph.cap[a]});
    }
    out.skel_pd = greedy_path_decomposition(out.skeleton.g);
    out.composed_width_bound = validate_decomposition(out.skeleton.g, out.skel_pd) + 2 + 1;
    return out;
}

namespace {

// Skeleton face -> dual face, through the representative darts.
std::vector<int> skeleton_to_dual_faces(const RectStage& out, const FaceSet& ffs) {
    FaceSet dfs = trace_faces(out.dual, out.dual_emb);
    std::vector<int> map(ffs.num_faces(), -1);
    for (int a = 0; a < out.dual.m(); ++a)
        for (int side = 0; side < 2; ++side) map[ffs.dart_face[2 * out.rep[a] + side]] = dfs.dart_face[2 * a + side];
    return map;
}

}  // namespace

bool check_rect_certificate(const RectStage& out, const RectCertificate& c, std::string* why) {
    const Multigraph& F = out.skeleton.g;
    int T = static_cast<int>(out.tendrils.size());
    if (static_cast<int>(c.flip.size()) != T || static_cast<int>(c.sp.size()) != T ||
        static_cast<int>(c.sq.size()) != T)
        return fail_with(why, "tendril vectors have wrong length");
    Embedding e{out.skel_emb.rot, c.outer};
    FaceSet fs = trace_faces(F, e);
    if (c.outer < 0 || c.outer >= fs.num_faces()) return fail_with(why, "outer face out of range");
    if (static_cast<int>(c.base.size()) != fs.num_corners()) return fail_with(why, "base labels have wrong length");
    for (int v = 0; v < F.n; ++v) {
        int sum = 0;
        for (int x = fs.corner_base[v]; x < fs.corner_base[v + 1]; ++x) {
            if (c.base[x] < 1 || c.base[x] > 4) return fail_with(why, "label out of range at corner " + std::to_string(x));
            sum += c.base[x];
        }
        if (sum != 4) return fail_with(why, "RE0 fails at " + std::to_string(v));
    }
    std::vector<i64> bal(fs.num_faces(), 0);
    for (int x = 0; x < fs.num_corners(); ++x) bal[fs.corner_face[x]] += c.base[x] - 2;
    for (int t = 0; t < T; ++t) {
        const auto& slot = out.tendrils[t];
        if (c.sp[t] < 1 || c.sp[t] > 2 || c.sq[t] < 1 || c.sq[t] > 2)
            return fail_with(why, "pole corner label out of range on tendril " + std::to_string(t));
        if (!rect_tendril_member_ok(slot.w))
            return fail_with(why, "rect tendril " + std::to_string(slot.w) + " failed its check");
        int right = fs.dart_face[2 * slot.edge + 1], left = fs.dart_face[2 * slot.edge];
        int pos = c.flip[t] ? left : right, neg = c.flip[t] ? right : left;
        i64 contrib = rect_tendril_contribution(slot.w, c.sp[t], c.sq[t]);
        bal[pos] += contrib;
        bal[neg] -= contrib;
    }
    for (int f = 0; f < fs.num_faces(); ++f)
        if (bal[f] != (f == c.outer ? 4 : -4))
            return fail_with(why, "face " + std::to_string(f) + " has balance " + std::to_string(bal[f]));
    return true;
}

RectCertificate lift_orientation_to_rect(const RectStage& out, const Orientation& o) {
    const CapGraph& P = out.primal.graph;
    std::string why;
    if (static_cast<int>(o.forward.size()) != P.g.m()) throw OrientationInvalid("orientation has wrong length");
    if (!verify_circulating(P, o, &why)) throw OrientationInvalid("not circulating: " + why);
    FaceSet ffs = trace_faces(out.skeleton.g, out.skel_emb);
    std::vector<int> to_dual = skeleton_to_dual_faces(out, ffs);
    RectCertificate c;
    c.outer = out.skel_emb.outer;
    int T = static_cast<int>(out.tendrils.size());
    c.flip.assign(T, false);
    c.sp.assign(T, 1);
    c.sq.assign(T, 1);
    for (int t = 0; t < T; ++t) {
        const Edge& pe = P.g.edges[out.tendrils[t].primal];
        int head = o.forward[pe.id] ? pe.v : pe.u;
        c.flip[t] = to_dual[ffs.dart_face[2 * out.rep[t] + 1]] != out.face_of_vertex[head];
    }
    auto base = solve_rect_fixed_embedding(out.skeleton.g, out.skel_emb);
    if (!base) throw OrientationInvalid("skeleton has no rectilinear assignment");
    c.base = base->label;
    if (!check_rect_certificate(out, c, &why)) throw OrientationInvalid("lifted certificate rejected: " + why);
    return c;
}

Orientation extract_orientation_from_rect(const RectStage& out, const RectCertificate& c) {
    std::string why;
    if (!check_rect_certificate(out, c, &why)) throw AssignmentInvalid("certificate rejected: " + why);
    const CapGraph& P = out.primal.graph;
    FaceSet ffs = trace_faces(out.skeleton.g, Embedding{out.skel_emb.rot, c.outer});
    std::vector<int> to_dual = skeleton_to_dual_faces(out, ffs);
    Orientation o;
    o.forward.assign(P.g.m(), true);
    for (size_t t = 0; t < out.tendrils.size(); ++t) {
        int r = out.rep[t];
        int pos = to_dual[c.flip[t] ? ffs.dart_face[2 * r] : ffs.dart_face[2 * r + 1]];
        const Edge& pe = P.g.edges[out.tendrils[t].primal];
        o.forward[pe.id] = out.face_of_vertex[pe.v] == pos;
    }
    if (!verify_circulating(P, o, &why)) throw AssignmentInvalid("extracted orientation rejected: " + why);
    return o;
}

namespace {

// Corner of a variant's positive side at vertex v.
int positive_corner_at(const Variant& V, int v) {
    for (int c : V.t.pos_side)
        if (V.fs.corner_vertex[c] == v) return c;
    return -1;
}

}  // namespace

Expanded expand_rect(const RectStage& out, const RectCertificate* c, long budget) {
    const Multigraph& F = out.skeleton.g;
    long total = F.n;
    for (const auto& s : out.tendrils) total += 16 * s.w + 4;
    if (total > budget) throw BudgetExceeded("expanded rect graph needs " + std::to_string(total) + " vertices");
    if (c) {
        std::string why;
        if (!check_rect_certificate(out, *c, &why)) throw AssignmentInvalid("certificate rejected: " + why);
    }
    Expanded x;
    for (int v = 0; v < F.n; ++v) x.g.add_vertex(F.vname[v]);
    std::vector<int> rep_of(F.m(), -1), emap(F.m(), -1);
    for (size_t t = 0; t < out.tendrils.size(); ++t) rep_of[out.rep[t]] = static_cast<int>(t);
    for (const auto& e : F.edges)
        if (rep_of[e.id] < 0) emap[e.id] = x.g.add_edge(e.u, e.v, false, F.etag[e.id]);
    x.emb.rot.resize(F.n);
    std::vector<std::vector<int>> vmap(out.tendrils.size());
    for (size_t t = 0; t < out.tendrils.size(); ++t) {
        const Variant& V = rect_tendril(out.tendrils[t].w).v[c ? c->flip[t] : 0];
        const Gadget& T = V.t;
        int p = T.boundary.at("p"), q = T.boundary.at("q");
        auto& map = vmap[t];
        map.assign(T.body.g.n, -1);
        map[p] = F.edges[out.rep[t]].u;
        map[q] = F.edges[out.rep[t]].v;
        x.tendril_first.push_back(x.g.n);
        for (int v = 0; v < T.body.g.n; ++v)
            if (map[v] < 0) map[v] = x.g.add_vertex("t" + std::to_string(t) + ":" + T.body.g.vname[v]);
        int ebase = x.g.m();
        x.tendril_edge_first.push_back(ebase);
        for (const auto& e : T.body.g.edges)
            x.g.add_edge(map[e.u], map[e.v], false, "tendril:" + std::to_string(t) + ":" + T.body.g.etag[e.id]);
        x.emb.rot.resize(x.g.n);
        for (int v = 0; v < T.body.g.n; ++v)
            if (v != p && v != q)
                for (int id : T.emb.rot[v]) x.emb.rot[map[v]].push_back(ebase + id);
        emap[out.rep[t]] = -2 - static_cast<int>(t);
    }
    for (int v = 0; v < F.n; ++v)
        for (int id : out.skel_emb.rot[v]) {
            if (emap[id] >= 0) {
                x.emb.rot[v].push_back(emap[id]);
                continue;
            }
            int t = rep_of[id];
            const Gadget& T = rect_tendril(out.tendrils[t].w).v[c ? c->flip[t] : 0].t;
            int pole = F.edges[id].u == v ? T.boundary.at("p") : T.boundary.at("q");
            x.emb.rot[v].push_back(x.tendril_edge_first[t] + T.emb.rot[pole][0]);
        }
    int fouter = c ? c->outer : out.skel_emb.outer;
    FaceSet ffs = trace_faces(F, Embedding{out.skel_emb.rot, fouter});
    FaceSet gfs = validate_embedding(x.g, Embedding{x.emb.rot, 0});
    int fc = ffs.face_corners[fouter][0];
    x.emb.outer = gfs.corner_face[gfs.corner_base[ffs.corner_vertex[fc]] + (fc - ffs.corner_base[ffs.corner_vertex[fc]])];
    if (c) {
        x.lambda.mode = AngleMode::Rect;
        x.lambda.label.assign(gfs.num_corners(), 1);
        for (int v = 0; v < F.n; ++v)
            for (int i = ffs.corner_base[v]; i < ffs.corner_base[v + 1]; ++i)
                x.lambda.label[gfs.corner_base[v] + (i - ffs.corner_base[v])] = c->base[i];
        for (size_t t = 0; t < out.tendrils.size(); ++t) {
            const Variant& V = rect_tendril(out.tendrils[t].w).v[c->flip[t]];
            AngleAssignment la = rect_tendril_assignment(V.t, c->sp[t], c->sq[t]);
            int p = V.t.boundary.at("p"), q = V.t.boundary.at("q");
            for (int v = 0; v < V.t.body.g.n; ++v) {
                if (v == p || v == q) continue;
                for (int i = V.fs.corner_base[v]; i < V.fs.corner_base[v + 1]; ++i)
                    x.lambda.label[gfs.corner_base[vmap[t][v]] + (i - V.fs.corner_base[v])] = la.label[i];
            }
        }
    }
    std::vector<GadgetPlacement> places;
    for (size_t t = 0; t < out.tendrils.size(); ++t) {
        PathDecomposition pd = rect_tendril(out.tendrils[t].w).v[0].t.pd;
        for (auto& b : pd.bags)
            for (int& v : b) v = vmap[t][v];
        places.push_back({out.rep[t], F.edges[out.rep[t]].u, F.edges[out.rep[t]].v, pd});
    }
    std::vector<int> ident(F.n);
    for (int v = 0; v < F.n; ++v) ident[v] = v;
    x.pd = compose_gadget_decomposition(F, out.skel_pd, places, ident);
    return x;
}

RectCertificate compact_rect(const RectStage& out, const Expanded& x, const Embedding& e, const AngleAssignment& a) {
    std::string why;
    if (!check_rect_assignment(x.g, e, a, &why)) throw AssignmentInvalid("expanded assignment rejected: " + why);
    const Multigraph& F = out.skeleton.g;
    int T = static_cast<int>(out.tendrils.size());
    // reflected drawings are read after reflecting back
    for (int v = 0; v < F.n; ++v) {
        if (e.rot[v].size() < 3) continue;
        if (cyclic_match(e.rot[v], x.emb.rot[v]) == -2)
            return compact_rect(out, x, mirror(x.g, e), mirror_assignment(x.g, e, a));
        break;
    }
    for (int v = 0; v < F.n; ++v)
        if (cyclic_match(e.rot[v], x.emb.rot[v]) < 0 && e.rot[v].size() >= 3)
            throw AssignmentInvalid("skeleton rotation differs at " + std::to_string(v));
    FaceSet gfs = trace_faces(x.g, e);
    FaceSet ffs = trace_faces(F, out.skel_emb);
    RectCertificate c;
    c.flip.assign(T, false);
    c.sp.assign(T, 1);
    c.sq.assign(T, 1);
    for (int t = 0; t < T; ++t) {
        const TendrilPair& pair = rect_tendril(out.tendrils[t].w);
        const Gadget& T0 = pair.v[0].t;
        int a0 = T0.body.g.find_vertex("a0");
        int gv = x.tendril_first[t] + a0;
        std::vector<int> want;
        for (int id : T0.emb.rot[a0]) want.push_back(x.tendril_edge_first[t] + id);
        int m = cyclic_match(e.rot[gv], want);
        if (m == -1) throw AssignmentInvalid("tendril " + std::to_string(t) + " is not embedded as a unit");
        c.flip[t] = m == -2;
        const Variant& V = pair.v[c.flip[t]];
        int p = V.t.boundary.at("p"), q = V.t.boundary.at("q");
        int ap = V.t.body.g.other(V.t.emb.rot[p][0], p), aq = V.t.body.g.other(V.t.emb.rot[q][0], q);
        auto read = [&](int tv) {
            int cc = positive_corner_at(V, tv);
            int gvv = x.tendril_first[t] + tv - (tv > p ? 1 : 0) - (tv > q ? 1 : 0);
            std::vector<int> rot;
            for (int id : V.t.emb.rot[tv]) rot.push_back(x.tendril_edge_first[t] + id);
            int off = cyclic_match(e.rot[gvv], rot);
            if (cc < 0 || off < 0) throw AssignmentInvalid("pole attachment of tendril " + std::to_string(t) + " is broken");
            int deg = static_cast<int>(rot.size());
            return a.label[gfs.corner_base[gvv] + ((cc - V.fs.corner_base[tv]) + off) % deg];
        };
        c.sp[t] = read(ap);
        c.sq[t] = read(aq);
    }
    c.base.assign(ffs.num_corners(), 0);
    std::map<int, int> gface_to_f;
    for (int v = 0; v < F.n; ++v) {
        int deg = ffs.corner_base[v + 1] - ffs.corner_base[v];
        int off = cyclic_match(e.rot[v], x.emb.rot[v]);
        if (off < 0) off = 0;
        for (int i = 0; i < deg; ++i) {
            int gc = gfs.corner_base[v] + (i + off) % deg;
            c.base[ffs.corner_base[v] + i] = a.label[gc];
            gface_to_f[gfs.corner_face[gc]] = ffs.corner_face[ffs.corner_base[v] + i];
        }
    }
    auto it = gface_to_f.find(e.outer);
    if (it == gface_to_f.end()) throw AssignmentInvalid("outer face lies inside a tendril");
    c.outer = it->second;
    if (!check_rect_certificate(out, c, &why)) throw AssignmentInvalid("compact certificate rejected: " + why);
    return c;
}

// ------------------------------------------------------------------ full chain

Chain full_chain(const MccInstance& inst, Target target, bool force) {
    Chain c;
    c.source = inst;
    c.aonf = mcc_to_aonf(inst);
    if (target == Target::Aonf) return c;
    c.co = aonf_to_co(c.aonf, force);
    c.normal = co_normalize(c.co->graph, c.co->emb, &c.co->pd);
    if (target == Target::Upward) c.upward = co_to_upward(*c.normal);
    if (target == Target::Rect) c.rect = co_to_rectilinear(*c.normal);
    return c;
}

ChainCertificates lift_chain(const Chain& c, const Clique& clique) {
    ChainCertificates out;
    out.flow = lift_mcc_solution_to_flow(c.aonf, clique);
    if (!c.co) return out;
    out.co = lift_flow_to_orientation(c.aonf, *c.co, out.flow);
    out.normal = lift_to_normalized(c.co->graph, *c.normal, out.co);
    if (c.upward) out.upward = lift_orientation_to_upward(*c.upward, out.normal);
    if (c.rect) out.rect = lift_orientation_to_rect(*c.rect, out.normal);
    return out;
}

}  // namespace forge
