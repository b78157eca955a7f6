#include <algorithm>
#include <set>

#include "forge/planar.hpp"

namespace forge {

Subdivision subdivide_all(const CapGraph& in, int times, const Embedding* e) {
    if (times < 1) throw IndexOutOfRange("subdivision count must be at least 1");
    const Multigraph& g = in.g;
    Subdivision s;
    s.out.g.n = 0;
    for (int v = 0; v < g.n; ++v) s.out.g.add_vertex(g.vname[v]);
    s.chain_start.assign(g.m(), -1);
    for (const auto& ed : g.edges) {
        std::vector<int> path{ed.u};
        for (int i = 1; i <= times; ++i)
            path.push_back(s.out.g.add_vertex("sub" + std::to_string(ed.id) + "." + std::to_string(i)));
        path.push_back(ed.v);
        s.chain_start[ed.id] = s.out.g.m();
        for (int i = 0; i <= times; ++i) {
            std::string tag = g.etag[ed.id];
            tag += (tag.empty() ? "" : "|") + std::string("sub:") + std::to_string(ed.id) + ":" + std::to_string(i);
            s.out.add_edge(path[i], path[i + 1], in.cap[ed.id], tag, ed.directed);
            s.parent.push_back(ed.id);
            s.position.push_back(i);
            s.representative.push_back(times % 2 == 0 && i == times / 2);
        }
    }
    if (e) {
        s.emb.rot.assign(s.out.g.n, {});
        for (int v = 0; v < g.n; ++v)
            for (int id : e->rot[v])
                s.emb.rot[v].push_back(g.edges[id].u == v ? s.chain_start[id] : s.chain_start[id] + times);
        for (const auto& ed : g.edges)
            for (int i = 1; i <= times; ++i) {
                int x = s.out.g.edges[s.chain_start[ed.id] + i].u;
                s.emb.rot[x] = {s.chain_start[ed.id] + i - 1, s.chain_start[ed.id] + i};
            }
        if (e->outer >= 0 && g.m() > 0) {
            FaceSet fs = trace_faces(g, *e);
            int d = fs.faces[e->outer][0];
            int nd = (d & 1) ? 2 * (s.chain_start[d >> 1] + times) + 1 : 2 * s.chain_start[d >> 1];
            s.emb.outer = trace_faces(s.out.g, s.emb).dart_face[nd];
        }
    }
    return s;
}

namespace {

struct Corner {
    int v, in_e, out_e;
};

void insert_before(std::vector<int>& rot, int chord, int before) {
    auto it = std::find(rot.begin(), rot.end(), before);
    rot.insert(it, chord);
}

}  // namespace

Triangulation triangulate(const CapGraph& in, const Embedding& e) {
    const Multigraph& g = in.g;
    if (!g.is_simple()) throw NotSimple("triangulation input must be simple");
    if (g.n < 3 || !g.connected()) throw CannotTriangulateSimple("need a connected graph on at least 3 vertices");
    FaceSet fs = validate_embedding(g, e);
    Triangulation t;
    t.out = in;
    t.emb = e;
    std::set<std::pair<int, int>> adj;
    for (const auto& ed : g.edges) adj.insert(std::minmax(ed.u, ed.v));

    std::vector<std::vector<Corner>> work;
    for (const auto& walk : fs.faces) {
        std::vector<Corner> f;
        for (size_t i = 0; i < walk.size(); ++i) {
            int din = walk[(i + walk.size() - 1) % walk.size()];
            int dout = walk[i];
            f.push_back({dart_tail(g, dout), din >> 1, dout >> 1});
        }
        work.push_back(std::move(f));
    }
    long budget = 16L * (g.m() + 8) * (g.m() + 8);
    auto usable = [&](const std::vector<Corner>& f, size_t i, size_t j) {
        int a = f[i].v, b = f[j].v;
        return a != b && !adj.count(std::minmax(a, b));
    };
    while (!work.empty()) {
        auto f = std::move(work.back());
        work.pop_back();
        if (f.size() <= 3) {
            if (f.size() == 3 && (f[0].v == f[1].v || f[1].v == f[2].v || f[0].v == f[2].v))
                throw CannotTriangulateSimple("degenerate face of length 3");
            continue;
        }
        if (--budget < 0) throw CannotTriangulateSimple("face repair loop exceeded its bound");
        size_t L = f.size(), ci = L, cj = L;
        // fan: prefer an ear at the lowest anchor, re-anchoring when blocked
        for (size_t a = 0; a < L && ci == L; ++a)
            if (usable(f, a, (a + 2) % L)) {
                ci = a;
                cj = (a + 2) % L;
            }
        for (size_t i = 0; i < L && ci == L; ++i)
            for (size_t j = i + 2; j < L && ci == L; ++j) {
                if (i == 0 && j == L - 1) continue;
                if (usable(f, i, j)) {
                    ci = i;
                    cj = j;
                }
            }
        if (ci == L) throw CannotTriangulateSimple("no chord keeps the graph simple");
        if (cj < ci) std::swap(ci, cj);
        int a = f[ci].v, b = f[cj].v;
        int c = t.out.add_edge(a, b, 0, "chord");
        t.added.push_back(c);
        adj.insert(std::minmax(a, b));
        t.emb.rot.resize(t.out.g.n);
        insert_before(t.emb.rot[a], c, f[ci].out_e);
        insert_before(t.emb.rot[b], c, f[cj].out_e);
        std::vector<Corner> A(f.begin() + ci, f.begin() + cj + 1);
        A.front().in_e = c;
        A.back().out_e = c;
        std::vector<Corner> B;
        for (size_t k = cj; k != ci; k = (k + 1) % L) B.push_back(f[k]);
        B.push_back(f[ci]);
        B.front().in_e = c;
        B.back().out_e = c;
        work.push_back(std::move(A));
        work.push_back(std::move(B));
    }
    FaceSet nfs = validate_embedding(t.out.g, Embedding{t.emb.rot, 0});
    int keep = fs.faces[e.outer][0];
    t.emb.outer = nfs.dart_face[keep];
    for (const auto& walk : nfs.faces)
        if (walk.size() != 3) throw CannotTriangulateSimple("a face of length " + std::to_string(walk.size()) + " remains");
    return t;
}

CapGraph eliminate_crossings(const CapGraph& in, const std::vector<Crossing>& crossings) {
    CapGraph out = in;
    for (const auto& cr : crossings) {
        if (cr.a < 0 || cr.b < 0 || cr.a >= out.g.m() || cr.b >= out.g.m() || cr.a == cr.b)
            throw DanglingReference("crossing references unknown arcs");
        if (out.cap[cr.a] == out.cap[cr.b])
            throw EqualCapacityCrossing("arcs " + std::to_string(cr.a) + " and " + std::to_string(cr.b) +
                                        " share capacity " + std::to_string(out.cap[cr.a]));
        int d = out.g.add_vertex("cross" + std::to_string(cr.a) + "x" + std::to_string(cr.b));
        for (int arc : {cr.a, cr.b}) {
            Edge& ed = out.g.edges[arc];
            int head = ed.v;
            ed.v = d;
            out.add_edge(d, head, out.cap[arc], out.g.etag[arc], ed.directed);
        }
    }
    return out;
}

}  // namespace forge
