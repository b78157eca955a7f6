#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "forge/planar.hpp"

namespace forge {

namespace {

void check_rotation(const Multigraph& g, const Embedding& e) {
    if (static_cast<int>(e.rot.size()) != g.n)
        throw DanglingReference("rotation covers " + std::to_string(e.rot.size()) + " of " +
                                std::to_string(g.n) + " vertices");
    std::vector<int> seen(g.m(), 0);
    for (int v = 0; v < g.n; ++v) {
        for (int id : e.rot[v]) {
            if (id < 0 || id >= g.m()) throw DanglingReference("unknown edge " + std::to_string(id));
            const auto& ed = g.edges[id];
            if (ed.u != v && ed.v != v)
                throw DanglingReference("edge " + std::to_string(id) + " listed at non-endpoint " +
                                        std::to_string(v));
            ++seen[id];
        }
    }
    for (int id = 0; id < g.m(); ++id)
        if (seen[id] != 2) throw DanglingReference("edge " + std::to_string(id) + " not listed at both ends");
}

}  // namespace

FaceSet trace_faces(const Multigraph& g, const Embedding& e) {
    check_rotation(g, e);
    FaceSet fs;
    fs.pos.assign(g.m(), {-1, -1});
    fs.corner_base.assign(g.n + 1, 0);
    for (int v = 0; v < g.n; ++v) {
        fs.corner_base[v + 1] = fs.corner_base[v] + static_cast<int>(e.rot[v].size());
        for (int i = 0; i < static_cast<int>(e.rot[v].size()); ++i) {
            int id = e.rot[v][i];
            fs.pos[id][g.edges[id].u == v ? 0 : 1] = i;
        }
    }
    int nc = fs.corner_base[g.n];
    fs.corner_face.assign(nc, -1);
    fs.corner_vertex.assign(nc, -1);
    for (int v = 0; v < g.n; ++v)
        for (int c = fs.corner_base[v]; c < fs.corner_base[v + 1]; ++c) fs.corner_vertex[c] = v;
    fs.dart_face.assign(2 * g.m(), -1);
    for (int start = 0; start < 2 * g.m(); ++start) {
        if (fs.dart_face[start] >= 0) continue;
        int f = fs.num_faces();
        fs.faces.emplace_back();
        fs.face_corners.emplace_back();
        int d = start;
        do {
            fs.dart_face[d] = f;
            fs.faces[f].push_back(d);
            int y = dart_head(g, d);
            int e_id = d >> 1;
            int side = (d & 1) ? 0 : 1;  // side of e at y
            int p = fs.pos[e_id][side];
            int deg = static_cast<int>(e.rot[y].size());
            int c = fs.corner_base[y] + p;
            fs.corner_face[c] = f;
            fs.face_corners[f].push_back(c);
            int nxt = e.rot[y][(p + 1) % deg];
            d = 2 * nxt + (g.edges[nxt].u == y ? 0 : 1);
        } while (d != start);
    }
    return fs;
}

static bool euler_ok(const Multigraph& g, const FaceSet& fs) {
    // V - E + F = 2 per component that has edges; isolated vertices are fine.
    std::vector<int> parent(g.n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& ed : g.edges) parent[find(ed.u)] = find(ed.v);
    std::map<int, long> chi;
    std::vector<int> deg = g.degrees();
    for (int v = 0; v < g.n; ++v)
        if (deg[v] > 0) chi[find(v)] += 1;
    for (const auto& ed : g.edges) chi[find(ed.u)] -= 1;
    for (int f = 0; f < fs.num_faces(); ++f) chi[find(dart_tail(g, fs.faces[f][0]))] += 1;
    for (auto& [root, x] : chi)
        if (x != 2) return false;
    return true;
}

FaceSet validate_embedding(const Multigraph& g, const Embedding& e) {
    FaceSet fs = trace_faces(g, e);
    if (!euler_ok(g, fs))
        throw NonPlanarRotation("Euler check failed: V=" + std::to_string(g.n) + " E=" +
                                std::to_string(g.m()) + " F=" + std::to_string(fs.num_faces()));
    if (g.m() > 0 && (e.outer < 0 || e.outer >= fs.num_faces()))
        throw DanglingReference("outer face " + std::to_string(e.outer) + " does not exist");
    return fs;
}

bool is_planar_rotation(const Multigraph& g, const Embedding& e) {
    return euler_ok(g, trace_faces(g, e));
}

Embedding mirror(const Multigraph& g, const Embedding& e) {
    Embedding r;
    r.rot = e.rot;
    for (auto& l : r.rot) std::reverse(l.begin(), l.end());
    if (e.outer >= 0 && g.m() > 0) {
        FaceSet a = trace_faces(g, e);
        FaceSet b = trace_faces(g, r);
        r.outer = b.dart_face[a.faces[e.outer][0] ^ 1];
    }
    return r;
}

Embedding rotation_from_angles(const Multigraph& g,
                               const std::vector<std::pair<double, double>>& ends) {
    std::vector<std::vector<std::pair<double, int>>> at(g.n);
    for (const auto& ed : g.edges) {
        at[ed.u].push_back({ends[ed.id].first, ed.id});
        at[ed.v].push_back({ends[ed.id].second, ed.id});
    }
    Embedding e;
    e.rot.resize(g.n);
    for (int v = 0; v < g.n; ++v) {
        auto& l = at[v];
        for (auto& [a, id] : l) a = std::remainder(a, 2 * M_PI);
        std::sort(l.begin(), l.end(), [](const auto& x, const auto& y) {
            if (x.first != y.first) return x.first > y.first;
            return x.second < y.second;
        });
        for (auto& [a, id] : l) e.rot[v].push_back(id);
    }
    return e;
}

DualGraph dual_graph(const Multigraph& g, const Embedding& e, const std::vector<i64>& cap) {
    if (!g.connected()) throw NotBiconnected("dual requires a connected graph");
    FaceSet fs = validate_embedding(g, e);
    DualGraph d;
    for (int f = 0; f < fs.num_faces(); ++f) d.g.add_vertex("f" + std::to_string(f));
    for (const auto& ed : g.edges) {
        // dual edge crosses the primal edge from its left face to its right face
        d.g.add_edge(fs.dart_face[2 * ed.id], fs.dart_face[2 * ed.id + 1], false,
                     g.etag[ed.id].empty() ? "dual" : g.etag[ed.id]);
    }
    d.w = cap;
    d.w.resize(g.m(), 0);
    d.emb.rot.assign(fs.num_faces(), {});
    for (int f = 0; f < fs.num_faces(); ++f)
        for (int dart : fs.faces[f]) d.emb.rot[f].push_back(dart >> 1);
    // Dual faces correspond to primal vertices; locate each one through any
    // incident primal edge.
    FaceSet dfs = trace_faces(d.g, d.emb);
    if (!euler_ok(d.g, dfs)) {
        for (auto& l : d.emb.rot) std::reverse(l.begin(), l.end());
        dfs = trace_faces(d.g, d.emb);
    }
    d.face_of_primal_vertex.assign(g.n, -1);
    auto inc = g.incidence();
    for (int v = 0; v < g.n; ++v) {
        if (inc[v].empty()) continue;
        std::map<int, int> count;
        for (int id : inc[v]) {
            count[dfs.dart_face[2 * id]]++;
            count[dfs.dart_face[2 * id + 1]]++;
        }
        int best = -1, bc = -1;
        for (auto& [f, c] : count)
            if (c > bc && dfs.faces[f].size() == inc[v].size()) {
                best = f;
                bc = c;
            }
        d.face_of_primal_vertex[v] = best;
    }
    d.emb.outer = 0;
    return d;
}

namespace {

// True iff the graph minus `skip` (or the whole graph for skip < 0) is
// connected and has no articulation point.
bool biconnected_without(const Multigraph& g, const std::vector<std::vector<int>>& inc, int skip) {
    int alive = g.n - (skip >= 0 ? 1 : 0);
    if (alive < 2) return false;
    int root = skip == 0 ? 1 : 0;
    std::vector<int> pre(g.n, -1), low(g.n, 0);
    struct Frame {
        int v, via;
        size_t i;
        int kids;
    };
    int clock = 0;
    std::vector<Frame> st{{root, -1, 0, 0}};
    pre[root] = low[root] = clock++;
    while (!st.empty()) {
        Frame& fr = st.back();
        if (fr.i < inc[fr.v].size()) {
            int id = inc[fr.v][fr.i++];
            if (id == fr.via) continue;
            int w = g.other(id, fr.v);
            if (w == skip || w == fr.v) continue;
            if (pre[w] < 0) {
                pre[w] = low[w] = clock++;
                ++fr.kids;
                st.push_back({w, id, 0, 0});
            } else {
                low[fr.v] = std::min(low[fr.v], pre[w]);
            }
        } else {
            Frame done = st.back();
            st.pop_back();
            if (!st.empty()) {
                Frame& par = st.back();
                low[par.v] = std::min(low[par.v], low[done.v]);
                if (st.size() > 1 && low[done.v] >= pre[par.v]) return false;
            } else if (done.kids > 1) {
                return false;
            }
        }
    }
    return clock == alive;
}

}  // namespace

bool is_biconnected(const Multigraph& g) {
    if (g.n < 2) return false;
    return biconnected_without(g, g.incidence(), -1);
}

bool is_triconnected(const Multigraph& g) {
    if (!g.is_simple()) throw NotSimple("triconnectivity is defined on simple graphs here");
    if (g.n < 4) return false;
    auto inc = g.incidence();
    if (!biconnected_without(g, inc, -1)) return false;
    for (int a = 0; a < g.n; ++a)
        if (!biconnected_without(g, inc, a)) return false;
    return true;
}

Multigraph st_orientation(const Multigraph& g, int s, int t) {
    if (s == t || s < 0 || t < 0 || s >= g.n || t >= g.n) throw NotBiconnected("s and t must be distinct vertices");
    auto inc = g.incidence();
    for (auto& l : inc) std::sort(l.begin(), l.end());
    int st_edge = -1;
    for (int id : inc[s])
        if (g.other(id, s) == t) {
            st_edge = id;
            break;
        }
    if (st_edge < 0) throw NotBiconnected("s and t must be adjacent");
    if (!is_biconnected(g)) throw NotBiconnected("graph is not biconnected");

    // Tarjan-style st-numbering: DFS from s starting with the edge to t, then
    // the Even-Tarjan signed-list construction.
    std::vector<int> pre(g.n, -1), low(g.n), par(g.n, -1), order;
    std::vector<int> par_edge(g.n, -1);
    int clock = 0;
    pre[s] = clock++;
    low[s] = pre[s];
    order.push_back(s);
    pre[t] = clock++;
    low[t] = pre[t];
    par[t] = s;
    par_edge[t] = st_edge;
    order.push_back(t);
    struct Frame {
        int v;
        size_t i;
    };
    std::vector<Frame> stack{{t, 0}};
    while (!stack.empty()) {
        auto& fr = stack.back();
        int v = fr.v;
        if (fr.i < inc[v].size()) {
            int id = inc[v][fr.i++];
            if (id == par_edge[v]) continue;
            int w = g.other(id, v);
            if (pre[w] < 0) {
                pre[w] = clock++;
                low[w] = pre[w];
                par[w] = v;
                par_edge[w] = id;
                order.push_back(w);
                stack.push_back({w, 0});
            } else {
                low[v] = std::min(low[v], pre[w]);
            }
        } else {
            stack.pop_back();
            if (par[v] >= 0) low[par[v]] = std::min(low[par[v]], low[v]);
        }
    }
    for (int v = 0; v < g.n; ++v)
        if (pre[v] < 0) throw NotBiconnected("graph is disconnected");
    std::vector<int> by_pre(g.n);
    for (int v = 0; v < g.n; ++v) by_pre[pre[v]] = v;

    // Linked list with sign bits (Even-Tarjan).
    std::vector<int> nxt(g.n, -1), prv(g.n, -1);
    std::vector<bool> minus(g.n, false);
    nxt[s] = t;
    prv[t] = s;
    minus[s] = true;
    auto insert_before = [&](int x, int before) {
        int p = prv[before];
        prv[x] = p;
        nxt[x] = before;
        prv[before] = x;
        if (p >= 0) nxt[p] = x;
    };
    auto insert_after = [&](int x, int after) {
        int q = nxt[after];
        nxt[x] = q;
        prv[x] = after;
        nxt[after] = x;
        if (q >= 0) prv[q] = x;
    };
    for (size_t k = 2; k < order.size(); ++k) {
        int v = order[k];
        int p = par[v];
        int lv = by_pre[low[v]];
        if (minus[lv]) {
            insert_before(v, p);
            minus[p] = false;
        } else {
            insert_after(v, p);
            minus[p] = true;
        }
    }
    std::vector<int> num(g.n, -1);
    int cur = s, idx = 0;
    while (cur >= 0) {
        num[cur] = idx++;
        cur = nxt[cur];
    }
    Multigraph out = g;
    for (auto& ed : out.edges) {
        if (num[ed.u] > num[ed.v]) std::swap(ed.u, ed.v);
        ed.directed = true;
    }
    return out;
}

void for_each_planar_rotation(const Multigraph& g,
                              const std::function<bool(const Embedding&)>& f) {
    auto inc = g.incidence();
    // BFS order keeps the placed subgraph connected, which makes pruning bite early.
    std::vector<int> order, seen(g.n, 0);
    for (int r = 0; r < g.n; ++r) {
        if (seen[r]) continue;
        seen[r] = 1;
        order.push_back(r);
        for (size_t h = order.size() - 1; h < order.size(); ++h)
            for (int id : inc[order[h]]) {
                int w = g.other(id, order[h]);
                if (!seen[w]) {
                    seen[w] = 1;
                    order.push_back(w);
                }
            }
    }
    std::vector<int> rank(g.n);
    for (int i = 0; i < g.n; ++i) rank[order[i]] = i;

    Embedding e;
    e.rot = inc;
    for (auto& l : e.rot) std::sort(l.begin(), l.end());

    // partial genus check on edges whose endpoints both have rank <= k
    auto partial_ok = [&](int k) {
        Multigraph h;
        std::vector<int> vm(g.n, -1);
        for (int i = 0; i <= k; ++i) vm[order[i]] = h.add_vertex();
        std::vector<int> em(g.m(), -1);
        for (const auto& ed : g.edges)
            if (rank[ed.u] <= k && rank[ed.v] <= k) em[ed.id] = h.add_edge(vm[ed.u], vm[ed.v]);
        Embedding pe;
        pe.rot.resize(h.n);
        for (int i = 0; i <= k; ++i)
            for (int id : e.rot[order[i]])
                if (em[id] >= 0) pe.rot[vm[order[i]]].push_back(em[id]);
        return euler_ok(h, trace_faces(h, pe));
    };

    bool stop = false;
    std::function<void(int)> rec = [&](int k) {
        if (stop) return;
        if (k == g.n) {
            if (!f(e)) stop = true;
            return;
        }
        int v = order[k];
        auto& l = e.rot[v];
        std::sort(l.begin(), l.end());
        if (l.size() <= 2) {
            if (partial_ok(k)) rec(k + 1);
            return;
        }
        // first edge fixed, permute the rest
        do {
            if (partial_ok(k)) rec(k + 1);
            if (stop) return;
        } while (std::next_permutation(l.begin() + 1, l.end()));
        std::sort(l.begin(), l.end());
    };
    rec(0);
}

std::vector<int> embedding_key(const Multigraph& g, const Embedding& e) {
    std::vector<int> key;
    for (const auto& l : e.rot) {
        if (l.empty()) {
            key.push_back(-1);
            continue;
        }
        auto it = std::min_element(l.begin(), l.end());
        size_t off = it - l.begin();
        for (size_t i = 0; i < l.size(); ++i) key.push_back(l[(off + i) % l.size()]);
        key.push_back(-1);
    }
    if (e.outer >= 0 && g.m() > 0) {
        FaceSet fs = trace_faces(g, e);
        auto darts = fs.faces[e.outer];
        std::sort(darts.begin(), darts.end());
        key.push_back(-2);
        key.insert(key.end(), darts.begin(), darts.end());
    }
    return key;
}

}  // namespace forge
