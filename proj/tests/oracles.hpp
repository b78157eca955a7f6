#pragma once

// Exhaustive oracles written without the library's solvers. They only share
// face tracing with the code under test.

#include <functional>
#include <optional>
#include <set>
#include <vector>

#include "forge/planar.hpp"
#include "forge/problems.hpp"

namespace oracle {

using namespace forge;

inline bool mcc_exists(const MccInstance& inst) {
    std::vector<std::vector<bool>> adj(inst.g.n, std::vector<bool>(inst.g.n, false));
    for (const auto& e : inst.g.edges) adj[e.u][e.v] = adj[e.v][e.u] = true;
    std::vector<int> part(inst.g.n, -1);
    for (int i = 0; i < inst.k; ++i)
        for (int v : inst.parts[i]) part[v] = i;
    // every k-subset of vertices
    std::vector<int> pick;
    std::function<bool(int)> rec = [&](int from) {
        if (static_cast<int>(pick.size()) == inst.k) {
            std::set<int> parts;
            for (int v : pick) parts.insert(part[v]);
            if (static_cast<int>(parts.size()) != inst.k) return false;
            for (size_t a = 0; a < pick.size(); ++a)
                for (size_t b = a + 1; b < pick.size(); ++b)
                    if (!adj[pick[a]][pick[b]]) return false;
            return true;
        }
        for (int v = from; v < inst.g.n; ++v) {
            pick.push_back(v);
            bool ok = rec(v + 1);
            pick.pop_back();
            if (ok) return true;
        }
        return false;
    };
    return rec(0);
}

inline bool aonf_exists(const FlowNetwork& fn) {
    int m = fn.net.g.m();
    for (long mask = 0; mask < (1L << m); ++mask) {
        std::vector<i64> in(fn.net.g.n, 0), out(fn.net.g.n, 0);
        for (int i = 0; i < m; ++i)
            if (mask >> i & 1) {
                out[fn.net.g.edges[i].u] += fn.net.cap[i];
                in[fn.net.g.edges[i].v] += fn.net.cap[i];
            }
        bool ok = out[fn.s] - in[fn.s] == fn.F;
        for (int v = 0; v < fn.net.g.n && ok; ++v)
            if (v != fn.s && v != fn.t && in[v] != out[v]) ok = false;
        if (ok) return true;
    }
    return false;
}

inline bool co_exists(const CapGraph& cg) {
    int m = cg.g.m();
    for (long mask = 0; mask < (1L << m); ++mask) {
        std::vector<i64> bal(cg.g.n, 0);
        for (int i = 0; i < m; ++i) {
            const Edge& e = cg.g.edges[i];
            int sgn = (mask >> i & 1) ? 1 : -1;
            bal[e.v] += sgn * cg.cap[i];
            bal[e.u] -= sgn * cg.cap[i];
        }
        bool ok = true;
        for (i64 b : bal) ok = ok && b == 0;
        if (ok) return true;
    }
    return false;
}

// Calls f with each label vector whose vertex-local part is admissible;
// face balances are left to the caller.
inline void for_each_vertex_labelling(const FaceSet& fs, int n, const std::function<std::vector<std::vector<int>>(int)>& local,
                                      const std::function<void(const std::vector<int>&)>& f) {
    std::vector<int> label(fs.num_corners(), 0);
    std::function<void(int)> rec = [&](int v) {
        if (v == n) {
            f(label);
            return;
        }
        auto opts = local(v);
        if (opts.empty()) return;
        for (const auto& o : opts) {
            for (size_t i = 0; i < o.size(); ++i) label[fs.corner_base[v] + i] = o[i];
            rec(v + 1);
        }
    };
    rec(0);
}

// Number of upward labellings of a fixed embedding of an acyclic digraph.
inline int count_upward(const Multigraph& g, const Embedding& e) {
    FaceSet fs = validate_embedding(g, e);
    auto outgoing = [&](int v, int id) { return g.edges[id].u == v; };
    auto local = [&](int v) {
        int d = static_cast<int>(e.rot[v].size());
        std::vector<int> sw(d);
        int outs = 0;
        for (int i = 0; i < d; ++i) {
            sw[i] = outgoing(v, e.rot[v][i]) == outgoing(v, e.rot[v][(i + 1) % d]);
            outs += outgoing(v, e.rot[v][i]);
        }
        std::vector<std::vector<int>> opts;
        if (d == 0) return std::vector<std::vector<int>>{{}};
        // every vector in {-1,0,1}^d, filtered by the local rules
        std::vector<int> x(d, -1);
        std::function<void(int)> rec = [&](int i) {
            if (i == d) {
                int big = 0, flat = 0;
                for (int j = 0; j < d; ++j) {
                    if (sw[j] ? x[j] == 0 : x[j] != 0) return;
                    big += x[j] == 1;
                    flat += x[j] == 0;
                }
                bool terminal = outs == 0 || outs == d;
                if (terminal ? big == 1 : (big == 0 && flat == 2)) opts.push_back(x);
                return;
            }
            for (int t = -1; t <= 1; ++t) {
                x[i] = t;
                rec(i + 1);
            }
        };
        rec(0);
        return opts;
    };
    int count = 0;
    for_each_vertex_labelling(fs, g.n, local, [&](const std::vector<int>& lab) {
        for (int f = 0; f < fs.num_faces(); ++f) {
            int s = 0;
            for (int c : fs.face_corners[f]) s += lab[c];
            if (s != (f == e.outer ? 2 : -2)) return;
        }
        ++count;
    });
    return count;
}

// Number of rectilinear labellings (1..4 quarter turns) of a fixed embedding.
inline int count_rect(const Multigraph& g, const Embedding& e) {
    FaceSet fs = validate_embedding(g, e);
    auto local = [&](int v) {
        int d = static_cast<int>(e.rot[v].size());
        std::vector<std::vector<int>> opts;
        std::vector<int> x(d, 1);
        std::function<void(int, int)> rec = [&](int i, int sum) {
            if (i == d) {
                if (sum == 4) opts.push_back(x);
                return;
            }
            for (int t = 1; t <= 4; ++t) {
                x[i] = t;
                rec(i + 1, sum + t);
            }
        };
        rec(0, 0);
        if (d == 0) opts.push_back({});
        return opts;
    };
    int count = 0;
    for_each_vertex_labelling(fs, g.n, local, [&](const std::vector<int>& lab) {
        for (int f = 0; f < fs.num_faces(); ++f) {
            int s = 0;
            for (int c : fs.face_corners[f]) s += lab[c] - 2;
            if (s != (f == e.outer ? 4 : -4)) return;
        }
        ++count;
    });
    return count;
}

// Connected loopless multigraphs without isolated vertices, up to max_m edges,
// on vertex sets {0..n-1} where every vertex is used.
inline void for_each_small_graph(int max_m, const std::function<void(const Multigraph&)>& f) {
    for (int n = 2; n <= max_m + 1; ++n) {
        std::vector<std::pair<int, int>> pairs;
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b) pairs.push_back({a, b});
        std::vector<int> chosen;
        std::function<void(size_t)> rec = [&](size_t from) {
            if (!chosen.empty()) {
                Multigraph g;
                for (int i = 0; i < n; ++i) g.add_vertex();
                for (int p : chosen) g.add_edge(pairs[p].first, pairs[p].second, true);
                bool used = true;
                for (int d : g.degrees()) used = used && d > 0;
                if (used && g.connected()) f(g);
            }
            if (static_cast<int>(chosen.size()) == max_m) return;
            for (size_t p = from; p < pairs.size(); ++p) {
                chosen.push_back(static_cast<int>(p));
                rec(p);  // repeats allowed: parallel edges
                chosen.pop_back();
            }
        };
        rec(0);
    }
}

}  // namespace oracle
