#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "forge/problems.hpp"

namespace forge {

void MccInstance::check() const {
    g.check();
    if (!g.is_simple()) throw NotSimple("clique instance graph must be simple");
    if (k < 1 || N < 1 || static_cast<int>(parts.size()) != k)
        throw ShapeMismatch("expected " + std::to_string(k) + " parts");
    std::vector<int> seen(g.n, 0);
    for (const auto& p : parts) {
        if (static_cast<int>(p.size()) != N) throw ShapeMismatch("every part needs exactly N vertices");
        for (int v : p) {
            if (v < 0 || v >= g.n) throw DanglingReference("part lists unknown vertex " + std::to_string(v));
            ++seen[v];
        }
    }
    for (int v = 0; v < g.n; ++v)
        if (seen[v] != 1) throw ShapeMismatch("parts do not partition the vertex set");
}

bool MccInstance::adjacent(int x, int y) const {
    for (const auto& e : g.edges)
        if ((e.u == x && e.v == y) || (e.u == y && e.v == x)) return true;
    return false;
}

MccInstance random_mcc(int k, int N, double p, std::uint64_t seed) {
    if (k < 1 || N < 1) throw ShapeMismatch("k and N must be positive");
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution coin(p);
    MccInstance inst;
    inst.k = k;
    inst.N = N;
    for (int i = 0; i < k; ++i) {
        inst.parts.emplace_back();
        for (int a = 0; a < N; ++a)
            inst.parts.back().push_back(inst.g.add_vertex("v" + std::to_string(i + 1) + "," + std::to_string(a + 1)));
    }
    for (int i = 0; i < k; ++i)
        for (int a = 0; a < N; ++a)
            for (int l = i + 1; l < k; ++l)
                for (int b = 0; b < N; ++b)
                    if (coin(rng)) inst.g.add_edge(inst.parts[i][a], inst.parts[l][b]);
    return inst;
}

bool is_multicolored_clique(const MccInstance& inst, const Clique& pick) {
    if (static_cast<int>(pick.size()) != inst.k) return false;
    for (int a : pick)
        if (a < 1 || a > inst.N) return false;
    std::set<std::pair<int, int>> adj;
    for (const auto& e : inst.g.edges) adj.insert(std::minmax(e.u, e.v));
    for (int i = 0; i < inst.k; ++i)
        for (int j = i + 1; j < inst.k; ++j) {
            int x = inst.parts[i][pick[i] - 1], y = inst.parts[j][pick[j] - 1];
            if (!adj.count(std::minmax(x, y))) return false;
        }
    return true;
}

std::optional<Clique> solve_mcc_bruteforce(const MccInstance& inst, long budget) {
    inst.check();
    double tuples = std::pow(static_cast<double>(inst.N), inst.k);
    if (tuples > static_cast<double>(budget))
        throw BudgetExceeded(std::to_string(inst.N) + "^" + std::to_string(inst.k) + " tuples exceed the budget");
    std::set<std::pair<int, int>> adj;
    for (const auto& e : inst.g.edges) adj.insert(std::minmax(e.u, e.v));
    Clique pick(inst.k, 0);
    // depth-first in lexicographic order, so the first witness is the least one
    auto rec = [&](auto&& self, int i) -> bool {
        if (i == inst.k) return true;
        for (int a = 1; a <= inst.N; ++a) {
            int x = inst.parts[i][a - 1];
            bool ok = true;
            for (int j = 0; j < i && ok; ++j) ok = adj.count(std::minmax(x, inst.parts[j][pick[j] - 1])) > 0;
            if (!ok) continue;
            pick[i] = a;
            if (self(self, i + 1)) return true;
        }
        return false;
    };
    if (rec(rec, 0)) return pick;
    return std::nullopt;
}

void FlowNetwork::check() const {
    net.g.check();
    if (s == t || s < 0 || t < 0 || s >= net.g.n || t >= net.g.n) throw ShapeMismatch("bad source/sink");
    if (net.cap.size() != net.g.edges.size()) throw DanglingReference("capacity table out of sync");
    for (int i = 0; i < net.g.m(); ++i) {
        if (!net.g.edges[i].directed) throw ShapeMismatch("flow networks are directed");
        if (net.cap[i] < 1) throw ShapeMismatch("arc capacities must be positive");
    }
}

bool verify_aonf_flow(const FlowNetwork& fn, const AoNFlow& flow, std::string* why) {
    const Multigraph& g = fn.net.g;
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    if (static_cast<int>(flow.active.size()) != g.m()) return fail("active set has wrong length");
    std::vector<i64> excess(g.n, 0);  // inflow - outflow
    for (const auto& e : g.edges)
        if (flow.active[e.id]) {
            excess[e.v] += fn.net.cap[e.id];
            excess[e.u] -= fn.net.cap[e.id];
        }
    for (int v = 0; v < g.n; ++v)
        if (v != fn.s && v != fn.t && excess[v] != 0)
            return fail("conservation fails at " + (g.vname[v].empty() ? std::to_string(v) : g.vname[v]));
    if (-excess[fn.s] != fn.F)
        return fail("value " + std::to_string(-excess[fn.s]) + " differs from target " + std::to_string(fn.F));
    return true;
}

std::optional<AoNFlow> solve_aonf_bruteforce(const FlowNetwork& fn, int limit) {
    const Multigraph& g = fn.net.g;
    if (g.m() > limit)
        throw BudgetExceeded(std::to_string(g.m()) + " arcs exceed the limit of " + std::to_string(limit));
    std::vector<i64> target(g.n, 0), excess(g.n, 0), open_in(g.n, 0), open_out(g.n, 0);
    target[fn.s] = -fn.F;
    target[fn.t] += fn.F;
    for (const auto& e : g.edges) {
        open_in[e.v] += fn.net.cap[e.id];
        open_out[e.u] += fn.net.cap[e.id];
    }
    auto viable = [&](int v) {
        return excess[v] + open_in[v] >= target[v] && excess[v] - open_out[v] <= target[v];
    };
    for (int v = 0; v < g.n; ++v)
        if (!viable(v)) return std::nullopt;
    AoNFlow f;
    f.active.assign(g.m(), false);
    auto rec = [&](auto&& self, int i) -> bool {
        if (i == g.m()) return true;
        const Edge& e = g.edges[i];
        i64 c = fn.net.cap[i];
        open_in[e.v] -= c;
        open_out[e.u] -= c;
        // inactive first: the first witness found is the least under edge-id order
        if (viable(e.u) && viable(e.v) && self(self, i + 1)) return true;
        excess[e.v] += c;
        excess[e.u] -= c;
        f.active[i] = true;
        if (viable(e.u) && viable(e.v) && self(self, i + 1)) return true;
        f.active[i] = false;
        excess[e.v] -= c;
        excess[e.u] += c;
        open_in[e.v] += c;
        open_out[e.u] += c;
        return false;
    };
    if (rec(rec, 0)) return f;
    return std::nullopt;
}

bool verify_circulating(const CapacitatedGraph& cg, const Orientation& o, std::string* why) {
    const Multigraph& g = cg.g;
    if (static_cast<int>(o.forward.size()) != g.m()) {
        if (why) *why = "orientation has wrong length";
        return false;
    }
    std::vector<i64> bal(g.n, 0);
    for (const auto& e : g.edges) {
        int tail = o.forward[e.id] ? e.u : e.v;
        int head = o.forward[e.id] ? e.v : e.u;
        bal[head] += cg.cap[e.id];
        bal[tail] -= cg.cap[e.id];
    }
    for (int v = 0; v < g.n; ++v)
        if (bal[v] != 0) {
            if (why) *why = "imbalance " + std::to_string(bal[v]) + " at " + (g.vname[v].empty() ? std::to_string(v) : g.vname[v]);
            return false;
        }
    return true;
}

std::optional<Orientation> solve_co_bruteforce(const CapacitatedGraph& cg, int limit) {
    const Multigraph& g = cg.g;
    std::vector<int> pos;
    for (int i = 0; i < g.m(); ++i)
        if (cg.cap[i] > 0) pos.push_back(i);
    if (static_cast<int>(pos.size()) > limit)
        throw BudgetExceeded(std::to_string(pos.size()) + " positive edges exceed the limit of " + std::to_string(limit));
    std::vector<i64> bal(g.n, 0), open(g.n, 0);
    for (int i : pos) {
        open[g.edges[i].u] += cg.cap[i];
        open[g.edges[i].v] += cg.cap[i];
    }
    // necessary condition: even total capacity at every vertex
    for (int v = 0; v < g.n; ++v)
        if (open[v] % 2 != 0) return std::nullopt;
    Orientation o;
    o.forward.assign(g.m(), true);
    auto ok = [&](int v) { return std::abs(bal[v]) <= open[v]; };
    auto rec = [&](auto&& self, size_t k) -> bool {
        if (k == pos.size()) return true;
        int i = pos[k];
        const Edge& e = g.edges[i];
        i64 c = cg.cap[i];
        open[e.u] -= c;
        open[e.v] -= c;
        for (bool fw : {true, false}) {
            int tail = fw ? e.u : e.v, head = fw ? e.v : e.u;
            bal[head] += c;
            bal[tail] -= c;
            o.forward[i] = fw;
            if (ok(e.u) && ok(e.v) && self(self, k + 1)) return true;
            bal[head] -= c;
            bal[tail] += c;
        }
        o.forward[i] = true;
        open[e.u] += c;
        open[e.v] += c;
        return false;
    };
    if (rec(rec, 0)) return o;
    return std::nullopt;
}

}  // namespace forge
