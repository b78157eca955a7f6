#include <algorithm>
#include <set>

#include "forge/decomposition.hpp"
#include "forge/gadgets.hpp"

namespace forge {

int PathDecomposition::width() const {
    size_t w = 0;
    for (const auto& b : bags) w = std::max(w, std::set<int>(b.begin(), b.end()).size());
    return static_cast<int>(w) - 1;
}

int validate_decomposition(const Multigraph& g, const PathDecomposition& pd) {
    int B = static_cast<int>(pd.bags.size());
    std::vector<int> first(g.n, -1), last(g.n, -1), count(g.n, 0);
    for (int i = 0; i < B; ++i) {
        std::set<int> bag(pd.bags[i].begin(), pd.bags[i].end());
        for (int v : bag) {
            if (v < 0 || v >= g.n) throw IndexOutOfRange("bag " + std::to_string(i) + " names vertex " + std::to_string(v));
            if (first[v] < 0) first[v] = i;
            last[v] = i;
            ++count[v];
        }
    }
    for (int v = 0; v < g.n; ++v) {
        if (first[v] < 0) throw VertexIntervalBroken("vertex " + std::to_string(v) + " lies in no bag");
        if (last[v] - first[v] + 1 != count[v])
            throw VertexIntervalBroken("bags of vertex " + std::to_string(v) + " are not contiguous");
    }
    for (const auto& e : g.edges)
        if (std::max(first[e.u], first[e.v]) > std::min(last[e.u], last[e.v]))
            throw EdgeUncovered("edge " + std::to_string(e.id) + " (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                                ") is in no bag");
    return pd.width();
}

namespace {

// Vertex-separation layout: bag i holds the i-th vertex plus every earlier
// vertex that still has a neighbour at position >= i.
PathDecomposition from_order(const Multigraph& g, const std::vector<int>& order) {
    std::vector<int> pos(g.n);
    for (int i = 0; i < g.n; ++i) pos[order[i]] = i;
    std::vector<int> reach(g.n);
    for (int v = 0; v < g.n; ++v) reach[v] = pos[v];
    for (const auto& e : g.edges) {
        reach[e.u] = std::max(reach[e.u], pos[e.v]);
        reach[e.v] = std::max(reach[e.v], pos[e.u]);
    }
    PathDecomposition pd;
    std::set<std::pair<int, int>> open;  // (reach, vertex)
    for (int i = 0; i < g.n; ++i) {
        while (!open.empty() && open.begin()->first < i) open.erase(open.begin());
        open.insert({reach[order[i]], order[i]});
        std::vector<int> bag;
        for (const auto& [r, v] : open) bag.push_back(v);
        std::sort(bag.begin(), bag.end());
        pd.bags.push_back(bag);
    }
    return pd;
}

std::vector<int> greedy_order(const Multigraph& g, int start) {
    auto inc = g.incidence();
    std::vector<int> left(g.n);
    for (int v = 0; v < g.n; ++v) left[v] = static_cast<int>(inc[v].size());
    std::vector<bool> placed(g.n, false);
    std::set<int> cand;
    std::vector<int> order;
    auto place = [&](int v) {
        placed[v] = true;
        order.push_back(v);
        cand.erase(v);
        for (int id : inc[v]) {
            int x = g.other(id, v);
            --left[x];
            if (!placed[x]) cand.insert(x);
        }
    };
    place(start);
    while (static_cast<int>(order.size()) < g.n) {
        int best = -1;
        long best_score = 0;
        if (cand.empty()) {
            for (int v = 0; v < g.n; ++v)
                if (!placed[v] && (best < 0 || left[v] < left[best])) best = v;
        } else {
            for (int v : cand) {
                // frontier change: v joins if it keeps unplaced neighbours, and
                // frontier vertices whose last open neighbour is v leave
                long score = left[v] > 0 ? 1 : 0;
                std::set<int> seen;
                for (int id : inc[v]) {
                    int x = g.other(id, v);
                    if (placed[x] && !seen.count(x)) {
                        seen.insert(x);
                        int mult = 0;
                        for (int id2 : inc[v])
                            if (g.other(id2, v) == x) ++mult;
                        if (left[x] == mult) --score;
                    }
                }
                score = score * 4 + std::min(left[v], 3);
                if (best < 0 || score < best_score) {
                    best = v;
                    best_score = score;
                }
            }
        }
        place(best);
    }
    return order;
}

}  // namespace

PathDecomposition greedy_path_decomposition(const Multigraph& g) {
    if (g.n == 0) return {};
    auto deg = g.degrees();
    std::vector<int> starts(g.n);
    for (int v = 0; v < g.n; ++v) starts[v] = v;
    std::stable_sort(starts.begin(), starts.end(), [&](int a, int b) { return deg[a] < deg[b]; });
    int tries = g.n <= 200 ? std::min(g.n, 8) : 1;
    PathDecomposition best;
    for (int i = 0; i < tries; ++i) {
        PathDecomposition pd = from_order(g, greedy_order(g, starts[i]));
        if (best.bags.empty() || pd.width() < best.width()) best = std::move(pd);
    }
    return best;
}

int greedy_pw_upper_bound(const Multigraph& g) {
    if (g.n == 0) return -1;
    return greedy_path_decomposition(g).width();
}

PathDecomposition compose_gadget_decomposition(const Multigraph& skeleton, const PathDecomposition& pd,
                                               const std::vector<GadgetPlacement>& gadgets,
                                               const std::vector<int>& base_map) {
    int B = static_cast<int>(pd.bags.size());
    std::vector<std::set<int>> bagset(B);
    for (int i = 0; i < B; ++i) bagset[i] = std::set<int>(pd.bags[i].begin(), pd.bags[i].end());
    std::vector<std::vector<const GadgetPlacement*>> after(B);
    for (const auto& gp : gadgets) {
        if (gp.edge < 0 || gp.edge >= skeleton.m()) throw IndexOutOfRange("gadget placed on unknown edge");
        const Edge& e = skeleton.edges[gp.edge];
        std::set<int> want{base_map[e.u], base_map[e.v]}, got{gp.pole_u, gp.pole_v};
        if (want != got) throw PoleMismatch("poles of the gadget on edge " + std::to_string(gp.edge) +
                                            " do not match its endpoints");
        int at = -1;
        for (int i = 0; i < B && at < 0; ++i)
            if (bagset[i].count(e.u) && bagset[i].count(e.v)) at = i;
        if (at < 0) throw EdgeUncovered("skeleton edge " + std::to_string(gp.edge) + " is in no bag");
        after[at].push_back(&gp);
    }
    PathDecomposition out;
    for (int i = 0; i < B; ++i) {
        std::vector<int> base;
        for (int v : pd.bags[i]) base.push_back(base_map[v]);
        std::sort(base.begin(), base.end());
        base.erase(std::unique(base.begin(), base.end()), base.end());
        out.bags.push_back(base);
        for (const GadgetPlacement* gp : after[i]) {
            for (const auto& b : gp->pd.bags) {
                std::vector<int> merged = base;
                merged.insert(merged.end(), b.begin(), b.end());
                std::sort(merged.begin(), merged.end());
                merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
                out.bags.push_back(std::move(merged));
            }
            out.bags.push_back(base);
        }
    }
    return out;
}

PathDecomposition mcc_network_decomposition(const Multigraph& net, int k, int N, int m) {
    if (k < 1 || N < 1 || m < 0) throw ShapeMismatch("bad parameters");
    auto need = [&](const std::string& name) {
        int v = net.find_vertex(name);
        if (v < 0) throw ShapeMismatch("network has no vertex " + name);
        return v;
    };
    int expected = 2 + k * (m + 1) + m * (5 * k * N + 2);
    if (net.n != expected)
        throw ShapeMismatch("network has " + std::to_string(net.n) + " vertices, expected " + std::to_string(expected));
    int s = need("s"), t = need("t");
    PathDecomposition pd;
    if (m == 0) {
        std::vector<int> bag{s, t};
        for (int i = 1; i <= k; ++i) bag.push_back(need(name_V(i, 1)));
        pd.bags.push_back(bag);
        return pd;
    }
    const char roles[] = "vuwgh";
    for (int j = 1; j <= m; ++j) {
        std::vector<int> base{need(name_x(j)), need(name_y(j)), s, t};
        for (int i = 1; i <= k; ++i) {
            base.push_back(need(name_V(i, j)));
            base.push_back(need(name_V(i, j + 1)));
        }
        // groups follow the order (1,1), (1,2), ..., (k,N) of the capacity-1 paths
        auto group = [&](int l) {
            int i = l / N + 1, q = l % N + 1;
            std::vector<int> g;
            for (int r = 0; r < 5; ++r) g.push_back(need(name_inner(roles[r], i, q, j)));
            return g;
        };
        for (int l = 0; l < k * N; ++l) {
            std::vector<int> bag = base;
            auto a = group(l);
            bag.insert(bag.end(), a.begin(), a.end());
            if (l + 1 < k * N) {
                auto b = group(l + 1);
                bag.insert(bag.end(), b.begin(), b.end());
            }
            std::sort(bag.begin(), bag.end());
            pd.bags.push_back(bag);
        }
    }
    return pd;
}

PathDecomposition add_to_all_bags(const PathDecomposition& pd, const std::vector<int>& extra) {
    PathDecomposition out = pd;
    for (auto& b : out.bags) {
        b.insert(b.end(), extra.begin(), extra.end());
        std::sort(b.begin(), b.end());
        b.erase(std::unique(b.begin(), b.end()), b.end());
    }
    if (out.bags.empty()) out.bags.push_back(extra);
    return out;
}

}  // namespace forge
