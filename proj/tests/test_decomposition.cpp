#include <algorithm>

#include "doctest.h"
#include "gen.hpp"

#include "forge/decomposition.hpp"
#include "forge/reductions.hpp"

using namespace forge;

namespace {

// Exact pathwidth as the minimum vertex separation over all layouts,
// by dynamic programming over placed-vertex subsets.
int exact_pathwidth(const Multigraph& g) {
    int n = g.n;
    std::vector<unsigned> nb(n, 0);
    for (const auto& e : g.edges) {
        nb[e.u] |= 1u << e.v;
        nb[e.v] |= 1u << e.u;
    }
    unsigned full = (1u << n) - 1;
    std::vector<int> best(1u << n, 1 << 20);
    best[0] = 0;
    for (unsigned S = 0; S < full; ++S) {
        if (best[S] >= (1 << 20)) continue;
        for (int v = 0; v < n; ++v) {
            if (S >> v & 1) continue;
            unsigned T = S | (1u << v);
            // placed vertices that still see something unplaced
            int frontier = 0;
            for (int x = 0; x < n; ++x)
                if ((T >> x & 1) && (nb[x] & ~T & full)) ++frontier;
            int cost = std::max(best[S], frontier);
            best[T] = std::min(best[T], cost);
        }
    }
    return best[full];
}

Multigraph path(int n) {
    Multigraph g;
    for (int i = 0; i < n; ++i) g.add_vertex();
    for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
    return g;
}

}  // namespace

TEST_CASE("validation reports the broken axiom") {
    Multigraph g = path(3);
    CHECK(validate_decomposition(g, {{{0, 1}, {1, 2}}}) == 1);
    CHECK_THROWS_AS(validate_decomposition(g, {{{0, 1}, {2}, {1, 2}}}), VertexIntervalBroken);
    CHECK_THROWS_AS(validate_decomposition(g, {{{0, 1}}}), VertexIntervalBroken);
    CHECK_THROWS_AS(validate_decomposition(g, {{{0, 1}, {1}, {2}}}), EdgeUncovered);
    CHECK_THROWS_AS(validate_decomposition(g, {{{0, 1, 7}, {1, 2}}}), IndexOutOfRange);
}

TEST_CASE("exact oracle agrees with known pathwidths") {
    CHECK(exact_pathwidth(path(6)) == 1);
    CHECK(exact_pathwidth(gen::cycle(6).g.g) == 2);
    CHECK(exact_pathwidth(gen::wheel(7).g.g) == 3);
}

TEST_CASE("greedy decompositions are valid upper bounds") {
    std::mt19937_64 rng(7);
    for (int it = 0; it < 40; ++it) {
        auto d = gen::random_triangulation(4 + it % 8, rng);
        PathDecomposition pd = greedy_path_decomposition(d.g.g);
        int w = validate_decomposition(d.g.g, pd);
        CHECK(w == greedy_pw_upper_bound(d.g.g));
        CHECK(w >= exact_pathwidth(d.g.g));
    }
}

TEST_CASE("gadget composition stays within the additive bound") {
    std::mt19937_64 rng(9);
    for (int it = 0; it < 25; ++it) {
        auto sk = gen::random_triangulation(4 + it % 6, rng);
        const Multigraph& S = sk.g.g;
        PathDecomposition spd = greedy_path_decomposition(S);
        // replace each edge by a path of random length; poles are its endpoints
        Multigraph G;
        for (int v = 0; v < S.n; ++v) G.add_vertex();
        std::vector<int> base(S.n);
        for (int v = 0; v < S.n; ++v) base[v] = v;
        std::vector<GadgetPlacement> gp;
        int max_w = 0;
        for (const auto& e : S.edges) {
            int len = 1 + static_cast<int>(rng() % 4);
            Multigraph H = path(len + 1);
            std::vector<int> id(len + 1);
            id[0] = e.u;
            id[len] = e.v;
            for (int i = 1; i < len; ++i) id[i] = G.add_vertex();
            for (const auto& he : H.edges) G.add_edge(id[he.u], id[he.v]);
            PathDecomposition hpd = greedy_path_decomposition(H);
            for (auto& b : hpd.bags)
                for (int& v : b) v = id[v];
            max_w = std::max(max_w, hpd.width());
            gp.push_back({e.id, e.u, e.v, hpd});
        }
        PathDecomposition out = compose_gadget_decomposition(S, spd, gp, base);
        int w = validate_decomposition(G, out);
        CHECK(w <= spd.width() + max_w + 1);
    }
}

TEST_CASE("composition rejects misplaced poles") {
    Multigraph S = path(3);
    PathDecomposition spd{{{0, 1}, {1, 2}}};
    GadgetPlacement bad{0, 0, 2, {{{0, 2}}}};
    CHECK_THROWS_AS(compose_gadget_decomposition(S, spd, {bad}, {0, 1, 2}), PoleMismatch);
    GadgetPlacement off{5, 0, 1, {{{0, 1}}}};
    CHECK_THROWS_AS(compose_gadget_decomposition(S, spd, {off}, {0, 1, 2}), IndexOutOfRange);
}

TEST_CASE("clique network decomposition width is at most 2k+13") {
    for (int k = 1; k <= 3; ++k)
        for (int N = 1; N <= 3; ++N) {
            MccInstance inst = random_mcc(k, N, 0.5, 100 * k + N);
            AonfStage st = mcc_to_aonf(inst);
            int w = validate_decomposition(st.net.net.g, st.pd);
            CHECK(w <= 2 * k + 13);
        }
}

TEST_CASE("clique network decomposition checks its shape") {
    MccInstance inst = random_mcc(2, 2, 0.5, 4);
    AonfStage st = mcc_to_aonf(inst);
    CHECK_THROWS_AS(mcc_network_decomposition(st.net.net.g, 2, 3, st.m), ShapeMismatch);
    CHECK_THROWS_AS(mcc_network_decomposition(st.net.net.g, 0, 2, st.m), ShapeMismatch);
}

TEST_CASE("adding vertices to every bag keeps validity") {
    auto d = gen::wheel(6);
    PathDecomposition pd = add_to_all_bags(greedy_path_decomposition(d.g.g), {0});
    int w = validate_decomposition(d.g.g, pd);
    CHECK(w >= greedy_pw_upper_bound(d.g.g));
    CHECK(w <= greedy_pw_upper_bound(d.g.g) + 1);
}
