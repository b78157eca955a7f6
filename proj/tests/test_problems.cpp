#include "doctest.h"
#include "gen.hpp"
#include "oracles.hpp"

#include "forge/planar.hpp"
#include "forge/problems.hpp"

using namespace forge;

namespace {

FlowNetwork two_arc_network(i64 c1, i64 c2, i64 F) {
    FlowNetwork fn;
    for (int i = 0; i < 2; ++i) fn.net.g.add_vertex();
    fn.net.add_edge(0, 1, c1, {}, true);
    fn.net.add_edge(0, 1, c2, {}, true);
    fn.s = 0;
    fn.t = 1;
    fn.F = F;
    return fn;
}

CapGraph triangle(i64 a, i64 b, i64 c) {
    CapGraph g;
    for (int i = 0; i < 3; ++i) g.g.add_vertex();
    g.add_edge(0, 1, a);
    g.add_edge(1, 2, b);
    g.add_edge(2, 0, c);
    return g;
}

FlowNetwork random_network(std::mt19937_64& rng, int n, int m) {
    FlowNetwork fn;
    for (int i = 0; i < n; ++i) fn.net.g.add_vertex();
    for (int i = 0; i < m; ++i) {
        int u = static_cast<int>(rng() % n), v = static_cast<int>(rng() % n);
        if (u == v) v = (v + 1) % n;
        fn.net.add_edge(u, v, 1 + static_cast<i64>(rng() % 4), {}, true);
    }
    fn.s = 0;
    fn.t = n - 1;
    fn.F = 1 + static_cast<i64>(rng() % 6);
    return fn;
}

}  // namespace

TEST_CASE("clique solver agrees with subset enumeration") {
    for (int seed = 0; seed < 60; ++seed) {
        int k = 1 + seed % 4, N = 1 + (seed / 4) % 3;
        MccInstance inst = random_mcc(k, N, 0.3 + 0.1 * (seed % 5), seed);
        inst.check();
        auto c = solve_mcc_bruteforce(inst);
        CHECK(c.has_value() == oracle::mcc_exists(inst));
        if (c) CHECK(is_multicolored_clique(inst, *c));
    }
}

TEST_CASE("clique solver respects its budget") {
    MccInstance inst = random_mcc(4, 3, 0.5, 1);
    CHECK_THROWS_AS(solve_mcc_bruteforce(inst, 10), BudgetExceeded);
    inst.parts[0].pop_back();
    CHECK_THROWS_AS(inst.check(), ShapeMismatch);
}

TEST_CASE("two parallel arcs of capacity 2 and 3 cannot carry 4") {
    FlowNetwork fn = two_arc_network(2, 3, 4);
    CHECK_FALSE(solve_aonf_bruteforce(fn).has_value());
    fn.F = 5;
    auto f = solve_aonf_bruteforce(fn);
    REQUIRE(f.has_value());
    CHECK(verify_aonf_flow(fn, *f));
}

TEST_CASE("all-or-nothing solver agrees with subset enumeration") {
    std::mt19937_64 rng(31);
    for (int it = 0; it < 150; ++it) {
        FlowNetwork fn = random_network(rng, 3 + it % 4, 3 + it % 10);
        auto f = solve_aonf_bruteforce(fn);
        CHECK(f.has_value() == oracle::aonf_exists(fn));
        if (f) CHECK(verify_aonf_flow(fn, *f));
    }
    FlowNetwork big = random_network(rng, 5, 61);
    CHECK_THROWS_AS(solve_aonf_bruteforce(big), BudgetExceeded);
}

TEST_CASE("a triangle circulates exactly when its capacities are equal") {
    auto o = solve_co_bruteforce(triangle(2, 2, 2));
    REQUIRE(o.has_value());
    CHECK(verify_circulating(triangle(2, 2, 2), *o));
    CHECK_FALSE(solve_co_bruteforce(triangle(2, 2, 3)).has_value());
    Orientation bad{{true, false, true}};
    std::string why;
    CHECK_FALSE(verify_circulating(triangle(2, 2, 2), bad, &why));
    CHECK_FALSE(why.empty());
}

TEST_CASE("orientation solver agrees with enumeration on triangulations") {
    std::mt19937_64 rng(37);
    for (int it = 0; it < 60; ++it) {
        auto d = gen::random_triangulation(3 + it % 5, rng, 2);
        auto o = solve_co_bruteforce(d.g);
        CHECK(o.has_value() == oracle::co_exists(d.g));
        if (o) CHECK(verify_circulating(d.g, *o));
    }
}

TEST_CASE("fixed-embedding angle solvers agree with enumeration") {
    int graphs = 0;
    oracle::for_each_small_graph(3, [&](const Multigraph& base) {
        ++graphs;
        for_each_planar_rotation(base, [&](const Embedding& rot) {
            FaceSet fs = trace_faces(base, rot);
            for (int f = 0; f < fs.num_faces(); ++f) {
                Embedding e{rot.rot, f};
                bool deg_ok = true;
                for (int dg : base.degrees()) deg_ok = deg_ok && dg <= 4;
                if (deg_ok) {
                    auto r = solve_rect_fixed_embedding(base, e);
                    CHECK(r.has_value() == (oracle::count_rect(base, e) > 0));
                    if (r) CHECK(check_rect_assignment(base, e, *r));
                }
                for (int mask = 0; mask < (1 << base.m()); ++mask) {
                    Multigraph g = base;
                    for (int i = 0; i < g.m(); ++i)
                        if (mask >> i & 1) std::swap(g.edges[i].u, g.edges[i].v);
                    if (!g.acyclic()) continue;
                    auto u = solve_upward_fixed_embedding(g, e);
                    int cnt = oracle::count_upward(g, e);
                    CHECK(u.has_value() == (cnt > 0));
                    if (u) {
                        CHECK(check_upward_assignment(g, e, *u));
                        CHECK(upward_assignment_unique(g, e, *u) == (cnt == 1));
                    }
                }
            }
            return true;
        });
    });
    CHECK(graphs > 0);
}

TEST_CASE("upward checker rejects cycles and bad labels") {
    auto c = gen::cycle(3);
    for (auto& e : c.g.g.edges) e.directed = true;
    CHECK_THROWS_AS(solve_upward_fixed_embedding(c.g.g, c.emb), CyclicInput);
    std::swap(c.g.g.edges[2].u, c.g.g.edges[2].v);
    auto a = solve_upward_fixed_embedding(c.g.g, c.emb);
    REQUIRE(a.has_value());
    AngleAssignment bad = *a;
    bad.label[0] = bad.label[0] == 0 ? 1 : -bad.label[0];
    CHECK_FALSE(check_upward_assignment(c.g.g, c.emb, bad));
}

TEST_CASE("rect checker rejects high degree") {
    Multigraph star;
    for (int i = 0; i < 6; ++i) star.add_vertex();
    for (int i = 1; i < 6; ++i) star.add_edge(0, i);
    Embedding e{{{0, 1, 2, 3, 4}, {0}, {1}, {2}, {3}, {4}}, 0};
    CHECK_THROWS_AS(solve_rect_fixed_embedding(star, e), DegreeTooHigh);
    CHECK_FALSE(solve_rect_bruteforce(star));
}

TEST_CASE("variable-embedding solvers") {
    auto c = gen::cycle(4);
    CHECK(solve_rect_bruteforce(c.g.g));
    for (auto& e : c.g.g.edges) e.directed = true;
    CHECK_FALSE(solve_upward_bruteforce(c.g.g));
    std::swap(c.g.g.edges[3].u, c.g.g.edges[3].v);
    CHECK(solve_upward_bruteforce(c.g.g));
    CHECK_THROWS_AS(solve_rect_bruteforce(gen::cycle(9).g.g), BudgetExceeded);
}
