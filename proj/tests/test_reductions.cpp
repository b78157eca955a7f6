#include <algorithm>

#include "doctest.h"
#include "gen.hpp"
#include "oracles.hpp"

#include "forge/planar.hpp"
#include "forge/reductions.hpp"

using namespace forge;

namespace {

MccInstance complete_mcc(int k, int N) { return random_mcc(k, N, 1.0, 0); }

Orientation reversed(Orientation o) {
    o.forward.flip();
    return o;
}

// Triangle with equal capacities; every orientation class is a directed cycle.
CapGraph triangle(i64 c) {
    CapGraph g;
    for (int i = 0; i < 3; ++i) g.g.add_vertex();
    g.add_edge(0, 1, c);
    g.add_edge(1, 2, c);
    g.add_edge(2, 0, c);
    return g;
}

}  // namespace

TEST_CASE("stage constants") {
    CHECK(co_alpha(2, 3) == 30);
    CHECK(co_beta(2, 3) == 28);
    CHECK(co_xi(2, 3) == 3600);
    for (int k = 1; k <= 3; ++k)
        for (int N = 1; N <= 3; ++N) {
            i64 a = 0;
            for (int q = 1; q < N; ++q) a += vs_capacity(k, N, q);
            CHECK(co_alpha(k, N) == a);
            i64 F = static_cast<i64>(k) * (2 * k * N + 2 * N);
            CHECK(co_beta(k, N) == 2 * F - (F + 2 * k * (N - 1)));
        }
}

TEST_CASE("flow network arithmetic") {
    for (auto [k, N] : {std::pair{1, 1}, {2, 2}, {2, 3}, {3, 2}}) {
        AonfStage st = mcc_to_aonf(random_mcc(k, N, 0.6, 3));
        const auto& g = st.net.net.g;
        CHECK(st.net.F == k * (2 * k * N + 2 * N));
        i64 out_s = 0;
        int A = 0;
        for (const auto& e : g.edges) {
            if (e.u == st.net.s) out_s += st.net.net.cap[e.id];
            if (g.etag[e.id].rfind("A:", 0) == 0) ++A;
        }
        CHECK(out_s == st.net.F + 2 * k * (N - 1));
        CHECK(A == k * (N - 1));
        validate_embedding(g, st.emb);
    }
}

TEST_CASE("clique and flow round-trip") {
    for (int seed = 0; seed < 30; ++seed) {
        int k = 1 + seed % 3, N = 1 + (seed / 3) % 3;
        MccInstance inst = random_mcc(k, N, 0.7, seed);
        AonfStage st = mcc_to_aonf(inst);
        auto c = solve_mcc_bruteforce(inst);
        if (!c) continue;
        AoNFlow f = lift_mcc_solution_to_flow(st, *c);
        CHECK(verify_aonf_flow(st.net, f));
        CHECK(extract_clique_from_flow(st, f) == *c);
    }
}

TEST_CASE("small networks agree with the clique oracle") {
    // arcs stay within the flow brute-force limit for k = 1
    for (int N = 1; N <= 3; ++N)
        for (int seed = 0; seed < 4; ++seed) {
            MccInstance inst = random_mcc(1, N, 0.5, seed);
            AonfStage st = mcc_to_aonf(inst);
            if (st.net.net.g.m() > 20) continue;
            CHECK(oracle::aonf_exists(st.net) == oracle::mcc_exists(inst));
        }
}

TEST_CASE("clique lifting rejects bad picks") {
    MccInstance inst = random_mcc(2, 2, 0.0, 1);
    AonfStage st = mcc_to_aonf(inst);
    CHECK_THROWS_AS(lift_mcc_solution_to_flow(st, {1, 1}), CliqueInvalid);
    CHECK_THROWS_AS(lift_mcc_solution_to_flow(st, {1}), CliqueInvalid);
    CHECK_THROWS_AS(lift_mcc_solution_to_flow(st, {1, 3}), CliqueInvalid);
}

TEST_CASE("corrupted flows fail to decode") {
    MccInstance inst = complete_mcc(2, 2);
    AonfStage st = mcc_to_aonf(inst);
    AoNFlow f = lift_mcc_solution_to_flow(st, {1, 2});
    for (int e = 0; e < st.net.net.g.m(); e += 7) {
        AoNFlow bad = f;
        bad.active[e] = !bad.active[e];
        CHECK_THROWS_AS(extract_clique_from_flow(st, bad), DecodeFailure);
    }
}

TEST_CASE("small N requires the force flag") {
    AonfStage st = mcc_to_aonf(complete_mcc(2, 2));
    CHECK_THROWS_AS(aonf_to_co(st, false), PreconditionN);
    CoStage co = aonf_to_co(st, true);
    CHECK_FALSE(co.equivalence_guaranteed);
    CHECK(co.alpha == co_alpha(2, 2));
    validate_embedding(co.graph.g, co.emb);
    validate_decomposition(co.graph.g, co.pd);
}

TEST_CASE("orientation extraction handles the reversed cycle and tampering") {
    MccInstance inst = complete_mcc(2, 2);
    AonfStage st = mcc_to_aonf(inst);
    CoStage co = aonf_to_co(st, true);
    AoNFlow f = lift_mcc_solution_to_flow(st, {2, 1});
    Orientation o = lift_flow_to_orientation(st, co, f);
    CHECK(verify_circulating(co.graph, o));
    CHECK(extract_flow_from_orientation(st, co, o).active == f.active);
    CHECK(extract_flow_from_orientation(st, co, reversed(o)).active == f.active);
    Orientation bad = o;
    bad.forward[co.cycle[0]] = !bad.forward[co.cycle[0]];
    CHECK_THROWS_AS(extract_flow_from_orientation(st, co, bad), OrientationInvalid);
    CHECK_THROWS_AS(extract_flow_from_orientation(st, co, Orientation{{true}}), OrientationInvalid);
}

TEST_CASE("normalization handles parallel edges") {
    CapGraph g;
    g.g.add_vertex();
    g.g.add_vertex();
    for (int i = 0; i < 3; ++i) g.add_edge(0, 1, 3);
    Embedding e{{{0, 1, 2}, {2, 1, 0}}, 0};
    NormalStage n = co_normalize(g, e);
    std::string why;
    CHECK(audit_normalized(n, &why));
    CHECK(n.graph.g.is_simple());
    // three equal capacities cannot cancel
    CHECK_FALSE(solve_co_bruteforce(g).has_value());
}

TEST_CASE("normalization round-trips orientations") {
    std::mt19937_64 rng(41);
    for (int it = 0; it < 20; ++it) {
        auto d = gen::random_triangulation(4 + it % 5, rng, 2);
        NormalStage n = co_normalize(d.g, d.emb);
        CHECK(audit_normalized(n));
        auto o = solve_co_bruteforce(d.g);
        if (!o) continue;
        Orientation up = lift_to_normalized(d.g, n, *o);
        CHECK(extract_from_normalized(d.g, n, up).forward == o->forward);
        CHECK(n.subdivision_width <= greedy_pw_upper_bound(d.g.g) + 1);
    }
}

TEST_CASE("disagreeing subdivision halves are rejected") {
    CapGraph t = triangle(1);
    auto d = gen::cycle(3);
    NormalStage n = co_normalize(t, d.emb);
    Orientation o{{true, true, true}};
    Orientation up = lift_to_normalized(t, n, o);
    for (int e = 0; e < n.graph.g.m(); ++e)
        if (n.parent[e] == 0 && n.position[e] == 1) up.forward[e] = !up.forward[e];
    CHECK_THROWS_AS(extract_from_normalized(t, n, up), OrientationInvalid);
}

TEST_CASE("rect stage theta on a triangulated K4") {
    auto d = gen::wheel(4, 1);
    NormalStage n;
    n.graph = d.g;
    n.emb = d.emb;
    n.pd = greedy_path_decomposition(d.g.g);
    for (int e = 0; e < d.g.g.m(); ++e) {
        n.parent.push_back(e);
        n.position.push_back(0);
    }
    RectStage r = co_to_rectilinear(n);
    CHECK(r.skeleton.g.n == 28);
    CHECK(r.theta == 29);
    for (const auto& t : r.tendrils) CHECK(t.w == 29);
    UpwardStage u = co_to_upward(n);
    for (int deg : u.skeleton.degrees()) CHECK(deg == 3);
}

TEST_CASE("upward and rect certificates travel the whole chain") {
    for (auto [k, N] : {std::pair{1, 1}, {1, 3}, {2, 2}}) {
        MccInstance inst = complete_mcc(k, N);
        Clique c(k, N);
        for (Target t : {Target::Upward, Target::Rect}) {
            Chain ch = full_chain(inst, t, true);
            ChainCertificates cert = lift_chain(ch, c);
            Orientation back;
            if (t == Target::Upward) {
                std::string why;
                CHECK(check_upward_certificate(*ch.upward, *cert.upward, &why));
                back = extract_orientation_from_upward(*ch.upward, *cert.upward);
            } else {
                std::string why;
                CHECK(check_rect_certificate(*ch.rect, *cert.rect, &why));
                back = extract_orientation_from_rect(*ch.rect, *cert.rect);
            }
            CHECK(back.forward == cert.normal.forward);
            Orientation co = extract_from_normalized(ch.co->graph, *ch.normal, back);
            AoNFlow f = extract_flow_from_orientation(ch.aonf, *ch.co, co);
            CHECK(extract_clique_from_flow(ch.aonf, f) == c);
        }
    }
}

TEST_CASE("flipping one tendril breaks the upward certificate") {
    Chain ch = full_chain(complete_mcc(1, 1), Target::Upward, true);
    ChainCertificates cert = lift_chain(ch, {1});
    for (size_t i = 0; i < cert.upward->flip.size(); ++i) {
        // zero-capacity chords carry trivial tendrils whose side is irrelevant
        if (ch.upward->tendrils[i].w == 0) continue;
        UpwardCertificate bad = *cert.upward;
        bad.flip[i] = !bad.flip[i];
        CHECK_FALSE(check_upward_certificate(*ch.upward, bad));
    }
}

TEST_CASE("flipping one tendril breaks the rect certificate") {
    Chain ch = full_chain(complete_mcc(1, 1), Target::Rect, true);
    ChainCertificates cert = lift_chain(ch, {1});
    for (size_t i = 0; i < cert.rect->flip.size(); ++i) {
        if (ch.rect->tendrils[i].w == 0) continue;
        RectCertificate bad = *cert.rect;
        bad.flip[i] = !bad.flip[i];
        CHECK_FALSE(check_rect_certificate(*ch.rect, bad));
    }
}

TEST_CASE("expanded graphs carry checkable assignments") {
    CapGraph t = triangle(1);
    auto d = gen::cycle(3);
    NormalStage n = co_normalize(t, d.emb);
    Orientation o = lift_to_normalized(t, n, Orientation{{true, true, true}});

    UpwardStage u = co_to_upward(n);
    UpwardCertificate uc = lift_orientation_to_upward(u, o);
    Expanded xu = expand_upward(u, &uc);
    CHECK(check_upward_assignment(xu.g, xu.emb, xu.lambda));
    validate_decomposition(xu.g, xu.pd);
    UpwardCertificate back = compact_upward(u, xu, xu.emb, xu.lambda);
    CHECK(back.flip == uc.flip);
    CHECK(extract_orientation_from_upward(u, back).forward == o.forward);

    RectStage r = co_to_rectilinear(n);
    RectCertificate rc = lift_orientation_to_rect(r, o);
    Expanded xr = expand_rect(r, &rc);
    CHECK(check_rect_assignment(xr.g, xr.emb, xr.lambda));
    validate_decomposition(xr.g, xr.pd);
    RectCertificate rback = compact_rect(r, xr, xr.emb, xr.lambda);
    CHECK(extract_orientation_from_rect(r, rback).forward == o.forward);

    CHECK_THROWS_AS(expand_rect(r, &rc, 100), BudgetExceeded);
}

TEST_CASE("tendril family members check out") {
    for (i64 w : {0, 1, 5, 29, 58}) {
        CHECK(tendril_member_ok(w));
        CHECK(rect_tendril_member_ok(w));
    }
}
