#include <algorithm>
#include <cstdio>
#include <map>

#include "doctest.h"

#include "forge/gadgets.hpp"
#include "forge/planar.hpp"

using namespace forge;

namespace {

std::map<i64, int> capacity_histogram(const Gadget& g) {
    std::map<i64, int> h;
    for (i64 c : g.body.cap) ++h[c];
    return h;
}

}  // namespace

TEST_CASE("vs gadget arithmetic") {
    for (auto [k, N] : {std::pair{1, 1}, {2, 2}, {2, 3}, {3, 2}}) {
        Gadget g = build_vs_gadget(1, 1, k, N);
        CHECK(g.body.g.n == 2 + 5 * N);
        std::map<i64, int> want;
        for (int q = 1; q <= N; ++q) want[2LL * k * N + 2 * q] = 6;
        CHECK(capacity_histogram(g) == want);
        CHECK(g.body.g.acyclic());
        CHECK(g.boundary.count("in"));
        CHECK(g.boundary.count("out"));
    }
    CHECK(build_vs_gadget(1, 1, 1, 1).body.cap[0] == 4);
    CHECK_THROWS_AS(build_vs_gadget(3, 1, 2, 2), IndexOutOfRange);
}

TEST_CASE("ch gadget decrements the two chosen row paths by one") {
    Gadget g = build_ch_gadget(1, {1, 1, 2, 2}, 2, 2);
    std::map<std::string, i64> cap;
    for (int e = 0; e < g.body.g.m(); ++e) cap[g.body.g.etag[e]] = g.body.cap[e];
    for (int r = 0; r <= 5; ++r) {
        CHECK(cap.at("vs:1:1:1:" + std::to_string(r)) == 9);
        CHECK(cap.at("vs:2:1:2:" + std::to_string(r)) == 11);
        CHECK(cap.at("vs:1:1:2:" + std::to_string(r)) == 12);
        CHECK(cap.at("vs:2:1:1:" + std::to_string(r)) == 10);
    }
    CHECK_THROWS_AS(build_ch_gadget(1, {2, 1, 1, 1}, 2, 2), IndexOutOfRange);
}

TEST_CASE("ch decrements across shapes") {
    for (auto [k, N] : {std::pair{2, 2}, {2, 3}, {3, 2}}) {
        for (int a = 1; a <= N; ++a)
            for (int b = 1; b <= N; ++b) {
                Gadget g = build_ch_gadget(2, {1, a, k, b}, k, N);
                int dec = 0;
                for (int e = 0; e < g.body.g.m(); ++e) {
                    const std::string& t = g.body.g.etag[e];
                    if (t.rfind("vs:", 0) != 0) continue;
                    int i = 0, j = 0, q = 0, r = 0;
                    std::sscanf(t.c_str(), "vs:%d:%d:%d:%d", &i, &j, &q, &r);
                    i64 full = vs_capacity(k, N, q);
                    CHECK((g.body.cap[e] == full || g.body.cap[e] == full - 1));
                    if (g.body.cap[e] == full - 1) {
                        ++dec;
                        CHECK(((i == 1 && q == a) || (i == k && q == b)));
                    }
                }
                CHECK(dec == 12);
            }
    }
}

TEST_CASE("ch capacity-one paths leave x and reach y") {
    Gadget g = build_ch_gadget(1, {1, 2, 2, 1}, 2, 2);
    int x = g.body.g.find_vertex(name_x(1)), y = g.body.g.find_vertex(name_y(1));
    REQUIRE(x >= 0);
    REQUIRE(y >= 0);
    int into_x = 0, out_of_x = 0, into_y = 0, out_of_y = 0;
    for (const auto& e : g.body.g.edges) {
        if (g.body.cap[e.id] != 1) continue;
        into_x += e.v == x;
        out_of_x += e.u == x;
        into_y += e.v == y;
        out_of_y += e.u == y;
    }
    CHECK(into_x == 2);
    CHECK(out_of_x == 1);
    CHECK(into_y == 1);
    CHECK(out_of_y == 2);
    CHECK(g.body.g.acyclic());
}

TEST_CASE("upward tendrils pass every property") {
    for (int w = 0; w <= 3; ++w) {
        Gadget t = build_tendril(w);
        TendrilReport r = verify_tendril(t, w);
        CHECK(r.poles_ok);
        CHECK(r.triconnected);
        CHECK(r.unique);
        CHECK(r.contrib_pos == 2 * w);
        CHECK(r.contrib_neg == -2 * w);
        CHECK(r.width <= 2);
        CHECK(t.body.g.n == 8 * w + 4);
        CHECK(t.body.g.m() == 12 * w + 5);
    }
}

TEST_CASE("reversing one tendril arc is caught") {
    Gadget t = build_tendril(1);
    int p = t.boundary.at("p");
    bool flipped = false;
    for (auto& e : t.body.g.edges)
        if (!flipped && e.u == p) {
            std::swap(e.u, e.v);
            flipped = true;
        }
    REQUIRE(flipped);
    CHECK_THROWS_AS(verify_tendril(t, 1), PropertyViolated);
}

TEST_CASE("claiming the wrong parameter is caught") {
    CHECK_THROWS_AS(verify_tendril(build_tendril(2), 1), PropertyViolated);
}

TEST_CASE("rect tendrils have four embeddings and the stated contributions") {
    for (int w = 0; w <= 2; ++w) {
        Gadget t = build_rect_tendril(w);
        RectTendrilReport r = verify_rect_tendril(t, w);
        CHECK(r.poles_ok);
        CHECK(r.closure_triconnected);
        CHECK(r.embeddings == 4);
        std::vector<int> c = r.contributions;
        c.erase(std::unique(c.begin(), c.end()), c.end());
        CHECK(c == std::vector<int>{4 * w, 4 * w + 1, 4 * w + 2});
        CHECK(r.width <= 2);
        CHECK(t.body.g.n == 16 * w + 6);
        CHECK(t.body.g.m() == 24 * w + 6);
        auto deg = t.body.g.degrees();
        CHECK(deg[t.boundary.at("p")] == 1);
        CHECK(deg[t.boundary.at("q")] == 1);
    }
    CHECK_THROWS_AS(verify_rect_tendril(build_rect_tendril(1), 2), PropertyViolated);
}

TEST_CASE("rect tendril variants follow the closed form") {
    for (int w = 0; w <= 2; ++w) {
        Gadget t = build_rect_tendril(w);
        for (int sp = 1; sp <= 2; ++sp)
            for (int sq = 1; sq <= 2; ++sq) {
                AngleAssignment a = rect_tendril_assignment(t, sp, sq);
                CHECK(check_rect_assignment(t.body.g, t.emb, a));
                CHECK(rect_contribution(a, t.pos_side) == rect_tendril_contribution(w, sp, sq));
            }
    }
}

TEST_CASE("tendril decompositions validate") {
    for (int w = 0; w <= 4; ++w) {
        Gadget t = build_tendril(w);
        CHECK(validate_decomposition(t.body.g, t.pd) <= 2);
        Gadget r = build_rect_tendril(w);
        CHECK(validate_decomposition(r.body.g, r.pd) <= 2);
    }
}
