#pragma once

#include <array>
#include <cmath>
#include <random>
#include <vector>

#include "forge/graph.hpp"
#include "forge/planar.hpp"

namespace gen {

using forge::CapGraph;
using forge::Embedding;
using forge::i64;

struct Drawn {
    CapGraph g;
    Embedding emb;
    std::vector<std::pair<double, double>> pos;
};

inline Embedding from_positions(const forge::Multigraph& g, const std::vector<std::pair<double, double>>& pos) {
    std::vector<std::pair<double, double>> ends;
    for (const auto& e : g.edges) {
        double dx = pos[e.v].first - pos[e.u].first, dy = pos[e.v].second - pos[e.u].second;
        ends.push_back({std::atan2(dy, dx), std::atan2(-dy, -dx)});
    }
    Embedding emb = forge::rotation_from_angles(g, ends);
    emb.outer = 0;
    return emb;
}

// Straight-line triangulation grown by inserting vertices at triangle centroids.
inline Drawn random_triangulation(int n, std::mt19937_64& rng, i64 max_cap = 3) {
    Drawn d;
    std::uniform_int_distribution<i64> cap(0, max_cap);
    d.pos = {{0, 0}, {1000, 0}, {500, 900}};
    for (int i = 0; i < 3; ++i) d.g.g.add_vertex();
    d.g.add_edge(0, 1, cap(rng));
    d.g.add_edge(1, 2, cap(rng));
    d.g.add_edge(2, 0, cap(rng));
    std::vector<std::array<int, 3>> tris{{0, 1, 2}};
    while (d.g.g.n < n) {
        std::uniform_int_distribution<size_t> pick(0, tris.size() - 1);
        size_t t = pick(rng);
        auto [a, b, c] = tris[t];
        int x = d.g.g.add_vertex();
        d.pos.push_back({(d.pos[a].first + d.pos[b].first + d.pos[c].first) / 3,
                         (d.pos[a].second + d.pos[b].second + d.pos[c].second) / 3});
        for (int y : {a, b, c}) d.g.add_edge(x, y, cap(rng));
        tris[t] = {a, b, x};
        tris.push_back({b, c, x});
        tris.push_back({c, a, x});
    }
    d.emb = from_positions(d.g.g, d.pos);
    return d;
}

// Hub 0 surrounded by a rim of n-1 vertices.
inline Drawn wheel(int n, i64 c = 1) {
    Drawn d;
    d.g.g.add_vertex();
    d.pos.push_back({0, 0});
    int r = n - 1;
    for (int i = 0; i < r; ++i) {
        d.g.g.add_vertex();
        d.pos.push_back({100 * std::cos(2 * M_PI * i / r), 100 * std::sin(2 * M_PI * i / r)});
    }
    for (int i = 1; i <= r; ++i) d.g.add_edge(0, i, c);
    for (int i = 1; i <= r; ++i) d.g.add_edge(i, i % r + 1, c);
    d.emb = from_positions(d.g.g, d.pos);
    return d;
}

// A simple cycle drawn as a regular polygon.
inline Drawn cycle(int n, i64 c = 1) {
    Drawn d;
    for (int i = 0; i < n; ++i) {
        d.g.g.add_vertex();
        d.pos.push_back({100 * std::cos(2 * M_PI * i / n), 100 * std::sin(2 * M_PI * i / n)});
    }
    for (int i = 0; i < n; ++i) d.g.add_edge(i, (i + 1) % n, c);
    d.emb = from_positions(d.g.g, d.pos);
    return d;
}

}  // namespace gen
