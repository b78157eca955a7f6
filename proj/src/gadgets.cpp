#include <cmath>

#include "forge/gadgets.hpp"

namespace forge {

std::string name_V(int i, int j) { return "V" + std::to_string(i) + "^" + std::to_string(j); }

std::string name_inner(char role, int i, int q, int j) {
    return std::string(1, role) + std::to_string(i) + "," + std::to_string(q) + "^" + std::to_string(j);
}

std::string name_x(int j) { return "x^" + std::to_string(j); }
std::string name_y(int j) { return "y^" + std::to_string(j); }

i64 vs_capacity(int k, int N, int q) { return 2LL * k * N + 2LL * q; }

namespace {

constexpr double kBend = 0.05;

double angle_to(const Point& a, const Point& b) { return std::atan2(b.second - a.second, b.first - a.first); }

struct Builder {
    Gadget& gd;
    std::map<std::string, int> ids;

    int vertex(const std::string& name, Point p) {
        auto it = ids.find(name);
        if (it != ids.end()) return it->second;
        int v = gd.body.g.add_vertex(name);
        gd.pos.push_back(p);
        ids[name] = v;
        return v;
    }
    int arc(int a, int b, i64 cap, const std::string& tag) {
        gd.ends.push_back({angle_to(gd.pos[a], gd.pos[b]), angle_to(gd.pos[b], gd.pos[a])});
        return gd.body.add_edge(a, b, cap, tag, true);
    }
    int bent(int a, int b, i64 cap, const std::string& tag, double at_a, double at_b) {
        gd.ends.push_back({at_a, at_b});
        return gd.body.add_edge(a, b, cap, tag, true);
    }
};

const char kRoles[] = "vuwgh";

void add_vs(Builder& b, int i, int j, int k, int N) {
    ColumnLayout L{k, N};
    double x0 = L.col_x(j);
    int left = b.vertex(name_V(i, j), {x0, L.row_mid(i)});
    int right = b.vertex(name_V(i, j + 1), {x0 + 10, L.row_mid(i)});
    for (int q = 1; q <= N; ++q) {
        int prev = left;
        for (int r = 0; r < 5; ++r) {
            int v = b.vertex(name_inner(kRoles[r], i, q, j), {x0 + 1 + r, L.path_y(i, q)});
            b.arc(prev, v, vs_capacity(k, N, q), "vs:" + std::to_string(i) + ":" + std::to_string(j) + ":" +
                                                     std::to_string(q) + ":" + std::to_string(r));
            prev = v;
        }
        b.arc(prev, right, vs_capacity(k, N, q),
              "vs:" + std::to_string(i) + ":" + std::to_string(j) + ":" + std::to_string(q) + ":5");
    }
}

}  // namespace

Gadget build_vs_gadget(int i, int j, int k, int N) {
    if (k < 1 || N < 1 || i < 1 || i > k || j < 1) throw IndexOutOfRange("VS gadget parameters out of range");
    Gadget gd;
    gd.kind = "vs";
    Builder b{gd, {}};
    add_vs(b, i, j, k, N);
    gd.boundary["in"] = b.ids.at(name_V(i, j));
    gd.boundary["out"] = b.ids.at(name_V(i, j + 1));
    return gd;
}

Gadget build_ch_gadget(int j, const NonEdge& ne, int k, int N) {
    if (k < 2 || N < 1 || j < 1 || ne.i < 1 || ne.l > k || ne.i >= ne.l || ne.a < 1 || ne.a > N || ne.b < 1 ||
        ne.b > N)
        throw IndexOutOfRange("CH gadget needs 1 <= i < l <= k and indices in [1, N]");
    Gadget gd;
    gd.kind = "ch";
    Builder b{gd, {}};
    for (int i = 1; i <= k; ++i) add_vs(b, i, j, k, N);
    ColumnLayout L{k, N};
    double x0 = L.col_x(j);
    int x = b.vertex(name_x(j), {x0 + 2, L.row_top(1) + 0.5});
    int y = b.vertex(name_y(j), {x0 + 4, L.path_y(k, N) - 1});
    auto at = [&](char role, int i, int q) { return b.ids.at(name_inner(role, i, q, j)); };
    auto tag = [&](char path, int idx) { return "ch:" + std::to_string(j) + ":" + path + ":" + std::to_string(idx); };

    // decrement the two designated row paths
    for (int e = 0; e < gd.body.g.m(); ++e) {
        const std::string& t = gd.body.g.etag[e];
        std::string ra = "vs:" + std::to_string(ne.i) + ":" + std::to_string(j) + ":" + std::to_string(ne.a) + ":";
        std::string rb = "vs:" + std::to_string(ne.l) + ":" + std::to_string(j) + ":" + std::to_string(ne.b) + ":";
        if (t.rfind(ra, 0) == 0 || t.rfind(rb, 0) == 0) gd.body.cap[e] -= 1;
    }

    // walks the role column upward from (from_row, N) to (1, 1)
    auto climb = [&](char role, int from_row, int start, char path) {
        int idx = 1, cur = start;
        for (int i = from_row; i >= 1; --i)
            for (int q = (i == from_row ? N - 1 : N); q >= 1; --q) {
                int nxt = at(role, i, q);
                b.arc(cur, nxt, 1, tag(path, idx++));
                cur = nxt;
            }
        b.arc(cur, x, 1, tag(path, idx));
    };
    int Vi = b.ids.at(name_V(ne.i, j)), Vl = b.ids.at(name_V(ne.l, j));
    int vN = at('v', ne.i, N), uN = at('u', ne.l, N);
    b.bent(Vi, vN, 1, tag('v', 0), angle_to(gd.pos[Vi], gd.pos[vN]) - kBend, angle_to(gd.pos[vN], gd.pos[Vi]) + kBend);
    climb('v', ne.i, vN, 'v');
    b.bent(Vl, uN, 1, tag('u', 0), angle_to(gd.pos[Vl], gd.pos[at('v', ne.l, N)]) - kBend, M_PI + 0.6);
    climb('u', ne.l, uN, 'u');

    int cur = x, idx = 0;
    for (int i = 1; i <= k; ++i)
        for (int q = 1; q <= N; ++q) {
            int nxt = at('w', i, q);
            b.arc(cur, nxt, 1, tag('w', idx++));
            cur = nxt;
        }
    b.arc(cur, y, 1, tag('w', idx));

    // descends from y through the role column up to (to_row, 1), then bends into V_{to_row}^{j+1}
    auto descend = [&](char role, int to_row, char path, double leave) {
        int c = y, id = 0;
        for (int i = k; i >= to_row; --i)
            for (int q = N; q >= 1; --q) {
                int nxt = at(role, i, q);
                b.arc(c, nxt, 1, tag(path, id++));
                c = nxt;
            }
        int V = b.ids.at(name_V(to_row, j + 1));
        int h1 = at('h', to_row, 1);
        double back = angle_to(gd.pos[V], gd.pos[h1]) - kBend;
        b.bent(c, V, 1, tag(path, id), role == 'h' ? angle_to(gd.pos[h1], gd.pos[V]) + kBend : leave, back);
    };
    descend('g', ne.i, 'g', 0.6);
    descend('h', ne.l, 'h', 0.0);

    gd.boundary["x"] = x;
    gd.boundary["y"] = y;
    for (int i = 1; i <= k; ++i) {
        gd.boundary[name_V(i, j)] = b.ids.at(name_V(i, j));
        gd.boundary[name_V(i, j + 1)] = b.ids.at(name_V(i, j + 1));
    }
    return gd;
}

}  // namespace forge
