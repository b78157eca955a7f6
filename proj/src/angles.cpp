#include <algorithm>

#include "forge/flow.hpp"
#include "forge/planar.hpp"
#include "forge/problems.hpp"

namespace forge {

namespace {

bool out_at(const Multigraph& g, int id, int v) { return g.edges[id].u == v; }

std::string vlabel(const Multigraph& g, int v) {
    return g.vname[v].empty() ? std::to_string(v) : g.vname[v];
}

// 0 = non-switch, 1 = source, 2 = sink
int vertex_kind(const Multigraph& g, const Embedding& e, int v) {
    bool any_out = false, any_in = false;
    for (int id : e.rot[v]) (out_at(g, id, v) ? any_out : any_in) = true;
    if (any_out && any_in) return 0;
    return any_out ? 1 : 2;
}

}  // namespace

std::vector<bool> switch_corners(const Multigraph& g, const Embedding& e, const FaceSet& fs) {
    std::vector<bool> sw(fs.num_corners(), false);
    for (int v = 0; v < g.n; ++v) {
        int deg = static_cast<int>(e.rot[v].size());
        for (int i = 0; i < deg; ++i) {
            int a = e.rot[v][i], b = e.rot[v][(i + 1) % deg];
            sw[fs.corner_base[v] + i] = out_at(g, a, v) == out_at(g, b, v);
        }
    }
    return sw;
}

bool check_upward_assignment(const Multigraph& g, const Embedding& e, const AngleAssignment& a,
                             std::string* why) {
    if (!g.acyclic()) throw CyclicInput("upward checks need an acyclic digraph");
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    FaceSet fs = validate_embedding(g, e);
    if (a.mode != AngleMode::Upward || static_cast<int>(a.label.size()) != fs.num_corners())
        return fail("assignment does not match the corner set");
    std::vector<bool> sw = switch_corners(g, e, fs);
    for (int c = 0; c < fs.num_corners(); ++c) {
        int x = a.label[c];
        if (sw[c] ? (x != 1 && x != -1) : x != 0)
            return fail("UP0 fails at corner " + std::to_string(c) + " of " + vlabel(g, fs.corner_vertex[c]));
    }
    for (int v = 0; v < g.n; ++v) {
        int deg = fs.corner_base[v + 1] - fs.corner_base[v];
        if (deg == 0) continue;
        int n[3] = {0, 0, 0};
        for (int c = fs.corner_base[v]; c < fs.corner_base[v + 1]; ++c) ++n[a.label[c] + 1];
        if (vertex_kind(g, e, v) != 0) {
            if (n[2] != 1 || n[0] != deg - 1 || n[1] != 0) return fail("UP1 fails at " + vlabel(g, v));
        } else if (n[2] != 0 || n[0] != deg - 2 || n[1] != 2) {
            return fail("UP2 fails at " + vlabel(g, v));
        }
    }
    for (int f = 0; f < fs.num_faces(); ++f) {
        int bal = upward_contribution(a, fs.face_corners[f]);
        int want = f == e.outer ? 2 : -2;
        if (bal != want)
            return fail("UP3 fails on face " + std::to_string(f) + ": balance " + std::to_string(bal));
    }
    return true;
}

std::optional<AngleAssignment> solve_upward_fixed_embedding(const Multigraph& g, const Embedding& e,
                                                            const std::vector<int>& force) {
    if (!g.acyclic()) throw CyclicInput("upward checks need an acyclic digraph");
    FaceSet fs = validate_embedding(g, e);
    std::vector<bool> sw = switch_corners(g, e, fs);
    AngleAssignment a;
    a.label.assign(fs.num_corners(), 0);
    std::vector<int> switches;
    for (int v = 0; v < g.n; ++v) {
        int deg = fs.corner_base[v + 1] - fs.corner_base[v];
        if (deg == 0) continue;
        if (vertex_kind(g, e, v) != 0) {
            switches.push_back(v);
            continue;
        }
        int flats = 0;
        for (int c = fs.corner_base[v]; c < fs.corner_base[v + 1]; ++c) {
            if (sw[c]) a.label[c] = -1;
            else ++flats;
        }
        if (flats != 2) return std::nullopt;
    }
    // each source/sink owns one large angle; face f needs large(f) of them
    int F = fs.num_faces(), S = static_cast<int>(switches.size());
    std::vector<int> large(F, 0);
    i64 need = 0;
    for (int f = 0; f < F; ++f) {
        int s = 0;
        for (int c : fs.face_corners[f]) s += sw[c] ? 1 : 0;
        int num = f == e.outer ? s + 2 : s - 2;
        if (num < 0 || num % 2 != 0) return std::nullopt;
        large[f] = num / 2;
        need += large[f];
    }
    if (need != S) return std::nullopt;
    int src = 0, snk = 1;
    std::vector<FlowArc> arcs;
    std::vector<std::pair<int, int>> vf;  // arc index -> (vertex, face)
    for (int i = 0; i < S; ++i) {
        arcs.push_back({src, 2 + i, 1});
        vf.push_back({-1, -1});
    }
    for (int i = 0; i < S; ++i) {
        int v = switches[i];
        bool pinned = !force.empty() && force[v] >= 0;
        std::vector<int> cnt(F, 0);
        for (int c = fs.corner_base[v]; c < fs.corner_base[v + 1]; ++c)
            if (!pinned || c == force[v]) ++cnt[fs.corner_face[c]];
        for (int f = 0; f < F; ++f)
            if (cnt[f] > 0) {
                arcs.push_back({2 + i, 2 + S + f, cnt[f]});
                vf.push_back({v, f});
            }
    }
    for (int f = 0; f < F; ++f) {
        arcs.push_back({2 + S + f, snk, large[f]});
        vf.push_back({-1, -1});
    }
    std::vector<i64> flow;
    if (max_flow(2 + S + F, arcs, src, snk, flow) != S) return std::nullopt;
    for (int v : switches)
        for (int c = fs.corner_base[v]; c < fs.corner_base[v + 1]; ++c) a.label[c] = -1;
    for (size_t i = 0; i < arcs.size(); ++i) {
        auto [v, f] = vf[i];
        if (v < 0 || flow[i] == 0) continue;
        for (int c = fs.corner_base[v]; c < fs.corner_base[v + 1]; ++c)
            if (fs.corner_face[c] == f && (force.empty() || force[v] < 0 || force[v] == c)) {
                a.label[c] = 1;
                break;
            }
    }
    std::string why;
    if (!check_upward_assignment(g, e, a, &why)) throw FlowInvalid("upward solver produced a rejected assignment: " + why);
    return a;
}

bool upward_assignment_unique(const Multigraph& g, const Embedding& e, const AngleAssignment& a) {
    FaceSet fs = validate_embedding(g, e);
    std::vector<int> force(g.n, -1);
    for (int v = 0; v < g.n; ++v) {
        if (fs.corner_base[v + 1] == fs.corner_base[v] || vertex_kind(g, e, v) == 0) continue;
        for (int c = fs.corner_base[v]; c < fs.corner_base[v + 1]; ++c) {
            if (a.label[c] == 1) continue;
            force[v] = c;
            if (solve_upward_fixed_embedding(g, e, force)) return false;
        }
        force[v] = -1;
    }
    return true;
}

bool check_rect_assignment(const Multigraph& g, const Embedding& e, const AngleAssignment& a, std::string* why) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    FaceSet fs = validate_embedding(g, e);
    for (int v = 0; v < g.n; ++v)
        if (fs.corner_base[v + 1] - fs.corner_base[v] > 4) throw DegreeTooHigh("vertex " + vlabel(g, v) + " has degree above 4");
    if (a.mode != AngleMode::Rect || static_cast<int>(a.label.size()) != fs.num_corners())
        return fail("assignment does not match the corner set");
    for (int c = 0; c < fs.num_corners(); ++c)
        if (a.label[c] < 1 || a.label[c] > 4) return fail("label out of range at corner " + std::to_string(c));
    for (int v = 0; v < g.n; ++v) {
        if (fs.corner_base[v + 1] == fs.corner_base[v]) continue;
        int sum = 0;
        for (int c = fs.corner_base[v]; c < fs.corner_base[v + 1]; ++c) sum += a.label[c];
        if (sum != 4) return fail("RE0 fails at " + vlabel(g, v));
    }
    for (int f = 0; f < fs.num_faces(); ++f) {
        int bal = rect_contribution(a, fs.face_corners[f]);
        if (bal != (f == e.outer ? 4 : -4))
            return fail("RE1 fails on face " + std::to_string(f) + ": balance " + std::to_string(bal));
    }
    return true;
}

std::optional<AngleAssignment> solve_rect_fixed_embedding(const Multigraph& g, const Embedding& e) {
    FaceSet fs = validate_embedding(g, e);
    int n = g.n, F = fs.num_faces();
    // x = label - 1: vertex v spreads 4 - deg(v) extra units over its corners
    std::vector<FlowArc> arcs;
    std::vector<std::pair<int, int>> vf;
    i64 supply = 0, demand = 0;
    for (int v = 0; v < n; ++v) {
        int deg = fs.corner_base[v + 1] - fs.corner_base[v];
        if (deg > 4) throw DegreeTooHigh("vertex " + vlabel(g, v) + " has degree above 4");
        if (deg == 0) continue;
        arcs.push_back({0, 2 + v, 4 - deg});
        vf.push_back({-1, -1});
        supply += 4 - deg;
        std::vector<int> cnt(F, 0);
        for (int c = fs.corner_base[v]; c < fs.corner_base[v + 1]; ++c) ++cnt[fs.corner_face[c]];
        for (int f = 0; f < F; ++f)
            if (cnt[f] > 0) {
                arcs.push_back({2 + v, 2 + n + f, 3 * cnt[f]});
                vf.push_back({v, f});
            }
    }
    for (int f = 0; f < F; ++f) {
        int len = static_cast<int>(fs.face_corners[f].size());
        int d = f == e.outer ? len + 4 : len - 4;
        if (d < 0) return std::nullopt;
        arcs.push_back({2 + n + f, 1, d});
        vf.push_back({-1, -1});
        demand += d;
    }
    if (supply != demand) return std::nullopt;
    std::vector<i64> flow;
    if (max_flow(2 + n + F, arcs, 0, 1, flow) != supply) return std::nullopt;
    AngleAssignment a;
    a.mode = AngleMode::Rect;
    a.label.assign(fs.num_corners(), 1);
    for (size_t i = 0; i < arcs.size(); ++i) {
        auto [v, f] = vf[i];
        if (v < 0) continue;
        i64 left = flow[i];
        for (int c = fs.corner_base[v]; c < fs.corner_base[v + 1] && left > 0; ++c)
            if (fs.corner_face[c] == f) {
                int put = static_cast<int>(std::min<i64>(3, left));
                a.label[c] += put;
                left -= put;
            }
    }
    std::string why;
    if (!check_rect_assignment(g, e, a, &why)) throw FlowInvalid("rect solver produced a rejected assignment: " + why);
    return a;
}

namespace {

template <class Solve>
bool variable_embedding(const Multigraph& g, int limit, Solve solve) {
    if (g.n > limit) throw BudgetExceeded(std::to_string(g.n) + " vertices exceed the limit of " + std::to_string(limit));
    if (g.m() == 0) return g.n <= 1;
    if (!g.connected()) throw ShapeMismatch("brute-force planarity expects a connected graph");
    bool found = false;
    for_each_planar_rotation(g, [&](const Embedding& rot) {
        FaceSet fs = trace_faces(g, rot);
        for (int f = 0; f < fs.num_faces() && !found; ++f) {
            Embedding e{rot.rot, f};
            found = solve(e);
        }
        return !found;
    });
    return found;
}

}  // namespace

bool solve_upward_bruteforce(const Multigraph& g, int limit) {
    if (!g.acyclic()) return false;
    return variable_embedding(g, limit, [&](const Embedding& e) { return solve_upward_fixed_embedding(g, e).has_value(); });
}

bool solve_rect_bruteforce(const Multigraph& g, int limit) {
    for (int d : g.degrees())
        if (d > 4) return false;
    return variable_embedding(g, limit, [&](const Embedding& e) { return solve_rect_fixed_embedding(g, e).has_value(); });
}

int upward_contribution(const AngleAssignment& a, const std::vector<int>& corners) {
    int s = 0;
    for (int c : corners) s += a.label[c];
    return s;
}

int rect_contribution(const AngleAssignment& a, const std::vector<int>& corners) {
    int s = 0;
    for (int c : corners) s += a.label[c] - 2;
    return s;
}

}  // namespace forge
