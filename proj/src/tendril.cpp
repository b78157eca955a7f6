#include <algorithm>
#include <cmath>
#include <set>

#include "forge/gadgets.hpp"
#include "forge/planar.hpp"

namespace forge {

namespace {

int face_with(const FaceSet& fs, const Multigraph& g, int a, int b) {
    for (int f = 0; f < fs.num_faces(); ++f) {
        bool ha = false, hb = false;
        for (int c : fs.face_corners[f]) {
            ha |= fs.corner_vertex[c] == a;
            hb |= fs.corner_vertex[c] == b;
        }
        if (ha && hb) return f;
    }
    (void)g;
    return -1;
}

// Corners of the outer walk strictly between the poles: first the part walked
// from p to q, then the part walked from q to p.
std::pair<std::vector<int>, std::vector<int>> split_outer(const Multigraph& g, const FaceSet& fs, int f, int p,
                                                          int q) {
    const auto& walk = fs.faces[f];
    int n = static_cast<int>(walk.size()), ip = -1, iq = -1;
    for (int i = 0; i < n; ++i) {
        int h = dart_head(g, walk[i]);
        if (h == p) ip = i;
        if (h == q) iq = i;
    }
    std::pair<std::vector<int>, std::vector<int>> out;
    if (ip < 0 || iq < 0) return out;
    for (int i = (ip + 1) % n; i != iq; i = (i + 1) % n) out.first.push_back(fs.face_corners[f][i]);
    for (int i = (iq + 1) % n; i != ip; i = (i + 1) % n) out.second.push_back(fs.face_corners[f][i]);
    return out;
}

// Fixes the outer face to the pole face and mirrors if needed so that the
// vertices in `positive` are met on the q-to-p part of the outer walk, i.e. lie
// on the right of the poles' direction.
void orient_tendril(Gadget& t, const std::set<int>& positive) {
    const Multigraph& g = t.body.g;
    int p = t.boundary.at("p"), q = t.boundary.at("q");
    for (int round = 0; round < 2; ++round) {
        FaceSet fs = trace_faces(g, t.emb);
        t.emb.outer = face_with(fs, g, p, q);
        auto [pq, qp] = split_outer(g, fs, t.emb.outer, p, q);
        bool ok = std::any_of(qp.begin(), qp.end(), [&](int c) { return positive.count(fs.corner_vertex[c]) > 0; });
        if (ok || round == 1) {
            t.pos_side = qp;
            t.neg_side = pq;
            return;
        }
        t.emb = mirror(g, t.emb);
    }
}

bool suppressed_closure_rigid(const Multigraph& g, int p, int q) {
    // multigraph closure with degree-2 vertices smoothed away
    int n = g.n;
    std::vector<std::multiset<int>> adj(n);
    for (const auto& e : g.edges) {
        adj[e.u].insert(e.v);
        adj[e.v].insert(e.u);
    }
    adj[p].insert(q);
    adj[q].insert(p);
    std::vector<bool> alive(n, true);
    bool changed = true;
    while (changed) {
        changed = false;
        for (int v = 0; v < n; ++v) {
            if (!alive[v] || adj[v].size() != 2) continue;
            int a = *adj[v].begin(), b = *std::next(adj[v].begin());
            if (a == v || b == v || a == b) continue;
            int live = 0;
            for (int x = 0; x < n; ++x) live += alive[x];
            if (live <= 2) break;
            adj[a].erase(adj[a].find(v));
            adj[b].erase(adj[b].find(v));
            adj[a].insert(b);
            adj[b].insert(a);
            adj[v].clear();
            alive[v] = false;
            changed = true;
        }
    }
    std::vector<int> map(n, -1);
    Multigraph h;
    for (int v = 0; v < n; ++v)
        if (alive[v]) map[v] = h.add_vertex();
    for (int v = 0; v < n; ++v)
        for (int x : adj[v])
            if (alive[v] && v < x) h.add_edge(map[v], map[x]);
    // a three-edge bond has a single embedding up to reflection as well
    if (h.n == 2) return h.m() == 3;
    if (!h.is_simple()) return false;
    return is_triconnected(h);
}

}  // namespace

Gadget build_tendril(int w) {
    if (w < 0) throw IndexOutOfRange("tendril parameter must be nonnegative");
    Gadget t;
    t.kind = "tendril";
    t.w = w;
    Multigraph& g = t.body.g;
    int n = 4 * w + 1;
    int p = g.add_vertex("p");
    int q = g.add_vertex("q");
    std::vector<int> o(n), in(n);
    for (int j = 0; j < n; ++j) {
        o[j] = g.add_vertex("o" + std::to_string(j));
        in[j] = g.add_vertex("i" + std::to_string(j));
    }
    auto arc = [&](int a, int b, const std::string& tag) { return t.body.add_edge(a, b, 0, tag, true); };
    int po = arc(p, o[0], "pole:o"), pi = arc(p, in[0], "pole:i");
    // the orientation pattern repeats every quarter turn of the spiral
    std::vector<int> rung(n), ro(n), ri(n);
    for (int j = 0; j < n; ++j) {
        std::string tg = "rung:" + std::to_string(j);
        rung[j] = j % 4 == 3 ? arc(o[j], in[j], tg) : arc(in[j], o[j], tg);
    }
    for (int j = 0; j + 1 < n; ++j) {
        bool fwd = j % 4 == 0 || j % 4 == 3;
        ro[j] = fwd ? arc(o[j], o[j + 1], "rail:o" + std::to_string(j)) : arc(o[j + 1], o[j], "rail:o" + std::to_string(j));
        ri[j] = fwd ? arc(in[j], in[j + 1], "rail:i" + std::to_string(j))
                    : arc(in[j + 1], in[j], "rail:i" + std::to_string(j));
    }
    int oq = arc(o[n - 1], q, "pole:o"), iq = arc(in[n - 1], q, "pole:i");
    ri[n - 1] = iq;
    ro[n - 1] = oq;

    t.emb.rot.assign(g.n, {});
    t.emb.rot[p] = {po, pi};
    t.emb.rot[q] = {oq, iq};
    for (int j = 0; j < n; ++j) {
        t.emb.rot[o[j]] = {rung[j], ro[j], j > 0 ? ro[j - 1] : po};
        t.emb.rot[in[j]] = {ri[j], rung[j], j > 0 ? ri[j - 1] : pi};
    }
    t.boundary["p"] = p;
    t.boundary["q"] = q;
    validate_embedding(g, Embedding{t.emb.rot, 0});
    orient_tendril(t, std::set<int>(o.begin(), o.end()));
    auto a = solve_upward_fixed_embedding(g, t.emb);
    if (!a) throw PropertyViolated("tendril " + std::to_string(w) + " has no upward assignment");
    t.lambda = *a;

    t.pd.bags.push_back({p, o[0], in[0]});
    for (int j = 0; j + 1 < n; ++j) {
        t.pd.bags.push_back({o[j], in[j], o[j + 1]});
        t.pd.bags.push_back({in[j], o[j + 1], in[j + 1]});
    }
    t.pd.bags.push_back({o[n - 1], in[n - 1], q});
    return t;
}

Gadget build_rect_tendril(int w) {
    if (w < 0) throw IndexOutOfRange("tendril parameter must be nonnegative");
    Gadget t;
    t.kind = "rect-tendril";
    t.w = w;
    Multigraph& g = t.body.g;
    int h = 1;  // heading, in quarter turns counterclockwise from +x
    int na = 0, nb = 0, nc = 0;
    std::vector<std::pair<double, double>> ends;
    auto edge = [&](int a, int b, int dir, const std::string& tag) {
        ends.push_back({dir * M_PI / 2, (dir + 2) * M_PI / 2});
        return t.body.add_edge(a, b, 0, tag, false);
    };
    std::set<int> outer_rail;
    auto inner_v = [&]() { return g.add_vertex("a" + std::to_string(na++)); };
    auto outer_v = [&]() {
        int v = g.add_vertex("b" + std::to_string(nb++));
        outer_rail.insert(v);
        return v;
    };
    int I = inner_v(), O = outer_v();
    int p = g.add_vertex("p");
    edge(I, O, h - 1, "rung");
    edge(p, I, h, "pole");
    t.pd.bags.push_back({p, I, O});
    auto straight = [&]() {
        int I2 = inner_v(), O2 = outer_v();
        edge(I, I2, h, "rail:a");
        edge(O, O2, h, "rail:b");
        edge(I2, O2, h - 1, "rung");
        t.pd.bags.push_back({I, O, I2});
        t.pd.bags.push_back({O, I2, O2});
        I = I2;
        O = O2;
    };
    auto turn = [&]() {
        int C = g.add_vertex("c" + std::to_string(nc++));
        outer_rail.insert(C);
        int X = outer_v();
        edge(O, C, h, "rail:b");
        edge(C, X, h + 1, "rail:b");
        edge(I, X, h, "rung");
        t.pd.bags.push_back({I, O, C});
        t.pd.bags.push_back({I, C, X});
        O = X;
        ++h;
    };
    straight();
    for (int u = 0; u < 4 * w; ++u) {
        turn();
        straight();
    }
    int q = g.add_vertex("q");
    edge(I, q, h, "pole");
    t.pd.bags.push_back({I, q});
    t.boundary["p"] = p;
    t.boundary["q"] = q;
    t.emb = rotation_from_angles(g, ends);
    validate_embedding(g, Embedding{t.emb.rot, 0});
    orient_tendril(t, outer_rail);
    t.lambda = rect_tendril_assignment(t, 1, 1);
    return t;
}

AngleAssignment rect_tendril_assignment(const Gadget& t, int sp, int sq) {
    if (sp < 1 || sp > 2 || sq < 1 || sq > 2) throw IndexOutOfRange("pole corner labels are 1 or 2");
    const Multigraph& g = t.body.g;
    FaceSet fs = trace_faces(g, t.emb);
    int p = t.boundary.at("p"), q = t.boundary.at("q");
    int ap = g.other(t.emb.rot[p][0], p), aq = g.other(t.emb.rot[q][0], q);
    AngleAssignment a{AngleMode::Rect, std::vector<int>(fs.num_corners(), 1)};
    std::set<int> pos(t.pos_side.begin(), t.pos_side.end());
    for (int v = 0; v < g.n; ++v) {
        std::vector<int> outer;
        int inner = 0;
        for (int c = fs.corner_base[v]; c < fs.corner_base[v + 1]; ++c) {
            if (fs.corner_face[c] == t.emb.outer)
                outer.push_back(c);
            else
                ++inner;
        }
        if (outer.size() == 1) {
            a.label[outer[0]] = 4 - inner;
        } else if (outer.size() == 2) {
            int x = v == ap ? sp : v == aq ? sq : 2;
            int first = pos.count(outer[0]) ? 0 : 1;
            a.label[outer[first]] = x;
            a.label[outer[1 - first]] = 4 - inner - x;
        }
    }
    return a;
}

std::vector<AngleAssignment> enumerate_rect_assignments(const Multigraph& g, const Embedding& e, long limit) {
    FaceSet fs = validate_embedding(g, e);
    int F = fs.num_faces();
    std::vector<int> bal(F, 0), rem(F, 0), target(F, -4);
    if (e.outer >= 0) target[e.outer] = 4;
    for (int c = 0; c < fs.num_corners(); ++c) ++rem[fs.corner_face[c]];
    for (int v = 0; v < g.n; ++v)
        if (fs.corner_base[v + 1] - fs.corner_base[v] > 4) return {};
    std::vector<AngleAssignment> out;
    std::vector<int> label(fs.num_corners(), 0);
    auto feasible = [&](int f) { return bal[f] - rem[f] <= target[f] && target[f] <= bal[f] + 2 * rem[f]; };
    // vertex by vertex, corner by corner; the vertex sum is closed at its last corner
    auto rec = [&](auto&& self, int c, int v, int vsum) -> void {
        while (v < g.n && c == fs.corner_base[v + 1]) {
            if (vsum != 4 && fs.corner_base[v + 1] > fs.corner_base[v]) return;
            ++v;
            vsum = 0;
        }
        if (c == fs.num_corners()) {
            for (int f = 0; f < F; ++f)
                if (bal[f] != target[f]) return;
            if (static_cast<long>(out.size()) >= limit) throw BudgetExceeded("too many rect assignments");
            out.push_back({AngleMode::Rect, label});
            return;
        }
        int f = fs.corner_face[c];
        bool last = c + 1 == fs.corner_base[v + 1];
        for (int x = 1; x <= 4; ++x) {
            if (last && vsum + x != 4) continue;
            if (!last && vsum + x >= 4) break;
            label[c] = x;
            bal[f] += x - 2;
            --rem[f];
            if (feasible(f)) self(self, c + 1, v, vsum + x);
            ++rem[f];
            bal[f] -= x - 2;
        }
    };
    rec(rec, 0, 0, 0);
    return out;
}

TendrilReport verify_tendril(const Gadget& t, int w) {
    TendrilReport r;
    const Multigraph& g = t.body.g;
    int p = t.boundary.count("p") ? t.boundary.at("p") : -1;
    int q = t.boundary.count("q") ? t.boundary.at("q") : -1;
    if (p < 0 || q < 0) throw PropertyViolated("poles missing");
    std::vector<int> indeg(g.n, 0), outdeg(g.n, 0);
    for (const auto& e : g.edges) {
        ++outdeg[e.u];
        ++indeg[e.v];
    }
    r.poles_ok = g.acyclic() && indeg[p] == 0 && outdeg[q] == 0 && outdeg[p] > 0 && indeg[q] > 0;
    if (!r.poles_ok) r.failures.push_back("poles: p must be a source, q a sink, body acyclic");

    Multigraph closure = g;
    closure.add_edge(p, q, true);
    r.triconnected = closure.is_simple() && is_triconnected(closure);
    if (!r.triconnected) r.failures.push_back("closure with the pole edge is not triconnected");

    // With a triconnected closure the rotation and its mirror are the only
    // planar rotations; try every face of both as outer face.
    if (r.poles_ok && is_planar_rotation(g, t.emb)) {
        std::vector<int> good_keys;
        for (const Embedding& rot : {t.emb, mirror(g, t.emb)}) {
            FaceSet fs = trace_faces(g, rot);
            for (int f = 0; f < fs.num_faces(); ++f) {
                Embedding e{rot.rot, f};
                auto a = solve_upward_fixed_embedding(g, e);
                if (!a) continue;
                ++r.feasible_embeddings;
                bool poles_out = face_with(fs, g, p, q) == f;
                if (!poles_out) r.failures.push_back("an embedding with a pole off the outer face is upward");
                if (!upward_assignment_unique(g, e, *a)) r.failures.push_back("angle assignment is not unique");
            }
        }
        r.unique = r.feasible_embeddings == 2;
        if (!r.unique)
            r.failures.push_back("expected one embedding class up to reflection, found " +
                                 std::to_string(r.feasible_embeddings) + " feasible embeddings");
        auto a = solve_upward_fixed_embedding(g, t.emb);
        if (a) {
            FaceSet fs = trace_faces(g, t.emb);
            auto [pq, qp] = split_outer(g, fs, t.emb.outer, p, q);
            r.contrib_pos = upward_contribution(*a, qp);
            r.contrib_neg = upward_contribution(*a, pq);
        }
    } else if (r.poles_ok) {
        r.failures.push_back("stored rotation is not planar");
    }
    if (r.contrib_pos != 2 * w || r.contrib_neg != -2 * w)
        r.failures.push_back("contributions " + std::to_string(r.contrib_pos) + "/" + std::to_string(r.contrib_neg) +
                             " differ from +-" + std::to_string(2 * w));
    try {
        r.width = validate_decomposition(g, t.pd);
        if (r.width > 2) r.failures.push_back("decomposition width " + std::to_string(r.width) + " above 2");
    } catch (const ForgeError& ex) {
        r.failures.push_back(std::string("decomposition: ") + ex.what());
    }
    if (!r.failures.empty()) {
        std::string msg;
        for (const auto& f : r.failures) msg += (msg.empty() ? "" : "; ") + f;
        throw PropertyViolated(msg);
    }
    return r;
}

RectTendrilReport verify_rect_tendril(const Gadget& t, int w) {
    RectTendrilReport r;
    const Multigraph& g = t.body.g;
    int p = t.boundary.count("p") ? t.boundary.at("p") : -1;
    int q = t.boundary.count("q") ? t.boundary.at("q") : -1;
    if (p < 0 || q < 0) throw PropertyViolated("poles missing");
    auto deg = g.degrees();
    r.poles_ok = deg[p] == 1 && deg[q] == 1;
    if (!r.poles_ok) r.failures.push_back("poles must have degree one");
    r.closure_triconnected = suppressed_closure_rigid(g, p, q);
    if (!r.closure_triconnected) r.failures.push_back("closure is not rigid after smoothing degree-2 vertices");

    if (is_planar_rotation(g, t.emb)) {
        FaceSet fs = trace_faces(g, t.emb);
        int f = face_with(fs, g, p, q);
        if (f < 0) {
            r.failures.push_back("poles do not share a face");
        } else {
            Embedding e{t.emb.rot, f};
            auto all = enumerate_rect_assignments(g, e);
            r.embeddings = static_cast<int>(all.size());
            auto [pq, qp] = split_outer(g, fs, f, p, q);
            for (const auto& a : all) {
                int pos = rect_contribution(a, qp), neg = rect_contribution(a, pq);
                if (pos != -neg) r.failures.push_back("sides are not opposite");
                r.contributions.push_back(pos);
            }
            std::sort(r.contributions.begin(), r.contributions.end());
        }
    } else {
        r.failures.push_back("stored rotation is not planar");
    }
    if (r.embeddings != 4) r.failures.push_back("expected four assignments, found " + std::to_string(r.embeddings));
    std::vector<int> want{4 * w, 4 * w + 1, 4 * w + 1, 4 * w + 2};
    if (r.contributions != want) r.failures.push_back("contribution multiset differs from {4w, 4w+1, 4w+1, 4w+2}");
    try {
        r.width = validate_decomposition(g, t.pd);
        if (r.width > 2) r.failures.push_back("decomposition width " + std::to_string(r.width) + " above 2");
    } catch (const ForgeError& ex) {
        r.failures.push_back(std::string("decomposition: ") + ex.what());
    }
    if (!r.failures.empty()) {
        std::string msg;
        for (const auto& f : r.failures) msg += (msg.empty() ? "" : "; ") + f;
        throw PropertyViolated(msg);
    }
    return r;
}

}  // namespace forge
