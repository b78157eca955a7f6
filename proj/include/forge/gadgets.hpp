#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "forge/decomposition.hpp"
#include "forge/graph.hpp"
#include "forge/problems.hpp"

namespace forge {

using Point = std::pair<double, double>;

// A gadget fragment. VS/CH gadgets carry a drawing (vertex positions and edge
// end angles) from which the network embedding is assembled; tendrils carry
// their canonical embedding and angle assignment instead.
struct Gadget {
    std::string kind;
    CapGraph body;
    std::map<std::string, int> boundary;
    std::vector<Point> pos;
    std::vector<std::pair<double, double>> ends;

    int w = 0;
    Embedding emb;
    AngleAssignment lambda;
    std::vector<int> pos_side;  // outer-face corners of the positive boundary path
    std::vector<int> neg_side;
    PathDecomposition pd;
};

// Vertex names used by the flow network.
std::string name_V(int i, int j);
std::string name_inner(char role, int i, int q, int j);  // role in "vuwgh"
std::string name_x(int j);
std::string name_y(int j);

i64 vs_capacity(int k, int N, int q);

// Drawing geometry shared by the gadget builders and the network assembly.
struct ColumnLayout {
    int k, N;
    double row_top(int i) const { return -(i - 1) * (N + 3.0); }
    double path_y(int i, int q) const { return row_top(i) - q; }
    double row_mid(int i) const { return row_top(i) - (N + 1) / 2.0; }
    double col_x(int j) const { return 10.0 * j; }
};

Gadget build_vs_gadget(int i, int j, int k, int N);

struct NonEdge {
    int i, a;  // v_{i,a}
    int l, b;  // v_{l,b}, i < l
};

Gadget build_ch_gadget(int j, const NonEdge& ne, int k, int N);

/// Spiral ladder with 4w+1 rungs; the outer rail carries +2w.
Gadget build_tendril(int w);
/// Rectangular strip with 4w left turns; poles have degree one.
Gadget build_rect_tendril(int w);

struct TendrilReport {
    bool poles_ok = false;
    bool triconnected = false;
    int feasible_embeddings = 0;  // over the embeddings of the closure, all outer faces
    bool unique = false;
    int contrib_pos = 0;
    int contrib_neg = 0;
    int width = -1;
    std::vector<std::string> failures;
};

/// Checks the five tendril properties; throws PropertyViolated listing failures.
TendrilReport verify_tendril(const Gadget& t, int w);

struct RectTendrilReport {
    bool poles_ok = false;
    bool closure_triconnected = false;
    int embeddings = 0;  // rectilinear assignments with poles outside, modulo reflection
    std::vector<int> contributions;  // positive-side values, sorted
    int width = -1;
    std::vector<std::string> failures;
};

RectTendrilReport verify_rect_tendril(const Gadget& t, int w);

/// All rect assignments of an embedding (exhaustive, pruned by face balance).
std::vector<AngleAssignment> enumerate_rect_assignments(const Multigraph& g, const Embedding& e,
                                                        long limit = 1'000'000);

/// Positive-side contribution of the rect tendril variant with pole corners
/// (x, x') in {1,2}; the canonical variant is x = x' = 1.
inline i64 rect_tendril_contribution(i64 w, int sp, int sq) { return 4 * w + sp + sq - 2; }

/// Rect tendril assignment for a variant; the closed form avoids search.
AngleAssignment rect_tendril_assignment(const Gadget& t, int sp, int sq);

}  // namespace forge
