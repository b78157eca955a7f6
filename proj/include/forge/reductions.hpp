#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "forge/decomposition.hpp"
#include "forge/gadgets.hpp"
#include "forge/graph.hpp"
#include "forge/problems.hpp"

namespace forge {

// ---------------------------------------------------------------- AoNF stage

struct AonfStage {
    FlowNetwork net;
    Embedding emb;
    PathDecomposition pd;
    int k = 0, N = 0, m = 0;
    std::vector<NonEdge> nonedges;  // column j uses nonedges[j-1]
    int f1 = -1, f2 = -1;           // faces holding every x^j (f1) and every y^j (f2)
    std::vector<Point> pos;         // drawing, reused when the embedding is extended
    std::vector<std::pair<double, double>> ends;
};

AonfStage mcc_to_aonf(const MccInstance& inst);
AoNFlow lift_mcc_solution_to_flow(const AonfStage& out, const Clique& clique);
Clique extract_clique_from_flow(const AonfStage& out, const AoNFlow& flow);

// ------------------------------------------------------------------ CO stage

struct CoStage {
    CapGraph graph;  // undirected
    Embedding emb;
    PathDecomposition pd;
    bool equivalence_guaranteed = true;
    std::vector<int> source_arc;  // per edge: AoNF arc id, or -1 for added edges
    int s = -1, t = -1, S = -1, T = -1;
    int cycle[4] = {-1, -1, -1, -1};  // (S,s), (s,T), (T,t), (t,S), stored in that direction
    i64 alpha = 0, beta = 0, xi = 0;
};

i64 co_alpha(int k, int N);
i64 co_beta(int k, int N);
i64 co_xi(int k, int N);

/// PreconditionN when N < 10k unless force is set.
CoStage aonf_to_co(const AonfStage& in, bool force = false);
Orientation lift_flow_to_orientation(const AonfStage& in, const CoStage& out, const AoNFlow& flow);
AoNFlow extract_flow_from_orientation(const AonfStage& in, const CoStage& out, const Orientation& o);

// -------------------------------------------------------- normalized CO stage

struct NormalStage {
    CapGraph graph;  // simple, triconnected, triangulated
    Embedding emb;
    PathDecomposition pd;
    int subdivision_width = -1;  // composed bound after subdividing
    std::vector<int> parent;     // per edge: source edge, or -1 for a zero-capacity chord
    std::vector<int> position;   // 0 or 1 along the parent, counted from its u
};

/// Subdivides every edge once and triangulates with zero-capacity chords.
NormalStage co_normalize(const CapGraph& g, const Embedding& e, const PathDecomposition* pd = nullptr);
Orientation lift_to_normalized(const CapGraph& src, const NormalStage& out, const Orientation& o);
Orientation extract_from_normalized(const CapGraph& src, const NormalStage& out, const Orientation& o);

/// Simple, triconnected, every face a triangle.
bool audit_normalized(const NormalStage& n, std::string* why = nullptr);

// ------------------------------------------------------ upward / rect stages
//
// Both stages keep the skeleton (the st-oriented dual for upward, its 4-fold
// subdivision for rect) and a tendril table instead of the expanded graph,
// whose size grows with the capacities. The expanded graph is built on demand
// under a size budget.

struct TendrilSlot {
    int edge = -1;     // skeleton edge replaced by the tendril
    int primal = -1;   // normalized CO edge it encodes
    i64 w = 0;         // tendril parameter
};

struct UpwardStage {
    NormalStage primal;
    Multigraph skeleton;  // st-oriented dual; edge id == primal edge id
    Embedding skel_emb;
    std::vector<int> face_of_vertex;  // primal vertex -> skeleton face
    int s = -1, t = -1;
    std::vector<TendrilSlot> tendrils;  // one per skeleton arc, same index
    PathDecomposition skel_pd;
    int composed_width_bound = -1;  // width(skel_pd) + 2 + 1
};

struct UpwardCertificate {
    std::vector<bool> flip;  // per arc: positive side on the left of tail->head
    int outer = -1;          // skeleton face
    std::vector<int> base;   // per skeleton corner
};

UpwardStage co_to_upward(const NormalStage& in);
UpwardCertificate lift_orientation_to_upward(const UpwardStage& out, const Orientation& o);
bool check_upward_certificate(const UpwardStage& out, const UpwardCertificate& c, std::string* why = nullptr);
Orientation extract_orientation_from_upward(const UpwardStage& out, const UpwardCertificate& c);

struct RectStage {
    NormalStage primal;
    Multigraph dual;  // undirected dual, edge id == primal edge id
    Embedding dual_emb;
    std::vector<int> face_of_vertex;  // primal vertex -> dual face
    CapGraph skeleton;                // the dual subdivided four times
    Embedding skel_emb;
    std::vector<int> rep;  // dual edge -> middle edge of its chain
    i64 theta = 0;
    std::vector<TendrilSlot> tendrils;  // one per dual edge, same index
    PathDecomposition skel_pd;
    int composed_width_bound = -1;
};

struct RectCertificate {
    std::vector<bool> flip;  // per tendril: positive side on the left of its chain
    std::vector<int> sp, sq; // pole corner labels in {1,2}
    int outer = -1;          // skeleton face
    std::vector<int> base;   // per skeleton corner, labels 1..4
};

RectStage co_to_rectilinear(const NormalStage& in);
RectCertificate lift_orientation_to_rect(const RectStage& out, const Orientation& o);
bool check_rect_certificate(const RectStage& out, const RectCertificate& c, std::string* why = nullptr);
Orientation extract_orientation_from_rect(const RectStage& out, const RectCertificate& c);

// Expanded graphs. The budget bounds the vertex count; BudgetExceeded above it.
struct Expanded {
    Multigraph g;
    Embedding emb;
    AngleAssignment lambda;
    PathDecomposition pd;
    std::vector<int> tendril_first;       // first vertex id of each tendril's interior
    std::vector<int> tendril_edge_first;  // first edge id of each tendril
};

Expanded expand_upward(const UpwardStage& out, const UpwardCertificate* c = nullptr, long budget = 2'000'000);
Expanded expand_rect(const RectStage& out, const RectCertificate* c = nullptr, long budget = 2'000'000);
/// Reads a compact certificate back from an expanded (embedding, assignment).
UpwardCertificate compact_upward(const UpwardStage& out, const Expanded& x, const Embedding& e,
                                 const AngleAssignment& a);
RectCertificate compact_rect(const RectStage& out, const Expanded& x, const Embedding& e, const AngleAssignment& a);

/// Tendril family members are checked once per distinct parameter up to this
/// size; larger members follow from the periodic construction.
constexpr i64 kTendrilCheckLimit = 2048;
bool tendril_member_ok(i64 w);
bool rect_tendril_member_ok(i64 w);

// ---------------------------------------------------------------- full chain

enum class Target { Aonf, Co, Upward, Rect };

struct Chain {
    MccInstance source;
    AonfStage aonf;
    std::optional<CoStage> co;
    std::optional<NormalStage> normal;
    std::optional<UpwardStage> upward;
    std::optional<RectStage> rect;
};

Chain full_chain(const MccInstance& inst, Target target, bool force = false);

// Certificates carried through a chain.
struct ChainCertificates {
    AoNFlow flow;
    Orientation co, normal;
    std::optional<UpwardCertificate> upward;
    std::optional<RectCertificate> rect;
};

/// Lifts a clique through every built stage, checking each certificate;
/// throws the stage's error kind on the first failure.
ChainCertificates lift_chain(const Chain& c, const Clique& clique);

}  // namespace forge
