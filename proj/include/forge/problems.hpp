#pragma once

#include <optional>
#include <string>
#include <vector>

#include "forge/error.hpp"
#include "forge/graph.hpp"

namespace forge {

// Parts are listed in order; parts[i][a] is the vertex v_{i+1,a+1}.
struct MccInstance {
    Multigraph g;
    int k = 0;
    int N = 0;
    std::vector<std::vector<int>> parts;

    void check() const;  // ShapeMismatch / NotSimple
    bool adjacent(int x, int y) const;
};

// pick[i] in [1, N]: the chosen vertex of part i+1.
using Clique = std::vector<int>;

bool is_multicolored_clique(const MccInstance& inst, const Clique& pick);

std::optional<Clique> solve_mcc_bruteforce(const MccInstance& inst, long budget = 10'000'000);

/// Each cross-part pair becomes an edge with probability p.
MccInstance random_mcc(int k, int N, double p, std::uint64_t seed);

struct FlowNetwork {
    CapGraph net;  // all edges directed
    int s = -1;
    int t = -1;
    i64 F = 0;

    void check() const;
};

struct AoNFlow {
    std::vector<bool> active;  // per arc: carries its full capacity
};

bool verify_aonf_flow(const FlowNetwork& fn, const AoNFlow& flow, std::string* why = nullptr);

std::optional<AoNFlow> solve_aonf_bruteforce(const FlowNetwork& fn, int limit = 60);

using CapacitatedGraph = CapGraph;

struct Orientation {
    std::vector<bool> forward;  // per edge: oriented u -> v
};

bool verify_circulating(const CapacitatedGraph& cg, const Orientation& o, std::string* why = nullptr);

std::optional<Orientation> solve_co_bruteforce(const CapacitatedGraph& cg, int limit = 24);

enum class AngleMode { Upward, Rect };

// One label per corner of the face set of the embedding the assignment refers to.
struct AngleAssignment {
    AngleMode mode = AngleMode::Upward;
    std::vector<int> label;
};

/// Corner classification from arc directions: true where both arcs at the
/// corner point the same way relative to its vertex.
std::vector<bool> switch_corners(const Multigraph& g, const Embedding& e, const FaceSet& fs);

bool check_upward_assignment(const Multigraph& g, const Embedding& e, const AngleAssignment& a,
                             std::string* why = nullptr);
/// force[v] >= 0 pins the large angle of switch vertex v to that corner id.
std::optional<AngleAssignment> solve_upward_fixed_embedding(const Multigraph& g, const Embedding& e,
                                                            const std::vector<int>& force = {});
/// True iff the assignment is the only one for this embedding.
bool upward_assignment_unique(const Multigraph& g, const Embedding& e, const AngleAssignment& a);
bool solve_upward_bruteforce(const Multigraph& g, int limit = 8);

bool check_rect_assignment(const Multigraph& g, const Embedding& e, const AngleAssignment& a,
                           std::string* why = nullptr);
std::optional<AngleAssignment> solve_rect_fixed_embedding(const Multigraph& g, const Embedding& e);
bool solve_rect_bruteforce(const Multigraph& g, int limit = 8);

/// Sum of upward labels (or rect contributions label-2) of the given corners.
int upward_contribution(const AngleAssignment& a, const std::vector<int>& corners);
int rect_contribution(const AngleAssignment& a, const std::vector<int>& corners);

}  // namespace forge
