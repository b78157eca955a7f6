#pragma once

#include <vector>

#include "forge/error.hpp"
#include "forge/graph.hpp"

namespace forge {

struct PathDecomposition {
    std::vector<std::vector<int>> bags;

    int width() const;
};

/// Width if the three decomposition axioms hold; VertexIntervalBroken or
/// EdgeUncovered otherwise.
int validate_decomposition(const Multigraph& g, const PathDecomposition& pd);

/// Vertex-separation upper bound from a greedy min-degree elimination order.
int greedy_pw_upper_bound(const Multigraph& g);
PathDecomposition greedy_path_decomposition(const Multigraph& g);

// One replaced edge of the skeleton. pd is expressed in ids of the composed
// graph; its poles must map onto the endpoints of the skeleton edge.
struct GadgetPlacement {
    int edge = -1;
    int pole_u = -1;
    int pole_v = -1;
    PathDecomposition pd;
};

/// Inserts every gadget decomposition next to a bag that covers its edge.
/// base_map sends skeleton vertices to composed-graph vertices.
PathDecomposition compose_gadget_decomposition(const Multigraph& skeleton, const PathDecomposition& pd,
                                               const std::vector<GadgetPlacement>& gadgets,
                                               const std::vector<int>& base_map);

/// The per-column bags of the clique-to-flow network, looked up by vertex name.
PathDecomposition mcc_network_decomposition(const Multigraph& net, int k, int N, int m);

/// Adds the given vertices to every bag.
PathDecomposition add_to_all_bags(const PathDecomposition& pd, const std::vector<int>& extra);

}  // namespace forge
