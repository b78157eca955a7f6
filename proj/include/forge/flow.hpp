#pragma once

#include <vector>

#include "forge/graph.hpp"

namespace forge {

struct FlowArc {
    int u, v;
    i64 cap;
};

/// Integral maximum s-t flow; flow[i] is the amount routed on arcs[i].
i64 max_flow(int n, const std::vector<FlowArc>& arcs, int s, int t, std::vector<i64>& flow);

}  // namespace forge
