#include "forge/flow.hpp"

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/push_relabel_max_flow.hpp>

namespace forge {

i64 max_flow(int n, const std::vector<FlowArc>& arcs, int s, int t, std::vector<i64>& flow) {
    using namespace boost;
    using Traits = adjacency_list_traits<vecS, vecS, directedS>;
    using G = adjacency_list<vecS, vecS, directedS, no_property,
                             property<edge_capacity_t, i64,
                                      property<edge_residual_capacity_t, i64,
                                               property<edge_reverse_t, Traits::edge_descriptor>>>>;
    G g(n);
    auto cap = get(edge_capacity, g);
    auto rev = get(edge_reverse, g);
    auto res = get(edge_residual_capacity, g);
    std::vector<Traits::edge_descriptor> fwd;
    fwd.reserve(arcs.size());
    for (const auto& a : arcs) {
        auto e1 = add_edge(a.u, a.v, g).first;
        auto e2 = add_edge(a.v, a.u, g).first;
        cap[e1] = a.cap;
        cap[e2] = 0;
        rev[e1] = e2;
        rev[e2] = e1;
        fwd.push_back(e1);
    }
    flow.assign(arcs.size(), 0);
    if (s == t || arcs.empty()) return 0;
    i64 value = push_relabel_max_flow(g, s, t);
    for (size_t i = 0; i < arcs.size(); ++i) flow[i] = cap[fwd[i]] - res[fwd[i]];
    return value;
}

}  // namespace forge
