#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace forge {

using i64 = std::int64_t;

struct Edge {
    int id = -1;
    int u = -1;
    int v = -1;
    bool directed = false;
};

// Vertices are 0..n-1 and edge ids equal their index, so "sorted ids" is just
// index order. Names and tags carry the provenance of gadget-built elements.
struct Multigraph {
    int n = 0;
    std::vector<Edge> edges;
    std::vector<std::string> vname;
    std::vector<std::string> etag;

    int add_vertex(std::string name = {});
    int add_edge(int u, int v, bool directed = false, std::string tag = {});
    int m() const { return static_cast<int>(edges.size()); }
    int other(int e, int x) const {
        return edges[e].u == x ? edges[e].v : edges[e].u;
    }
    std::vector<std::vector<int>> incidence() const;
    std::vector<int> degrees() const;
    /// Throws DanglingReference / NotSimple-style errors on broken invariants.
    void check() const;
    bool is_simple() const;
    int components() const;
    bool connected() const { return components() <= 1; }
    bool acyclic() const;  // directed edges only
    int find_vertex(const std::string& name) const;
};

// Undirected (or directed, for flow networks) multigraph with capacities.
struct CapGraph {
    Multigraph g;
    std::vector<i64> cap;

    int add_edge(int u, int v, i64 c, std::string tag = {}, bool directed = false) {
        cap.push_back(c);
        return g.add_edge(u, v, directed, std::move(tag));
    }
};

// Rotation lists edge ids clockwise around each vertex.
struct Embedding {
    std::vector<std::vector<int>> rot;
    int outer = -1;
};

// Darts: 2e is u->v of edge e, 2e+1 is v->u. Corners: corner_base[v] + i is the
// angle between rot[v][i] and rot[v][i+1] (cyclically).
struct FaceSet {
    std::vector<std::vector<int>> faces;  // dart sequence of each face walk
    std::vector<int> dart_face;
    std::vector<int> corner_base;
    std::vector<int> corner_face;
    std::vector<int> corner_vertex;
    std::vector<std::vector<int>> face_corners;
    std::vector<std::vector<int>> pos;  // pos[e][side]: index of e in rot of that endpoint

    int num_faces() const { return static_cast<int>(faces.size()); }
    int num_corners() const { return static_cast<int>(corner_face.size()); }
};

inline int dart_tail(const Multigraph& g, int d) {
    return (d & 1) ? g.edges[d >> 1].v : g.edges[d >> 1].u;
}
inline int dart_head(const Multigraph& g, int d) {
    return (d & 1) ? g.edges[d >> 1].u : g.edges[d >> 1].v;
}

}  // namespace forge
