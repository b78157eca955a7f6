#include <algorithm>
#include <numeric>
#include <set>

#include "forge/error.hpp"
#include "forge/graph.hpp"

namespace forge {

int Multigraph::add_vertex(std::string name) {
    vname.push_back(std::move(name));
    return n++;
}

int Multigraph::add_edge(int u, int v, bool directed, std::string tag) {
    int id = m();
    edges.push_back({id, u, v, directed});
    etag.push_back(std::move(tag));
    return id;
}

std::vector<std::vector<int>> Multigraph::incidence() const {
    std::vector<std::vector<int>> inc(n);
    for (const auto& e : edges) {
        inc[e.u].push_back(e.id);
        inc[e.v].push_back(e.id);
    }
    return inc;
}

std::vector<int> Multigraph::degrees() const {
    std::vector<int> d(n, 0);
    for (const auto& e : edges) {
        ++d[e.u];
        ++d[e.v];
    }
    return d;
}

void Multigraph::check() const {
    if (static_cast<int>(vname.size()) != n || etag.size() != edges.size())
        throw DanglingReference("name/tag tables out of sync");
    for (int i = 0; i < m(); ++i) {
        const auto& e = edges[i];
        if (e.id != i) throw DanglingReference("edge id " + std::to_string(e.id) + " at index " + std::to_string(i));
        if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n)
            throw DanglingReference("edge " + std::to_string(i) + " has an unknown endpoint");
        if (e.u == e.v) throw DanglingReference("edge " + std::to_string(i) + " is a loop");
    }
}

bool Multigraph::is_simple() const {
    std::set<std::pair<int, int>> seen;
    for (const auto& e : edges) {
        if (e.u == e.v) return false;
        if (!seen.insert(std::minmax(e.u, e.v)).second) return false;
    }
    return true;
}

int Multigraph::components() const {
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    int c = n;
    for (const auto& e : edges) {
        int a = find(e.u), b = find(e.v);
        if (a != b) {
            parent[a] = b;
            --c;
        }
    }
    return c;
}

bool Multigraph::acyclic() const {
    std::vector<int> indeg(n, 0);
    std::vector<std::vector<int>> out(n);
    for (const auto& e : edges) {
        if (!e.directed) continue;
        out[e.u].push_back(e.v);
        ++indeg[e.v];
    }
    std::vector<int> stack;
    for (int v = 0; v < n; ++v)
        if (indeg[v] == 0) stack.push_back(v);
    int seen = 0;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        ++seen;
        for (int w : out[v])
            if (--indeg[w] == 0) stack.push_back(w);
    }
    return seen == n;
}

int Multigraph::find_vertex(const std::string& name) const {
    for (int v = 0; v < n; ++v)
        if (vname[v] == name) return v;
    return -1;
}

}  // namespace forge
