#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "forge/error.hpp"
#include "forge/graph.hpp"

namespace forge {

/// Traces faces without the genus check. Faces are discovered by scanning darts
/// in id order, so the result depends on the rotation only.
FaceSet trace_faces(const Multigraph& g, const Embedding& e);

/// Face set of a genus-0 rotation; NonPlanarRotation otherwise.
FaceSet validate_embedding(const Multigraph& g, const Embedding& e);

bool is_planar_rotation(const Multigraph& g, const Embedding& e);

/// Reversed rotation; the outer face is carried over to the same region.
Embedding mirror(const Multigraph& g, const Embedding& e);

/// Face on the right of dart d (faces are traced with the face on the left).
inline int right_face(const FaceSet& fs, int d) { return fs.dart_face[d ^ 1]; }

// Per edge end angle in radians, counterclockwise from +x. ends[e] = {at u, at v}.
Embedding rotation_from_angles(const Multigraph& g,
                               const std::vector<std::pair<double, double>>& ends);

struct DualGraph {
    Multigraph g;             // dual edge id == primal edge id
    Embedding emb;
    std::vector<i64> w;       // transported capacities
    std::vector<int> face_of_primal_vertex;  // dual face index for each primal vertex
};

DualGraph dual_graph(const Multigraph& g, const Embedding& e, const std::vector<i64>& cap);

bool is_triconnected(const Multigraph& g);
bool is_biconnected(const Multigraph& g);

/// Acyclic orientation with single source s and single sink t.
Multigraph st_orientation(const Multigraph& g, int s, int t);

struct Subdivision {
    CapGraph out;
    Embedding emb;                 // filled when an input embedding was given
    std::vector<int> parent;       // output edge -> input edge
    std::vector<int> position;     // 0..times along the parent (from its u)
    std::vector<int> chain_start;  // input edge -> first output edge id
    std::vector<bool> representative;
};

Subdivision subdivide_all(const CapGraph& g, int times, const Embedding* e = nullptr);

struct Triangulation {
    CapGraph out;
    Embedding emb;
    std::vector<int> added;  // ids of the new zero-capacity chords
};

Triangulation triangulate(const CapGraph& g, const Embedding& e);

struct Crossing {
    int a;  // arc uv
    int b;  // arc xy
};

/// Replaces each crossing by a degree-four vertex. Arc ids of the input are
/// reused for the first halves; second halves are appended.
CapGraph eliminate_crossings(const CapGraph& g, const std::vector<Crossing>& crossings);

/// Calls f for every genus-0 rotation system (outer face unset). Returning false
/// from f stops the search. Partial rotations are pruned by a genus check on the
/// subgraph spanned by already-placed vertices.
void for_each_planar_rotation(const Multigraph& g,
                              const std::function<bool(const Embedding&)>& f);

/// Canonical key for (rotation, outer face) comparisons.
std::vector<int> embedding_key(const Multigraph& g, const Embedding& e);

}  // namespace forge
