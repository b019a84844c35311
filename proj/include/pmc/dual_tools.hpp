#pragma once

#include <string>
#include <vector>

#include "pmc/cut.hpp"
#include "pmc/instance.hpp"

namespace pmc {

// G+: the dual with every plural terminal face vertex split into one leaf per boundary edge.
// Edge ids and dart ids coincide with the primal ones; dart d originates at the vertex of face_of(d).
struct AugmentedDual {
    PlaneGraph graph;
    std::vector<std::vector<int>> aug_terminals;  // per terminal face: a_1..a_p as vertex ids
    std::vector<std::vector<int>> aug_edges;      // per terminal face: edge of a_j, joining t_{j-1} and t_j
    std::vector<int> face_vertex;                 // primal face -> vertex, -1 when split
    std::vector<int> leaf_face;                   // per vertex: terminal face index of an augmented terminal, else -1
    std::vector<int> leaf_index;                  // per vertex: j of a_j, else -1

    bool is_aug_terminal(int v) const { return leaf_face[v] >= 0; }
};

// Requires each plural terminal face to be bounded by exactly its p terminal-to-terminal edges.
// Throws InstanceError otherwise.
AugmentedDual augmented_dual(const MwcInstance& inst);

// True iff t is disconnected in G - D from the reference vertex, the origin of the canonical outer-face dart.
bool enclosure_test(const MwcInstance& inst, const std::vector<int>& D, int t);

struct Bone {
    int from = -1, to = -1;   // G+ vertices of the shrunken skeleton
    std::vector<int> darts;   // G+ darts from `from` to `to`
};

struct Skeleton {
    std::vector<int> edges;       // sorted G+ edge ids
    std::vector<int> vertices;    // G+ vertices of positive skeleton degree
    std::vector<int> branching;   // degree >= 3
    std::vector<int> shrunken;    // vertices kept after dissolving
    std::vector<Bone> bones;      // shrunken edge i is bones[i]
    std::vector<std::vector<int>> spines;  // per terminal face: bounding edge multiset, sorted
    int face_count = 0;
    int max_degree = 0, min_degree = 0;
    bool has_self_loop = false;

    bool empty() const { return edges.empty(); }
};

struct SkeletonError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Peels degree-1 vertices of C+ and dissolves degree-2 vertices. Throws SkeletonError if C+ is disconnected.
Skeleton skeleton(const MwcInstance& inst, const AugmentedDual& ad, const std::vector<int>& C);
Skeleton skeleton(const MwcInstance& inst, const std::vector<int>& C);

// True iff removing the primal edges of the spine of face alpha separates T_alpha from the other terminals.
bool spine_is_island_cut(const MwcInstance& inst, const Skeleton& sk, int alpha);
bool spine_is_island_cut(const MwcInstance& inst, const std::vector<int>& spine, int alpha);

struct StructuralReport {
    bool feasible = false;
    bool minimal = false;
    bool faces_at_most_one = false;   // every face of C* holds at most one terminal
    bool faces_exactly_one = false;
    bool bridgeless = false;
    bool plural_incident = false;     // every boundary edge of a plural face is in C
    bool terminal_vertices_not_cut = false;
    bool no_cut_vertices = false;
    bool dual_connected = false;      // C* connected
    bool augmented_available = false;
    bool plus_connected = false;
    int plus_faces = 0;
    bool skeleton_degrees = false;    // skeleton degrees within [2,3] and no self-loops
    int shrunken_vertices = 0, shrunken_edges = 0;
    bool shrunken_bounds = false;     // <= 4k vertices, <= 12k edges
    bool spines_island = false;
    std::vector<std::string> violations;

    // Every predicate that a minimum cut of a transformed instance with connected dual must meet.
    bool all() const { return violations.empty(); }
};

StructuralReport structural_audit(const MwcInstance& inst, const std::vector<int>& C);

// Articulation points of a multigraph given as an edge list; self-loops are ignored.
std::vector<char> articulation_points(int n, const std::vector<std::array<int, 2>>& edges);

// DOT drawing of the subgraph of g spanned by the given edges.
std::string dot_subgraph(const PlaneGraph& g, const std::vector<int>& edges, const std::string& name);

}  // namespace pmc
