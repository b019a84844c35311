#pragma once

#include <array>
#include <stdexcept>
#include <vector>

#include "pmc/weight.hpp"

namespace pmc {

// Darts: edge e owns darts 2e (origin ends[e][0]) and 2e+1 (origin ends[e][1]).
inline int twin(int d) { return d ^ 1; }
inline int edge_of(int d) { return d >> 1; }

struct EdgeSpec {
    int u = 0, v = 0;
    Weight w = 1;
};

struct FaceWalk {
    int id = 0;
    std::vector<int> darts;
    int length() const { return static_cast<int>(darts.size()); }
};

struct GraphError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class PlaneGraph;

// Validates the rotation system and traces faces. Throws GraphError.
PlaneGraph build_plane_graph(int vertex_count, const std::vector<EdgeSpec>& edges,
                             const std::vector<std::vector<int>>& rotation, int outer_dart,
                             bool allow_nonpositive = false);

class PlaneGraph {
public:
    PlaneGraph() = default;

    int vertex_count() const { return n_; }
    int edge_count() const { return static_cast<int>(ends_.size()); }
    int dart_count() const { return 2 * edge_count(); }
    int face_count() const { return static_cast<int>(faces_.size()); }

    int origin(int d) const { return ends_[d >> 1][d & 1]; }
    int head(int d) const { return ends_[d >> 1][(d & 1) ^ 1]; }
    const std::array<int, 2>& ends(int e) const { return ends_[e]; }
    Weight weight(int e) const { return w_[e]; }
    const std::vector<Weight>& weights() const { return w_; }
    const std::vector<int>& rotation(int v) const { return rot_[v]; }
    int degree(int v) const { return static_cast<int>(rot_[v].size()); }

    int rot_next(int d) const;  // clockwise successor of d around origin(d)
    int rot_prev(int d) const;
    int next(int d) const { return rot_next(twin(d)); }  // face walk successor
    int prev(int d) const { return twin(rot_prev(d)); }

    int face_of(int d) const { return face_of_[d]; }
    const FaceWalk& face(int f) const { return faces_[f]; }
    const std::vector<FaceWalk>& faces() const { return faces_; }
    int outer_dart() const { return outer_dart_; }
    int outer_face() const { return outer_dart_ < 0 ? -1 : face_of_[outer_dart_]; }

    std::vector<int> component_of_vertices() const;  // component id per vertex
    int component_count() const;
    bool connected() const { return component_count() <= 1; }
    bool is_bridge(int e) const { return face_of_[2 * e] == face_of_[2 * e + 1]; }
    Weight total_weight() const;

    friend PlaneGraph build_plane_graph(int, const std::vector<EdgeSpec>&, const std::vector<std::vector<int>>&, int,
                                        bool);

private:
    int n_ = 0;
    std::vector<std::array<int, 2>> ends_;
    std::vector<Weight> w_;
    std::vector<std::vector<int>> rot_;
    std::vector<int> pos_;
    std::vector<int> face_of_;
    std::vector<FaceWalk> faces_;
    int outer_dart_ = -1;
};

std::vector<FaceWalk> trace_faces(const PlaneGraph& g);

// Euler check per component: V_i - E_i + F_i = 2 for every component with edges.
bool euler_holds(const PlaneGraph& g);

struct DualPair {
    PlaneGraph dual;
    // dual edge id == primal edge id, dual dart id == primal dart id.
    std::vector<int> face_to_vertex;  // identity; kept for readability at call sites
};

DualPair dual(const PlaneGraph& g);

struct BridgeBlocks {
    std::vector<int> bridges;
    std::vector<std::vector<int>> blocks;  // maximal bridgeless components (edge sets), sorted
};

BridgeBlocks bridge_blocks(const PlaneGraph& g);

struct Edited {
    PlaneGraph graph;
    std::vector<int> edge_from;    // new edge id -> old edge id
    std::vector<int> vertex_from;  // new vertex id -> a representative old vertex id
    std::vector<int> vertex_to;    // old vertex -> new vertex
};

Edited delete_edges(const PlaneGraph& g, const std::vector<int>& edges);
Edited contract_edges(const PlaneGraph& g, const std::vector<int>& edges, bool simplify = false);

// Same embedding and weights, weights replaced.
PlaneGraph with_weights(const PlaneGraph& g, const std::vector<Weight>& w);

// Mutable rotation-system editor used by the transformation and generators.
class GraphBuilder {
public:
    GraphBuilder() = default;
    explicit GraphBuilder(const PlaneGraph& g);

    int add_vertex();
    // New edge; darts are not yet placed in any rotation.
    int add_edge(int u, int v, Weight w);
    // Insert dart d into the rotation of its origin, immediately before/after ref (ref == -1 appends).
    void insert_before(int d, int ref);
    void insert_after(int d, int ref);
    // Detach d from its origin's rotation and make v its origin (not placed).
    void set_origin(int d, int v);
    void set_outer(int d) { outer_ = d; }
    int origin(int d) const { return (d & 1) ? edges_[d >> 1].v : edges_[d >> 1].u; }
    int vertex_count() const { return n_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    std::vector<int>& rotation(int v) { return rot_[v]; }
    Weight& weight(int e) { return edges_[e].w; }

    PlaneGraph build(bool allow_nonpositive = false) const;

private:
    int n_ = 0;
    std::vector<EdgeSpec> edges_;
    std::vector<std::vector<int>> rot_;
    int outer_ = -1;
};

}  // namespace pmc
