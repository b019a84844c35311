#include "pmc/plane_graph.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <string>

namespace pmc {

int PlaneGraph::rot_next(int d) const {
    const auto& r = rot_[origin(d)];
    int p = pos_[d] + 1;
    return r[p == static_cast<int>(r.size()) ? 0 : p];
}

int PlaneGraph::rot_prev(int d) const {
    const auto& r = rot_[origin(d)];
    int p = pos_[d];
    return r[p == 0 ? r.size() - 1 : p - 1];
}

std::vector<int> PlaneGraph::component_of_vertices() const {
    std::vector<int> comp(n_, -1);
    int c = 0;
    for (int s = 0; s < n_; ++s) {
        if (comp[s] >= 0) continue;
        std::vector<int> stack{s};
        comp[s] = c;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int d : rot_[v]) {
                int h = head(d);
                if (comp[h] < 0) {
                    comp[h] = c;
                    stack.push_back(h);
                }
            }
        }
        ++c;
    }
    return comp;
}

int PlaneGraph::component_count() const {
    auto comp = component_of_vertices();
    return comp.empty() ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
}

Weight PlaneGraph::total_weight() const {
    Weight s = 0;
    for (Weight x : w_) s = wadd(s, x);
    return s;
}

PlaneGraph build_plane_graph(int vertex_count, const std::vector<EdgeSpec>& edges,
                             const std::vector<std::vector<int>>& rotation, int outer_dart,
                             bool allow_nonpositive) {
    if (vertex_count < 0) throw GraphError("negative vertex count");
    if (static_cast<int>(rotation.size()) != vertex_count)
        throw GraphError("rotation must list one dart sequence per vertex");
    PlaneGraph g;
    g.n_ = vertex_count;
    const int m = static_cast<int>(edges.size());
    g.ends_.resize(m);
    g.w_.resize(m);
    for (int e = 0; e < m; ++e) {
        const auto& es = edges[e];
        if (es.u < 0 || es.u >= vertex_count || es.v < 0 || es.v >= vertex_count)
            throw GraphError("edge " + std::to_string(e) + " has an endpoint out of range");
        if (!allow_nonpositive && es.w <= 0)
            throw GraphError("edge " + std::to_string(e) + " has nonpositive weight");
        g.ends_[e] = {es.u, es.v};
        g.w_[e] = es.w;
    }
    g.pos_.assign(2 * m, -1);
    g.rot_ = rotation;
    for (int v = 0; v < vertex_count; ++v) {
        for (int i = 0; i < static_cast<int>(rotation[v].size()); ++i) {
            int d = rotation[v][i];
            if (d < 0 || d >= 2 * m) throw GraphError("rotation of vertex " + std::to_string(v) + " names unknown dart");
            if (g.pos_[d] >= 0) throw GraphError("dart " + std::to_string(d) + " listed twice");
            if (g.origin(d) != v)
                throw GraphError("dart " + std::to_string(d) + " listed at vertex " + std::to_string(v) +
                                 " but originates elsewhere");
            g.pos_[d] = i;
        }
    }
    for (int d = 0; d < 2 * m; ++d)
        if (g.pos_[d] < 0) throw GraphError("dart " + std::to_string(d) + " missing from rotation");
    if (m > 0) {
        if (outer_dart < 0 || outer_dart >= 2 * m) throw GraphError("outer face dart out of range");
    } else {
        outer_dart = -1;
    }
    g.outer_dart_ = outer_dart;
    g.face_of_.assign(2 * m, -1);
    for (int d0 = 0; d0 < 2 * m; ++d0) {
        if (g.face_of_[d0] >= 0) continue;
        FaceWalk fw;
        fw.id = static_cast<int>(g.faces_.size());
        int d = d0;
        do {
            g.face_of_[d] = fw.id;
            fw.darts.push_back(d);
            d = g.next(d);
        } while (d != d0);
        g.faces_.push_back(std::move(fw));
    }
    if (!euler_holds(g)) throw GraphError("rotation system is not planar (Euler check failed)");
    return g;
}

std::vector<FaceWalk> trace_faces(const PlaneGraph& g) { return g.faces(); }

bool euler_holds(const PlaneGraph& g) {
    auto comp = g.component_of_vertices();
    int c = comp.empty() ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
    std::vector<long> V(c, 0), E(c, 0), F(c, 0);
    for (int v = 0; v < g.vertex_count(); ++v) V[comp[v]]++;
    for (int e = 0; e < g.edge_count(); ++e) E[comp[g.ends(e)[0]]]++;
    for (const auto& f : g.faces()) F[comp[g.origin(f.darts[0])]]++;
    for (int i = 0; i < c; ++i)
        if (E[i] > 0 && V[i] - E[i] + F[i] != 2) return false;
    return true;
}

DualPair dual(const PlaneGraph& g) {
    if (!g.connected()) throw GraphError("dual requires a connected graph");
    const int m = g.edge_count();
    std::vector<EdgeSpec> es(m);
    for (int e = 0; e < m; ++e) es[e] = {g.face_of(2 * e), g.face_of(2 * e + 1), g.weight(e)};
    std::vector<std::vector<int>> rot(g.face_count());
    for (const auto& f : g.faces()) rot[f.id] = f.darts;
    DualPair dp;
    int outer = g.outer_dart();
    if (m == 0) {
        dp.dual = build_plane_graph(1, {}, {{}}, -1, true);
        dp.face_to_vertex = {0};
        return dp;
    }
    dp.dual = build_plane_graph(g.face_count(), es, rot, outer, true);
    dp.face_to_vertex.resize(g.face_count());
    std::iota(dp.face_to_vertex.begin(), dp.face_to_vertex.end(), 0);
    return dp;
}

BridgeBlocks bridge_blocks(const PlaneGraph& g) {
    BridgeBlocks bb;
    const int n = g.vertex_count();
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (int e = 0; e < g.edge_count(); ++e) {
        if (g.is_bridge(e)) {
            bb.bridges.push_back(e);
            continue;
        }
        parent[find(g.ends(e)[0])] = find(g.ends(e)[1]);
    }
    std::vector<int> block_of_root(n, -1);
    for (int e = 0; e < g.edge_count(); ++e) {
        if (g.is_bridge(e)) continue;
        int r = find(g.ends(e)[0]);
        if (block_of_root[r] < 0) {
            block_of_root[r] = static_cast<int>(bb.blocks.size());
            bb.blocks.emplace_back();
        }
        bb.blocks[block_of_root[r]].push_back(e);
    }
    return bb;
}

namespace {

// Rebuild from per-vertex rotation lists of surviving darts.
Edited rebuild(const PlaneGraph& g, const std::vector<char>& keep_edge, const std::vector<int>& vrep,
               const std::vector<std::vector<int>>& old_rot, int outer_old) {
    Edited out;
    const int n = g.vertex_count();
    std::vector<int> vnew(n, -1);
    for (int v = 0; v < n; ++v) {
        if (vrep[v] != v) continue;
        vnew[v] = static_cast<int>(out.vertex_from.size());
        out.vertex_from.push_back(v);
    }
    out.vertex_to.resize(n);
    for (int v = 0; v < n; ++v) out.vertex_to[v] = vnew[vrep[v]];
    std::vector<int> enew(g.edge_count(), -1);
    std::vector<EdgeSpec> es;
    for (int e = 0; e < g.edge_count(); ++e) {
        if (!keep_edge[e]) continue;
        enew[e] = static_cast<int>(es.size());
        out.edge_from.push_back(e);
        es.push_back({out.vertex_to[g.ends(e)[0]], out.vertex_to[g.ends(e)[1]], g.weight(e)});
    }
    std::vector<std::vector<int>> rot(out.vertex_from.size());
    for (int v = 0; v < n; ++v) {
        if (vrep[v] != v) continue;
        for (int d : old_rot[v]) rot[vnew[v]].push_back(2 * enew[d >> 1] + (d & 1));
    }
    int outer = outer_old < 0 ? -1 : 2 * enew[outer_old >> 1] + (outer_old & 1);
    out.graph = build_plane_graph(static_cast<int>(out.vertex_from.size()), es, rot, outer, true);
    return out;
}

}  // namespace

Edited delete_edges(const PlaneGraph& g, const std::vector<int>& edges) {
    std::vector<char> keep(g.edge_count(), 1);
    for (int e : edges) {
        if (e < 0 || e >= g.edge_count()) throw GraphError("delete_edges: unknown edge");
        keep[e] = 0;
    }
    std::vector<std::vector<int>> rot(g.vertex_count());
    for (int v = 0; v < g.vertex_count(); ++v)
        for (int d : g.rotation(v))
            if (keep[d >> 1]) rot[v].push_back(d);
    // New outer dart: search outward from the old outer face through deleted darts.
    int outer = -1;
    if (g.outer_dart() >= 0) {
        std::vector<char> seen_face(g.face_count(), 0);
        std::queue<int> q;
        q.push(g.outer_face());
        seen_face[g.outer_face()] = 1;
        while (!q.empty() && outer < 0) {
            int f = q.front();
            q.pop();
            const auto& walk = g.face(f).darts;
            int start = 0;
            if (f == g.outer_face())
                start = static_cast<int>(std::find(walk.begin(), walk.end(), g.outer_dart()) - walk.begin());
            for (int i = 0; i < static_cast<int>(walk.size()) && outer < 0; ++i) {
                int d = walk[(start + i) % walk.size()];
                if (keep[d >> 1]) {
                    outer = d;
                } else {
                    int f2 = g.face_of(twin(d));
                    if (!seen_face[f2]) {
                        seen_face[f2] = 1;
                        q.push(f2);
                    }
                }
            }
        }
        if (outer < 0)
            for (int e = 0; e < g.edge_count() && outer < 0; ++e)
                if (keep[e]) outer = 2 * e;
    }
    std::vector<int> vrep(g.vertex_count());
    std::iota(vrep.begin(), vrep.end(), 0);
    return rebuild(g, keep, vrep, rot, outer);
}

Edited contract_edges(const PlaneGraph& g, const std::vector<int>& edges, bool simplify) {
    const int n = g.vertex_count();
    std::vector<int> rep(n);
    std::iota(rep.begin(), rep.end(), 0);
    auto find = [&](int x) {
        while (rep[x] != x) x = rep[x] = rep[rep[x]];
        return x;
    };
    std::vector<std::vector<int>> rot(n);
    for (int v = 0; v < n; ++v) rot[v] = g.rotation(v);
    std::vector<char> keep(g.edge_count(), 1);
    for (int e : edges) {
        if (e < 0 || e >= g.edge_count()) throw GraphError("contract_edges: unknown edge");
        if (!keep[e]) continue;
        int a = find(g.ends(e)[0]), b = find(g.ends(e)[1]);
        if (a == b) throw GraphError("cannot contract self-loop " + std::to_string(e));
        int da = 2 * e, db = 2 * e + 1;
        auto& ra = rot[a];
        auto& rb = rot[b];
        auto ia = std::find(ra.begin(), ra.end(), da) - ra.begin();
        auto ib = std::find(rb.begin(), rb.end(), db) - rb.begin();
        std::vector<int> merged;
        for (size_t i = 1; i < ra.size(); ++i) merged.push_back(ra[(ia + i) % ra.size()]);
        for (size_t i = 1; i < rb.size(); ++i) merged.push_back(rb[(ib + i) % rb.size()]);
        int keepv = std::min(a, b), gone = std::max(a, b);
        rep[gone] = keepv;
        rot[keepv] = std::move(merged);
        rot[gone].clear();
        keep[e] = 0;
    }
    if (simplify) {
        std::vector<std::pair<int, int>> seen;
        for (int e = 0; e < g.edge_count(); ++e) {
            if (!keep[e]) continue;
            int a = find(g.ends(e)[0]), b = find(g.ends(e)[1]);
            if (a == b) {
                keep[e] = 0;
                continue;
            }
            auto key = std::minmax(a, b);
            if (std::find(seen.begin(), seen.end(), std::pair<int, int>(key.first, key.second)) != seen.end())
                keep[e] = 0;
            else
                seen.emplace_back(key.first, key.second);
        }
        for (auto& r : rot) r.erase(std::remove_if(r.begin(), r.end(), [&](int d) { return !keep[d >> 1]; }), r.end());
    }
    int outer = -1;
    if (g.outer_dart() >= 0) {
        int d = g.outer_dart();
        for (int i = 0; i < 2 * g.edge_count() && !keep[d >> 1]; ++i) d = g.next(d);
        if (keep[d >> 1]) outer = d;
        for (int e = 0; e < g.edge_count() && outer < 0; ++e)
            if (keep[e]) outer = 2 * e;
    }
    std::vector<int> vrep(n);
    for (int v = 0; v < n; ++v) vrep[v] = find(v);
    return rebuild(g, keep, vrep, rot, outer);
}

PlaneGraph with_weights(const PlaneGraph& g, const std::vector<Weight>& w) {
    std::vector<EdgeSpec> es(g.edge_count());
    for (int e = 0; e < g.edge_count(); ++e) es[e] = {g.ends(e)[0], g.ends(e)[1], w[e]};
    std::vector<std::vector<int>> rot(g.vertex_count());
    for (int v = 0; v < g.vertex_count(); ++v) rot[v] = g.rotation(v);
    return build_plane_graph(g.vertex_count(), es, rot, g.outer_dart(), true);
}

GraphBuilder::GraphBuilder(const PlaneGraph& g) : n_(g.vertex_count()), outer_(g.outer_dart()) {
    edges_.resize(g.edge_count());
    for (int e = 0; e < g.edge_count(); ++e) edges_[e] = {g.ends(e)[0], g.ends(e)[1], g.weight(e)};
    rot_.resize(n_);
    for (int v = 0; v < n_; ++v) rot_[v] = g.rotation(v);
}

int GraphBuilder::add_vertex() {
    rot_.emplace_back();
    return n_++;
}

int GraphBuilder::add_edge(int u, int v, Weight w) {
    edges_.push_back({u, v, w});
    return static_cast<int>(edges_.size()) - 1;
}

void GraphBuilder::insert_before(int d, int ref) {
    auto& r = rot_[origin(d)];
    if (ref < 0) {
        r.push_back(d);
        return;
    }
    auto it = std::find(r.begin(), r.end(), ref);
    if (it == r.end()) throw GraphError("insert_before: reference dart not at origin");
    r.insert(it, d);
}

void GraphBuilder::insert_after(int d, int ref) {
    auto& r = rot_[origin(d)];
    if (ref < 0) {
        r.push_back(d);
        return;
    }
    auto it = std::find(r.begin(), r.end(), ref);
    if (it == r.end()) throw GraphError("insert_after: reference dart not at origin");
    r.insert(it + 1, d);
}

void GraphBuilder::set_origin(int d, int v) {
    auto& r = rot_[origin(d)];
    r.erase(std::remove(r.begin(), r.end(), d), r.end());
    if (d & 1)
        edges_[d >> 1].v = v;
    else
        edges_[d >> 1].u = v;
}

PlaneGraph GraphBuilder::build(bool allow_nonpositive) const {
    return build_plane_graph(n_, edges_, rot_, outer_, allow_nonpositive);
}

}  // namespace pmc
