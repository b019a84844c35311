#include <algorithm>
#include <numeric>

#include "doctest.h"
#include "fixtures.hpp"
#include "pmc/plane_graph.hpp"

using namespace pmc;

namespace {

PlaneGraph two_triangles_with_bridge() {
    // triangles 0-1-2 and 3-4-5, bridge 2-3 (edge 6)
    std::vector<EdgeSpec> es{{0, 1, 1}, {1, 2, 1}, {2, 0, 1}, {3, 4, 1}, {4, 5, 1}, {5, 3, 1}, {2, 3, 1}};
    std::vector<std::vector<int>> rot{{0, 5}, {1, 2}, {3, 4, 12}, {6, 11, 13}, {7, 8}, {9, 10}};
    return build_plane_graph(6, es, rot, 0);
}

// Independent DFS bridge finder (lowlink) used as an oracle for the face-walk criterion.
std::vector<int> dfs_bridges(const PlaneGraph& g) {
    const int n = g.vertex_count();
    std::vector<int> tin(n, -1), low(n, 0), out;
    int timer = 0;
    auto dfs = [&](auto&& self, int v, int parent_edge) -> void {
        tin[v] = low[v] = timer++;
        for (int d : g.rotation(v)) {
            int e = d >> 1, u = g.head(d);
            if (e == parent_edge) continue;
            if (tin[u] >= 0) {
                low[v] = std::min(low[v], tin[u]);
            } else {
                self(self, u, e);
                low[v] = std::min(low[v], low[u]);
                if (low[u] > tin[v]) out.push_back(e);
            }
        }
    };
    for (int v = 0; v < n; ++v)
        if (tin[v] < 0) dfs(dfs, v, -1);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

TEST_CASE("build: triangle and square have two faces") {
    auto tri = fx::cycle({1, 2, 3});
    CHECK(tri.face_count() == 2);
    auto sq = fx::square().g;
    CHECK(sq.face_count() == 2);
    for (const auto& f : trace_faces(sq)) CHECK(f.length() == 4);
}

TEST_CASE("build: malformed rotations and weights are rejected") {
    std::vector<EdgeSpec> es{{0, 1, 1}, {1, 2, 1}, {2, 0, 1}};
    CHECK_THROWS_AS(build_plane_graph(3, es, {{0, 0}, {1, 2}, {3, 4}}, 0), GraphError);
    CHECK_THROWS_AS(build_plane_graph(3, es, {{0}, {1, 2}, {3, 4, 5}}, 0), GraphError);
    CHECK_THROWS_AS(build_plane_graph(3, es, {{0, 5}, {1, 2}, {3}}, 0), GraphError);
    std::vector<EdgeSpec> bad{{0, 1, 0}, {1, 2, 1}, {2, 0, 1}};
    CHECK_THROWS_AS(build_plane_graph(3, bad, {{0, 5}, {1, 2}, {3, 4}}, 0), GraphError);
    CHECK_NOTHROW(build_plane_graph(3, bad, {{0, 5}, {1, 2}, {3, 4}}, 0, true));
}

TEST_CASE("trace: single edge is one face of length two") {
    auto g = fx::single_edge();
    REQUIRE(g.face_count() == 1);
    CHECK(g.face(0).length() == 2);
    CHECK(g.is_bridge(0));
}

TEST_CASE("trace: 3x3 grid has five faces and satisfies Euler") {
    auto g = fx::grid().g;
    CHECK(g.vertex_count() == 9);
    CHECK(g.edge_count() == 12);
    CHECK(g.face_count() == 5);
    CHECK(euler_holds(g));
    CHECK(g.face(g.outer_face()).length() == 8);
    std::vector<int> seen(g.dart_count(), 0);
    for (const auto& f : g.faces())
        for (int d : f.darts) seen[d]++;
    for (int c : seen) CHECK(c == 1);
}

TEST_CASE("dual: cycle gives two vertices joined by parallel edges") {
    for (int n = 3; n <= 6; ++n) {
        std::vector<Weight> w(n, 1);
        auto g = fx::cycle(w);
        auto d = dual(g).dual;
        CHECK(d.vertex_count() == 2);
        CHECK(d.edge_count() == n);
        for (int e = 0; e < n; ++e) CHECK(d.ends(e)[0] != d.ends(e)[1]);
    }
}

TEST_CASE("dual: single edge gives one vertex with a self-loop") {
    auto d = dual(fx::single_edge()).dual;
    CHECK(d.vertex_count() == 1);
    CHECK(d.edge_count() == 1);
    CHECK(d.ends(0)[0] == d.ends(0)[1]);
}

TEST_CASE("dual: grid dual has 5 vertices and 12 edges, and dual of dual matches") {
    auto g = fx::grid().g;
    auto d = dual(g).dual;
    CHECK(d.vertex_count() == 5);
    CHECK(d.edge_count() == 12);
    CHECK(euler_holds(d));
    auto dd = dual(d).dual;
    CHECK(dd.vertex_count() == g.vertex_count());
    CHECK(dd.face_count() == g.face_count());
    // the dual of the dual has the primal rotations, up to vertex renaming
    for (int v = 0; v < g.vertex_count(); ++v) {
        int w = dd.origin(g.rotation(v).front());
        CHECK(dd.rotation(w).size() == g.rotation(v).size());
        const auto& r = dd.rotation(w);
        auto it = std::find(r.begin(), r.end(), g.rotation(v).front());
        std::vector<int> rr(it, r.end());
        rr.insert(rr.end(), r.begin(), it);
        CHECK(rr == g.rotation(v));
    }
}

TEST_CASE("bridge blocks") {
    auto sq = fx::square().g;
    auto b1 = bridge_blocks(sq);
    CHECK(b1.bridges.empty());
    CHECK(b1.blocks.size() == 1);
    auto p = fx::path(3);
    auto b2 = bridge_blocks(p);
    CHECK(b2.bridges.size() == 3);
    CHECK(b2.blocks.empty());
    auto tt = two_triangles_with_bridge();
    auto b3 = bridge_blocks(tt);
    CHECK(b3.bridges == dfs_bridges(tt));
    CHECK(b3.bridges == std::vector<int>{6});
    CHECK(b3.blocks.size() == 2);
    // bridge <=> dual self-loop
    auto d = dual(tt).dual;
    for (int e = 0; e < tt.edge_count(); ++e) CHECK(tt.is_bridge(e) == (d.ends(e)[0] == d.ends(e)[1]));
}

TEST_CASE("bridge criterion agrees with lowlink DFS on generated graphs") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        GeneratorSpec s;
        s.kind = "dumbbell";
        s.n = 9;
        s.k = 2;
        s.terminals = 3;
        s.seed = seed;
        auto inst = generate(s);
        auto del = delete_edges(inst.g, {0, 3});
        auto bb = bridge_blocks(del.graph);
        CHECK(bb.bridges == dfs_bridges(del.graph));
        CHECK(euler_holds(del.graph));
    }
}

TEST_CASE("edit: delete and contract on C4, spanning-tree contraction of the grid") {
    auto c4 = fx::cycle({1, 1, 1, 1});
    auto del = delete_edges(c4, {2});
    CHECK(del.graph.edge_count() == 3);
    CHECK(del.graph.face_count() == 1);
    auto con = contract_edges(c4, {1});
    CHECK(con.graph.vertex_count() == 3);
    CHECK(con.graph.edge_count() == 3);
    CHECK(con.graph.face_count() == 2);
    CHECK(euler_holds(con.graph));

    auto g = fx::grid().g;
    // BFS spanning tree
    std::vector<int> seen(g.vertex_count(), 0), tree;
    std::vector<int> q{0};
    seen[0] = 1;
    for (size_t i = 0; i < q.size(); ++i)
        for (int d : g.rotation(q[i]))
            if (!seen[g.head(d)]) {
                seen[g.head(d)] = 1;
                tree.push_back(d >> 1);
                q.push_back(g.head(d));
            }
    auto ct = contract_edges(g, tree);
    CHECK(ct.graph.vertex_count() == 1);
    CHECK(ct.graph.edge_count() == 4);
    for (int e = 0; e < 4; ++e) CHECK(ct.graph.ends(e)[0] == ct.graph.ends(e)[1]);
    CHECK(ct.graph.face_count() == 5);
    CHECK(euler_holds(ct.graph));
    // contracting a loop is an error
    CHECK_THROWS_AS(contract_edges(ct.graph, {0}), GraphError);
    auto simp = contract_edges(g, tree, true);
    CHECK(simp.graph.edge_count() == 0);
}
