#pragma once

#include <vector>

#include "pmc/instance.hpp"
#include "pmc/oracle.hpp"

namespace fx {

// Cycle v0-v1-...-v(n-1) with the given weights; edge i joins i and i+1.
inline pmc::PlaneGraph cycle(const std::vector<pmc::Weight>& w) {
    const int n = static_cast<int>(w.size());
    std::vector<pmc::EdgeSpec> es;
    std::vector<std::vector<int>> rot(n);
    for (int i = 0; i < n; ++i) {
        es.push_back({i, (i + 1) % n, w[i]});
        rot[i].push_back(2 * i);
        rot[(i + 1) % n].push_back(2 * i + 1);
    }
    return pmc::build_plane_graph(n, es, rot, 0);
}

// FIX-SQ: a=0 b=1 c=2 d=3, ab=1 bc=2 cd=3 da=4, T={a,c}, terminal face = outer.
inline pmc::MwcInstance square() {
    auto g = cycle({1, 2, 3, 4});
    return pmc::make_instance(g, {0, 2}, {g.outer_face()});
}

// FIX-TRI: triangle with weights 1,2,3, all vertices terminals on the outer face.
inline pmc::MwcInstance triangle() {
    auto g = cycle({1, 2, 3});
    return pmc::make_instance(g, {0, 1, 2}, {g.outer_face()});
}

// FIX-GRID: 3x3 grid, corner terminals on the outer face.
inline pmc::MwcInstance grid(std::uint64_t seed = 1) {
    pmc::GeneratorSpec s;
    s.kind = "grid";
    s.rows = 3;
    s.cols = 3;
    s.corners = true;
    s.seed = seed;
    return pmc::generate(s);
}

inline pmc::PlaneGraph single_edge() {
    return pmc::build_plane_graph(2, {{0, 1, 1}}, {{0}, {1}}, 0);
}

inline pmc::PlaneGraph path(int edges) {
    std::vector<pmc::EdgeSpec> es;
    std::vector<std::vector<int>> rot(edges + 1);
    for (int i = 0; i < edges; ++i) {
        es.push_back({i, i + 1, 1});
        rot[i].push_back(2 * i);
        rot[i + 1].push_back(2 * i + 1);
    }
    return pmc::build_plane_graph(edges + 1, es, rot, 0);
}

}  // namespace fx
