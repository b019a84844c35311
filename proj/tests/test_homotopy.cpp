#include <algorithm>
#include <functional>
#include <memory>
#include <random>
#include <set>

#include "doctest.h"
#include "fixtures.hpp"
#include "pmc/homotopy.hpp"
#include "pmc/steiner.hpp"
#include "pmc/transform.hpp"

using namespace pmc;

namespace {

struct Built {
    MwcInstance inst;
    AugmentedDual ad;
    CutGraph K;
};

// The cut graph points at the augmented dual, so both live behind one stable address.
std::unique_ptr<Built> build(const MwcInstance& raw, TransformOptions opt = {}) {
    auto b = std::make_unique<Built>();
    b->inst = transform_instance(raw, opt).first;
    b->ad = augmented_dual(b->inst);
    b->K = build_cut_graph(b->inst, b->ad);
    return b;
}

// First seed at or after `seed` for which terminals can be placed.
MwcInstance gen_any(const std::string& kind, int n, int k, std::uint64_t seed) {
    for (;; ++seed) {
        for (int extra = 0; extra <= k; ++extra) {
            GeneratorSpec s;
            s.kind = kind;
            s.n = n;
            s.k = k;
            s.terminals = k + extra;
            s.max_weight = 5;
            s.seed = seed;
            try {
                return generate(s);
            } catch (const OracleError&) {
            }
        }
    }
}

std::vector<std::unique_ptr<Built>> small_fixtures() {
    std::vector<std::unique_ptr<Built>> out;
    // step-1 instances keep G+ small enough for exhaustive path enumeration
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        const int n = 5 + static_cast<int>(seed % 3);
        for (auto [kind, k] : {std::pair{"dumbbell", 2}, {"dumbbell", 3}, {"triangulation", 2}}) {
            auto b = build(gen_any(kind, n, k, seed), {true, false});
            if (b->K.host->vertex_count() <= 10) out.push_back(std::move(b));
        }
    }
    return out;
}

// Crossing sequences realised by simple paths from x to y.
std::set<std::vector<std::pair<int, int>>> simple_sequences(const CutGraph& K, int x, int y) {
    const PlaneGraph& G = *K.host;
    std::set<std::vector<std::pair<int, int>>> out;
    std::vector<char> on(G.vertex_count(), 0);
    std::vector<int> darts;
    std::function<void(int)> dfs = [&](int v) {
        if (v == y) {
            std::vector<std::pair<int, int>> key;
            for (auto c : crossing_sequence(K, x, darts)) key.push_back({c.spoke, c.dir});
            out.insert(key);
            return;
        }
        for (int d : G.rotation(v)) {
            int u = G.head(d);
            if (on[u] || (K.blocked[u] && u != y)) continue;
            on[u] = 1;
            darts.push_back(d);
            dfs(u);
            darts.pop_back();
            on[u] = 0;
        }
    };
    on[x] = 1;
    dfs(x);
    return out;
}

Weight walk_weight(const PlaneGraph& G, const std::vector<int>& darts) {
    Weight w = 0;
    for (int d : darts) w = wadd(w, G.weight(edge_of(d)));
    return w;
}

// Bellman-Ford distance that never relaxes out of a blocked vertex other than s.
Weight bellman_ford(const PlaneGraph& G, int s, int t, const std::vector<char>& blocked) {
    std::vector<Weight> dist(G.vertex_count(), kInf);
    dist[s] = 0;
    for (int round = 0; round < G.vertex_count(); ++round)
        for (int d = 0; d < 2 * G.edge_count(); ++d) {
            int u = G.origin(d);
            if (is_inf(dist[u]) || (u != s && blocked[u])) continue;
            dist[G.head(d)] = std::min(dist[G.head(d)], wadd(dist[u], G.weight(edge_of(d))));
        }
    return dist[t];
}

HomotopyString from_key(const std::vector<std::pair<int, int>>& key) {
    HomotopyString h;
    for (auto [s, d] : key) h.push_back({s, d});
    return h;
}

}  // namespace

TEST_CASE("cut graph: one face has no spokes, two faces one shortest spoke") {
    auto tri = build(fx::triangle());
    CHECK(tri->K.spoke_count() == 0);
    CHECK(tri->K.edges.empty());
    CHECK(enumerate_homotopy_strings(tri->K, 5).size() == 1);

    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        auto b = build(gen_any("triangulation", 7, 2, seed));
        REQUIRE(b->K.spoke_count() == 1);
        const auto& sp = b->K.spokes[0];
        auto D = dual(b->inst.g).dual;
        const int fa = b->inst.faces[0].face;
        const int fb = b->inst.faces[1].face;
        std::vector<char> blocked(D.vertex_count(), 0);
        CHECK(sp.weight == bellman_ford(D, fa, fb, blocked));
        CHECK(D.origin(sp.darts.front()) == fa);
        CHECK(D.head(sp.darts.back()) == fb);
        CHECK(sp.weight == walk_weight(D, sp.darts));
        CHECK(spokes_noncrossing(b->K));
    }
}

TEST_CASE("unique shortest path breaks ties by the largest edge id") {
    // square cycle: both routes from 0 to 2 weigh 2
    auto g = fx::cycle({1, 1, 1, 1});
    auto p = unique_shortest_path(g, 0, 2);
    REQUIRE(p);
    std::vector<int> es;
    for (int d : *p) es.push_back(edge_of(d));
    std::sort(es.begin(), es.end());
    CHECK(es == std::vector<int>{0, 1});
    auto blocked = std::vector<char>{0, 1, 0, 0};
    auto q = unique_shortest_path(g, 0, 2, blocked);
    REQUIRE(q);
    es.clear();
    for (int d : *q) es.push_back(edge_of(d));
    std::sort(es.begin(), es.end());
    CHECK(es == std::vector<int>{2, 3});
}

TEST_CASE("homotopy string enumeration") {
    auto b = build(gen_any("triangulation", 6, 2, 1));
    REQUIRE(b->K.spoke_count() == 1);
    CHECK(enumerate_homotopy_strings(b->K, 1).size() == 3);
    CHECK(enumerate_homotopy_strings(b->K, 2).size() == 7);
    auto hs = enumerate_homotopy_strings(b->K, 2);
    CHECK(hs[0].empty());
    CHECK(to_string(hs[1]) == "0+");
    CHECK(to_string(hs[2]) == "0-");
    CHECK(to_string(hs[3]) == "0+ 0+");
    CHECK(default_hcap(1) == 30);
    CHECK(default_hcap(3) == 150);
    std::unique_ptr<Built> b3;
    for (std::uint64_t seed = 1; !b3 || b3->inst.k() != 3; ++seed) b3 = build(gen_any("triangulation", 9, 3, seed));
    REQUIRE(b3->K.spoke_count() == 2);
    CHECK(spokes_noncrossing(b3->K));
    CHECK(enumerate_homotopy_strings(b3->K, 2).size() == 1 + 4 + 16);
}

TEST_CASE("crossing sequence of a single spoke") {
    int found_cross = 0, found_touch = 0, found_start = 0;
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        auto b = build(gen_any("triangulation", 8, 2, seed));
        const auto& K = b->K;
        const PlaneGraph& G = *K.host;
        const auto& sp = K.spokes.at(0);
        const int M = static_cast<int>(sp.darts.size());
        auto other = [&](int i, bool east) {
            int v = G.head(sp.darts[i - 1]);
            const auto& sv = K.at[v][0];
            // side_of is internal: walk clockwise from fwd until back
            bool in_east = true;
            for (int x = G.rot_next(sv.fwd); x != sv.fwd; x = G.rot_next(x)) {
                if (x == sv.back) {
                    in_east = false;
                    continue;
                }
                if (in_east == east && !K.blocked[G.head(x)] && K.at[G.head(x)].empty()) return x;
            }
            return -1;
        };
        for (int i = 1; i < M; ++i)
            for (int j = i; j < M; ++j) {
                int de = other(i, true), dw = other(j, false), de2 = other(j, true);
                if (de < 0) continue;
                std::vector<int> along(sp.darts.begin() + i, sp.darts.begin() + j);
                std::vector<int> walk{twin(de)};
                walk.insert(walk.end(), along.begin(), along.end());
                if (dw >= 0) {
                    auto w = walk;
                    w.push_back(dw);
                    CHECK(to_string(crossing_sequence(K, G.head(de), w)) == "0-");
                    // the reverse walk crosses west to east
                    std::vector<int> rev;
                    for (auto it = w.rbegin(); it != w.rend(); ++it) rev.push_back(twin(*it));
                    CHECK(to_string(crossing_sequence(K, G.head(dw), rev)) == "0+");
                    ++found_cross;
                }
                if (de2 >= 0) {
                    auto w = walk;
                    w.push_back(de2);
                    CHECK(crossing_sequence(K, G.head(de), w).empty());
                    ++found_touch;
                }
                // starting on the spoke counts as starting west
                std::vector<int> from_spoke(along);
                from_spoke.push_back(de2 >= 0 ? de2 : de);
                if (de2 >= 0 || i == j) {
                    CHECK(to_string(crossing_sequence(K, G.head(sp.darts[i - 1]), from_spoke)) == "0+");
                    ++found_start;
                }
            }
    }
    CHECK(found_cross > 0);
    CHECK(found_touch > 0);
    CHECK(found_start > 0);
}

TEST_CASE("homotopic shortest paths against walk and simple-path enumeration") {
    int triples = 0, fixtures = 0, cheaper_walks = 0;
    std::mt19937_64 rng(7);
    for (const auto& b : small_fixtures()) {
        const auto& K = b->K;
        const PlaneGraph& G = *K.host;
        if (G.vertex_count() > 14 || K.spoke_count() == 0) continue;
        ++fixtures;
        CHECK(spokes_noncrossing(K));
        for (int x = 0; x < G.vertex_count(); ++x)
            for (int y = 0; y < G.vertex_count(); ++y) {
                if (x == y || K.blocked[x] || K.blocked[y]) continue;
                auto seqs = simple_sequences(K, x, y);
                for (const auto& key : seqs) {
                    auto h = from_key(key);
                    auto hp = homotopic_shortest_path(K, x, y, h);
                    auto bf = brute_force_homotopic(K, x, y, h);
                    REQUIRE(bf);
                    REQUIRE(hp);
                    INFO("x=" << x << " y=" << y << " h=" << to_string(h));
                    // never worse than a simple path, and exactly the cheapest walk
                    CHECK(hp->weight <= *bf);
                    CHECK(brute_force_homotopic_walk(K, x, y, h, *bf) == hp->weight);
                    cheaper_walks += hp->weight < *bf;
                    CHECK(crossing_sequence(K, x, hp->darts) == h);
                    CHECK(walk_weight(G, hp->darts) == hp->weight);
                    auto dist = homotopic_distances(K, x, h);
                    CHECK(dist[h.size()][y] == hp->weight);
                    ++triples;
                }
                // a string no walk realises within the vertex budget
                HomotopyString junk(1, {K.spoke_count(), +1});
                CHECK_FALSE(homotopic_shortest_path(K, x, y, junk));
            }
    }
    MESSAGE("fixtures=" << fixtures << " triples=" << triples << " strictly cheaper walks=" << cheaper_walks);
    CHECK(fixtures >= 5);
    CHECK(triples >= 100);
}
