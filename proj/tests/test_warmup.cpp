#include <algorithm>
#include <map>
#include <queue>
#include <set>

#include "doctest.h"
#include "fixtures.hpp"
#include "pmc/warmup_solver.hpp"

using namespace pmc;

namespace {

// Generated instances with exactly k terminal faces and at most max_n vertices, first `count` seeds that work.
std::vector<MwcInstance> corpus(const std::string& kind, int k, int count, int max_n) {
    std::vector<MwcInstance> out;
    for (int seed = 1; seed <= 2000 && static_cast<int>(out.size()) < count; ++seed)
        for (int extra = 0; extra <= 3; ++extra) {
            GeneratorSpec s;
            s.kind = kind;
            s.k = k;
            s.terminals = k + extra;
            s.seed = seed;
            s.n = 8 + seed % 4;
            s.rows = 3;
            s.cols = 3 + seed % 2;
            MwcInstance I;
            try {
                I = generate(s);
            } catch (const std::exception&) {
                continue;
            }
            if (I.k() != k || I.n() > max_n) continue;
            out.push_back(std::move(I));
            break;
        }
    return out;
}

// Small k = 2 dumbbells whose G+ stays tiny enough for the literal pipeline.
std::vector<MwcInstance> tiny_dumbbells(int count) {
    std::vector<MwcInstance> out;
    for (int seed = 1; seed <= 200 && static_cast<int>(out.size()) < count; seed += 2)
        for (int extra = 0; extra <= 2; ++extra) {
            GeneratorSpec s;
            s.kind = "dumbbell";
            s.k = 2;
            s.terminals = 2 + extra;
            s.seed = seed;
            s.n = 6;
            MwcInstance I;
            try {
                I = generate(s);
            } catch (const std::exception&) {
                continue;
            }
            if (I.k() != 2 || I.n() > 9) continue;
            auto s1 = transform_instance(I, TransformOptions{true, false}).first;
            if (augmented_dual(s1).graph.vertex_count() > 9) continue;
            out.push_back(std::move(I));
            break;
        }
    return out;
}

Weight dijkstra(const PlaneGraph& H, int s, int t, const std::vector<char>& allowed) {
    std::vector<Weight> dist(H.vertex_count(), kInf);
    using Item = std::pair<Weight, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    dist[s] = 0;
    pq.push({0, s});
    while (!pq.empty()) {
        auto [d, v] = pq.top();
        pq.pop();
        if (d != dist[v]) continue;
        for (int dt : H.rotation(v)) {
            int u = H.head(dt);
            if (!allowed[u]) continue;
            Weight nd = wadd(d, H.weight(dt >> 1));
            if (nd < dist[u]) {
                dist[u] = nd;
                pq.push({nd, u});
            }
        }
    }
    return dist[t];
}

}  // namespace

TEST_CASE("warmup: solve equals brute force on k = 2 dumbbells and grids") {
    int checked = 0;
    for (const std::string kind : {"dumbbell", "grid"}) {
        auto insts = corpus(kind, 2, 30, 12);
        CHECK(insts.size() == 30);
        for (const auto& I : insts) {
            auto bf = brute_force_mwc(I);
            SolveStats st;
            auto s = solve(I, {}, &st);
            CHECK(verify_multiway_cut(I, s.edges));
            CHECK(s.weight == bf.weight);
            CHECK(st.certified);
            ++checked;
        }
    }
    CHECK(checked >= 50);
}

TEST_CASE("warmup: curated k = 3 triangulations") {
    auto insts = corpus("triangulation", 3, 5, 12);
    REQUIRE(insts.size() == 5);
    for (const auto& I : insts) {
        auto bf = brute_force_mwc(I);
        auto s = solve(I);
        CHECK(verify_multiway_cut(I, s.edges));
        CHECK(s.weight == bf.weight);
    }
}

TEST_CASE("warmup: k = 1 goes through the single-face solver") {
    for (const auto& I : corpus("grid", 1, 10, 12)) {
        auto s = solve(I);
        CHECK(s.weight == chen_wu_single_face_solve(I).weight);
        CHECK(s.weight == brute_force_mwc(I).weight);
    }
}

TEST_CASE("warmup: zero weights and split components") {
    auto z = parse_instance(
        R"({"vertices":4,"edges":[[0,0,1,0],[1,1,2,2],[2,2,3,0],[3,3,0,4]],"rotation":[[0,7],[1,2],[3,4],[5,6]],)"
        R"("outer_face_dart":0,"terminals":[0,1,2,3]})");
    auto s = solve(z);
    CHECK(s.weight == 6);
    CHECK(s.weight == brute_force_mwc(z).weight);

    int checked = 0;
    for (auto I : corpus("grid", 2, 6, 12)) {
        auto w = I.g.weights();
        for (std::size_t e = 0; e < w.size(); e += 3) w[e] = 0;
        I.g = with_weights(I.g, w);
        auto r = solve(I);
        CHECK(verify_multiway_cut(I, r.edges));
        CHECK(r.weight == brute_force_mwc(I).weight);
        ++checked;
    }
    CHECK(checked == 6);
}

TEST_CASE("warmup: repeated solves give identical cuts") {
    for (const auto& I : corpus("dumbbell", 2, 5, 12)) {
        auto a = solve(I), b = solve(I);
        CHECK(a.edges == b.edges);
        CHECK(a.weight == b.weight);
    }
}

TEST_CASE("warmup: separating subgraph weight bounds the cut from below") {
    for (const auto& I : corpus("grid", 2, 8, 12)) {
        auto s1 = transform_instance(I, TransformOptions{true, false}).first;
        auto ad = augmented_dual(s1);
        auto D = min_separating_subgraph(s1, ad);
        REQUIRE(D.found());
        CHECK(D.chords.size() == 1);
        CHECK(D.weight == cut_weight(ad.graph, D.edges));
        CHECK(D.weight >= solve(I).weight);
    }
}

TEST_CASE("skeletons: counts, Euler and distinct codes") {
    CHECK(enumerate_skeleton_candidates(1).empty());
    auto k2 = enumerate_skeleton_candidates(2);
    CHECK(k2.size() == 8);
    std::set<int> cycle_lengths;
    for (const auto& S : k2) {
        CHECK(static_cast<int>(S.edges.size()) == S.vertices);
        cycle_lengths.insert(S.vertices);
    }
    CHECK(cycle_lengths == std::set<int>{2, 3, 4, 5, 6, 7, 8, 9});

    auto k3 = enumerate_skeleton_candidates(3);
    std::set<std::string> codes;
    bool theta = false;
    for (const auto& S : k3) {
        CHECK(codes.insert(S.code).second);
        CHECK(S.face_count == 3);
        CHECK(S.vertices - static_cast<int>(S.edges.size()) + S.face_count == 2);
        CHECK(S.vertices <= 13);
        std::vector<int> deg(S.vertices, 0);
        for (const auto& e : S.edges) {
            CHECK(e[0] != e[1]);
            ++deg[e[0]];
            ++deg[e[1]];
        }
        for (int d : deg) CHECK((d == 2 || d == 3));
        theta = theta || (S.vertices == 2 && S.edges.size() == 3);
    }
    CHECK(theta);
}

TEST_CASE("skeletons: side sequences agree with a direct filter") {
    auto got = bone_label_choices();
    std::set<std::vector<int>> ref;
    for (int len = 0; len <= 4; ++len)
        for (int bits = 0; bits < (1 << len); ++bits) {
            std::vector<int> s;
            for (int i = 0; i < len; ++i) s.push_back((bits >> i) & 1);
            if (std::count(s.begin(), s.end(), 0) > 2 || std::count(s.begin(), s.end(), 1) > 2) continue;
            bool ok = true;
            for (int i = 0; i + 1 < len; ++i)
                if (s[i] == s[i + 1] && !(len == 4 && i == 1)) ok = false;
            if (ok) ref.insert(s);
        }
    CHECK(got.size() == 11);
    CHECK(std::set<std::vector<int>>(got.begin(), got.end()) == ref);
}

TEST_CASE("topologies: analytic count for k = 2 and streaming limit") {
    std::vector<HomotopyString> strings{{}};
    long seen = 0;
    auto c = enumerate_topologies(2, strings, 500, [&](const Topology& t) {
        CHECK(t.S != nullptr);
        CHECK(t.bones.size() == t.S->edges.size());
        ++seen;
        return true;
    });
    long expect = 0, p = 121;
    for (int v = 2; v <= 9; ++v, p *= 11) expect += 2 * p;
    CHECK(c.skeletons == 8);
    CHECK(c.topologies == expect);
    CHECK(c.truncated);
    CHECK(seen == 500);
}

TEST_CASE("broken bones: every enumerated bone is valid and distinct") {
    auto I = tiny_dumbbells(1).at(0);
    auto s1 = transform_instance(I, TransformOptions{true, false}).first;
    auto ad = augmented_dual(s1);
    NerveTable nt(ad);
    std::vector<int> roots;
    for (int v = 0; v < ad.graph.vertex_count(); ++v)
        if (!ad.is_aug_terminal(v)) roots.push_back(v);
    REQUIRE(roots.size() >= 2);
    int checked = 0;
    for (const auto& s : bone_label_choices()) {
        if (s.size() > 2) continue;
        BoneSpec spec;
        spec.alpha = 0;
        spec.beta = 1;
        spec.s = s;
        spec.from = roots[0];
        spec.to = roots[1];
        spec.h.assign(2 * s.size() + 1, {});
        bool trunc = false;
        auto bbs = enumerate_broken_bones(s1, ad, nt, spec, 100000, &trunc);
        CHECK_FALSE(trunc);
        std::set<std::vector<int>> keys;
        for (const auto& bb : bbs) {
            CHECK(broken_bone_valid(ad, spec, bb));
            CHECK(bb.x.size() == s.size() + 1);
            CHECK(bb.nerves.size() == 2 * s.size());
            std::vector<int> key{bb.I[0].lo, bb.I[0].len, bb.I[1].lo, bb.I[1].len};
            key.insert(key.end(), bb.x.begin(), bb.x.end());
            key.insert(key.end(), bb.y.begin(), bb.y.end());
            for (const auto& N : bb.nerves) {
                key.push_back(N.v);
                key.push_back(N.interval.lo);
                key.push_back(N.interval.len);
            }
            CHECK(keys.insert(key).second);
            ++checked;
        }
    }
    CHECK(checked > 0);
}

TEST_CASE("splinting DP: base row equals the nerve table, relaxed paths are no heavier") {
    auto I = tiny_dumbbells(1).at(0);
    auto s1 = transform_instance(I, TransformOptions{true, false}).first;
    auto ad = augmented_dual(s1);
    auto K = build_cut_graph(s1, ad);
    NerveTable nt(ad);
    auto strings = enumerate_homotopy_strings(K, 1);
    int rows = 0;
    for (int side = 0; side < 2; ++side) {
        BoneSpec spec;
        spec.alpha = 0;
        spec.beta = 1;
        spec.s = {side};
        spec.h.assign(3, {});
        int face = spec.face(side);
        if (nt.p(face) < 2) continue;
        for (const auto& bb : enumerate_broken_bones(s1, ad, nt, spec, 5000)) {
            const Nerve &N1 = bb.nerves[0], &N2 = bb.nerves[1];
            if (N1.interval.empty() || N1.interval.lo == N2.interval.lo) continue;
            for (const auto& h : strings) {
                SplintTables strict, relaxed;
                auto a = nerve_path(s1, ad, K, nt, face, N1, N2, h, true, &strict);
                auto b = nerve_path(s1, ad, K, nt, face, N1, N2, h, false, &relaxed);
                CHECK(strict.base_row_matches);
                CHECK(relaxed.base_row_matches);
                CHECK(relaxed.result <= strict.result);
                if (a) CHECK(a->weight == strict.result);
                if (b) CHECK(b->weight == relaxed.result);
                ++rows;
            }
        }
    }
    CHECK(rows > 0);
}

TEST_CASE("mst_inside: two terminals give a shortest path in the region") {
    auto I = corpus("grid", 2, 1, 12).at(0);
    auto s1 = transform_instance(I, TransformOptions{true, false}).first;
    auto ad = augmented_dual(s1);
    const auto& H = ad.graph;
    std::vector<char> region(H.vertex_count(), 1);
    int ov = ad.face_vertex[s1.g.outer_face()];
    if (ov >= 0) {
        CHECK_THROWS_AS(mst_inside(s1, ad, region, {0, 1}), std::invalid_argument);
        region[ov] = 0;
    }
    std::vector<int> inner;
    for (int v = 0; v < H.vertex_count(); ++v)
        if (region[v] && !ad.is_aug_terminal(v)) inner.push_back(v);
    int pairs = 0;
    for (std::size_t i = 0; i < inner.size(); ++i)
        for (std::size_t j = i + 1; j < inner.size(); ++j) {
            auto t = mst_inside(s1, ad, region, {inner[i], inner[j]});
            CHECK(t.weight == dijkstra(H, inner[i], inner[j], region));
            for (int e : t.edges) CHECK((region[H.ends(e)[0]] && region[H.ends(e)[1]]));
            ++pairs;
        }
    CHECK(pairs > 0);
}

TEST_CASE("assemble: shared edges and non-separating unions are rejected") {
    auto I = tiny_dumbbells(1).at(0);
    auto s1 = transform_instance(I, TransformOptions{true, false}).first;
    auto bf = brute_force_mwc(s1);
    Splint a, b;
    a.edges = bf.edges;
    b.edges = {bf.edges.front()};
    CHECK_FALSE(assemble(s1, {a, b}).has_value());
    Splint half;
    half.edges.assign(bf.edges.begin(), bf.edges.begin() + 1);
    if (!verify_multiway_cut(s1, half.edges)) CHECK_FALSE(assemble(s1, {half}).has_value());
    auto whole = assemble(s1, {a});
    REQUIRE(whole.has_value());
    CHECK(whole->weight == bf.weight);
}

TEST_CASE("literal pipeline: k = 2 splints assemble to the optimum") {
    auto insts = tiny_dumbbells(4);
    REQUIRE(insts.size() == 4);
    for (const auto& I : insts) {
        LiteralOptions o;
        o.hcap = 1;
        o.max_groups = 1;
        auto r = literal_solve(I, o);
        REQUIRE(r.cut.has_value());
        CHECK(r.cut->weight == brute_force_mwc(I).weight);
        CHECK(r.splints > 0);
        CHECK(r.audit_failures == 0);
        CHECK(r.base_row_failures == 0);
        CHECK_FALSE(r.truncated);
    }
}
