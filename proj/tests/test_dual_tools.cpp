#include <algorithm>

#include "doctest.h"
#include "fixtures.hpp"
#include "pmc/dual_tools.hpp"
#include "pmc/transform.hpp"

using namespace pmc;

namespace {

MwcInstance transformed(const MwcInstance& inst) { return transform_instance(inst).first; }

MwcInstance dumbbell(std::uint64_t seed) {
    GeneratorSpec s;
    s.kind = "dumbbell";
    s.seed = seed;
    s.k = 2;
    s.terminals = 2;
    s.max_weight = 4;
    return generate(s);
}

// Skeleton edges by repeatedly deleting the edge of the highest-numbered degree-1 vertex.
std::vector<int> peel_reference(const PlaneGraph& G, const std::vector<int>& C) {
    std::vector<int> alive = C;
    for (;;) {
        std::vector<int> deg(G.vertex_count(), 0);
        for (int e : alive) ++deg[G.ends(e)[0]], ++deg[G.ends(e)[1]];
        int leaf = -1;
        for (int v = G.vertex_count() - 1; v >= 0 && leaf < 0; --v)
            if (deg[v] == 1) leaf = v;
        if (leaf < 0) break;
        alive.erase(std::find_if(alive.begin(), alive.end(),
                                 [&](int e) { return G.ends(e)[0] == leaf || G.ends(e)[1] == leaf; }));
    }
    std::sort(alive.begin(), alive.end());
    return alive;
}

std::vector<MwcInstance> transformed_fixtures() {
    std::vector<MwcInstance> out{transformed(fx::square()), transformed(fx::triangle()), transformed(fx::grid())};
    for (std::uint64_t seed = 1; seed <= 4; ++seed) out.push_back(transformed(dumbbell(seed)));
    return out;
}

}  // namespace

TEST_CASE("augmented dual: leaves and degrees") {
    auto tri = transformed(fx::triangle());
    auto ad = augmented_dual(tri);
    REQUIRE(ad.aug_terminals.size() == 1);
    REQUIRE(ad.aug_terminals[0].size() == 3);
    for (int v : ad.aug_terminals[0]) CHECK(ad.graph.degree(v) == 1);
    CHECK(ad.graph.edge_count() == tri.g.edge_count());
    for (int e = 0; e < tri.g.edge_count(); ++e) CHECK(ad.graph.weight(e) == tri.g.weight(e));
    // a_j sits on the edge from t_{j-1} to t_j
    for (int j = 0; j < 3; ++j) {
        auto [u, v] = tri.g.ends(ad.aug_edges[0][j]);
        std::vector<int> got{u, v}, want{tri.faces[0].terminals[(j + 2) % 3], tri.faces[0].terminals[j]};
        std::sort(got.begin(), got.end());
        std::sort(want.begin(), want.end());
        CHECK(got == want);
    }

    auto sq = fx::square();
    auto single = transformed(make_instance(sq.g, {1}, {sq.g.outer_face()}));
    auto ad1 = augmented_dual(single);
    REQUIRE(ad1.aug_terminals[0].size() == 1);
    CHECK(ad1.graph.degree(ad1.aug_terminals[0][0]) == 1);

    for (const auto& inst : transformed_fixtures()) {
        auto a = augmented_dual(inst);
        CHECK(euler_holds(a.graph));
        for (int v = 0; v < a.graph.vertex_count(); ++v) {
            if (a.is_aug_terminal(v))
                CHECK(a.graph.degree(v) == 1);
            else
                CHECK(a.graph.degree(v) <= 3);
        }
    }
}

TEST_CASE("augmented dual rejects faces not bounded by their terminal cycle") {
    CHECK_THROWS_AS(augmented_dual(fx::grid()), InstanceError);
}

TEST_CASE("enclosure test") {
    auto sq = fx::square();
    for (int t = 0; t < 4; ++t) CHECK_FALSE(enclosure_test(sq, {}, t));
    int enclosed = 0;
    for (int t = 0; t < 4; ++t) enclosed += enclosure_test(sq, {0, 1, 2, 3}, t);
    CHECK(enclosed == 3);
    // {ab, cd} splits the square into {a,d} and {b,c}: exactly one side differs from the reference
    CHECK(enclosure_test(sq, {0, 2}, 0) != enclosure_test(sq, {0, 2}, 1));
    CHECK(enclosure_test(sq, {0, 2}, 0) == enclosure_test(sq, {0, 2}, 3));
}

TEST_CASE("structural audit on oracle minima of transformed fixtures") {
    for (const auto& inst : transformed_fixtures()) {
        auto opt = brute_force_mwc(inst);
        auto r = structural_audit(inst, opt.edges);
        INFO("k=" << inst.k() << " n=" << inst.n());
        for (const auto& v : r.violations) INFO("violation " << v);
        CHECK(r.all());
        CHECK(r.plus_faces == inst.k());
    }
    // padding an optimum with one copy of a doubled edge leaves its endpoints joined by the other copy
    auto [sq, rec] = transform_instance(fx::square());
    auto opt = brute_force_mwc(sq).edges;
    int pad = -1;
    for (auto [a, b] : rec.copies)
        if (std::find(opt.begin(), opt.end(), a) == opt.end() && std::find(opt.begin(), opt.end(), b) == opt.end()) {
            pad = a;
            break;
        }
    REQUIRE(pad >= 0);
    auto padded_cut = opt;
    padded_cut.push_back(pad);
    auto padded = structural_audit(sq, padded_cut);
    CHECK(padded.feasible);
    CHECK_FALSE(padded.minimal);
    CHECK_FALSE(padded.bridgeless);
    CHECK_FALSE(padded.all());
    // the full edge set of the square is non-minimal but its dual has no bridge
    auto raw = fx::square();
    auto full = structural_audit(raw, {0, 1, 2, 3});
    CHECK_FALSE(full.minimal);
    CHECK(full.bridgeless);
}

TEST_CASE("articulation points") {
    // two triangles sharing vertex 2
    auto cut = articulation_points(5, {{{0, 1}}, {{1, 2}}, {{2, 0}}, {{2, 3}}, {{3, 4}}, {{4, 2}}});
    CHECK(cut == std::vector<char>{0, 0, 1, 0, 0});
    auto par = articulation_points(3, {{{0, 1}}, {{0, 1}}, {{1, 2}}});
    CHECK(par == std::vector<char>{0, 1, 0});
}

TEST_CASE("skeleton: k=1 empty, dumbbell cycle, spines") {
    auto tri = transformed(fx::triangle());
    auto sk1 = skeleton(tri, brute_force_mwc(tri).edges);
    CHECK(sk1.empty());
    CHECK(sk1.face_count == 1);

    int dumbbells = 0;
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
        auto inst = transformed(dumbbell(seed));
        auto opt = brute_force_mwc(inst);
        auto sk = skeleton(inst, opt.edges);
        CHECK(sk.face_count == 2);
        CHECK(sk.branching.empty());
        REQUIRE(sk.shrunken.size() == 2);
        REQUIRE(sk.bones.size() == 2);
        CHECK(sk.bones[0].from != sk.bones[0].to);
        std::vector<int> a{sk.bones[0].from, sk.bones[0].to}, b{sk.bones[1].from, sk.bones[1].to};
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        CHECK(a == b);
        for (int alpha = 0; alpha < 2; ++alpha) {
            CHECK(spine_is_island_cut(inst, sk, alpha));
            auto broken = sk.spines[alpha];
            REQUIRE_FALSE(broken.empty());
            broken.erase(broken.begin());
            CHECK_FALSE(spine_is_island_cut(inst, broken, alpha));
        }
        ++dumbbells;
    }
    CHECK(dumbbells == 4);
}

TEST_CASE("skeleton peeling is order independent and loop free") {
    for (const auto& inst : transformed_fixtures()) {
        auto ad = augmented_dual(inst);
        auto opt = brute_force_mwc(inst);
        auto sk = skeleton(inst, ad, opt.edges);
        CHECK(sk.edges == peel_reference(ad.graph, opt.edges));
        CHECK_FALSE(sk.has_self_loop);
        CHECK(static_cast<int>(sk.shrunken.size()) <= 4 * inst.k());
        CHECK(static_cast<int>(sk.bones.size()) <= 12 * inst.k());
    }
}
