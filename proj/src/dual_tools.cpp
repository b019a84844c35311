#include "pmc/dual_tools.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace pmc {

namespace {

struct Dsu {
    std::vector<int> p;
    explicit Dsu(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    int find(int x) {
        while (p[x] != x) x = p[x] = p[p[x]];
        return x;
    }
    void unite(int a, int b) { p[find(a)] = find(b); }
};

std::vector<char> edge_mask(int m, const std::vector<int>& edges) {
    std::vector<char> mask(m, 0);
    for (int e : edges)
        if (e >= 0 && e < m) mask[e] = 1;
    return mask;
}

// Component root of every vertex of g after removing the masked edges.
std::vector<int> components_without(const PlaneGraph& g, const std::vector<char>& removed) {
    Dsu d(g.vertex_count());
    for (int e = 0; e < g.edge_count(); ++e)
        if (!removed[e]) d.unite(g.ends(e)[0], g.ends(e)[1]);
    std::vector<int> c(g.vertex_count());
    for (int v = 0; v < g.vertex_count(); ++v) c[v] = d.find(v);
    return c;
}

// Number of components among vertices touched by the given edges.
int touched_components(int n, const std::vector<std::array<int, 2>>& es, int* touched_out = nullptr) {
    Dsu d(n);
    std::vector<char> touched(n, 0);
    for (auto [u, v] : es) {
        d.unite(u, v);
        touched[u] = touched[v] = 1;
    }
    int comps = 0, t = 0;
    for (int v = 0; v < n; ++v) {
        if (!touched[v]) continue;
        ++t;
        if (d.find(v) == v) ++comps;
    }
    if (touched_out) *touched_out = t;
    return comps;
}

}  // namespace

AugmentedDual augmented_dual(const MwcInstance& inst) {
    const auto& g = inst.g;
    if (!g.connected()) throw InstanceError("augmented_dual requires a connected graph");
    AugmentedDual ad;
    const int F = g.face_count();
    const int k = inst.k();
    ad.aug_terminals.resize(k);
    ad.aug_edges.resize(k);
    if (g.edge_count() == 0) {
        ad.graph = build_plane_graph(1, {}, {{}}, -1, true);
        ad.face_vertex = {0};
        ad.leaf_face = {k > 0 ? 0 : -1};
        ad.leaf_index = {k > 0 ? 0 : -1};
        for (int a = 0; a < k; ++a) ad.aug_terminals[a] = {0}, ad.aug_edges[a] = {-1};
        return ad;
    }

    // per split face: the dart of a_j, indexed by j
    std::vector<std::vector<int>> split_darts(F);
    std::vector<int> split_alpha(F, -1);
    for (int a = 0; a < k; ++a) {
        const auto& tf = inst.faces[a];
        const int p = tf.p();
        if (p < 2) continue;
        const auto& walk = g.face(tf.face).darts;
        if (static_cast<int>(walk.size()) != p)
            throw InstanceError("terminal face " + std::to_string(a) + " is not bounded by its terminal cycle");
        std::vector<int> darts(p, -1);
        for (int d : walk) {
            for (int j = 0; j < p; ++j) {
                if (g.origin(d) == tf.terminals[(j + p - 1) % p] && g.head(d) == tf.terminals[j] && darts[j] < 0) {
                    darts[j] = d;
                    break;
                }
            }
        }
        for (int j = 0; j < p; ++j)
            if (darts[j] < 0)
                throw InstanceError("terminal face " + std::to_string(a) + " misses the edge before terminal " +
                                    std::to_string(tf.terminals[j]));
        split_darts[tf.face] = darts;
        split_alpha[tf.face] = a;
    }

    std::vector<int> dart_vertex(g.dart_count(), -1);
    std::vector<std::vector<int>> rot;
    ad.face_vertex.assign(F, -1);
    for (int f = 0; f < F; ++f) {
        if (split_alpha[f] >= 0) {
            const int a = split_alpha[f];
            for (int j = 0; j < static_cast<int>(split_darts[f].size()); ++j) {
                int d = split_darts[f][j];
                int v = static_cast<int>(rot.size());
                rot.push_back({d});
                dart_vertex[d] = v;
                ad.leaf_face.push_back(a);
                ad.leaf_index.push_back(j);
                ad.aug_terminals[a].push_back(v);
                ad.aug_edges[a].push_back(edge_of(d));
            }
        } else {
            int v = static_cast<int>(rot.size());
            ad.face_vertex[f] = v;
            rot.push_back(g.face(f).darts);
            for (int d : g.face(f).darts) dart_vertex[d] = v;
            ad.leaf_face.push_back(-1);
            ad.leaf_index.push_back(-1);
        }
    }
    for (int a = 0; a < k; ++a) {
        const auto& tf = inst.faces[a];
        if (tf.p() >= 2) continue;
        int v = ad.face_vertex[tf.face];
        ad.aug_terminals[a] = {v};
        const auto& walk = g.face(tf.face).darts;
        ad.aug_edges[a] = {walk.size() == 1 ? edge_of(walk[0]) : -1};
        ad.leaf_face[v] = a;
        ad.leaf_index[v] = 0;
    }
    std::vector<EdgeSpec> es(g.edge_count());
    for (int e = 0; e < g.edge_count(); ++e) es[e] = {dart_vertex[2 * e], dart_vertex[2 * e + 1], g.weight(e)};
    ad.graph = build_plane_graph(static_cast<int>(rot.size()), es, rot, g.outer_dart(), true);
    return ad;
}

bool enclosure_test(const MwcInstance& inst, const std::vector<int>& D, int t) {
    const auto& g = inst.g;
    if (g.edge_count() == 0 || g.outer_face() < 0) return false;
    const int ref = g.origin(canonical_start(g, g.outer_face()));
    auto comp = components_without(g, edge_mask(g.edge_count(), D));
    return comp[t] != comp[ref];
}

std::vector<char> articulation_points(int n, const std::vector<std::array<int, 2>>& edges) {
    std::vector<std::vector<std::pair<int, int>>> adj(n);
    for (int i = 0; i < static_cast<int>(edges.size()); ++i) {
        auto [u, v] = edges[i];
        if (u == v) continue;
        adj[u].push_back({v, i});
        adj[v].push_back({u, i});
    }
    std::vector<int> disc(n, -1), low(n, 0), it(n, 0), parent_edge(n, -1);
    std::vector<char> cut(n, 0);
    int timer = 0;
    for (int r = 0; r < n; ++r) {
        if (disc[r] >= 0 || adj[r].empty()) continue;
        int root_children = 0;
        std::vector<int> st{r};
        disc[r] = low[r] = timer++;
        while (!st.empty()) {
            int u = st.back();
            if (it[u] < static_cast<int>(adj[u].size())) {
                auto [w, id] = adj[u][it[u]++];
                if (id == parent_edge[u]) continue;
                if (disc[w] < 0) {
                    disc[w] = low[w] = timer++;
                    parent_edge[w] = id;
                    if (u == r) ++root_children;
                    st.push_back(w);
                } else {
                    low[u] = std::min(low[u], disc[w]);
                }
            } else {
                st.pop_back();
                if (!st.empty()) {
                    int par = st.back();
                    low[par] = std::min(low[par], low[u]);
                    if (par != r && low[u] >= disc[par]) cut[par] = 1;
                }
            }
        }
        if (root_children >= 2) cut[r] = 1;
    }
    return cut;
}

Skeleton skeleton(const MwcInstance& inst, const AugmentedDual& ad, const std::vector<int>& C) {
    const auto& G = ad.graph;
    const int n = G.vertex_count(), m = G.edge_count();
    auto in_c = edge_mask(m, C);
    std::vector<std::array<int, 2>> cedges;
    for (int e = 0; e < m; ++e)
        if (in_c[e]) cedges.push_back(G.ends(e));
    if (touched_components(n, cedges) > 1) throw SkeletonError("C+ is disconnected");

    std::vector<std::vector<int>> inc(n);  // incident edges of C, a loop listed twice
    std::vector<int> deg(n, 0);
    for (int e = 0; e < m; ++e) {
        if (!in_c[e]) continue;
        auto [u, v] = G.ends(e);
        inc[u].push_back(e);
        inc[v].push_back(e);
        ++deg[u];
        ++deg[v];
    }
    std::vector<char> alive = in_c;
    std::vector<int> queue;
    for (int v = 0; v < n; ++v)
        if (deg[v] == 1) queue.push_back(v);
    while (!queue.empty()) {
        int v = queue.back();
        queue.pop_back();
        if (deg[v] != 1) continue;
        for (int e : inc[v]) {
            if (!alive[e]) continue;
            alive[e] = 0;
            auto [a, b] = G.ends(e);
            int w = a == v ? b : a;
            --deg[v];
            --deg[w];
            if (deg[w] == 1) queue.push_back(w);
            break;
        }
    }

    Skeleton sk;
    for (int e = 0; e < m; ++e)
        if (alive[e]) {
            sk.edges.push_back(e);
            if (G.ends(e)[0] == G.ends(e)[1]) sk.has_self_loop = true;
        }
    sk.min_degree = sk.edges.empty() ? 0 : 1 << 30;
    for (int v = 0; v < n; ++v) {
        if (deg[v] <= 0) continue;
        sk.vertices.push_back(v);
        if (deg[v] >= 3) sk.branching.push_back(v);
        sk.max_degree = std::max(sk.max_degree, deg[v]);
        sk.min_degree = std::min(sk.min_degree, deg[v]);
    }
    const int E = static_cast<int>(sk.edges.size()), V = static_cast<int>(sk.vertices.size());
    sk.face_count = E == 0 ? 1 : E - V + 2;

    // Dissolve degree-2 vertices in increasing order unless a self-loop would result.
    std::vector<std::vector<int>> chains;
    std::vector<std::vector<int>> cinc(n);
    for (int e : sk.edges) {
        int c = static_cast<int>(chains.size());
        chains.push_back({2 * e});
        cinc[G.ends(e)[0]].push_back(c);
        cinc[G.ends(e)[1]].push_back(c);
    }
    std::vector<char> dead(chains.size(), 0);
    auto cstart = [&](int c) { return G.origin(chains[c].front()); };
    auto cend = [&](int c) { return G.head(chains[c].back()); };
    auto reverse_chain = [&](int c) {
        auto& ch = chains[c];
        std::reverse(ch.begin(), ch.end());
        for (int& d : ch) d = twin(d);
    };
    for (int v : sk.vertices) {
        if (cinc[v].size() != 2) continue;
        int c1 = cinc[v][0], c2 = cinc[v][1];
        if (c1 == c2) continue;
        if (cend(c1) != v) reverse_chain(c1);
        if (cstart(c2) != v) reverse_chain(c2);
        int a = cstart(c1), b = cend(c2);
        if (a == b) continue;
        chains[c1].insert(chains[c1].end(), chains[c2].begin(), chains[c2].end());
        dead[c2] = 1;
        std::replace(cinc[b].begin(), cinc[b].end(), c2, c1);
        cinc[v].clear();
    }
    for (int v : sk.vertices)
        if (!cinc[v].empty()) sk.shrunken.push_back(v);
    for (int c = 0; c < static_cast<int>(chains.size()); ++c) {
        if (dead[c]) continue;
        Bone b;
        b.darts = chains[c];
        b.from = cstart(c);
        b.to = cend(c);
        if (b.from == b.to) sk.has_self_loop = true;
        sk.bones.push_back(std::move(b));
    }

    // Spines via the faces of the skeleton, i.e. components of G - S.
    const auto& g = inst.g;
    auto comp = components_without(g, edge_mask(g.edge_count(), sk.edges));
    sk.spines.resize(inst.k());
    if (!sk.edges.empty()) {
        for (int a = 0; a < inst.k(); ++a) {
            int c = comp[inst.faces[a].terminals.front()];
            for (int e : sk.edges)
                for (int x : g.ends(e))
                    if (comp[x] == c) sk.spines[a].push_back(e);
        }
    }
    return sk;
}

Skeleton skeleton(const MwcInstance& inst, const std::vector<int>& C) {
    return skeleton(inst, augmented_dual(inst), C);
}

bool spine_is_island_cut(const MwcInstance& inst, const std::vector<int>& spine, int alpha) {
    const auto& g = inst.g;
    auto comp = components_without(g, edge_mask(g.edge_count(), spine));
    const auto& own = inst.faces[alpha].terminals;
    std::vector<char> mine(g.vertex_count(), 0);
    for (int t : own) mine[t] = 1;
    for (int t : own)
        for (int s : inst.terminals)
            if (!mine[s] && comp[s] == comp[t]) return false;
    return true;
}

bool spine_is_island_cut(const MwcInstance& inst, const Skeleton& sk, int alpha) {
    return spine_is_island_cut(inst, sk.spines[alpha], alpha);
}

StructuralReport structural_audit(const MwcInstance& inst, const std::vector<int>& Cin) {
    StructuralReport r;
    const auto& g = inst.g;
    std::vector<int> C = Cin;
    std::sort(C.begin(), C.end());
    C.erase(std::unique(C.begin(), C.end()), C.end());
    auto fail = [&](const char* what) { r.violations.push_back(what); };

    r.feasible = verify_multiway_cut(inst, C);
    if (!r.feasible) fail("feasible");
    r.minimal = r.feasible && check_minimal(inst, C);
    if (!r.minimal) fail("minimal");

    auto in_c = edge_mask(g.edge_count(), C);
    auto comp = components_without(g, in_c);
    std::vector<int> per(g.vertex_count(), 0);
    for (int t : inst.terminals) ++per[comp[t]];
    r.faces_at_most_one = true;
    r.faces_exactly_one = true;
    for (int v = 0; v < g.vertex_count(); ++v) {
        if (comp[v] != v) continue;
        if (per[v] > 1) r.faces_at_most_one = false;
        if (per[v] != 1) r.faces_exactly_one = false;
    }
    if (!r.faces_at_most_one) fail("faces_at_most_one");
    if (!r.faces_exactly_one) fail("faces_exactly_one");

    r.bridgeless = true;
    for (int e : C)
        if (comp[g.ends(e)[0]] == comp[g.ends(e)[1]]) r.bridgeless = false;
    if (!r.bridgeless) fail("bridgeless");

    r.plural_incident = true;
    for (const auto& tf : inst.faces) {
        if (tf.p() < 2) continue;
        for (int d : g.face(tf.face).darts)
            if (!in_c[edge_of(d)]) r.plural_incident = false;
    }
    if (!r.plural_incident) fail("plural_incident");

    std::vector<std::array<int, 2>> star;
    for (int e : C) star.push_back({g.face_of(2 * e), g.face_of(2 * e + 1)});
    r.dual_connected = touched_components(g.face_count(), star) <= 1;
    auto cutv = articulation_points(g.face_count(), star);
    r.no_cut_vertices = std::none_of(cutv.begin(), cutv.end(), [](char c) { return c != 0; });
    r.terminal_vertices_not_cut = true;
    for (const auto& tf : inst.faces)
        if (cutv[tf.face]) r.terminal_vertices_not_cut = false;
    if (!r.terminal_vertices_not_cut) fail("terminal_vertices_not_cut");
    if (!r.no_cut_vertices) fail("no_cut_vertices");
    if (!r.dual_connected) fail("dual_connected");

    AugmentedDual ad;
    try {
        ad = augmented_dual(inst);
        r.augmented_available = true;
    } catch (const InstanceError&) {
        fail("augmented_available");
        return r;
    }
    std::vector<std::array<int, 2>> plus;
    for (int e : C) plus.push_back(ad.graph.ends(e));
    int touched = 0;
    int comps = touched_components(ad.graph.vertex_count(), plus, &touched);
    r.plus_connected = comps <= 1;
    r.plus_faces = plus.empty() ? 1 : static_cast<int>(plus.size()) - touched + 1 + comps;
    if (!r.plus_connected) fail("plus_connected");
    if (r.plus_faces != inst.k()) fail("plus_k_faces");
    if (!r.plus_connected) return r;

    Skeleton sk = skeleton(inst, ad, C);
    r.skeleton_degrees = !sk.has_self_loop && (sk.empty() || (sk.min_degree >= 2 && sk.max_degree <= 3));
    if (!r.skeleton_degrees) fail("skeleton_degrees");
    r.shrunken_vertices = static_cast<int>(sk.shrunken.size());
    r.shrunken_edges = static_cast<int>(sk.bones.size());
    r.shrunken_bounds = r.shrunken_vertices <= 4 * inst.k() && r.shrunken_edges <= 12 * inst.k();
    if (!r.shrunken_bounds) fail("shrunken_bounds");
    r.spines_island = true;
    if (inst.k() >= 2)
        for (int a = 0; a < inst.k(); ++a)
            if (!spine_is_island_cut(inst, sk, a)) r.spines_island = false;
    if (!r.spines_island) fail("spines_island");
    return r;
}

std::string dot_subgraph(const PlaneGraph& g, const std::vector<int>& edges, const std::string& name) {
    std::ostringstream os;
    os << "graph " << name << " {\n";
    std::vector<int> es = edges;
    std::sort(es.begin(), es.end());
    for (int e : es)
        os << "  " << g.ends(e)[0] << " -- " << g.ends(e)[1] << " [label=\"" << e << ":" << weight_str(g.weight(e))
           << "\"];\n";
    os << "}\n";
    return os.str();
}

}  // namespace pmc
