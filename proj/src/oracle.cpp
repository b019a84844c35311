#include "pmc/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <queue>

namespace pmc {

CutSolution brute_force_mwc(const MwcInstance& inst, double budget) {
    const PlaneGraph& g = inst.g;
    const int n = g.vertex_count();
    const int t = static_cast<int>(inst.terminals.size());
    if (t <= 1) return make_solution(inst, {}, "bruteforce");
    std::vector<int> label(n, -1);
    for (int i = 0; i < t; ++i) label[inst.terminals[i]] = i;
    std::vector<int> free;
    for (int v = 0; v < n; ++v)
        if (label[v] < 0) free.push_back(v);
    double space = std::pow(static_cast<double>(t), static_cast<double>(free.size()));
    if (space > budget) throw OracleError("labeling space exceeds budget");
    // adjacency by vertex: (neighbor, weight); self-loops never cut
    std::vector<std::vector<std::pair<int, Weight>>> adj(n);
    for (int e = 0; e < g.edge_count(); ++e) {
        auto [u, v] = g.ends(e);
        if (u == v) continue;
        adj[u].push_back({v, g.weight(e)});
        adj[v].push_back({u, g.weight(e)});
    }
    // terminal-terminal edges are fixed costs
    Weight base = 0;
    for (int e = 0; e < g.edge_count(); ++e) {
        auto [u, v] = g.ends(e);
        if (u != v && label[u] >= 0 && label[v] >= 0 && label[u] != label[v]) base = wadd(base, g.weight(e));
    }
    std::vector<int> best_label;
    Weight best = kInf;
    bool found = false;
    std::vector<int> pos(n, -1);
    for (size_t i = 0; i < free.size(); ++i) pos[free[i]] = static_cast<int>(i);
    // cost contributed by assigning free[i]: edges to terminals and to earlier free vertices
    auto rec = [&](auto&& self, size_t i, Weight acc) -> void {
        if (is_inf(acc) || (found && acc >= best)) return;
        if (i == free.size()) {
            best = acc;
            best_label = label;
            found = true;
            return;
        }
        int v = free[i];
        for (int l = 0; l < t; ++l) {
            Weight c = acc;
            for (auto [u, w] : adj[v]) {
                bool assigned = label[u] >= 0 && (pos[u] < 0 || pos[u] < static_cast<int>(i));
                if (assigned && label[u] != l) c = wadd(c, w);
            }
            label[v] = l;
            self(self, i + 1, c);
            label[v] = -1;
        }
    };
    rec(rec, 0, base);
    if (!found) {
        // every labeling cuts an infinite edge; E(G) is the only answer
        std::vector<int> all(g.edge_count());
        for (int e = 0; e < g.edge_count(); ++e) all[e] = e;
        return make_solution(inst, prune_to_minimal(inst, all), "bruteforce");
    }
    std::vector<int> C;
    for (int e = 0; e < g.edge_count(); ++e) {
        auto [u, v] = g.ends(e);
        if (u != v && best_label[u] != best_label[v]) C.push_back(e);
    }
    return make_solution(inst, prune_to_minimal(inst, C), "bruteforce");
}

CutSolution edge_subset_mwc(const MwcInstance& inst, int max_edges) {
    const int m = inst.g.edge_count();
    if (m > max_edges) throw OracleError("too many edges for subset enumeration");
    Weight best = kInf;
    std::vector<int> bestC;
    bool found = false;
    for (std::uint64_t mask = 0; mask < (1ULL << m); ++mask) {
        std::vector<int> C;
        Weight w = 0;
        for (int e = 0; e < m; ++e)
            if (mask >> e & 1) {
                C.push_back(e);
                w = wadd(w, inst.g.weight(e));
            }
        if (found && w >= best) continue;
        if (verify_multiway_cut(inst, C)) {
            best = w;
            bestC = C;
            found = true;
        }
    }
    return make_solution(inst, bestC, "subsets");
}

namespace {

struct Dinic {
    struct Arc {
        int to;
        Weight cap;
    };
    int n;
    std::vector<Arc> arcs;
    std::vector<std::vector<int>> out;
    std::vector<int> level, it;
    explicit Dinic(int n_) : n(n_), out(n_), level(n_), it(n_) {}
    int add(int u, int v, Weight c1, Weight c2) {
        arcs.push_back({v, c1});
        out[u].push_back(static_cast<int>(arcs.size()) - 1);
        arcs.push_back({u, c2});
        out[v].push_back(static_cast<int>(arcs.size()) - 1);
        return static_cast<int>(arcs.size()) - 2;
    }
    bool bfs(int s, int t) {
        std::fill(level.begin(), level.end(), -1);
        std::queue<int> q;
        level[s] = 0;
        q.push(s);
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (int a : out[v])
                if (arcs[a].cap > 0 && level[arcs[a].to] < 0) {
                    level[arcs[a].to] = level[v] + 1;
                    q.push(arcs[a].to);
                }
        }
        return level[t] >= 0;
    }
    Weight dfs(int v, int t, Weight f) {
        if (v == t) return f;
        for (int& i = it[v]; i < static_cast<int>(out[v].size()); ++i) {
            int a = out[v][i];
            int to = arcs[a].to;
            if (arcs[a].cap <= 0 || level[to] != level[v] + 1) continue;
            Weight got = dfs(to, t, std::min(f, arcs[a].cap));
            if (got > 0) {
                if (!is_inf(arcs[a].cap)) arcs[a].cap -= got;
                if (!is_inf(arcs[a ^ 1].cap)) arcs[a ^ 1].cap += got;
                return got;
            }
        }
        return 0;
    }
    Weight run(int s, int t) {
        Weight flow = 0;
        while (bfs(s, t)) {
            std::fill(it.begin(), it.end(), 0);
            while (Weight f = dfs(s, t, kInf)) {
                flow = wadd(flow, f);
                if (is_inf(flow)) return kInf;
            }
        }
        return flow;
    }
};

}  // namespace

std::vector<int> min_cut_between(const PlaneGraph& g, const std::vector<int>& S, const std::vector<int>& T,
                                 Weight* value) {
    const int n = g.vertex_count();
    Dinic d(n + 2);
    int src = n, snk = n + 1;
    std::vector<int> arc_of(g.edge_count(), -1);
    for (int e = 0; e < g.edge_count(); ++e) {
        auto [u, v] = g.ends(e);
        if (u == v) continue;
        arc_of[e] = d.add(u, v, g.weight(e), g.weight(e));
    }
    for (int s : S) d.add(src, s, kInf, 0);
    for (int t : T) d.add(t, snk, kInf, 0);
    Weight f = d.run(src, snk);
    if (value) *value = f;
    // source side of the minimum cut: residual reachability
    std::vector<char> reach(n + 2, 0);
    std::queue<int> q;
    q.push(src);
    reach[src] = 1;
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (int a : d.out[v])
            if (d.arcs[a].cap > 0 && !reach[d.arcs[a].to]) {
                reach[d.arcs[a].to] = 1;
                q.push(d.arcs[a].to);
            }
    }
    std::vector<int> C;
    for (int e = 0; e < g.edge_count(); ++e) {
        auto [u, v] = g.ends(e);
        if (u != v && reach[u] != reach[v]) C.push_back(e);
    }
    return C;
}

IsolationResult isolation_heuristic(const MwcInstance& inst) {
    IsolationResult r;
    const auto& T = inst.terminals;
    if (T.size() <= 1) {
        r.cut = make_solution(inst, {}, "isolation");
        return r;
    }
    std::vector<std::vector<int>> cuts;
    for (size_t i = 0; i < T.size(); ++i) {
        std::vector<int> rest;
        for (size_t j = 0; j < T.size(); ++j)
            if (j != i) rest.push_back(T[j]);
        Weight w = 0;
        cuts.push_back(min_cut_between(inst.g, {T[i]}, rest, &w));
        r.isolating_weights.push_back(cut_weight(inst.g, cuts.back()));
    }
    r.dropped = 0;
    for (size_t i = 1; i < cuts.size(); ++i)
        if (r.isolating_weights[i] >= r.isolating_weights[r.dropped]) r.dropped = static_cast<int>(i);
    std::vector<int> U;
    for (size_t i = 0; i < cuts.size(); ++i)
        if (static_cast<int>(i) != r.dropped) U.insert(U.end(), cuts[i].begin(), cuts[i].end());
    r.cut = make_solution(inst, U, "isolation");
    return r;
}

}  // namespace pmc

namespace pmc {

Weight steiner_subset_oracle(const PlaneGraph& H, const std::vector<int>& terminals, const std::vector<char>& removed) {
    const int n = H.vertex_count();
    std::vector<char> is_term(n, 0);
    for (int t : terminals) is_term[t] = 1;
    std::vector<int> free;
    for (int v = 0; v < n; ++v)
        if (!is_term[v] && (removed.empty() || !removed[v])) free.push_back(v);
    if (free.size() > 20) throw OracleError("steiner_subset_oracle: too many optional vertices");
    std::vector<int> order(H.edge_count());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return H.weight(a) < H.weight(b); });
    int nterm = 0;
    for (int v = 0; v < n; ++v) nterm += is_term[v];
    if (nterm <= 1) return 0;
    Weight best = kInf;
    std::vector<char> in(n);
    std::vector<int> parent(n);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::uint32_t mask = 0; mask < (1u << free.size()); ++mask) {
        for (int v = 0; v < n; ++v) in[v] = is_term[v];
        int size = nterm;
        for (size_t i = 0; i < free.size(); ++i)
            if (mask >> i & 1) in[free[i]] = 1, ++size;
        std::iota(parent.begin(), parent.end(), 0);
        Weight w = 0;
        int joined = 0;
        for (int e : order) {
            if (is_inf(H.weight(e))) break;
            auto [u, v] = H.ends(e);
            if (!in[u] || !in[v]) continue;
            int a = find(u), b = find(v);
            if (a == b) continue;
            parent[a] = b;
            w += H.weight(e);
            ++joined;
        }
        if (joined == size - 1) best = std::min(best, w);
    }
    return best;
}

}  // namespace pmc

namespace pmc {

std::optional<Weight> brute_force_homotopic(const CutGraph& K, int x, int y, const HomotopyString& h) {
    const PlaneGraph& G = *K.host;
    if (G.vertex_count() > 24) throw OracleError("brute_force_homotopic: host too large");
    std::optional<Weight> best;
    std::vector<char> on(G.vertex_count(), 0);
    std::vector<int> darts;
    auto blocked = [&](int v) { return !K.blocked.empty() && K.blocked[v] && v != x && v != y; };
    std::function<void(int, Weight)> dfs = [&](int v, Weight w) {
        if (v == y) {
            if (crossing_sequence(K, x, darts) == h && (!best || w < *best)) best = w;
            return;
        }
        for (int d : G.rotation(v)) {
            int u = G.head(d);
            Weight we = G.weight(edge_of(d));
            if (on[u] || blocked(u) || is_inf(we)) continue;
            on[u] = 1;
            darts.push_back(d);
            dfs(u, w + we);
            darts.pop_back();
            on[u] = 0;
        }
    };
    on[x] = 1;
    dfs(x, 0);
    return best;
}

}  // namespace pmc

namespace pmc {

std::optional<Weight> brute_force_homotopic_walk(const CutGraph& K, int x, int y, const HomotopyString& h,
                                                 Weight bound) {
    const PlaneGraph& G = *K.host;
    auto blocked = [&](int v) { return !K.blocked.empty() && K.blocked[v] && v != x && v != y; };
    // plain distances to y by Bellman-Ford over usable vertices
    std::vector<Weight> to_y(G.vertex_count(), kInf);
    to_y[y] = 0;
    for (int round = 0; round < G.vertex_count(); ++round)
        for (int d = 0; d < 2 * G.edge_count(); ++d) {
            int u = G.origin(d), v = G.head(d);
            if (blocked(u) || is_inf(to_y[v]) || is_inf(G.weight(edge_of(d)))) continue;
            to_y[u] = std::min(to_y[u], wadd(to_y[v], G.weight(edge_of(d))));
        }
    std::optional<Weight> best;
    long visited = 0;
    std::function<void(const CrossingTracker&, Weight)> dfs = [&](const CrossingTracker& tr, Weight w) {
        if (++visited > 50'000'000) throw OracleError("brute_force_homotopic_walk: search budget exceeded");
        const int v = tr.at;
        if (v == y && tr.finished() == h && (!best || w < *best)) best = w;
        for (int d : G.rotation(v)) {
            const int u = G.head(d);
            const Weight we = G.weight(edge_of(d));
            if (blocked(u) || is_inf(we) || is_inf(to_y[u])) continue;
            const Weight nw = w + we;
            if (nw + to_y[u] > (best ? std::min(bound, *best) : bound)) continue;
            CrossingTracker next = tr;
            next.advance(d);
            if (next.events.size() > h.size() || !std::equal(next.events.begin(), next.events.end(), h.begin()))
                continue;
            dfs(next, nw);
        }
    };
    dfs(CrossingTracker(K, x), 0);
    return best;
}

}  // namespace pmc
