#include "pmc/cut.hpp"

#include <algorithm>
#include <numeric>

namespace pmc {

Weight cut_weight(const PlaneGraph& g, const std::vector<int>& edges) {
    Weight s = 0;
    for (int e : edges) s = wadd(s, g.weight(e));
    return s;
}

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

Dsu components_without(const PlaneGraph& g, const std::vector<char>& removed) {
    Dsu d(g.vertex_count());
    for (int e = 0; e < g.edge_count(); ++e)
        if (!removed[e]) d.unite(g.ends(e)[0], g.ends(e)[1]);
    return d;
}

}  // namespace

std::pair<int, int> connected_pair(const MwcInstance& inst, const std::vector<int>& C) {
    std::vector<char> removed(inst.g.edge_count(), 0);
    for (int e : C) removed[e] = 1;
    Dsu d = components_without(inst.g, removed);
    std::vector<int> seen(inst.g.vertex_count(), -1);
    for (int t : inst.terminals) {
        int r = d.find(t);
        if (seen[r] >= 0) return {seen[r], t};
        seen[r] = t;
    }
    return {-1, -1};
}

bool verify_multiway_cut(const MwcInstance& inst, const std::vector<int>& C) {
    return connected_pair(inst, C).first < 0;
}

bool check_minimal(const MwcInstance& inst, const std::vector<int>& C) {
    if (!verify_multiway_cut(inst, C)) return false;
    std::vector<int> rest;
    for (size_t i = 0; i < C.size(); ++i) {
        rest.assign(C.begin(), C.end());
        rest.erase(rest.begin() + static_cast<long>(i));
        if (verify_multiway_cut(inst, rest)) return false;
    }
    return true;
}

std::vector<int> prune_to_minimal(const MwcInstance& inst, std::vector<int> C) {
    std::sort(C.begin(), C.end());
    C.erase(std::unique(C.begin(), C.end()), C.end());
    std::vector<int> order = C;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (inst.g.weight(a) != inst.g.weight(b)) return inst.g.weight(a) > inst.g.weight(b);
        return a > b;
    });
    for (int e : order) {
        std::vector<int> trial;
        for (int x : C)
            if (x != e) trial.push_back(x);
        if (verify_multiway_cut(inst, trial)) C = trial;
    }
    return C;
}

CutSolution make_solution(const MwcInstance& inst, std::vector<int> C, std::string method) {
    std::sort(C.begin(), C.end());
    C.erase(std::unique(C.begin(), C.end()), C.end());
    CutSolution s;
    s.weight = cut_weight(inst.g, C);
    s.feasible = verify_multiway_cut(inst, C);
    s.minimal = s.feasible && check_minimal(inst, C);
    s.edges = std::move(C);
    s.method = std::move(method);
    return s;
}

}  // namespace pmc
