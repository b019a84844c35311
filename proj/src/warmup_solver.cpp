#include "pmc/warmup_solver.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>

#include "pmc/instance.hpp"

namespace pmc {

namespace {

// Rank over Z2 of the given bit vectors.
int z2_rank(std::vector<unsigned> rows) {
    int r = 0;
    for (int bit = 0; bit < 32 && r < static_cast<int>(rows.size()); ++bit) {
        int piv = -1;
        for (int i = r; i < static_cast<int>(rows.size()); ++i)
            if (rows[i] >> bit & 1u) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        std::swap(rows[r], rows[piv]);
        for (int i = 0; i < static_cast<int>(rows.size()); ++i)
            if (i != r && (rows[i] >> bit & 1u)) rows[i] ^= rows[r];
        ++r;
    }
    return r;
}

// Per step-1 edge: bit b-1 set iff the edge lies on the primal BFS-tree path from the first terminal of face 0
// to the first terminal of face b.
std::vector<unsigned> hole_signatures(const MwcInstance& s1) {
    const PlaneGraph& g = s1.g;
    std::vector<unsigned> sig(g.edge_count(), 0);
    if (s1.k() < 2) return sig;
    int root = s1.faces[0].terminals[0];
    std::vector<int> up(g.vertex_count(), -2);  // dart towards the root
    up[root] = -1;
    std::queue<int> q;
    q.push(root);
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (int d : g.rotation(v)) {
            int w = g.head(d);
            if (up[w] != -2) continue;
            up[w] = d ^ 1;
            q.push(w);
        }
    }
    for (int b = 1; b < s1.k(); ++b) {
        int v = s1.faces[b].terminals[0];
        if (up[v] == -2) throw InstanceError("terminal faces in different components");
        while (up[v] >= 0) {
            sig[up[v] >> 1] ^= 1u << (b - 1);
            v = g.head(up[v]);
        }
    }
    return sig;
}

constexpr int kTagBase = 0, kTagMerge = 1, kTagEdge = 2;

std::int64_t pack(int tag, int a, int b) {
    return (static_cast<std::int64_t>(tag) << 56) | (static_cast<std::int64_t>(a) << 24) | b;
}

// Dreyfus-Wagner over the leaves plus the chord endpoints, each state carrying per chord the XOR of the hole
// signatures along the tree paths from the root to the chord's endpoints present so far.
class ChordSearch {
public:
    ChordSearch(const PlaneGraph& H, std::vector<int> leaves, std::vector<unsigned> sig, int nb)
        : H_(H), leaves_(std::move(leaves)), sig_(std::move(sig)), nb_(nb), L_(static_cast<int>(leaves_.size())),
          base_(H, leaves_) {}

    Weight leaf_weight(int v) const { return base_.weight((1u << L_) - 1, v); }
    const SubsetSteiner& base() const { return base_; }

    // Best structure for the chord list; edges exclude the chords.
    Weight run(const std::vector<int>& chords, Weight bound, std::vector<int>* edges) {
        c_ = static_cast<int>(chords.size());
        S_ = 1 << (c_ * nb_);
        terms_ = leaves_;
        for (int e : chords) {
            terms_.push_back(H_.ends(e)[0]);
            terms_.push_back(H_.ends(e)[1]);
        }
        int Tn = static_cast<int>(terms_.size());
        int n = H_.vertex_count();
        unsigned full = (1u << Tn) - 1;
        dp_.assign(std::size_t(1) << Tn, {});
        how_.assign(std::size_t(1) << Tn, {});
        // flips per parity pattern of chords and per edge
        std::vector<std::vector<unsigned>> flip(std::size_t(1) << c_, std::vector<unsigned>(H_.edge_count(), 0));
        for (unsigned odd = 0; odd < (1u << c_); ++odd)
            for (int e = 0; e < H_.edge_count(); ++e)
                for (int i = 0; i < c_; ++i)
                    if (odd >> i & 1u) flip[odd][e] |= sig_[e] << (i * nb_);

        for (unsigned mask = 1u << L_; mask <= full; ++mask) {
            auto& D = dp_[mask];
            auto& W = how_[mask];
            D.assign(std::size_t(n) * S_, kInf);
            W.assign(std::size_t(n) * S_, -1);
            if (std::popcount(mask) == 1) {
                int j = std::countr_zero(mask);
                D[std::size_t(terms_[j]) * S_] = 0;
                W[std::size_t(terms_[j]) * S_] = pack(kTagBase, 0, 0);
            } else {
                unsigned low = mask & (~mask + 1);
                for (unsigned sub = (mask - 1) & mask; sub; sub = (sub - 1) & mask) {
                    if (!(sub & low)) continue;
                    unsigned other = mask ^ sub;
                    for (int v = 0; v < n; ++v) {
                        for (int s1 = 0; s1 < S_; ++s1) {
                            Weight a = get(sub, v, s1);
                            if (a >= kInf) continue;
                            for (int s2 = 0; s2 < S_; ++s2) {
                                Weight b = get(other, v, s2);
                                if (b >= kInf) continue;
                                Weight t = a + b;
                                std::size_t at = std::size_t(v) * S_ + (s1 ^ s2);
                                if (t < D[at]) {
                                    D[at] = t;
                                    W[at] = pack(kTagMerge, static_cast<int>(sub), s1);
                                }
                            }
                        }
                    }
                }
            }
            unsigned odd = 0;
            for (int i = 0; i < c_; ++i) {
                int a = L_ + 2 * i;
                if (((mask >> a) ^ (mask >> (a + 1))) & 1u) odd |= 1u << i;
            }
            extend(D, W, flip[odd]);
        }
        int root = terms_[0];
        Weight best = kInf;
        int best_s = -1;
        for (int s = 0; s < S_; ++s) {
            Weight w = dp_[full][std::size_t(root) * S_ + s];
            if (w >= kInf || w >= best || w >= bound) continue;
            std::vector<unsigned> f(c_);
            for (int i = 0; i < c_; ++i) f[i] = ((s >> (i * nb_)) & ((1u << nb_) - 1)) ^ sig_[chords[i]];
            if (z2_rank(f) < nb_) continue;
            best = w;
            best_s = s;
        }
        if (best_s >= 0 && edges) {
            edges->clear();
            collect(full, root, best_s, *edges);
            std::sort(edges->begin(), edges->end());
            edges->erase(std::unique(edges->begin(), edges->end()), edges->end());
        }
        return best;
    }

private:
    const PlaneGraph& H_;
    std::vector<int> leaves_;
    std::vector<unsigned> sig_;
    int nb_, L_;
    SubsetSteiner base_;
    int c_ = 0, S_ = 1;
    std::vector<int> terms_;
    std::vector<std::vector<Weight>> dp_;
    std::vector<std::vector<std::int64_t>> how_;

    Weight get(unsigned mask, int v, int s) const {
        if (mask < (1u << L_)) return s == 0 ? base_.weight(mask, v) : kInf;
        return dp_[mask][std::size_t(v) * S_ + s];
    }

    void extend(std::vector<Weight>& D, std::vector<std::int64_t>& W, const std::vector<unsigned>& flip) {
        using Item = std::pair<Weight, std::size_t>;
        std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
        for (std::size_t i = 0; i < D.size(); ++i)
            if (D[i] < kInf) pq.push({D[i], i});
        while (!pq.empty()) {
            auto [w, at] = pq.top();
            pq.pop();
            if (w > D[at]) continue;
            int v = static_cast<int>(at / S_), s = static_cast<int>(at % S_);
            for (int d : H_.rotation(v)) {
                Weight we = H_.weight(d >> 1);
                if (we >= kInf) continue;
                int u = H_.head(d);
                int s2 = s ^ static_cast<int>(flip[d >> 1]);
                std::size_t to = std::size_t(u) * S_ + s2;
                if (w + we < D[to]) {
                    D[to] = w + we;
                    W[to] = pack(kTagEdge, d, s);
                    pq.push({D[to], to});
                }
            }
        }
    }

    void collect(unsigned mask, int v, int s, std::vector<int>& out) const {
        while (true) {
            if (mask < (1u << L_)) {
                auto t = base_.tree(mask, v);
                out.insert(out.end(), t.edges.begin(), t.edges.end());
                return;
            }
            std::int64_t code = how_[mask][std::size_t(v) * S_ + s];
            int tag = static_cast<int>(code >> 56);
            int a = static_cast<int>((code >> 24) & 0xffffffff);
            int b = static_cast<int>(code & 0xffffff);
            if (tag == kTagBase) return;
            if (tag == kTagEdge) {
                out.push_back(a >> 1);
                v = H_.origin(a);
                s = b;
                continue;
            }
            unsigned sub = static_cast<unsigned>(a);
            collect(sub, v, b, out);
            int s2 = s ^ b;
            mask ^= sub;
            s = s2;
        }
    }
};

CutSolution fallback(const MwcInstance& inst, SolveStats* stats) {
    if (stats) stats->certified = false;
    std::vector<int> all(inst.g.edge_count());
    std::iota(all.begin(), all.end(), 0);
    return make_solution(inst, all, "warmup-fallback");
}

bool better(const CutSolution& a, const CutSolution& b) {
    if (a.feasible != b.feasible) return a.feasible;
    if (a.weight != b.weight) return a.weight < b.weight;
    return a.edges < b.edges;
}

}  // namespace

SeparatingSubgraph min_separating_subgraph(const MwcInstance& s1, const AugmentedDual& ad, long chord_budget,
                                           SolveStats* stats) {
    const PlaneGraph& H = ad.graph;
    int k = s1.k();
    SeparatingSubgraph out;
    std::vector<int> leaves;
    std::vector<char> is_leaf(H.vertex_count(), 0);
    for (int a = 0; a < k; ++a)
        if (s1.faces[a].p() >= 2)
            for (int v : ad.aug_terminals[a]) {
                leaves.push_back(v);
                is_leaf[v] = 1;
            }
    int nb = std::max(0, k - 1);
    ChordSearch cs(H, leaves, hole_signatures(s1), nb);
    if (k <= 1) {
        if (leaves.empty()) {
            out.weight = 0;
            return out;
        }
        auto t = cs.base().tree((1u << leaves.size()) - 1, leaves[0]);
        out.edges = t.edges;
        out.weight = t.weight;
        return out;
    }
    std::vector<int> cand;
    for (int e = 0; e < H.edge_count(); ++e)
        if (H.weight(e) < kInf && !is_leaf[H.ends(e)[0]] && !is_leaf[H.ends(e)[1]]) cand.push_back(e);
    int c = k - 1;
    if (static_cast<int>(cand.size()) < c) return out;
    // chord sets with their lower bounds
    struct Item {
        Weight lb;
        std::vector<int> chords;
    };
    std::vector<Item> items;
    std::vector<int> idx(c);
    std::iota(idx.begin(), idx.end(), 0);
    int m = static_cast<int>(cand.size());
    while (true) {
        Item it;
        Weight lb = 0, sw = 0;
        for (int i : idx) {
            int e = cand[i];
            it.chords.push_back(e);
            sw = wadd(sw, H.weight(e));
            for (int x : H.ends(e)) lb = std::max(lb, leaves.empty() ? Weight(0) : cs.leaf_weight(x));
        }
        it.lb = wadd(lb, sw);
        if (it.lb < kInf) items.push_back(std::move(it));
        int i = c - 1;
        while (i >= 0 && idx[i] == m - c + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < c; ++j) idx[j] = idx[j - 1] + 1;
    }
    std::stable_sort(items.begin(), items.end(), [](const Item& a, const Item& b) { return a.lb < b.lb; });
    long examined = 0;
    for (const Item& it : items) {
        if (it.lb >= out.weight) {
            if (stats) stats->chord_sets_pruned += 1;
            continue;
        }
        if (chord_budget > 0 && examined >= chord_budget) {
            if (stats) stats->certified = false;
            break;
        }
        ++examined;
        Weight sw = 0;
        for (int e : it.chords) sw += H.weight(e);
        std::vector<int> edges;
        Weight w = cs.run(it.chords, out.weight - sw, &edges);
        if (w >= kInf || wadd(w, sw) >= out.weight) continue;
        for (int e : it.chords) edges.push_back(e);
        std::sort(edges.begin(), edges.end());
        edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
        out.edges = std::move(edges);
        out.chords = it.chords;
        out.weight = wadd(w, sw);
    }
    if (stats) stats->chord_sets += examined;
    if (out.found()) out.weight = cut_weight(H, out.edges);
    return out;
}

CutSolution solve_connected(const MwcInstance& inst, const SolveOptions& opt, SolveStats* stats) {
    if (inst.terminals.size() <= 1) return make_solution(inst, {}, "warmup");
    if (inst.k() == 1) {
        try {
            auto sol = chen_wu_single_face_solve(inst);
            if (sol.feasible && sol.weight < kInf) return sol;
        } catch (const InstanceError&) {
        }
        return fallback(inst, stats);
    }
    auto [s1, rec] = transform_instance(inst, TransformOptions{true, false});
    auto ad = augmented_dual(s1);
    auto D = min_separating_subgraph(s1, ad, opt.chord_budget, stats);
    if (!D.found()) return fallback(inst, stats);
    auto C = step1_to_original(D.edges, rec);
    if (!verify_multiway_cut(inst, C)) return fallback(inst, stats);
    C = prune_to_minimal(inst, C);
    return make_solution(inst, C, "warmup");
}

namespace {

class Driver {
public:
    Driver(const MwcInstance& P, const SolveOptions& opt, SolveStats* st) : P_(P), opt_(opt), st_(st) {
        k_ = P.k();
        for (int a = 0; a < k_; ++a)
            if (P.faces[a].p() >= 2) plural_ |= 1u << a;
    }

    const CutSolution& result(unsigned full, unsigned rep) {
        auto key = std::make_pair(full, rep);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        CutSolution best = compute(full, rep);
        return memo_.emplace(key, std::move(best)).first->second;
    }

private:
    const MwcInstance& P_;
    SolveOptions opt_;
    SolveStats* st_;
    int k_ = 0;
    unsigned plural_ = 0;
    std::map<std::pair<unsigned, unsigned>, CutSolution> memo_;

    int measure(unsigned full, unsigned rep) const {
        return std::popcount(full | rep) + std::popcount(full & plural_);
    }

    MwcInstance sub(unsigned full, unsigned rep) const {
        std::vector<Weight> w = P_.g.weights();
        MwcInstance I;
        for (int a = 0; a < k_; ++a) {
            const TerminalFace& F = P_.faces[a];
            if (full >> a & 1u) {
                I.faces.push_back(F);
            } else if (rep >> a & 1u) {
                TerminalFace R = F;
                R.terminals = {F.terminals[0]};
                I.faces.push_back(R);
                for (int d : P_.g.face(F.face).darts) w[d >> 1] = kInf;
            }
        }
        I.g = with_weights(P_.g, w);
        for (const auto& F : I.faces) I.terminals.insert(I.terminals.end(), F.terminals.begin(), F.terminals.end());
        std::sort(I.terminals.begin(), I.terminals.end());
        return I;
    }

    std::vector<int> components_without(const std::vector<int>& B) const {
        const PlaneGraph& g = P_.g;
        std::vector<char> cut(g.edge_count(), 0);
        for (int e : B) cut[e] = 1;
        std::vector<int> comp(g.vertex_count(), -1);
        int c = 0;
        for (int s = 0; s < g.vertex_count(); ++s) {
            if (comp[s] >= 0) continue;
            comp[s] = c;
            std::vector<int> st{s};
            while (!st.empty()) {
                int v = st.back();
                st.pop_back();
                for (int d : g.rotation(v)) {
                    if (cut[d >> 1]) continue;
                    int u = g.head(d);
                    if (comp[u] < 0) {
                        comp[u] = c;
                        st.push_back(u);
                    }
                }
            }
            ++c;
        }
        return comp;
    }

    CutSolution compute(unsigned full, unsigned rep) {
        MwcInstance I = sub(full, rep);
        if (I.terminals.size() <= 1) return make_solution(I, {}, "warmup");
        if (st_) st_->subinstances += 1;
        CutSolution best = solve_connected(I, opt_, st_);
        if (!opt_.driver) return best;
        unsigned cur = full | rep;
        int here = measure(full, rep);
        std::vector<std::pair<unsigned, unsigned>> firsts;
        for (int b = 0; b < k_; ++b) {
            if (!(full >> b & 1u) || !(plural_ >> b & 1u)) continue;
            unsigned rest = cur & ~(1u << b);
            for (unsigned f = rest;; f = (f - 1) & rest) {
                firsts.push_back({f & full, (f & rep) | (1u << b)});
                if (f == 0) break;
            }
        }
        for (unsigned f = (cur - 1) & cur; f; f = (f - 1) & cur) firsts.push_back({f & full, f & rep});

        for (auto [f1, r1] : firsts) {
            const CutSolution B = result(f1, r1);
            if (!B.feasible || B.weight >= kInf) continue;
            auto comp = components_without(B.edges);
            std::vector<std::pair<unsigned, unsigned>> seconds;
            std::vector<int> comps;
            for (int t : I.terminals) comps.push_back(comp[t]);
            std::sort(comps.begin(), comps.end());
            comps.erase(std::unique(comps.begin(), comps.end()), comps.end());
            for (int cc : comps) {
                unsigned f2 = 0, r2 = 0;
                int partial = 0;
                for (int a = 0; a < k_; ++a) {
                    if (!(cur >> a & 1u)) continue;
                    const auto& Ts = P_.faces[a].terminals;
                    int total = (full >> a & 1u) ? static_cast<int>(Ts.size()) : 1;
                    int in = 0;
                    for (int j = 0; j < total; ++j) in += comp[Ts[j]] == cc;
                    if (in == total) {
                        if (full >> a & 1u) f2 |= 1u << a;
                        else r2 |= 1u << a;
                    } else if (in > 0) {
                        ++partial;
                        r2 |= 1u << a;
                    }
                }
                if (partial > 1) continue;
                if (measure(f2, r2) >= here) continue;
                seconds.push_back({f2, r2});
            }
            std::sort(seconds.begin(), seconds.end());
            seconds.erase(std::unique(seconds.begin(), seconds.end()), seconds.end());
            for (auto [f2, r2] : seconds) {
                const CutSolution Z = result(f2, r2);
                if (!Z.feasible || Z.weight >= kInf) continue;
                if (st_) st_->combinations += 1;
                std::vector<int> C = B.edges;
                C.insert(C.end(), Z.edges.begin(), Z.edges.end());
                std::sort(C.begin(), C.end());
                C.erase(std::unique(C.begin(), C.end()), C.end());
                Weight w = cut_weight(I.g, C);
                if (w > best.weight) continue;
                if (!verify_multiway_cut(I, C)) continue;
                CutSolution cand = make_solution(I, prune_to_minimal(I, C), "warmup");
                if (better(cand, best)) best = std::move(cand);
            }
        }
        return best;
    }
};

}  // namespace

CutSolution solve(const MwcInstance& inst, const SolveOptions& opt, SolveStats* stats) {
    if (inst.terminals.size() <= 1) return make_solution(inst, {}, "warmup");
    auto parts = normalize_weights(inst);
    std::vector<int> C;
    for (int e = 0; e < inst.g.edge_count(); ++e)
        if (inst.g.weight(e) <= 0) C.push_back(e);
    for (std::size_t i = 0; i < parts.parts.size(); ++i) {
        const MwcInstance& P = parts.parts[i];
        CutSolution s;
        if (P.k() <= 1) {
            s = solve_connected(P, opt, stats);
        } else {
            Driver drv(P, opt, stats);
            s = drv.result((1u << P.k()) - 1, 0);
        }
        for (int e : s.edges) C.push_back(parts.edge_from[i][e]);
    }
    std::sort(C.begin(), C.end());
    C.erase(std::unique(C.begin(), C.end()), C.end());
    if (!verify_multiway_cut(inst, C)) return fallback(inst, stats);
    return make_solution(inst, prune_to_minimal(inst, C), "warmup");
}

}  // namespace pmc
