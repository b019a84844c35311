#include "pmc/steiner.hpp"

#include <algorithm>
#include <numeric>
#include <queue>

#include "pmc/transform.hpp"

namespace pmc {

namespace {

bool usable(const PlaneGraph& H, const std::vector<char>& removed, int d) {
    if (is_inf(H.weight(edge_of(d)))) return false;
    int w = H.head(d);
    return removed.empty() || !removed[w];
}

// Multi-source Dijkstra over labels already present in dist; pred records the dart into each improved vertex.
void relax_all(const PlaneGraph& H, const std::vector<char>& removed, std::vector<Weight>& dist, std::vector<int>& pred,
               std::vector<int>* split) {
    using Item = std::pair<Weight, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
    for (int v = 0; v < H.vertex_count(); ++v)
        if (!is_inf(dist[v])) pq.push({dist[v], v});
    while (!pq.empty()) {
        auto [d, u] = pq.top();
        pq.pop();
        if (d != dist[u]) continue;
        for (int dart : H.rotation(u)) {
            if (!usable(H, removed, dart)) continue;
            int w = H.head(dart);
            Weight nd = wadd(d, H.weight(edge_of(dart)));
            if (nd < dist[w]) {
                dist[w] = nd;
                pred[w] = dart;
                if (split) (*split)[w] = 0;
                pq.push({nd, w});
            }
        }
    }
}

struct Dsu {
    std::vector<int> p;
    explicit Dsu(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    int find(int x) {
        while (p[x] != x) x = p[x] = p[p[x]];
        return x;
    }
    bool unite(int a, int b) {
        a = find(a), b = find(b);
        if (a == b) return false;
        p[a] = b;
        return true;
    }
};

// Spanning forest of the union (lightest first), then strip non-terminal leaves.
SteinerTree canonical_tree(const PlaneGraph& H, std::vector<int> edges, std::vector<int> terminals) {
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    std::stable_sort(edges.begin(), edges.end(), [&](int a, int b) { return H.weight(a) < H.weight(b); });
    Dsu dsu(H.vertex_count());
    std::vector<int> kept;
    for (int e : edges)
        if (dsu.unite(H.ends(e)[0], H.ends(e)[1])) kept.push_back(e);
    std::vector<char> is_term(H.vertex_count(), 0);
    for (int t : terminals) is_term[t] = 1;
    for (bool changed = true; changed;) {
        changed = false;
        std::vector<int> deg(H.vertex_count(), 0);
        for (int e : kept) ++deg[H.ends(e)[0]], ++deg[H.ends(e)[1]];
        std::vector<int> next;
        for (int e : kept) {
            auto [u, v] = H.ends(e);
            if ((deg[u] == 1 && !is_term[u]) || (deg[v] == 1 && !is_term[v]))
                changed = true;
            else
                next.push_back(e);
        }
        kept = std::move(next);
    }
    std::sort(kept.begin(), kept.end());
    SteinerTree t;
    t.edges = kept;
    t.terminals = std::move(terminals);
    t.weight = cut_weight(H, kept);
    return t;
}

std::vector<int> dedupe(std::vector<int> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

}  // namespace

SubsetSteiner::SubsetSteiner(const PlaneGraph& H, std::vector<int> base, std::vector<char> removed)
    : H_(&H), base_(std::move(base)) {
    const int q = static_cast<int>(base_.size());
    if (q > 16) throw SteinerError("subset tables support at most 16 base terminals");
    const int n = H.vertex_count();
    const unsigned full = (1u << q) - 1;
    dp_.assign(full + 1, std::vector<Weight>(n, kInf));
    pred_.assign(full + 1, std::vector<int>(n, -1));
    split_.assign(full + 1, std::vector<unsigned>(n, 0));
    for (int i = 0; i < q; ++i) {
        int t = base_[i];
        if (!removed.empty() && removed[t]) continue;
        dp_[1u << i][t] = 0;
    }
    for (unsigned mask = 1; mask <= full; ++mask) {
        auto& cur = dp_[mask];
        if (mask & (mask - 1)) {
            const unsigned low = mask & (~mask + 1);
            for (unsigned s = (mask - 1) & mask; s > 0; s = (s - 1) & mask) {
                if (!(s & low)) continue;
                const auto& a = dp_[s];
                const auto& b = dp_[mask ^ s];
                for (int v = 0; v < n; ++v) {
                    Weight c = wadd(a[v], b[v]);
                    if (c < cur[v]) {
                        cur[v] = c;
                        split_[mask][v] = s;
                    }
                }
            }
        }
        std::vector<int> split_int(n);  // relax_all resets splits of improved vertices
        for (int v = 0; v < n; ++v) split_int[v] = static_cast<int>(split_[mask][v]);
        relax_all(H, removed, cur, pred_[mask], &split_int);
        for (int v = 0; v < n; ++v) split_[mask][v] = static_cast<unsigned>(split_int[v]);
    }
}

SteinerTree SubsetSteiner::tree(unsigned mask, int v) const {
    std::vector<int> terms{v};
    for (int i = 0; i < base_size(); ++i)
        if (mask >> i & 1) terms.push_back(base_[i]);
    terms = dedupe(terms);
    if (mask == 0) {
        SteinerTree t;
        t.terminals = terms;
        t.weight = 0;
        return t;
    }
    if (is_inf(weight(mask, v))) throw SteinerError("terminals are not connected");
    std::vector<int> edges;
    std::vector<std::pair<unsigned, int>> stack{{mask, v}};
    while (!stack.empty()) {
        auto [m, x] = stack.back();
        stack.pop_back();
        if (pred_[m][x] >= 0) {
            int d = pred_[m][x];
            edges.push_back(edge_of(d));
            stack.push_back({m, H_->origin(d)});
        } else if (split_[m][x]) {
            stack.push_back({split_[m][x], x});
            stack.push_back({m ^ split_[m][x], x});
        }
    }
    return canonical_tree(*H_, edges, terms);
}

SteinerTree dreyfus_wagner(const PlaneGraph& H, const std::vector<int>& terminals_in, const std::vector<char>& removed) {
    auto terms = dedupe(terminals_in);
    for (int t : terms)
        if (t < 0 || t >= H.vertex_count() || (!removed.empty() && removed[t]))
            throw SteinerError("terminal " + std::to_string(t) + " is not a usable vertex");
    if (terms.size() <= 1) {
        SteinerTree out;
        out.terminals = terms;
        out.weight = 0;
        return out;
    }
    const int root = terms.back();
    SubsetSteiner table(H, std::vector<int>(terms.begin(), terms.end() - 1), removed);
    const unsigned full = (1u << table.base_size()) - 1;
    if (is_inf(table.weight(full, root))) throw SteinerError("terminals are not connected");
    return table.tree(full, root);
}

bool cyclic_on_face(const PlaneGraph& H, const std::vector<int>& ring) {
    const int p = static_cast<int>(ring.size());
    for (const auto& f : H.faces()) {
        std::vector<int> pos(p, -1);
        for (int i = 0; i < f.length(); ++i) {
            int v = H.origin(f.darts[i]);
            for (int j = 0; j < p; ++j)
                if (ring[j] == v && pos[j] < 0) pos[j] = i;
        }
        if (std::count(pos.begin(), pos.end(), -1) > 0) continue;
        if (p <= 2) return true;
        for (int dir : {1, -1}) {
            int descents = 0;
            for (int j = 0; j < p; ++j) {
                int a = pos[j], b = pos[(j + dir + p) % p];
                if (b < a) ++descents;
            }
            if (descents <= 1) return true;
        }
    }
    return false;
}

IntervalSteiner::IntervalSteiner(const PlaneGraph& H, std::vector<int> ring, int max_len, std::vector<char> removed)
    : H_(&H), ring_(std::move(ring)), max_len_(max_len), removed_(std::move(removed)) {
    const int p = static_cast<int>(ring_.size());
    const int n = H.vertex_count();
    if (max_len_ > p) max_len_ = p;
    if (max_len_ <= 0 || p == 0) {
        max_len_ = 0;
        return;
    }
    dp_.assign(p * max_len_, std::vector<Weight>(n, kInf));
    pred_.assign(p * max_len_, std::vector<int>(n, -1));
    split_.assign(p * max_len_, std::vector<int>(n, 0));
    for (int len = 1; len <= max_len_; ++len) {
        for (int lo = 0; lo < p; ++lo) {
            const int s = slot(lo, len);
            auto& cur = dp_[s];
            if (len == 1) {
                int t = ring_[lo];
                if (removed_.empty() || !removed_[t]) cur[t] = 0;
            } else {
                for (int l = 1; l < len; ++l) {
                    const auto& a = dp_[slot(lo, l)];
                    const auto& b = dp_[slot((lo + l) % p, len - l)];
                    for (int v = 0; v < n; ++v) {
                        Weight c = wadd(a[v], b[v]);
                        if (c < cur[v]) {
                            cur[v] = c;
                            split_[s][v] = l;
                        }
                    }
                }
            }
            relax_all(H, removed_, cur, pred_[s], &split_[s]);
        }
    }
}

Weight IntervalSteiner::weight(int lo, int len, int v) const {
    if (len == 0) return 0;
    if (len > max_len_) throw SteinerError("interval longer than the table");
    return dp_[slot(lo, len)][v];
}

void IntervalSteiner::collect(int lo, int len, int v, std::vector<int>& out) const {
    const int p = ring_size();
    std::vector<std::array<int, 3>> stack{{lo, len, v}};
    while (!stack.empty()) {
        auto [a, l, x] = stack.back();
        stack.pop_back();
        const int s = slot(a, l);
        if (pred_[s][x] >= 0) {
            int d = pred_[s][x];
            out.push_back(edge_of(d));
            stack.push_back({a, l, H_->origin(d)});
        } else if (split_[s][x]) {
            int m = split_[s][x];
            stack.push_back({a, m, x});
            stack.push_back({(a + m) % p, l - m, x});
        }
    }
}

SteinerTree IntervalSteiner::tree(int lo, int len, int v) const {
    std::vector<int> terms{v};
    for (int i = 0; i < len; ++i) terms.push_back(ring_[(lo + i) % ring_size()]);
    terms = dedupe(terms);
    if (len == 0) {
        SteinerTree t;
        t.terminals = terms;
        t.weight = 0;
        return t;
    }
    if (is_inf(weight(lo, len, v))) throw SteinerError("interval and vertex are not connected");
    std::vector<int> edges;
    collect(lo, len, v, edges);
    return canonical_tree(*H_, edges, terms);
}

SteinerTree one_face_steiner(const PlaneGraph& H, const std::vector<int>& ring, const std::vector<char>& removed) {
    const int p = static_cast<int>(ring.size());
    if (static_cast<int>(dedupe(ring).size()) != p) throw SteinerError("ring repeats a terminal");
    if (p >= 3 && !cyclic_on_face(H, ring)) throw SteinerError("terminal order is inconsistent with every face walk");
    if (p <= 1) {
        SteinerTree t;
        t.terminals = dedupe(ring);
        t.weight = 0;
        return t;
    }
    IntervalSteiner table(H, ring, p - 1, removed);
    return table.tree(1, p - 1, ring[0]);
}

std::vector<int> Interval::members() const {
    std::vector<int> m;
    for (int i = 0; i < len; ++i) m.push_back(at(i));
    return m;
}

namespace {
void same_face(const Interval& I, const Interval& J) {
    if (I.face != J.face || I.p != J.p) throw IntervalError("intervals on different faces");
}
}  // namespace

bool consecutive(const Interval& I, const Interval& J) {
    same_face(I, J);
    if (I.empty() || J.empty() || I.len + J.len > I.p) return false;
    return J.lo == (I.lo + I.len) % I.p;
}

std::vector<int> inbetween_terminals(const Interval& I, const Interval& J) {
    if (!consecutive(I, J)) throw IntervalError("intervals are not consecutive");
    std::vector<int> out{I.hi()};
    if (I.len + J.len == I.p) out.push_back(J.hi());
    return out;
}

std::vector<int> between_terminals(const Interval& I) {
    std::vector<int> out;
    for (int i = 0; i + 1 < I.len; ++i) out.push_back(I.at(i));
    return out;
}

bool is_subinterval(const Interval& S, const Interval& I) {
    same_face(S, I);
    if (S.empty()) return true;
    if (S.len > I.len) return false;
    int off = (S.lo - I.lo + I.p) % I.p;
    if (S.len == I.p) return off == 0;
    return off + S.len <= I.len;
}

bool is_prefix(const Interval& S, const Interval& I) {
    return is_subinterval(S, I) && (S.empty() || S.lo == I.lo);
}

bool is_suffix(const Interval& S, const Interval& I) {
    return is_subinterval(S, I) && (S.empty() || S.hi() == I.hi());
}

bool partition_check(const std::vector<Interval>& parts, int p) {
    std::vector<Interval> ne;
    for (const auto& I : parts) {
        if (I.p != p) throw IntervalError("interval from a face of different size");
        if (!ne.empty()) same_face(ne.front(), I);
        if (!I.empty()) ne.push_back(I);
    }
    if (ne.empty()) return p == 0;
    int total = 0;
    for (const auto& I : ne) total += I.len;
    if (total != p) return false;
    for (size_t i = 0; i + 1 < ne.size(); ++i)
        if (ne[i + 1].lo != (ne[i].lo + ne[i].len) % p) return false;
    return true;
}

NerveEngine::NerveEngine(const AugmentedDual& ad, int alpha)
    : ad_(&ad), alpha_(alpha), p_(static_cast<int>(ad.aug_terminals.at(alpha).size())) {
    full_ = SubsetSteiner(ad.graph, ad.aug_terminals[alpha]);
}

const SubsetSteiner& NerveEngine::without(int v) {
    auto it = without_.find(v);
    if (it != without_.end()) return it->second;
    std::vector<char> removed(ad_->graph.vertex_count(), 0);
    removed[v] = 1;
    return without_.emplace(v, SubsetSteiner(ad_->graph, ad_->aug_terminals[alpha_], removed)).first->second;
}

unsigned NerveEngine::mask(const Interval& I) const {
    unsigned m = 0;
    for (int j : I.members()) m |= 1u << j;
    return m;
}

Weight NerveEngine::steiner_weight(int v, const Interval& I) { return full_.weight(mask(I), v); }

std::optional<Nerve> NerveEngine::nerve(int v, const Interval& I) {
    if (I.face != alpha_ || I.p != p_) throw IntervalError("interval belongs to another face");
    if (I.empty()) throw IntervalError("nerve interval must be non-empty");
    if (ad_->is_aug_terminal(v)) throw IntervalError("nerve attachment point is an augmented terminal");
    auto key = std::make_tuple(v, I.lo, I.len);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    std::optional<Nerve> res;
    const auto& G = ad_->graph;
    const unsigned m = mask(I);
    Weight z = full_.weight(m, v);
    if (!is_inf(z)) {
        const auto& tv = without(v);
        for (int d : G.rotation(v)) {
            int u = G.head(d);
            Weight we = G.weight(edge_of(d));
            if (u == v || is_inf(we)) continue;
            Weight zu = tv.weight(m, u);
            if (wadd(zu, we) != z) continue;
            Nerve nv;
            nv.v = v;
            nv.interval = I;
            nv.edges = tv.tree(m, u).edges;
            nv.edges.push_back(edge_of(d));
            std::sort(nv.edges.begin(), nv.edges.end());
            nv.weight = z;
            nv.root_edge = edge_of(d);
            res = nv;
            break;
        }
    }
    memo_[key] = res;
    return res;
}

Weight NerveEngine::nerve_weight(int v, const Interval& I) {
    auto n = nerve(v, I);
    return n ? n->weight : kInf;
}

std::optional<Nerve> compute_nerve(const AugmentedDual& ad, int v, const Interval& I) {
    NerveEngine eng(ad, I.face);
    return eng.nerve(v, I);
}

CutSolution chen_wu_single_face_solve(const MwcInstance& inst) {
    if (inst.k() > 1) throw InstanceError("chen_wu_single_face_solve needs k = 1");
    if (inst.terminals.size() <= 1) return make_solution(inst, {}, "chen-wu");
    auto [s1, rec] = transform_instance(inst, TransformOptions{true, false});
    auto ad = augmented_dual(s1);
    SteinerTree t;
    try {
        t = one_face_steiner(ad.graph, ad.aug_terminals[0]);
    } catch (const SteinerError& e) {
        throw InstanceError(std::string("augmented dual: ") + e.what());
    }
    auto C = step1_to_original(t.edges, rec);
    C = prune_to_minimal(inst, C);
    return make_solution(inst, C, "chen-wu");
}

}  // namespace pmc
