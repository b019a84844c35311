#include "pmc/homotopy.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <stdexcept>

namespace pmc {

namespace {

// Dijkstra key: weight, then the edge set compared from its highest edge id.
struct PathKey {
    Weight w = kInf;
    std::vector<std::uint64_t> bits;

    bool operator<(const PathKey& o) const {
        if (w != o.w) return w < o.w;
        for (size_t i = bits.size(); i-- > 0;)
            if (bits[i] != o.bits[i]) return bits[i] < o.bits[i];
        return false;
    }
};

enum Side { kWest = 0, kEast = 1, kOn = 2 };

// Side of dart d at the visit's vertex: clockwise from the outgoing spoke dart up to the incoming one is east.
int side_of(const PlaneGraph& G, const SpokeVisit& sv, int d) {
    if (d == sv.fwd || d == sv.back) return kOn;
    for (int x = G.rot_next(sv.fwd); x != sv.fwd; x = G.rot_next(x)) {
        if (x == sv.back) return kWest;
        if (x == d) return kEast;
    }
    throw std::logic_error("dart not at spoke vertex");
}

int visit_slot(const std::vector<SpokeVisit>& vs, int spoke) {
    for (int i = 0; i < static_cast<int>(vs.size()); ++i)
        if (vs[i].spoke == spoke) return i;
    return -1;
}

// Pending entry sides are a bitmask over spoke ids (bit set: entered from the east).
unsigned step(const CutGraph& K, int w, unsigned pend, int d, HomotopyString& ev) {
    const PlaneGraph& G = *K.host;
    const int w2 = G.head(d);
    unsigned carry = 0;
    for (const auto& sv : K.at[w]) {
        const int s = side_of(G, sv, d);
        const unsigned bit = 1u << sv.spoke;
        if (s == kOn) {
            if (visit_slot(K.at[w2], sv.spoke) >= 0) carry |= pend & bit;
            continue;
        }
        const int enter = (pend & bit) ? kEast : kWest;
        if (enter != s) ev.push_back({sv.spoke, enter == kWest ? +1 : -1});
    }
    unsigned next = 0;
    for (const auto& sv : K.at[w2]) {
        const unsigned bit = 1u << sv.spoke;
        bool carried = false;
        for (const auto& sv0 : K.at[w])
            if (sv0.spoke == sv.spoke && (d == sv0.fwd || d == sv0.back)) carried = true;
        if (carried) {
            next |= carry & bit;
        } else if (side_of(G, sv, twin(d)) == kEast) {
            next |= bit;
        }
    }
    return next;
}

void finish(const CutGraph& K, int y, unsigned pend, HomotopyString& ev) {
    for (const auto& sv : K.at[y])
        if (pend & (1u << sv.spoke)) ev.push_back({sv.spoke, -1});
}

bool matches(const HomotopyString& h, int e, const HomotopyString& ev) {
    if (e + ev.size() > h.size()) return false;
    for (size_t i = 0; i < ev.size(); ++i)
        if (!(h[e + i] == ev[i])) return false;
    return true;
}

}  // namespace

std::optional<std::vector<int>> unique_shortest_path(const PlaneGraph& H, int s, int t, const std::vector<char>& blocked) {
    const int n = H.vertex_count();
    const size_t words = (H.edge_count() + 63) / 64;
    std::vector<PathKey> key(n);
    std::vector<int> pred(n, -1);
    std::vector<char> done(n, 0);
    key[s].w = 0;
    key[s].bits.assign(words, 0);
    for (;;) {
        int u = -1;
        for (int v = 0; v < n; ++v)
            if (!done[v] && !is_inf(key[v].w) && (u < 0 || key[v] < key[u])) u = v;
        if (u < 0) break;
        done[u] = 1;
        if (u == t) break;
        if (u != s && !blocked.empty() && blocked[u]) continue;
        for (int d : H.rotation(u)) {
            const int e = edge_of(d);
            if (is_inf(H.weight(e))) continue;
            const int v = H.head(d);
            if (done[v]) continue;
            PathKey cand;
            cand.w = wadd(key[u].w, H.weight(e));
            cand.bits = key[u].bits;
            cand.bits[e / 64] |= std::uint64_t{1} << (e % 64);
            if (cand < key[v]) {
                key[v] = std::move(cand);
                pred[v] = d;
            }
        }
    }
    if (s != t && pred[t] < 0) return std::nullopt;
    std::vector<int> path;
    for (int v = t; v != s; v = H.origin(pred[v])) path.push_back(pred[v]);
    std::reverse(path.begin(), path.end());
    return path;
}

CutGraph build_cut_graph(const MwcInstance& inst, const AugmentedDual& ad) {
    CutGraph K;
    K.host = &ad.graph;
    K.at.assign(ad.graph.vertex_count(), {});
    K.blocked.assign(ad.graph.vertex_count(), 0);
    for (int v = 0; v < ad.graph.vertex_count(); ++v) K.blocked[v] = ad.is_aug_terminal(v);
    const int k = inst.k();
    if (k <= 1) return K;
    if (k > 31) throw std::invalid_argument("cut graph supports at most 31 terminal faces");
    auto D = dual(inst.g).dual;
    std::vector<char> blocked(D.vertex_count(), 0);
    for (const auto& tf : inst.faces) blocked[tf.face] = 1;
    struct Cand {
        Weight w;
        int a, b;
        std::vector<int> path;
    };
    std::vector<Cand> cands;
    for (int a = 0; a < k; ++a)
        for (int b = a + 1; b < k; ++b) {
            auto p = unique_shortest_path(D, inst.faces[a].face, inst.faces[b].face, blocked);
            if (!p) continue;
            Weight w = 0;
            for (int d : *p) w = wadd(w, D.weight(edge_of(d)));
            cands.push_back({w, a, b, *p});
        }
    std::stable_sort(cands.begin(), cands.end(), [](const Cand& x, const Cand& y) { return x.w < y.w; });
    std::vector<int> comp(k);
    std::iota(comp.begin(), comp.end(), 0);
    for (auto& c : cands) {
        int ca = comp[c.a], cb = comp[c.b];
        if (ca == cb) continue;
        for (int& x : comp)
            if (x == cb) x = ca;
        Spoke sp;
        sp.id = static_cast<int>(K.spokes.size());
        sp.from_face = c.a;
        sp.to_face = c.b;
        sp.darts = c.path;
        sp.weight = c.w;
        K.spokes.push_back(sp);
    }
    std::vector<char> in_k(inst.g.edge_count(), 0);
    for (const auto& sp : K.spokes) {
        for (int d : sp.darts) in_k[edge_of(d)] = 1;
        for (size_t i = 0; i + 1 < sp.darts.size(); ++i) {
            int v = ad.graph.head(sp.darts[i]);
            K.at[v].push_back({sp.id, twin(sp.darts[i]), sp.darts[i + 1]});
        }
    }
    for (int e = 0; e < inst.g.edge_count(); ++e)
        if (in_k[e]) K.edges.push_back(e);
    return K;
}

void CrossingTracker::advance(int dart) {
    if (K->host->origin(dart) != at) throw std::invalid_argument("darts do not form a walk");
    pending = step(*K, at, pending, dart, events);
    at = K->host->head(dart);
}

HomotopyString CrossingTracker::finished() const {
    HomotopyString ev = events;
    finish(*K, at, pending, ev);
    return ev;
}

HomotopyString crossing_sequence(const CutGraph& K, int start, const std::vector<int>& darts) {
    CrossingTracker tr(K, start);
    for (int d : darts) tr.advance(d);
    return tr.finished();
}

namespace {

struct ProductSearch {
    const CutGraph& K;
    const HomotopyString& h;
    int n, L, S;
    std::vector<Weight> dist;
    std::vector<int> pred_state, pred_dart;

    ProductSearch(const CutGraph& K_, const HomotopyString& h_)
        : K(K_), h(h_), n(K_.host->vertex_count()), L(static_cast<int>(h_.size())), S(K_.spoke_count()) {}

    long index(int v, int e, unsigned pend) const { return ((static_cast<long>(v) * (L + 1) + e) << S) | pend; }

    void run(int x, const std::vector<char>& forbidden) {
        const PlaneGraph& G = *K.host;
        dist.assign(static_cast<size_t>(n) * (L + 1) << S, kInf);
        pred_state.assign(dist.size(), -1);
        pred_dart.assign(dist.size(), -1);
        using Item = std::pair<Weight, long>;
        std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
        dist[index(x, 0, 0)] = 0;
        pq.push({0, index(x, 0, 0)});
        HomotopyString ev;
        while (!pq.empty()) {
            auto [d0, id] = pq.top();
            pq.pop();
            if (d0 != dist[id]) continue;
            const unsigned pend = static_cast<unsigned>(id & ((1L << S) - 1));
            const long ve = id >> S;
            const int e = static_cast<int>(ve % (L + 1));
            const int v = static_cast<int>(ve / (L + 1));
            for (int d : G.rotation(v)) {
                const Weight w = G.weight(edge_of(d));
                const int u = G.head(d);
                if (is_inf(w) || forbidden[u]) continue;
                ev.clear();
                unsigned np = step(K, v, pend, d, ev);
                if (!matches(h, e, ev)) continue;
                long nid = index(u, e + static_cast<int>(ev.size()), np);
                Weight nd = wadd(d0, w);
                if (nd < dist[nid]) {
                    dist[nid] = nd;
                    pred_state[nid] = static_cast<int>(id);
                    pred_dart[nid] = d;
                    pq.push({nd, nid});
                }
            }
        }
    }
};

std::vector<char> obstacles(const CutGraph& K) {
    if (K.blocked.empty()) return std::vector<char>(K.host->vertex_count(), 0);
    return K.blocked;
}

}  // namespace

std::optional<HomotopicPath> homotopic_shortest_path(const CutGraph& K, int x, int y, const HomotopyString& h) {
    for (const auto& c : h)
        if (c.spoke < 0 || c.spoke >= K.spoke_count()) return std::nullopt;
    ProductSearch ps(K, h);
    auto forbidden = obstacles(K);
    forbidden[x] = 0;
    forbidden[y] = 0;
    ps.run(x, forbidden);
    long best = -1;
    HomotopyString ev;
    for (int e = 0; e <= ps.L; ++e)
        for (unsigned pend = 0; pend < (1u << ps.S); ++pend) {
            long id = ps.index(y, e, pend);
            if (is_inf(ps.dist[id])) continue;
            ev.clear();
            finish(K, y, pend, ev);
            if (e + static_cast<int>(ev.size()) != ps.L || !matches(h, e, ev)) continue;
            if (best < 0 || ps.dist[id] < ps.dist[best]) best = id;
        }
    if (best < 0) return std::nullopt;
    HomotopicPath hp;
    hp.from = x;
    hp.to = y;
    hp.weight = ps.dist[best];
    for (long id = best; ps.pred_dart[id] >= 0; id = ps.pred_state[id]) hp.darts.push_back(ps.pred_dart[id]);
    std::reverse(hp.darts.begin(), hp.darts.end());
    return hp;
}

std::vector<std::vector<Weight>> homotopic_distances(const CutGraph& K, int x, const HomotopyString& h) {
    ProductSearch ps(K, h);
    auto forbidden = obstacles(K);
    forbidden[x] = 0;
    ps.run(x, forbidden);
    std::vector<std::vector<Weight>> out(ps.L + 1, std::vector<Weight>(ps.n, kInf));
    HomotopyString ev;
    for (int v = 0; v < ps.n; ++v)
        for (int e = 0; e <= ps.L; ++e)
            for (unsigned pend = 0; pend < (1u << ps.S); ++pend) {
                Weight d = ps.dist[ps.index(v, e, pend)];
                if (is_inf(d)) continue;
                ev.clear();
                finish(K, v, pend, ev);
                if (!matches(h, e, ev)) continue;
                int end = e + static_cast<int>(ev.size());
                out[end][v] = std::min(out[end][v], d);
            }
    return out;
}

int default_hcap(int k) { return 60 * k - 30; }

void for_each_homotopy_string(const CutGraph& K, int max_len, const std::function<void(const HomotopyString&)>& fn) {
    const int a = 2 * K.spoke_count();
    HomotopyString cur;
    fn(cur);
    if (a == 0) return;
    for (int len = 1; len <= max_len; ++len) {
        std::vector<int> digits(len, 0);
        for (;;) {
            cur.clear();
            for (int x : digits) cur.push_back({x / 2, x % 2 == 0 ? +1 : -1});
            fn(cur);
            int i = len - 1;
            while (i >= 0 && digits[i] == a - 1) digits[i--] = 0;
            if (i < 0) break;
            ++digits[i];
        }
    }
}

std::vector<HomotopyString> enumerate_homotopy_strings(const CutGraph& K, int max_len) {
    double count = 1, term = 1;
    for (int i = 1; i <= max_len; ++i) count += (term *= 2.0 * K.spoke_count());
    if (count > 5e6) throw std::invalid_argument("too many homotopy strings; lower the cap");
    std::vector<HomotopyString> out;
    for_each_homotopy_string(K, max_len, [&](const HomotopyString& h) { out.push_back(h); });
    return out;
}

bool spokes_noncrossing(const CutGraph& K) {
    const PlaneGraph& G = *K.host;
    for (const auto& A : K.spokes) {
        const int M = static_cast<int>(A.darts.size());
        for (const auto& B : K.spokes) {
            if (B.id == A.id) continue;
            int enter = -1;  // entry side of the current contact with B, -1 when undefined
            bool in_contact = false;
            for (int i = 1; i < M; ++i) {
                const int z = G.head(A.darts[i - 1]);
                int slot = visit_slot(K.at[z], B.id);
                if (slot < 0) {
                    in_contact = false;
                    continue;
                }
                const auto& sv = K.at[z][slot];
                int in = side_of(G, sv, twin(A.darts[i - 1]));
                int out = side_of(G, sv, A.darts[i]);
                if (!in_contact) enter = in == kOn ? -1 : in;
                in_contact = true;
                if (out == kOn) continue;
                if (enter >= 0 && enter != out) return false;
                in_contact = false;
            }
        }
    }
    return true;
}

std::string to_string(const HomotopyString& h) {
    std::string s;
    for (const auto& c : h) {
        if (!s.empty()) s += ' ';
        s += std::to_string(c.spoke) + (c.dir > 0 ? "+" : "-");
    }
    return s;
}

}  // namespace pmc
