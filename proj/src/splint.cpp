#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <stdexcept>

#include "pmc/warmup_solver.hpp"

namespace pmc {

namespace {

// True iff t shares its component of G - D with no other terminal.
bool isolated(const MwcInstance& s1, const std::vector<int>& D, int t) {
    const PlaneGraph& g = s1.g;
    std::vector<char> cut(g.edge_count(), 0), seen(g.vertex_count(), 0), term(g.vertex_count(), 0);
    for (int e : D) cut[e] = 1;
    for (int u : s1.terminals) term[u] = 1;
    std::vector<int> st{t};
    seen[t] = 1;
    while (!st.empty()) {
        int v = st.back();
        st.pop_back();
        if (v != t && term[v]) return false;
        for (int d : g.rotation(v)) {
            if (cut[d >> 1]) continue;
            int u = g.head(d);
            if (!seen[u]) {
                seen[u] = 1;
                st.push_back(u);
            }
        }
    }
    return true;
}

int terminal_at(const MwcInstance& s1, int face, int idx) {
    const auto& T = s1.faces[face].terminals;
    int p = static_cast<int>(T.size());
    return T[((idx % p) + p) % p];
}

// Every terminal shared by consecutive augmented terminals of the nerve sits alone in G - nerve.
bool nerve_regions(const MwcInstance& s1, const Nerve& N) {
    if (N.interval.len <= 1) return true;
    for (int i : between_terminals(N.interval))
        if (!isolated(s1, N.edges, terminal_at(s1, N.interval.face, i))) return false;
    return true;
}

bool same_nerve(const Nerve& a, const Nerve& b) { return a.v == b.v && a.interval == b.interval; }

int rel_start(const Interval& N, const Interval& I) { return (N.lo - I.lo + I.p) % I.p; }

bool inside(const Interval& N, const Interval& I) {
    if (N.empty()) return true;
    if (I.empty() || N.face != I.face) return false;
    return rel_start(N, I) + N.len <= I.len;
}

std::vector<int> union_edges(std::initializer_list<const std::vector<int>*> parts) {
    std::vector<int> out;
    for (auto* p : parts) out.insert(out.end(), p->begin(), p->end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<int> dart_edges(const std::vector<int>& darts) {
    std::vector<int> e;
    for (int d : darts) e.push_back(d >> 1);
    return e;
}

Nerve empty_nerve(int face, int p, int v) {
    Nerve N;
    N.v = v;
    N.interval = Interval{face, p, 0, 0};
    N.weight = 0;
    return N;
}

std::vector<Interval> face_intervals(int face, int p) {
    std::vector<Interval> out{Interval{face, p, 0, 0}};
    if (p < 2) return out;  // nerves only go to plural faces
    for (int lo = 0; lo < p; ++lo)
        for (int len = 1; len <= p; ++len) out.push_back(Interval{face, p, lo, len});
    return out;
}

}  // namespace

NerveTable::NerveTable(const AugmentedDual& ad) : ad_(&ad) {
    for (int a = 0; a < static_cast<int>(ad.aug_terminals.size()); ++a) engines_.emplace_back(ad, a);
}

std::optional<Nerve> NerveTable::get(int face, int v, int lo, int len) {
    int P = p(face);
    if (len == 0) return empty_nerve(face, P, v);
    if (ad_->is_aug_terminal(v)) return std::nullopt;
    return engines_[face].nerve(v, engines_[face].interval(((lo % P) + P) % P, len));
}

bool broken_bone_valid(const AugmentedDual& ad, const BoneSpec& spec, const BrokenBone& bb) {
    int m = static_cast<int>(spec.s.size());
    if (static_cast<int>(bb.x.size()) != m + 1 || static_cast<int>(bb.y.size()) != m + 1 ||
        static_cast<int>(bb.nerves.size()) != 2 * m)
        return false;
    for (int v : bb.x)
        if (v < 0 || ad.is_aug_terminal(v)) return false;
    for (int v : bb.y)
        if (v < 0 || ad.is_aug_terminal(v)) return false;
    if (spec.from >= 0 && bb.y[0] != spec.from) return false;
    if (spec.to >= 0 && bb.x[m] != spec.to) return false;
    for (int side = 0; side < 2; ++side)
        if (!bb.I[side].empty() && bb.I[side].face != spec.face(side)) return false;
    int last_end[2] = {-1, -1};
    for (int i = 0; i < 2 * m; ++i) {
        const Nerve& N = bb.nerves[i];
        int j = i / 2, side = spec.s[j];
        const Interval& I = bb.I[side];
        if (N.v != (i % 2 == 0 ? bb.x[j] : bb.y[j + 1])) return false;
        if (I.empty() != N.interval.empty()) return false;
        if (I.empty()) continue;
        if (!inside(N.interval, I)) return false;
        int st = rel_start(N.interval, I), en = st + N.interval.len - 1;
        bool partner = i % 2 == 1 && same_nerve(N, bb.nerves[i - 1]);
        if (!partner && st <= last_end[side]) return false;
        last_end[side] = en;
    }
    for (int side = 0; side < 2; ++side) {
        const Interval& I = bb.I[side];
        if (I.empty()) continue;
        bool pre = false, suf = false;
        for (int i = 0; i < 2 * m; ++i) {
            if (spec.s[i / 2] != side) continue;
            const Interval& N = bb.nerves[i].interval;
            if (N.empty()) continue;
            if (rel_start(N, I) == 0) pre = true;
            if (rel_start(N, I) + N.len == I.len) suf = true;
        }
        if (!pre || !suf) return false;
    }
    return true;
}

std::vector<BrokenBone> enumerate_broken_bones(const MwcInstance& s1, const AugmentedDual& ad, NerveTable& nt,
                                               const BoneSpec& spec, long limit, bool* truncated) {
    (void)s1;
    std::vector<BrokenBone> out;
    if (truncated) *truncated = false;
    int m = static_cast<int>(spec.s.size());
    const PlaneGraph& H = ad.graph;
    std::vector<int> roots;
    for (int v = 0; v < H.vertex_count(); ++v)
        if (!ad.is_aug_terminal(v)) roots.push_back(v);
    std::vector<int> starts = spec.from >= 0 ? std::vector<int>{spec.from} : roots;
    std::vector<int> ends = spec.to >= 0 ? std::vector<int>{spec.to} : roots;
    bool stop = false;
    bool side_used[2] = {false, false};
    for (int x : spec.s) side_used[x] = true;

    BrokenBone bb;
    bb.x.assign(m + 1, -1);
    bb.y.assign(m + 1, -1);
    bb.nerves.assign(2 * m, Nerve{});
    int last_end[2] = {-1, -1};

    std::function<void(int)> slot = [&](int i) {
        if (stop) return;
        if (i == 2 * m) {
            for (int y0 : starts)
                for (int xe : ends) {
                    bb.y[0] = y0;
                    bb.x[m] = xe;
                    if (!broken_bone_valid(ad, spec, bb)) continue;
                    if (static_cast<long>(out.size()) >= limit) {
                        stop = true;
                        if (truncated) *truncated = true;
                        return;
                    }
                    out.push_back(bb);
                }
            return;
        }
        int j = i / 2, side = spec.s[j];
        int face = spec.face(side);
        const Interval& I = bb.I[side];
        auto place = [&](const Nerve& N, int en) {
            int saved = last_end[side];
            bb.nerves[i] = N;
            if (i % 2 == 0) bb.x[j] = N.v;
            else bb.y[j + 1] = N.v;
            last_end[side] = en;
            slot(i + 1);
            last_end[side] = saved;
        };
        if (I.empty()) {
            for (int v : roots) place(empty_nerve(face, nt.p(face), v), last_end[side]);
            return;
        }
        if (i % 2 == 1) place(bb.nerves[i - 1], last_end[side]);  // same nerve at both ends of the group
        for (int st = last_end[side] + 1; st < I.len; ++st)
            for (int len = 1; st + len <= I.len; ++len)
                for (int v : roots) {
                    if (i % 2 == 1 && v == bb.nerves[i - 1].v && st == rel_start(bb.nerves[i - 1].interval, I) &&
                        len == bb.nerves[i - 1].interval.len)
                        continue;
                    auto N = nt.get(face, v, I.lo + st, len);
                    if (N) place(*N, st + len - 1);
                }
    };

    for (const Interval& Ia : face_intervals(spec.alpha, nt.p(spec.alpha))) {
        if (!side_used[0] && !Ia.empty()) continue;
        for (const Interval& Ib : face_intervals(spec.beta, nt.p(spec.beta))) {
            if (!side_used[1] && !Ib.empty()) continue;
            bb.I[0] = Ia;
            bb.I[1] = Ib;
            slot(0);
            if (stop) return out;
        }
    }
    return out;
}

std::optional<NervePath> nerve_path(const MwcInstance& s1, const AugmentedDual& ad, const CutGraph& K,
                                    NerveTable& nt, int face, const Nerve& N1, const Nerve& N2,
                                    const HomotopyString& h, bool side_conditions, SplintTables* tables) {
    const int E = static_cast<int>(h.size());
    auto sub = [&](int a, int b) { return HomotopyString(h.begin() + a, h.begin() + b); };
    if (N1.interval.empty() != N2.interval.empty()) return std::nullopt;
    if (N1.interval.empty()) {
        auto hp = homotopic_shortest_path(K, N1.v, N2.v, h);
        if (!hp) return std::nullopt;
        return NervePath{hp->weight, {}, hp->darts};
    }
    if (!nerve_regions(s1, N1) || !nerve_regions(s1, N2)) return std::nullopt;
    if (same_nerve(N1, N2)) {
        if (!h.empty()) return std::nullopt;
        return NervePath{N1.weight, {N1}, {}};
    }
    const int p = nt.p(face);
    const int len1 = N1.interval.len;
    const int off2 = (N2.interval.lo - N1.interval.lo + p) % p;
    if (off2 < len1 || off2 + N2.interval.len > p) return std::nullopt;
    const int n = ad.graph.vertex_count();
    const int P = off2;
    auto idx = [&](int x, int a, int a2, int e) {
        return ((static_cast<std::size_t>(x) * P + a) * P + a2) * (E + 1) + e;
    };
    std::vector<Weight> C(static_cast<std::size_t>(n) * P * P * (E + 1), kInf);
    struct Pred {
        int x = -1, z = -1, e = -1;
    };
    std::vector<Pred> pred(C.size());
    long checks = 0, rejects = 0;

    std::map<std::tuple<int, int, int>, std::optional<Nerve>> nerve_cache;
    auto cnerve = [&](int x, int a, int a2) -> const std::optional<Nerve>& {
        auto key = std::make_tuple(x, a, a2);
        auto it = nerve_cache.find(key);
        if (it != nerve_cache.end()) return it->second;
        std::optional<Nerve> N;
        if (a == 0 && a2 == len1 - 1) {
            if (x == N1.v) N = N1;
        } else if (a >= len1) {
            N = nt.get(face, x, N1.interval.lo + a, a2 - a + 1);
            if (N && side_conditions && !nerve_regions(s1, *N)) N.reset();
        }
        return nerve_cache.emplace(key, std::move(N)).first->second;
    };
    std::map<std::pair<int, int>, std::vector<std::vector<Weight>>> dist_cache;
    auto dist = [&](int x, int e) -> const std::vector<std::vector<Weight>>& {
        auto key = std::make_pair(x, e);
        auto it = dist_cache.find(key);
        if (it != dist_cache.end()) return it->second;
        return dist_cache.emplace(key, homotopic_distances(K, x, sub(e, E))).first->second;
    };
    std::map<std::tuple<int, int, int, int>, std::vector<int>> path_cache;
    auto path = [&](int x, int y, int e1, int e2) -> const std::vector<int>& {
        auto key = std::make_tuple(x, y, e1, e2);
        auto it = path_cache.find(key);
        if (it != path_cache.end()) return it->second;
        auto hp = homotopic_shortest_path(K, x, y, sub(e1, e2));
        return path_cache.emplace(key, hp ? hp->darts : std::vector<int>{}).first->second;
    };
    // region bounded by two consecutive nerves and the path between their roots holds only terminal t
    auto region_ok = [&](const Nerve& A, const Nerve& B, int x, int y, int e1, int e2, int t) {
        if (!side_conditions) return true;
        ++checks;
        auto pe = dart_edges(path(x, y, e1, e2));
        bool ok = isolated(s1, union_edges({&A.edges, &B.edges, &pe}), t);
        if (!ok) ++rejects;
        return ok;
    };
    auto between = [&](int a) { return terminal_at(s1, face, N1.interval.lo + a - 1); };

    C[idx(N1.v, 0, len1 - 1, 0)] = N1.weight;
    for (int a2 = len1; a2 < P; ++a2)
        for (int a = len1; a <= a2; ++a)
            for (int x = 0; x < n; ++x) {
                const auto& cur = cnerve(x, a, a2);
                if (!cur) continue;
                for (int zp = 0; zp < a; ++zp)
                    for (int xp = 0; xp < n; ++xp) {
                        bool any = false;
                        for (int ep = 0; ep <= E && !any; ++ep) any = C[idx(xp, zp, a - 1, ep)] < kInf;
                        if (!any) continue;
                        const auto& prevN = cnerve(xp, zp, a - 1);
                        if (!prevN) continue;
                        for (int ep = 0; ep <= E; ++ep) {
                            Weight base = C[idx(xp, zp, a - 1, ep)];
                            if (base >= kInf) continue;
                            const auto& D = dist(xp, ep);
                            for (int e = ep; e <= E; ++e) {
                                Weight d = D[e - ep][x];
                                if (d >= kInf) continue;
                                Weight val = base + cur->weight + d;
                                std::size_t at = idx(x, a, a2, e);
                                if (val >= C[at]) continue;
                                if (!region_ok(*prevN, *cur, xp, x, ep, e, between(a))) continue;
                                C[at] = val;
                                pred[at] = {xp, zp, ep};
                            }
                        }
                    }
            }

    Weight best = kInf;
    int bx = -1, bz = -1, be = -1;
    for (int z = 0; z < P; ++z)
        for (int x = 0; x < n; ++x) {
            const auto& prevN = cnerve(x, z, P - 1);
            if (!prevN) continue;
            for (int e = 0; e <= E; ++e) {
                Weight base = C[idx(x, z, P - 1, e)];
                if (base >= kInf) continue;
                Weight d = dist(x, e)[E - e][N2.v];
                if (d >= kInf) continue;
                Weight val = base + d + N2.weight;
                if (val >= best) continue;
                if (!region_ok(*prevN, N2, x, N2.v, e, E, between(off2))) continue;
                best = val;
                bx = x, bz = z, be = e;
            }
        }

    if (tables) {
        tables->face = face;
        tables->n = n;
        tables->positions = P;
        tables->len = E;
        tables->cprime = C;
        tables->result = best;
        tables->side_checks = checks;
        tables->side_rejections = rejects;
        auto fresh = compute_nerve(ad, N1.v, N1.interval);
        tables->c_base = fresh ? fresh->weight : kInf;
        bool ok = C[idx(N1.v, 0, len1 - 1, 0)] == tables->c_base;
        for (int x = 0; x < n && ok; ++x)
            for (int e = 0; e <= E && ok; ++e)
                if ((x != N1.v || e != 0) && C[idx(x, 0, len1 - 1, e)] < kInf) ok = false;
        tables->base_row_matches = ok;
    }
    if (best >= kInf) return std::nullopt;

    NervePath out;
    out.weight = best;
    std::vector<std::vector<int>> pieces;
    out.nerves.push_back(N2);
    pieces.push_back(path(bx, N2.v, be, E));
    int x = bx, a2 = P - 1, z = bz, e = be;
    while (!(z == 0 && a2 == len1 - 1)) {
        out.nerves.push_back(*cnerve(x, z, a2));
        Pred pr = pred[idx(x, z, a2, e)];
        pieces.push_back(path(pr.x, x, pr.e, e));
        a2 = z - 1;
        x = pr.x;
        z = pr.z;
        e = pr.e;
    }
    out.nerves.push_back(N1);
    std::reverse(out.nerves.begin(), out.nerves.end());
    std::reverse(pieces.begin(), pieces.end());
    for (const auto& pc : pieces) out.darts.insert(out.darts.end(), pc.begin(), pc.end());
    return out;
}

SteinerTree mst_inside(const MwcInstance& s1, const AugmentedDual& ad, const std::vector<char>& region,
                       const std::vector<int>& terminals) {
    int of = s1.g.outer_face();
    if (of >= 0) {
        int ov = ad.face_vertex[of];
        if (ov >= 0 && region[ov]) throw std::invalid_argument("region holds the outer face");
    }
    std::vector<char> removed(ad.graph.vertex_count(), 0);
    for (int v = 0; v < ad.graph.vertex_count(); ++v) removed[v] = !region[v];
    return dreyfus_wagner(ad.graph, terminals, removed);
}

std::optional<Splint> splint(const MwcInstance& s1, const AugmentedDual& ad, const CutGraph& K, NerveTable& nt,
                             const BoneSpec& spec, const BrokenBone& bb, SplintAudit* rejected) {
    const int m = static_cast<int>(spec.s.size());
    if (!broken_bone_valid(ad, spec, bb)) return std::nullopt;
    if (static_cast<int>(spec.h.size()) != 2 * m + 1) return std::nullopt;
    const PlaneGraph& H = ad.graph;
    std::vector<std::vector<int>> conn(m + 1);
    for (int j = 0; j <= m; ++j) {
        if (m == 4 && j == 2) continue;
        auto hp = homotopic_shortest_path(K, bb.y[j], bb.x[j], spec.h[2 * j]);
        if (!hp) return std::nullopt;
        conn[j] = hp->darts;
    }
    std::vector<NervePath> np(m + 1);
    for (int j = 1; j <= m; ++j) {
        auto r = nerve_path(s1, ad, K, nt, spec.face(spec.s[j - 1]), bb.nerves[2 * j - 2], bb.nerves[2 * j - 1],
                            spec.h[2 * j - 1]);
        if (!r) return std::nullopt;
        np[j] = std::move(*r);
    }
    Splint sp;
    std::vector<int> edges;
    for (const auto& c : conn)
        for (int d : c) edges.push_back(d >> 1);
    for (int j = 1; j <= m; ++j) {
        for (int d : np[j].darts) edges.push_back(d >> 1);
        for (const auto& N : np[j].nerves) {
            edges.insert(edges.end(), N.edges.begin(), N.edges.end());
            bool dup = false;
            for (const auto& M : sp.nerves) dup = dup || same_nerve(M, N);
            if (!dup) sp.nerves.push_back(N);
        }
    }
    if (m == 4) {
        // the stretch between y_2 and x_3: a Steiner tree on its ends and the uncovered augmented terminals
        std::vector<char> used(H.vertex_count(), 0);
        for (int e : edges)
            for (int v : H.ends(e)) used[v] = 1;
        std::vector<int> terms{bb.y[2], bb.x[2]};
        std::vector<char> region(H.vertex_count(), 1);
        for (int v = 0; v < H.vertex_count(); ++v)
            if (used[v] || ad.is_aug_terminal(v)) region[v] = 0;
        for (int side = 0; side < 2; ++side) {
            const Interval& I = bb.I[side];
            if (I.empty()) continue;
            std::vector<char> cov(I.len, 0);
            for (const auto& N : sp.nerves)
                if (!N.interval.empty() && N.interval.face == I.face && inside(N.interval, I))
                    for (int i = 0; i < N.interval.len; ++i) cov[rel_start(N.interval, I) + i] = 1;
            for (int i = 0; i < I.len; ++i)
                if (!cov[i]) terms.push_back(ad.aug_terminals[I.face][I.at(i)]);
        }
        for (int v : terms) region[v] = 1;
        SteinerTree t;
        try {
            t = mst_inside(s1, ad, region, terms);
        } catch (const std::exception&) {
            return std::nullopt;
        }
        if (t.weight >= kInf) return std::nullopt;
        // P_b runs along the tree path from y_2 to x_3
        std::vector<int> up(H.vertex_count(), -2);
        std::vector<std::vector<int>> adj(H.vertex_count());
        for (int e : t.edges) {
            adj[H.ends(e)[0]].push_back(2 * e);
            adj[H.ends(e)[1]].push_back(2 * e + 1);
        }
        up[bb.y[2]] = -1;
        std::vector<int> st{bb.y[2]};
        while (!st.empty()) {
            int v = st.back();
            st.pop_back();
            for (int d : adj[v]) {
                int u = H.head(d);
                if (up[u] == -2) {
                    up[u] = d;
                    st.push_back(u);
                }
            }
        }
        if (up[bb.x[2]] == -2) return std::nullopt;
        for (int v = bb.x[2]; up[v] >= 0; v = H.origin(up[v])) conn[2].push_back(up[v]);
        std::reverse(conn[2].begin(), conn[2].end());
        edges.insert(edges.end(), t.edges.begin(), t.edges.end());
        for (int v : terms)
            if (ad.is_aug_terminal(v)) {
                Nerve N;  // pseudo nerve recording the augmented terminal reached by the middle tree
                N.v = -1;
                N.interval = Interval{ad.leaf_face[v], nt.p(ad.leaf_face[v]), ad.leaf_index[v], 1};
                sp.nerves.push_back(N);
            }
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    sp.edges = edges;
    sp.weight = cut_weight(H, edges);
    // assemble P_b
    auto vcount = [&] { return static_cast<int>(sp.path.size()); };
    sp.y_pos.push_back(0);
    for (int j = 0; j <= m; ++j) {
        sp.path.insert(sp.path.end(), conn[j].begin(), conn[j].end());
        sp.x_pos.push_back(vcount());
        if (j == m) break;
        sp.path.insert(sp.path.end(), np[j + 1].darts.begin(), np[j + 1].darts.end());
        sp.y_pos.push_back(vcount());
    }
    auto A = audit_splint(s1, ad, K, spec, bb, sp);
    if (!A.all()) {
        if (rejected) *rejected = A;
        return std::nullopt;
    }
    return sp;
}

std::string SplintAudit::failures() const {
    std::string s;
    auto add = [&](bool ok, const char* name) {
        if (!ok) s += std::string(s.empty() ? "" : ",") + name;
    };
    add(encloses, "encloses");
    add(ordering, "ordering");
    add(connectors_simple, "connectors_simple");
    add(connector_strings, "connector_strings");
    add(segment_strings, "segment_strings");
    add(nerves_attached, "nerves_attached");
    add(partition, "partition");
    return s;
}

SplintAudit audit_splint(const MwcInstance& s1, const AugmentedDual& ad, const CutGraph& K, const BoneSpec& spec,
                         const BrokenBone& bb, const Splint& sp) {
    SplintAudit A;
    const PlaneGraph& H = ad.graph;
    const int m = static_cast<int>(spec.s.size());
    std::set<int> in_d(sp.edges.begin(), sp.edges.end());
    std::vector<int> deg(H.vertex_count(), 0);
    for (int e : sp.edges) {
        ++deg[H.ends(e)[0]];
        ++deg[H.ends(e)[1]];
    }
    // vertex sequence of P_b
    std::vector<int> seq{bb.y[0]};
    bool walk = true;
    for (int d : sp.path) {
        if (H.origin(d) != seq.back() || !in_d.count(d >> 1)) walk = false;
        seq.push_back(H.head(d));
    }
    A.ordering = walk && static_cast<int>(sp.x_pos.size()) == m + 1 && static_cast<int>(sp.y_pos.size()) == m + 1;
    if (A.ordering) {
        int last = 0;
        for (int j = 0; j <= m && A.ordering; ++j) {
            int py = sp.y_pos[j], px = sp.x_pos[j];
            if (py < last || px < py || px >= static_cast<int>(seq.size())) A.ordering = false;
            else if (seq[py] != bb.y[j] || seq[px] != bb.x[j]) A.ordering = false;
            last = px;
        }
    }
    A.connectors_simple = A.connector_strings = A.segment_strings = A.nerves_attached = A.ordering;
    if (A.ordering) {
        for (int j = 0; j <= m; ++j) {
            int a = sp.y_pos[j], b = sp.x_pos[j];
            if (m == 4 && j == 2) continue;
            for (int i = a + 1; i < b; ++i)
                if (deg[seq[i]] != 2) A.connectors_simple = false;
            std::vector<int> part(sp.path.begin() + a, sp.path.begin() + b);
            if (crossing_sequence(K, seq[a], part) != spec.h[2 * j]) A.connector_strings = false;
        }
        for (int j = 1; j <= m; ++j) {
            int a = sp.x_pos[j - 1], b = sp.y_pos[j];
            std::vector<int> part(sp.path.begin() + a, sp.path.begin() + b);
            if (crossing_sequence(K, seq[a], part) != spec.h[2 * j - 1]) A.segment_strings = false;
            int face = spec.face(spec.s[j - 1]);
            std::set<int> roots;
            for (const auto& N : sp.nerves)
                if (N.v >= 0 && (N.interval.empty() || N.interval.face == face)) roots.insert(N.v);
            for (int i = a; i <= b; ++i)
                if (deg[seq[i]] > 2 && !roots.count(seq[i])) A.nerves_attached = false;
            const Nerve& N1 = bb.nerves[2 * j - 2];
            const Nerve& N2 = bb.nerves[2 * j - 1];
            for (const Nerve* N : {&N1, &N2}) {
                bool found = false;
                for (const auto& M : sp.nerves) found = found || same_nerve(M, *N);
                if (!found) A.nerves_attached = false;
                for (int e : N->edges)
                    if (!in_d.count(e)) A.nerves_attached = false;
            }
            if (seq[a] != N1.v || seq[b] != N2.v) A.nerves_attached = false;
        }
    }
    // partition of I_alpha and I_beta by the nerve intervals
    A.partition = true;
    std::vector<int> cov[2] = {std::vector<int>(bb.I[0].len, 0), std::vector<int>(bb.I[1].len, 0)};
    for (const auto& N : sp.nerves) {
        if (N.interval.empty()) continue;
        bool placed = false;
        for (int side = 0; side < 2 && !placed; ++side) {
            const Interval& I = bb.I[side];
            if (I.empty() || !inside(N.interval, I)) continue;
            for (int i = 0; i < N.interval.len; ++i) ++cov[side][rel_start(N.interval, I) + i];
            placed = true;
        }
        if (!placed) A.partition = false;
    }
    for (const auto& c : cov)
        for (int x : c)
            if (x != 1) A.partition = false;
    // every terminal between consecutive augmented terminals of an interval sits alone
    A.encloses = true;
    for (int side = 0; side < 2; ++side) {
        const Interval& I = bb.I[side];
        if (I.len < 2) continue;
        for (int i : between_terminals(I))
            if (!isolated(s1, sp.edges, terminal_at(s1, I.face, i))) A.encloses = false;
    }
    return A;
}

std::optional<CutSolution> assemble(const MwcInstance& s1, const std::vector<Splint>& splints) {
    std::vector<int> all;
    std::set<int> seen;
    for (const auto& sp : splints)
        for (int e : sp.edges) {
            if (!seen.insert(e).second) return std::nullopt;
            all.push_back(e);
        }
    std::sort(all.begin(), all.end());
    if (!verify_multiway_cut(s1, all)) return std::nullopt;
    return make_solution(s1, all, "splint");
}

LiteralReport literal_solve(const MwcInstance& inst, const LiteralOptions& opt) {
    LiteralReport rep;
    if (inst.k() != 2) throw std::invalid_argument("literal_solve handles k = 2");
    auto [s1, rec] = transform_instance(inst, TransformOptions{true, false});
    auto ad = augmented_dual(s1);
    auto K = build_cut_graph(s1, ad);
    NerveTable nt(ad);
    auto strings = enumerate_homotopy_strings(K, opt.hcap);
    const PlaneGraph& H = ad.graph;
    std::vector<int> roots;
    for (int v = 0; v < H.vertex_count(); ++v)
        if (!ad.is_aug_terminal(v)) roots.push_back(v);
    auto labels = bone_label_choices();

    struct Entry {
        Splint sp;
        Interval I[2];  // per terminal face 0 and 1
    };
    std::optional<CutSolution> best;
    for (int u : roots)
        for (int v : roots) {
            if (u >= v) continue;
            // bone 0 runs u -> v and bone 1 runs v -> u, so one face lies left of both; per orientation and bone,
            // the lightest splint of every (label, strings, intervals)
            std::map<std::string, Entry> found[2][2];
            for (int orient = 0; orient < 2; ++orient)
                for (int bone = 0; bone < 2; ++bone)
                    for (std::size_t li = 0; li < labels.size(); ++li) {
                        const auto& s = labels[li];
                        if (static_cast<int>(s.size()) > opt.max_groups) continue;
                        int m = static_cast<int>(s.size());
                        int nstr = m == 4 ? 8 : 2 * m + 1;
                        std::vector<std::size_t> pick(nstr, 0);
                        while (true) {
                            BoneSpec spec;
                            spec.alpha = orient;
                            spec.beta = 1 - orient;
                            spec.s = s;
                            spec.from = bone == 0 ? u : v;
                            spec.to = bone == 0 ? v : u;
                            spec.h.assign(2 * m + 1, {});
                            std::string key = std::to_string(li);
                            for (int i = 0, q = 0; i < 2 * m + 1; ++i) {
                                if (m == 4 && i == 4) continue;
                                key += "/" + std::to_string(pick[q]);
                                spec.h[i] = strings[pick[q++]];
                            }
                            bool trunc = false;
                            auto bbs = enumerate_broken_bones(s1, ad, nt, spec, opt.bone_limit, &trunc);
                            rep.truncated = rep.truncated || trunc;
                            for (const auto& bb : bbs) {
                                ++rep.candidates;
                                SplintAudit why;
                                auto sp = splint(s1, ad, K, nt, spec, bb, &why);
                                if (!sp) {
                                    if (!why.all() && why.failures() != "") {
                                        ++rep.rejections;
                                        if (rep.failures.size() < 20) rep.failures.push_back(why.failures());
                                    }
                                    continue;
                                }
                                ++rep.splints;
                                if (!audit_splint(s1, ad, K, spec, bb, *sp).all()) ++rep.audit_failures;
                                for (int j = 1; j <= m; ++j) {
                                    const Nerve& N1 = bb.nerves[2 * j - 2];
                                    const Nerve& N2 = bb.nerves[2 * j - 1];
                                    if (N1.interval.empty() || same_nerve(N1, N2)) continue;
                                    SplintTables tb;
                                    nerve_path(s1, ad, K, nt, spec.face(s[j - 1]), N1, N2, spec.h[2 * j - 1], true,
                                               &tb);
                                    ++rep.base_rows;
                                    if (!tb.base_row_matches) ++rep.base_row_failures;
                                }
                                Entry en;
                                en.sp = std::move(*sp);
                                en.I[spec.alpha] = bb.I[0];
                                en.I[spec.beta] = bb.I[1];
                                std::string k2 = key;
                                for (const auto& I : en.I)
                                    k2 += "|" + std::to_string(I.lo) + "," + std::to_string(I.len);
                                auto it = found[orient][bone].find(k2);
                                if (it == found[orient][bone].end() || en.sp.weight < it->second.sp.weight)
                                    found[orient][bone][k2] = std::move(en);
                            }
                            int q = 0;
                            for (; q < nstr; ++q) {
                                if (++pick[q] < strings.size()) break;
                                pick[q] = 0;
                            }
                            if (q == nstr) break;
                        }
                    }
            for (int orient = 0; orient < 2; ++orient)
                for (const auto& [k0, e0] : found[orient][0])
                    for (const auto& [k1, e1] : found[orient][1]) {
                        bool cover = true;
                        for (int f = 0; f < 2; ++f) {
                            int p = nt.p(f);
                            if (p < 2) continue;
                            const Interval &A = e0.I[f], &B = e1.I[f];
                            if (A.len + B.len != p) cover = false;
                            else if (!A.empty() && !B.empty() && (A.lo + A.len) % p != B.lo) cover = false;
                        }
                        if (!cover) continue;
                        auto cut = assemble(s1, {e0.sp, e1.sp});
                        if (!cut) continue;
                        auto C = step1_to_original(cut->edges, rec);
                        if (!verify_multiway_cut(inst, C)) continue;
                        auto sol = make_solution(inst, prune_to_minimal(inst, C), "splint");
                        if (!best || sol.weight < best->weight ||
                            (sol.weight == best->weight && sol.edges < best->edges))
                            best = sol;
                    }
        }
    rep.cut = best;
    return rep;
}

}  // namespace pmc
