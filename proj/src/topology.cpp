#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

#include "pmc/warmup_solver.hpp"

namespace pmc {

namespace {

int dart_origin(const SkeletonShape& S, int d) { return S.edges[d >> 1][d & 1]; }

int rot_next(const SkeletonShape& S, int d) {
    const auto& r = S.rotation[dart_origin(S, d)];
    auto it = std::find(r.begin(), r.end(), d);
    ++it;
    return it == r.end() ? r.front() : *it;
}

void trace(SkeletonShape& S) {
    int D = 2 * static_cast<int>(S.edges.size());
    std::vector<int> face(D, -1);
    S.faces.clear();
    for (int d0 = 0; d0 < D; ++d0) {
        if (face[d0] >= 0) continue;
        std::vector<int> walk;
        int d = d0;
        do {
            face[d] = static_cast<int>(S.faces.size());
            walk.push_back(d);
            d = rot_next(S, d ^ 1);
        } while (d != d0);
        S.faces.push_back(std::move(walk));
    }
    S.face_count = static_cast<int>(S.faces.size());
    S.edge_faces.assign(S.edges.size(), {-1, -1});
    for (std::size_t e = 0; e < S.edges.size(); ++e) S.edge_faces[e] = {face[2 * e], face[2 * e + 1]};
}

bool connected(const SkeletonShape& S) {
    if (S.vertices == 0) return true;
    std::vector<int> comp(S.vertices);
    std::iota(comp.begin(), comp.end(), 0);
    auto find = [&](int x) {
        while (comp[x] != x) x = comp[x] = comp[comp[x]];
        return x;
    };
    for (auto [a, b] : S.edges) comp[find(a)] = find(b);
    for (int v = 0; v < S.vertices; ++v)
        if (find(v) != find(0)) return false;
    return true;
}

// Smallest breadth-first code over all start darts; orientation preserving.
std::string canonical_code(const SkeletonShape& S) {
    int D = 2 * static_cast<int>(S.edges.size());
    std::vector<int> best;
    for (int d0 = 0; d0 < D; ++d0) {
        std::vector<int> label(S.vertices, -1), start(S.vertices, -1), order;
        std::vector<int> code;
        int v0 = dart_origin(S, d0);
        label[v0] = 0;
        start[v0] = d0;
        order.push_back(v0);
        for (std::size_t i = 0; i < order.size(); ++i) {
            int v = order[i];
            const auto& r = S.rotation[v];
            int at = static_cast<int>(std::find(r.begin(), r.end(), start[v]) - r.begin());
            code.push_back(static_cast<int>(r.size()));
            for (std::size_t j = 0; j < r.size(); ++j) {
                int d = r[(at + j) % r.size()];
                int w = dart_origin(S, d ^ 1);
                if (label[w] < 0) {
                    label[w] = static_cast<int>(order.size());
                    start[w] = d ^ 1;
                    order.push_back(w);
                }
                const auto& rw = S.rotation[w];
                int sw = static_cast<int>(std::find(rw.begin(), rw.end(), start[w]) - rw.begin());
                int pw = static_cast<int>(std::find(rw.begin(), rw.end(), d ^ 1) - rw.begin());
                code.push_back(label[w]);
                code.push_back((pw - sw + static_cast<int>(rw.size())) % static_cast<int>(rw.size()));
            }
        }
        if (best.empty() || code < best) best = std::move(code);
    }
    std::string s;
    for (int x : best) s += std::to_string(x) + ".";
    return s;
}

SkeletonShape cycle_shape(int V) {
    SkeletonShape S;
    S.vertices = V;
    S.rotation.assign(V, {});
    for (int i = 0; i < V; ++i) S.edges.push_back({i, (i + 1) % V});
    for (int i = 0; i < V; ++i) S.rotation[i] = {2 * i, 2 * ((i + V - 1) % V) + 1};
    return S;
}

// Replaces core edge e by a chain through `sub[e]` new degree-2 vertices.
SkeletonShape subdivide(const SkeletonShape& core, const std::vector<int>& sub) {
    SkeletonShape S;
    S.vertices = core.vertices;
    std::vector<int> tail_dart(core.edges.size()), head_dart(core.edges.size());
    std::vector<std::vector<int>> extra;
    for (std::size_t e = 0; e < core.edges.size(); ++e) {
        int prev = core.edges[e][0];
        int first = -1, last = -1;
        for (int i = 0; i <= sub[e]; ++i) {
            int next = i == sub[e] ? core.edges[e][1] : S.vertices++;
            int id = static_cast<int>(S.edges.size());
            S.edges.push_back({prev, next});
            if (i == 0) first = 2 * id;
            if (i > 0) extra.push_back({2 * id - 1, 2 * id});  // vertex prev: back dart, forward dart
            last = 2 * id + 1;
            prev = next;
        }
        tail_dart[e] = first;
        head_dart[e] = last;
    }
    S.rotation.assign(S.vertices, {});
    for (int v = 0; v < core.vertices; ++v)
        for (int d : core.rotation[v]) S.rotation[v].push_back((d & 1) ? head_dart[d >> 1] : tail_dart[d >> 1]);
    for (const auto& pair : extra) S.rotation[dart_origin(S, pair[1])] = pair;
    return S;
}

void matchings(std::vector<int>& mate, int at, const std::function<void()>& fn) {
    int n = static_cast<int>(mate.size());
    while (at < n && mate[at] >= 0) ++at;
    if (at == n) {
        fn();
        return;
    }
    for (int j = at + 1; j < n; ++j) {
        if (mate[j] >= 0) continue;
        mate[at] = j;
        mate[j] = at;
        matchings(mate, at + 1, fn);
        mate[at] = mate[j] = -1;
    }
}

std::vector<SkeletonShape> cubic_cores(int k) {
    int n3 = 2 * k - 4;
    int h = 3 * n3;
    std::vector<SkeletonShape> out;
    std::set<std::string> seen;
    std::vector<int> mate(h, -1);
    matchings(mate, 0, [&] {
        SkeletonShape base;
        base.vertices = n3;
        std::vector<int> dart_of(h);
        for (int i = 0; i < h; ++i) {
            if (mate[i] < i) continue;
            int id = static_cast<int>(base.edges.size());
            base.edges.push_back({i / 3, mate[i] / 3});
            dart_of[i] = 2 * id;
            dart_of[mate[i]] = 2 * id + 1;
        }
        if (!connected(base)) return;
        for (int flips = 0; flips < (1 << n3); ++flips) {
            SkeletonShape S = base;
            S.rotation.assign(n3, {});
            for (int v = 0; v < n3; ++v) {
                if (flips >> v & 1) S.rotation[v] = {dart_of[3 * v], dart_of[3 * v + 2], dart_of[3 * v + 1]};
                else S.rotation[v] = {dart_of[3 * v], dart_of[3 * v + 1], dart_of[3 * v + 2]};
            }
            trace(S);
            if (S.face_count != k) continue;
            std::string code = canonical_code(S);
            if (seen.insert(code).second) {
                S.code = code;
                out.push_back(std::move(S));
            }
        }
    });
    return out;
}

void compositions(int parts, int max_total, std::vector<int>& cur, const std::vector<int>& lo,
                  const std::function<void()>& fn) {
    int i = static_cast<int>(cur.size());
    if (i == parts) {
        fn();
        return;
    }
    int used = std::accumulate(cur.begin(), cur.end(), 0);
    int rest_min = 0;
    for (int j = i + 1; j < parts; ++j) rest_min += lo[j];
    for (int x = lo[i]; used + x + rest_min <= max_total; ++x) {
        cur.push_back(x);
        compositions(parts, max_total, cur, lo, fn);
        cur.pop_back();
    }
}

long sat_mul(long a, long b) {
    if (a == 0 || b == 0) return 0;
    if (a > std::numeric_limits<long>::max() / b) return std::numeric_limits<long>::max();
    return a * b;
}

long sat_add(long a, long b) {
    if (a > std::numeric_limits<long>::max() - b) return std::numeric_limits<long>::max();
    return a + b;
}

long sat_pow(long a, int e) {
    long r = 1;
    while (e-- > 0) r = sat_mul(r, a);
    return r;
}

int specified_strings(int m) { return m == 4 ? 8 : 2 * m + 1; }

}  // namespace

std::vector<SkeletonShape> enumerate_skeleton_candidates(int k) {
    std::vector<SkeletonShape> out;
    if (k <= 1) return out;
    int max_v = 4 * k + 1;
    std::set<std::string> seen;
    auto add = [&](SkeletonShape S) {
        trace(S);
        if (S.face_count != k || !connected(S)) return;
        for (auto [a, b] : S.edges)
            if (a == b) return;
        std::string code = canonical_code(S);
        if (!seen.insert(code).second) return;
        S.code = code;
        out.push_back(std::move(S));
    };
    if (k == 2) {
        for (int V = 2; V <= max_v; ++V) add(cycle_shape(V));
        return out;
    }
    for (const SkeletonShape& core : cubic_cores(k)) {
        int E = static_cast<int>(core.edges.size());
        std::vector<int> lo(E, 0);
        for (int e = 0; e < E; ++e)
            if (core.edges[e][0] == core.edges[e][1]) lo[e] = 1;
        std::vector<int> cur;
        compositions(E, max_v - core.vertices, cur, lo, [&] { add(subdivide(core, cur)); });
    }
    return out;
}

std::vector<std::vector<int>> bone_label_choices() {
    std::vector<std::vector<int>> out;
    for (int m = 0; m <= 4; ++m) {
        for (int bits = 0; bits < (1 << m); ++bits) {
            std::vector<int> s(m);
            int count[2] = {0, 0};
            for (int i = 0; i < m; ++i) ++count[s[i] = bits >> i & 1];
            if (count[0] > 2 || count[1] > 2) continue;
            bool ok = true;
            for (int i = 0; i + 1 < m; ++i)
                if (s[i] == s[i + 1] && !(m == 4 && i == 1)) ok = false;
            if (ok) out.push_back(s);
        }
    }
    return out;
}

TopologyCount enumerate_topologies(int k, const std::vector<HomotopyString>& strings, long limit,
                                   const std::function<bool(const Topology&)>& fn) {
    TopologyCount cnt;
    auto shapes = enumerate_skeleton_candidates(k);
    auto labels = bone_label_choices();
    long N = static_cast<long>(strings.size());
    cnt.skeletons = static_cast<long>(shapes.size());
    cnt.bijections = 1;
    for (int i = 2; i <= k; ++i) cnt.bijections *= i;
    long per_bone = 0, per_bone_s = static_cast<long>(labels.size());
    for (const auto& s : labels) per_bone = sat_add(per_bone, sat_pow(N, specified_strings(static_cast<int>(s.size()))));
    for (const auto& S : shapes) {
        int E = static_cast<int>(S.edges.size());
        cnt.s_choices = sat_add(cnt.s_choices, sat_pow(per_bone_s, E));
        cnt.topologies = sat_add(cnt.topologies, sat_mul(cnt.bijections, sat_pow(per_bone, E)));
    }
    if (N == 0) return cnt;

    long produced = 0;
    bool stop = false;
    for (const auto& S : shapes) {
        if (stop) break;
        int E = static_cast<int>(S.edges.size());
        std::vector<int> perm(k);
        std::iota(perm.begin(), perm.end(), 0);
        do {
            Topology T;
            T.S = &S;
            T.face_of = perm;
            T.bones.assign(E, {});
            // odometer over (label, strings) per bone
            std::vector<int> lab(E, 0);
            std::vector<std::vector<long>> str(E);
            auto reset_strings = [&](int b) {
                int m = static_cast<int>(labels[lab[b]].size());
                str[b].assign(2 * m + 1, 0);
                T.bones[b].s = labels[lab[b]];
                T.bones[b].h.assign(2 * m + 1, strings[0]);
            };
            for (int b = 0; b < E; ++b) reset_strings(b);
            while (true) {
                if (produced >= limit) {
                    cnt.truncated = true;
                    stop = true;
                    break;
                }
                ++produced;
                if (!fn(T)) {
                    stop = true;
                    break;
                }
                int b = 0;
                for (; b < E; ++b) {
                    // advance strings of bone b, skipping the unspecified middle string
                    auto& v = str[b];
                    int m = static_cast<int>(T.bones[b].s.size());
                    std::size_t i = 0;
                    for (; i < v.size(); ++i) {
                        if (m == 4 && i == 4) continue;
                        if (++v[i] < N) {
                            T.bones[b].h[i] = strings[v[i]];
                            break;
                        }
                        v[i] = 0;
                        T.bones[b].h[i] = strings[0];
                    }
                    if (i < v.size()) break;
                    if (++lab[b] < static_cast<int>(labels.size())) {
                        reset_strings(b);
                        break;
                    }
                    lab[b] = 0;
                    reset_strings(b);
                }
                if (b == E) break;
            }
        } while (!stop && std::next_permutation(perm.begin(), perm.end()));
    }
    return cnt;
}

}  // namespace pmc
