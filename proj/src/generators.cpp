#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <set>

#include "pmc/oracle.hpp"

namespace pmc {

namespace {

struct Pt {
    long long x, y;
};

long long cross(const Pt& o, const Pt& a, const Pt& b) { return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x); }

bool segments_cross(const Pt& a, const Pt& b, const Pt& c, const Pt& d) {
    long long d1 = cross(a, b, c), d2 = cross(a, b, d), d3 = cross(c, d, a), d4 = cross(c, d, b);
    return ((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0));
}

// Half-plane class then cross product: a total clockwise order of directions starting at +x.
bool cw_less(const Pt& a, const Pt& b) {
    auto half = [](const Pt& p) { return (p.y < 0 || (p.y == 0 && p.x > 0)) ? 0 : 1; };
    // clockwise from +x: first directions with y<=0 (going down), then y>0
    int ha = half(a), hb = half(b);
    if (ha != hb) return ha < hb;
    return a.x * b.y - a.y * b.x < 0;
}

struct Geo {
    std::vector<Pt> pts;
    std::vector<std::pair<int, int>> edges;
};

// Plane graph from straight-line drawing; rotation is clockwise by angle.
PlaneGraph embed(const Geo& geo, const std::vector<Weight>& w) {
    const int n = static_cast<int>(geo.pts.size());
    std::vector<EdgeSpec> es;
    std::vector<std::vector<int>> rot(n);
    for (size_t e = 0; e < geo.edges.size(); ++e) {
        auto [u, v] = geo.edges[e];
        es.push_back({u, v, w[e]});
        rot[u].push_back(2 * static_cast<int>(e));
        rot[v].push_back(2 * static_cast<int>(e) + 1);
    }
    for (int v = 0; v < n; ++v) {
        std::sort(rot[v].begin(), rot[v].end(), [&](int a, int b) {
            auto other = [&](int d) { return (d & 1) ? geo.edges[d >> 1].first : geo.edges[d >> 1].second; };
            Pt da{geo.pts[other(a)].x - geo.pts[v].x, geo.pts[other(a)].y - geo.pts[v].y};
            Pt db{geo.pts[other(b)].x - geo.pts[v].x, geo.pts[other(b)].y - geo.pts[v].y};
            return cw_less(da, db);
        });
    }
    PlaneGraph tmp = build_plane_graph(n, es, rot, es.empty() ? -1 : 0, true);
    // bounded faces come out counter-clockwise (positive area); the unbounded one is negative
    int outer = 0;
    long long best = 0;
    for (const auto& f : tmp.faces()) {
        long long area = 0;
        for (int d : f.darts) {
            const Pt& a = geo.pts[tmp.origin(d)];
            const Pt& b = geo.pts[tmp.head(d)];
            area += a.x * b.y - a.y * b.x;
        }
        if (area < best) {
            best = area;
            outer = canonical_start(tmp, f.id);
        }
    }
    return build_plane_graph(n, es, rot, outer, true);
}

Geo greedy_triangulation(int n, std::mt19937_64& rng, int span) {
    Geo g;
    while (static_cast<int>(g.pts.size()) < n) {
        Pt p{static_cast<long long>(rng() % span), static_cast<long long>(rng() % span)};
        bool ok = true;
        for (size_t i = 0; i < g.pts.size() && ok; ++i) {
            if (g.pts[i].x == p.x && g.pts[i].y == p.y) ok = false;
            for (size_t j = i + 1; j < g.pts.size() && ok; ++j)
                if (cross(g.pts[i], g.pts[j], p) == 0) ok = false;
        }
        if (ok) g.pts.push_back(p);
    }
    std::vector<std::tuple<long long, std::uint64_t, int, int>> cand;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            long long dx = g.pts[i].x - g.pts[j].x, dy = g.pts[i].y - g.pts[j].y;
            cand.emplace_back(dx * dx + dy * dy, rng(), i, j);
        }
    std::sort(cand.begin(), cand.end());
    for (auto& [len, r, i, j] : cand) {
        bool ok = true;
        for (auto [a, b] : g.edges) {
            if (a == i || a == j || b == i || b == j) continue;
            if (segments_cross(g.pts[i], g.pts[j], g.pts[a], g.pts[b])) {
                ok = false;
                break;
            }
        }
        if (ok) g.edges.emplace_back(i, j);
    }
    return g;
}

Geo grid_geo(int r, int c) {
    Geo g;
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) g.pts.push_back({j, -i});
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) {
            if (j + 1 < c) g.edges.emplace_back(i * c + j, i * c + j + 1);
            if (i + 1 < r) g.edges.emplace_back(i * c + j, (i + 1) * c + j);
        }
    return g;
}

Geo wheel_geo(int rim) {
    Geo g;
    // rim on a convex lattice polygon: points of a large circle, rounded
    const double R = 1000.0;
    for (int i = 0; i < rim; ++i) {
        double a = 6.283185307179586 * i / rim;
        g.pts.push_back({static_cast<long long>(std::llround(R * std::cos(a))),
                         static_cast<long long>(std::llround(R * std::sin(a)))});
    }
    g.pts.push_back({0, 0});
    for (int i = 0; i < rim; ++i) {
        g.edges.emplace_back(i, (i + 1) % rim);
        g.edges.emplace_back(i, rim);
    }
    return g;
}

// Removes vertices (and incident edges) from a drawing.
Geo drop_vertices(const Geo& g, const std::set<int>& drop) {
    Geo out;
    std::vector<int> id(g.pts.size(), -1);
    for (size_t v = 0; v < g.pts.size(); ++v)
        if (!drop.count(static_cast<int>(v))) {
            id[v] = static_cast<int>(out.pts.size());
            out.pts.push_back(g.pts[v]);
        }
    for (auto [a, b] : g.edges)
        if (id[a] >= 0 && id[b] >= 0) out.edges.emplace_back(id[a], id[b]);
    return out;
}

bool on_hull(const Geo& g, int v) {
    const int n = static_cast<int>(g.pts.size());
    for (int u = 0; u < n; ++u) {
        if (u == v) continue;
        bool all_left = true, all_right = true;
        for (int w = 0; w < n; ++w) {
            if (w == u || w == v) continue;
            long long c = cross(g.pts[u], g.pts[v], g.pts[w]);
            if (c > 0) all_right = false;
            if (c < 0) all_left = false;
        }
        if (all_left || all_right) return true;
    }
    return false;
}

// Picks k faces and places terminals so that the minimum face cover has size k.
MwcInstance place_terminals(const PlaneGraph& g, const GeneratorSpec& spec, std::mt19937_64& rng,
                            std::vector<int> preferred_faces) {
    const int k = std::max(1, spec.k);
    for (int attempt = 0; attempt < 100; ++attempt) {
        std::vector<int> faces = preferred_faces;
        std::vector<int> pool;
        for (int f = 0; f < g.face_count(); ++f)
            if (std::find(faces.begin(), faces.end(), f) == faces.end()) pool.push_back(f);
        while (static_cast<int>(faces.size()) < k && !pool.empty()) {
            size_t i = rng() % pool.size();
            faces.push_back(pool[i]);
            pool.erase(pool.begin() + static_cast<long>(i));
        }
        faces.resize(std::min<size_t>(faces.size(), k));
        if (static_cast<int>(faces.size()) < k) break;
        // distribute terminals: at least one per face
        int total = std::max(spec.terminals, k);
        std::vector<int> per(k, 1);
        for (int i = k; i < total; ++i) per[rng() % k]++;
        std::set<int> used;
        std::vector<int> T;
        bool ok = true;
        for (int a = 0; a < k && ok; ++a) {
            std::vector<int> verts;
            for (int d : g.face(faces[a]).darts) {
                int v = g.origin(d);
                if (!used.count(v) && std::find(verts.begin(), verts.end(), v) == verts.end()) verts.push_back(v);
            }
            if (static_cast<int>(verts.size()) < per[a]) {
                ok = false;
                break;
            }
            for (int i = 0; i < per[a]; ++i) {
                size_t j = rng() % verts.size();
                T.push_back(verts[j]);
                used.insert(verts[j]);
                verts.erase(verts.begin() + static_cast<long>(j));
            }
        }
        if (!ok) continue;
        auto covers = compute_face_cover(g, T, k - 1);
        if (!covers.empty()) continue;
        try {
            MwcInstance inst = make_instance(g, T, faces);
            bool all_nonempty = true;
            for (const auto& tf : inst.faces) all_nonempty = all_nonempty && tf.p() > 0;
            if (!all_nonempty) continue;
            return inst;
        } catch (const InstanceError&) {
            continue;
        }
    }
    throw OracleError("generator could not place terminals on " + std::to_string(k) + " faces");
}

}  // namespace

MwcInstance generate(const GeneratorSpec& spec) {
    std::mt19937_64 rng(spec.seed * 0x9E3779B97F4A7C15ULL + 12345);
    Geo geo;
    std::vector<int> preferred;
    if (spec.kind == "grid") {
        geo = grid_geo(spec.rows, spec.cols);
    } else if (spec.kind == "wheel") {
        geo = wheel_geo(std::max(3, spec.n));
    } else if (spec.kind == "triangulation") {
        geo = greedy_triangulation(std::max(3, spec.n), rng, 4 * spec.n + 8);
    } else if (spec.kind == "dumbbell") {
        // triangulation with two non-adjacent interior vertices removed: their links become the two holes
        for (int attempt = 0; attempt < 200; ++attempt) {
            Geo t = greedy_triangulation(std::max(6, spec.n + 2), rng, 4 * spec.n + 12);
            std::vector<int> interior;
            for (int v = 0; v < static_cast<int>(t.pts.size()); ++v)
                if (!on_hull(t, v)) interior.push_back(v);
            if (interior.size() < 2) continue;
            int a = interior[rng() % interior.size()], b = interior[rng() % interior.size()];
            if (a == b) continue;
            std::set<int> na, nb;
            for (auto [x, y] : t.edges) {
                if (x == a) na.insert(y);
                if (y == a) na.insert(x);
                if (x == b) nb.insert(y);
                if (y == b) nb.insert(x);
            }
            if (na.count(b)) continue;
            Geo h = drop_vertices(t, {a, b});
            std::vector<Weight> w(h.edges.size());
            for (auto& x : w) x = 1 + static_cast<Weight>(rng() % std::max(1, spec.max_weight));
            PlaneGraph g = embed(h, w);
            std::vector<std::pair<int, int>> by_len;
            for (int f = 0; f < g.face_count(); ++f)
                if (f != g.outer_face()) by_len.push_back({-g.face(f).length(), f});
            std::sort(by_len.begin(), by_len.end());
            GeneratorSpec s2 = spec;
            s2.k = 2;
            try {
                return place_terminals(g, s2, rng, std::vector<int>{by_len[0].second, by_len[1].second});
            } catch (const OracleError&) {
                continue;
            }
        }
        throw OracleError("dumbbell generation failed");
    } else {
        throw OracleError("unknown generator kind '" + spec.kind + "'");
    }
    std::vector<Weight> w(geo.edges.size());
    for (auto& x : w) x = 1 + static_cast<Weight>(rng() % std::max(1, spec.max_weight));
    PlaneGraph g = embed(geo, w);
    if (spec.kind == "grid" && spec.corners) {
        int r = spec.rows, c = spec.cols;
        std::vector<int> T{0, c - 1, (r - 1) * c, r * c - 1};
        return make_instance(g, T, {g.outer_face()});
    }
    return place_terminals(g, spec, rng, preferred);
}

}  // namespace pmc
