#include "pmc/transform.hpp"

#include <algorithm>
#include <set>

namespace pmc {

namespace {

// Index of the first occurrence of each vertex along the canonical walk of face f.
std::vector<int> walk_from_canonical(const PlaneGraph& g, int f) {
    int d0 = canonical_start(g, f);
    std::vector<int> w;
    int d = d0;
    do {
        w.push_back(d);
        d = g.next(d);
    } while (d != d0);
    return w;
}

// Dart of the transformed graph that sits on the same side as step-1 dart d after duplication.
int side_dart(int d, const std::vector<std::array<int, 2>>& copies) {
    int e = d >> 1;
    return (d & 1) ? 2 * copies[e][1] + 1 : 2 * copies[e][0];
}

}  // namespace

std::pair<MwcInstance, TransformRecord> transform_instance(const MwcInstance& inst, TransformOptions opt) {
    if (!inst.g.connected()) throw InstanceError("transform_instance requires a connected graph");
    TransformRecord rec;
    rec.original_edges = inst.g.edge_count();
    rec.applied_step1 = opt.step1;
    rec.applied_step23 = opt.step23;

    // Step 1: subdivide edges joining consecutive terminals, then close each terminal face with unit edges.
    GraphBuilder b(inst.g);
    const int m0 = inst.g.edge_count();
    rec.s1_from.resize(m0);
    rec.s1_kind.assign(m0, EdgeOrigin::Original);
    for (int e = 0; e < m0; ++e) rec.s1_from[e] = e;
    std::vector<int> face_darts;  // a dart of each terminal face, valid after subdivision
    for (const auto& tf : inst.faces) face_darts.push_back(canonical_start(inst.g, tf.face));
    if (opt.step1) {
        std::vector<char> split(m0, 0);
        for (const auto& tf : inst.faces) {
            int p = tf.p();
            for (int i = 0; i < p; ++i) {
                int a = tf.terminals[i], c = tf.terminals[(i + 1) % p];
                for (int e = 0; e < m0; ++e) {
                    auto [u, v] = inst.g.ends(e);
                    if (split[e]) continue;
                    if ((u == a && v == c) || (u == c && v == a)) split[e] = 1;
                }
            }
        }
        for (int e = 0; e < m0; ++e) {
            if (!split[e]) continue;
            int v = inst.g.ends(e)[1];
            int x = b.add_vertex();
            int e2 = b.add_edge(x, v, inst.g.weight(e));
            b.insert_before(2 * e2 + 1, 2 * e + 1);
            b.set_origin(2 * e + 1, x);
            b.insert_before(2 * e + 1, -1);
            b.insert_before(2 * e2, -1);
            rec.s1_from.push_back(e);
            rec.s1_kind.push_back(EdgeOrigin::Subdivided);
            rec.s1_kind[e] = EdgeOrigin::Subdivided;
        }
        PlaneGraph sub = b.build(true);
        std::vector<int> new_face_darts;
        for (size_t a = 0; a < inst.faces.size(); ++a) {
            const auto& tf = inst.faces[a];
            int f = sub.face_of(face_darts[a]);
            auto walk = walk_from_canonical(sub, f);
            // leaving dart at the first occurrence of each terminal
            std::vector<int> leave(tf.p(), -1);
            for (int d : walk) {
                int v = sub.origin(d);
                for (int i = 0; i < tf.p(); ++i)
                    if (tf.terminals[i] == v && leave[i] < 0) leave[i] = d;
            }
            int p = tf.p();
            std::vector<int> ce(p);
            for (int i = 0; i < p; ++i) {
                ce[i] = b.add_edge(tf.terminals[i], tf.terminals[(i + 1) % p], 1);
                rec.s1_from.push_back(-1);
                rec.s1_kind.push_back(EdgeOrigin::TerminalEdge);
            }
            for (int i = 0; i < p; ++i) {
                int in = ce[(i + p - 1) % p];
                b.insert_before(2 * in + 1, leave[i]);
                b.insert_before(2 * ce[i], leave[i]);
            }
            new_face_darts.push_back(2 * ce[0]);
        }
        face_darts = new_face_darts;
    }
    PlaneGraph g1 = b.build(true);
    std::vector<int> g1_faces;
    for (int d : face_darts) g1_faces.push_back(g1.face_of(d));
    rec.step1 = make_instance(g1, inst.terminals, g1_faces);
    // keep the original indexing of terminals on each face
    for (size_t a = 0; a < inst.faces.size(); ++a) rec.step1.faces[a].terminals = inst.faces[a].terminals;
    rec.n1 = g1.vertex_count();
    rec.scale = 6LL * rec.n1;
    rec.additive = 0;
    for (const auto& tf : inst.faces)
        if (tf.p() > 1 && opt.step1) rec.additive += tf.p();

    if (!opt.step23) {
        rec.final_from.resize(g1.edge_count());
        rec.copies.resize(g1.edge_count());
        for (int e = 0; e < g1.edge_count(); ++e) {
            rec.final_from[e] = e;
            rec.copies[e] = {e, e};
        }
        MwcInstance out = rec.step1;
        out.transformed = false;
        return {out, rec};
    }

    // Step 2: duplicate every edge at weight 3n * w.
    GraphBuilder b2(g1);
    const int m1 = g1.edge_count();
    rec.copies.resize(m1);
    rec.final_from.assign(m1, -1);
    for (int e = 0; e < m1; ++e) {
        Weight w = wmul(g1.weight(e), 3LL * rec.n1);
        b2.weight(e) = w;
        int c = b2.add_edge(g1.ends(e)[0], g1.ends(e)[1], w);
        b2.insert_after(2 * c, 2 * e);
        b2.insert_before(2 * c + 1, 2 * e + 1);
        rec.copies[e] = {e, c};
        rec.final_from.push_back(e);
    }
    for (int e = 0; e < m1; ++e) rec.final_from[e] = e;
    PlaneGraph g2 = b2.build(true);

    // Step 3: triangulate every face of the step-1 graph except the terminal faces, doubling each chord.
    std::set<int> term_faces1(g1_faces.begin(), g1_faces.end());
    std::vector<std::vector<int>> walks;
    for (int f = 0; f < g1.face_count(); ++f) {
        if (term_faces1.count(f)) continue;
        int d1 = g1.face(f).darts.front();
        int f2 = g2.face_of(side_dart(d1, rec.copies));
        if (g2.face(f2).length() <= 3) continue;
        walks.push_back(walk_from_canonical(g2, f2));
    }
    GraphBuilder b3(g2);
    for (auto walk : walks) {
        while (walk.size() > 3) {
            const int L = static_cast<int>(walk.size());
            int i = 0;
            for (int j = 0; j < L; ++j) {
                if (b3.origin(walk[j]) != b3.origin(walk[(j + 2) % L])) {
                    i = j;
                    break;
                }
            }
            int di = walk[i], di1 = walk[(i + 1) % L], di2 = walk[(i + 2) % L];
            int x = b3.origin(di), y = b3.origin(di2);
            int c = b3.add_edge(x, y, 1);
            int c2 = b3.add_edge(x, y, 1);
            // at x: ..., c, c2, d_i ; at y: ..., twin(c2), twin(c), d_{i+2}
            b3.insert_before(2 * c, di);
            b3.insert_before(2 * c2, di);
            b3.insert_before(2 * c + 1, di2);
            b3.insert_before(2 * c2 + 1, 2 * c + 1);
            (void)di1;
            rec.final_from.push_back(-1);
            rec.final_from.push_back(-1);
            rec.x_edges.push_back(c);
            rec.x_edges.push_back(c2);
            // remaining face: replace d_i, d_{i+1} by c
            std::vector<int> nw;
            for (int j = 0; j < L; ++j) {
                int q = (i + j) % L;
                if (j == 0)
                    nw.push_back(2 * c);
                else if (j == 1)
                    continue;
                else
                    nw.push_back(walk[q]);
            }
            walk = nw;
        }
    }
    PlaneGraph g3 = b3.build(true);
    std::vector<int> final_faces;
    for (int d : face_darts) final_faces.push_back(g3.face_of(side_dart(d, rec.copies)));
    MwcInstance out = make_instance(g3, inst.terminals, final_faces);
    out.transformed = check_transformed(out).all();
    return {out, rec};
}

TransformedReport check_transformed(const MwcInstance& inst) {
    const auto& g = inst.g;
    TransformedReport r;
    r.bridgeless = true;
    for (int e = 0; e < g.edge_count(); ++e)
        if (g.is_bridge(e)) r.bridgeless = false;
    std::vector<int> owner(g.vertex_count(), -1);
    std::vector<char> is_tf(g.face_count(), 0);
    r.faces_disjoint = true;
    r.faces_all_terminals = true;
    auto tmask = inst.terminal_mask();
    for (int a = 0; a < inst.k(); ++a) {
        int f = inst.faces[a].face;
        is_tf[f] = 1;
        for (int d : g.face(f).darts) {
            int v = g.origin(d);
            if (owner[v] >= 0 && owner[v] != a) r.faces_disjoint = false;
            owner[v] = a;
            if (!tmask[v]) r.faces_all_terminals = false;
        }
    }
    r.short_other_faces = true;
    r.neighbors_are_digons = true;
    for (int f = 0; f < g.face_count(); ++f) {
        if (!is_tf[f] && g.face(f).length() > 3) r.short_other_faces = false;
        if (is_tf[f] || g.face(f).length() == 3) {
            for (int d : g.face(f).darts) {
                int f2 = g.face_of(twin(d));
                if (f2 == f || g.face(f2).length() != 2) r.neighbors_are_digons = false;
            }
        }
    }
    return r;
}

std::vector<int> collapse_copies(const std::vector<int>& transformed_cut, const TransformRecord& rec) {
    std::vector<int> cnt(rec.copies.size(), 0);
    for (int e : transformed_cut) {
        int s = rec.final_from.at(e);
        if (s >= 0) cnt[s]++;
    }
    std::vector<int> out;
    for (size_t s = 0; s < cnt.size(); ++s) {
        bool same = rec.copies[s][0] == rec.copies[s][1];
        if (same ? cnt[s] >= 1 : cnt[s] == 2)
            out.push_back(static_cast<int>(s));
        else if (cnt[s] == 1)
            throw RecoverError("cut contains exactly one copy of step-1 edge " + std::to_string(s));
    }
    return out;
}

std::vector<int> step1_to_original(const std::vector<int>& s1_cut, const TransformRecord& rec) {
    std::vector<int> out;
    for (int s : s1_cut) {
        int o = rec.s1_from.at(s);
        if (o >= 0) out.push_back(o);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

CutSolution recover_optimum(const MwcInstance& original, const std::vector<int>& transformed_cut,
                            const TransformRecord& rec) {
    auto s1 = collapse_copies(transformed_cut, rec);
    auto C = step1_to_original(s1, rec);
    CutSolution sol = make_solution(original, C, "recovered");
    if (!sol.feasible) throw RecoverError("recovered edge set is not a multiway cut");
    return sol;
}

}  // namespace pmc
