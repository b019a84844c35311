#include "pmc/instance.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

#include "json.hpp"

namespace pmc {

using ojson = nlohmann::ordered_json;

std::vector<int> MwcInstance::terminal_face_of() const {
    std::vector<int> tf(g.vertex_count(), -1);
    for (int a = 0; a < k(); ++a)
        for (int t : faces[a].terminals) tf[t] = a;
    return tf;
}

std::vector<char> MwcInstance::terminal_mask() const {
    std::vector<char> m(g.vertex_count(), 0);
    for (int t : terminals) m[t] = 1;
    return m;
}

int canonical_start(const PlaneGraph& g, int f) {
    const auto& w = g.face(f).darts;
    return *std::min_element(w.begin(), w.end());
}

std::vector<TerminalFace> assign_terminals(const PlaneGraph& g, const std::vector<int>& terminals,
                                           const std::vector<int>& face_ids) {
    std::vector<TerminalFace> out(face_ids.size());
    std::vector<int> owner(g.vertex_count(), -1);
    std::vector<char> is_t(g.vertex_count(), 0);
    for (int t : terminals) is_t[t] = 1;
    for (size_t a = 0; a < face_ids.size(); ++a) {
        int f = face_ids[a];
        out[a].face = f;
        for (int d : g.face(f).darts) {
            int v = g.origin(d);
            if (is_t[v] && owner[v] < 0) owner[v] = static_cast<int>(a);
        }
    }
    for (int t : terminals)
        if (owner[t] < 0) throw InstanceError("terminal " + std::to_string(t) + " is not on any terminal face");
    for (size_t a = 0; a < face_ids.size(); ++a) {
        int f = face_ids[a];
        int d0 = canonical_start(g, f);
        out[a].face_dart = d0;
        int d = d0;
        std::vector<char> seen(g.vertex_count(), 0);
        do {
            int v = g.origin(d);
            if (owner[v] == static_cast<int>(a) && !seen[v]) {
                seen[v] = 1;
                out[a].terminals.push_back(v);
            }
            d = g.next(d);
        } while (d != d0);
    }
    return out;
}

MwcInstance make_instance(PlaneGraph g, std::vector<int> terminals, const std::vector<int>& face_ids) {
    MwcInstance inst;
    std::sort(terminals.begin(), terminals.end());
    terminals.erase(std::unique(terminals.begin(), terminals.end()), terminals.end());
    inst.faces = assign_terminals(g, terminals, face_ids);
    inst.terminals = std::move(terminals);
    inst.g = std::move(g);
    return inst;
}

Fraction parse_fraction(const std::string& s) {
    Fraction f;
    auto bad = [&]() { return InstanceError("malformed weight '" + s + "'"); };
    if (s.empty()) throw bad();
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        try {
            size_t i1 = 0, i2 = 0;
            f.num = std::stoll(s.substr(0, slash), &i1);
            f.den = std::stoll(s.substr(slash + 1), &i2);
            if (i1 != slash || i2 != s.size() - slash - 1 || f.den <= 0) throw bad();
        } catch (const std::logic_error&) {
            throw bad();
        }
    } else {
        size_t i = 0;
        bool neg = false;
        if (s[0] == '-' || s[0] == '+') {
            neg = s[0] == '-';
            i = 1;
        }
        long long num = 0, den = 1;
        bool digits = false, dot = false;
        for (; i < s.size(); ++i) {
            char c = s[i];
            if (c == '.' && !dot) {
                dot = true;
            } else if (c >= '0' && c <= '9') {
                digits = true;
                if (num > (1LL << 50)) throw bad();
                num = num * 10 + (c - '0');
                if (dot) den *= 10;
            } else {
                throw bad();
            }
        }
        if (!digits) throw bad();
        f.num = neg ? -num : num;
        f.den = den;
    }
    long long g = std::gcd(f.num < 0 ? -f.num : f.num, f.den);
    if (g > 1) {
        f.num /= g;
        f.den /= g;
    }
    return f;
}

std::vector<Weight> scale_fractions(const std::vector<Fraction>& w) {
    long long l = 1;
    for (const auto& f : w) {
        l = std::lcm(l, f.den);
        if (l > (1LL << 40)) throw InstanceError("weight denominators too large");
    }
    std::vector<Weight> out(w.size());
    for (size_t i = 0; i < w.size(); ++i) out[i] = w[i].num * (l / w[i].den);
    return out;
}

MwcInstance parse_instance(const std::string& text) {
    ojson j;
    try {
        j = ojson::parse(text);
    } catch (const std::exception& e) {
        throw InstanceError(std::string("invalid JSON: ") + e.what());
    }
    auto need = [&](const char* key) -> const ojson& {
        if (!j.contains(key)) throw InstanceError(std::string("missing key '") + key + "'");
        return j.at(key);
    };
    try {
        int n = need("vertices").get<int>();
        const auto& je = need("edges");
        if (!je.is_array()) throw InstanceError("'edges' must be an array");
        int m = static_cast<int>(je.size());
        std::vector<EdgeSpec> es(m);
        std::vector<Fraction> fw(m);
        std::vector<char> inf(m, 0), seen(m, 0);
        for (const auto& row : je) {
            if (!row.is_array() || row.size() != 4) throw InstanceError("edge rows must be [id,u,v,weight]");
            int id = row[0].get<int>();
            if (id < 0 || id >= m || seen[id]) throw InstanceError("edge ids must be 0..m-1 without repeats");
            seen[id] = 1;
            es[id].u = row[1].get<int>();
            es[id].v = row[2].get<int>();
            const auto& w = row[3];
            if (w.is_number_integer()) {
                fw[id] = {w.get<long long>(), 1};
            } else if (w.is_string()) {
                std::string s = w.get<std::string>();
                if (s == "inf")
                    inf[id] = 1;
                else
                    fw[id] = parse_fraction(s);
            } else {
                throw InstanceError("weights must be integers or strings (no floats)");
            }
        }
        auto scaled = scale_fractions(fw);
        for (int e = 0; e < m; ++e) es[e].w = inf[e] ? kInf : scaled[e];
        auto rot = need("rotation").get<std::vector<std::vector<int>>>();
        int outer = need("outer_face_dart").get<int>();
        PlaneGraph g;
        try {
            g = build_plane_graph(n, es, rot, outer, true);
        } catch (const GraphError& e) {
            throw InstanceError(e.what());
        }
        auto T = need("terminals").get<std::vector<int>>();
        for (int t : T)
            if (t < 0 || t >= n) throw InstanceError("terminal out of range");
        std::vector<int> face_ids;
        std::vector<int> given_darts;
        if (j.contains("terminal_faces")) {
            for (const auto& tf : j.at("terminal_faces")) {
                int d = tf.at("face_dart").get<int>();
                if (d < 0 || d >= g.dart_count()) throw InstanceError("face_dart out of range");
                int f = g.face_of(d);
                if (std::find(face_ids.begin(), face_ids.end(), f) != face_ids.end())
                    throw InstanceError("terminal face listed twice");
                face_ids.push_back(f);
                given_darts.push_back(d);
            }
            if (face_ids.empty() && !T.empty()) throw InstanceError("terminal_faces is empty");
        } else if (!T.empty()) {
            face_ids = min_face_cover(g, T);
        }
        MwcInstance inst = make_instance(std::move(g), T, face_ids);
        for (size_t a = 0; a < given_darts.size(); ++a) inst.faces[a].face_dart = given_darts[a];
        return inst;
    } catch (const nlohmann::json::exception& e) {
        throw InstanceError(std::string("schema violation: ") + e.what());
    }
}

std::string serialize_instance(const MwcInstance& inst) {
    const auto& g = inst.g;
    ojson j;
    j["vertices"] = g.vertex_count();
    ojson edges = ojson::array();
    for (int e = 0; e < g.edge_count(); ++e) {
        ojson w = is_inf(g.weight(e)) ? ojson("inf") : ojson(g.weight(e));
        edges.push_back(ojson::array({e, g.ends(e)[0], g.ends(e)[1], w}));
    }
    j["edges"] = edges;
    ojson rot = ojson::array();
    for (int v = 0; v < g.vertex_count(); ++v) rot.push_back(g.rotation(v));
    j["rotation"] = rot;
    j["outer_face_dart"] = g.outer_dart() < 0 ? 0 : g.outer_dart();
    j["terminals"] = inst.terminals;
    ojson tfs = ojson::array();
    for (const auto& tf : inst.faces) tfs.push_back(ojson{{"face_dart", tf.face_dart}});
    j["terminal_faces"] = tfs;
    return j.dump() + "\n";
}

MwcInstance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InstanceError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_instance(ss.str());
}

std::vector<std::vector<int>> compute_face_cover(const PlaneGraph& g, const std::vector<int>& T, int k_max) {
    const int F = g.face_count();
    std::vector<std::vector<int>> covers;
    if (T.empty()) return {{}};
    std::vector<std::vector<char>> on(F, std::vector<char>(g.vertex_count(), 0));
    for (int f = 0; f < F; ++f)
        for (int d : g.face(f).darts) on[f][g.origin(d)] = 1;
    k_max = std::min(k_max, F);
    std::vector<int> pick;
    auto covers_all = [&]() {
        for (int t : T) {
            bool ok = false;
            for (int f : pick) ok = ok || on[f][t];
            if (!ok) return false;
        }
        return true;
    };
    auto has_subcover = [&]() {
        for (const auto& c : covers)
            if (std::includes(pick.begin(), pick.end(), c.begin(), c.end())) return true;
        return false;
    };
    for (int size = 1; size <= k_max; ++size) {
        // lexicographic combinations of `size` faces
        pick.resize(size);
        std::iota(pick.begin(), pick.end(), 0);
        while (true) {
            if (covers_all() && !has_subcover()) covers.push_back(pick);
            int i = size - 1;
            while (i >= 0 && pick[i] == F - size + i) --i;
            if (i < 0) break;
            ++pick[i];
            for (int r = i + 1; r < size; ++r) pick[r] = pick[r - 1] + 1;
        }
    }
    return covers;
}

std::vector<int> min_face_cover(const PlaneGraph& g, const std::vector<int>& T) {
    for (int k = 1; k <= g.face_count(); ++k) {
        auto c = compute_face_cover(g, T, k);
        if (!c.empty()) return c.front();
    }
    throw InstanceError("terminals cannot be covered by faces");
}

NormalizedParts normalize_weights(const MwcInstance& inst) {
    NormalizedParts out;
    std::vector<int> drop;
    for (int e = 0; e < inst.g.edge_count(); ++e)
        if (inst.g.weight(e) <= 0) drop.push_back(e);
    Edited ed = delete_edges(inst.g, drop);
    const PlaneGraph& h = ed.graph;
    auto comp = h.component_of_vertices();
    int C = comp.empty() ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
    for (int c = 0; c < C; ++c) {
        std::vector<int> Tc;
        for (int t : inst.terminals)
            if (comp[t] == c) Tc.push_back(t);
        if (Tc.size() < 2) continue;
        // Extract component c with its embedding.
        std::vector<int> vmap(h.vertex_count(), -1), vfrom;
        for (int v = 0; v < h.vertex_count(); ++v)
            if (comp[v] == c) {
                vmap[v] = static_cast<int>(vfrom.size());
                vfrom.push_back(v);
            }
        std::vector<int> emap(h.edge_count(), -1), efrom;
        std::vector<EdgeSpec> es;
        for (int e = 0; e < h.edge_count(); ++e)
            if (comp[h.ends(e)[0]] == c) {
                emap[e] = static_cast<int>(efrom.size());
                efrom.push_back(e);
                es.push_back({vmap[h.ends(e)[0]], vmap[h.ends(e)[1]], h.weight(e)});
            }
        std::vector<std::vector<int>> rot(vfrom.size());
        for (size_t i = 0; i < vfrom.size(); ++i)
            for (int d : h.rotation(vfrom[i])) rot[i].push_back(2 * emap[d >> 1] + (d & 1));
        int outer = -1;
        if (h.outer_dart() >= 0 && comp[h.origin(h.outer_dart())] == c) {
            outer = 2 * emap[h.outer_dart() >> 1] + (h.outer_dart() & 1);
        }
        PlaneGraph pg0 = build_plane_graph(static_cast<int>(vfrom.size()), es, rot, 0, false);
        if (outer < 0) {
            // no embedding information about the enclosing region survives; take the longest walk
            int best = 0;
            for (int f = 1; f < pg0.face_count(); ++f)
                if (pg0.face(f).length() > pg0.face(best).length()) best = f;
            outer = canonical_start(pg0, best);
        }
        PlaneGraph pg = build_plane_graph(static_cast<int>(vfrom.size()), es, rot, outer, false);
        std::vector<int> T2;
        for (int t : Tc) T2.push_back(vmap[t]);
        MwcInstance part = make_instance(pg, T2, min_face_cover(pg, T2));
        if (part.k() > inst.k()) out.k_grew = true;
        std::vector<int> ef, vf;
        for (int e : efrom) ef.push_back(ed.edge_from[e]);
        for (int v : vfrom) vf.push_back(ed.vertex_from[v]);
        out.parts.push_back(std::move(part));
        out.edge_from.push_back(std::move(ef));
        out.vertex_from.push_back(std::move(vf));
    }
    return out;
}

}  // namespace pmc
