// Acceptance run: one PASS/FAIL line per criterion, details indented below it.
// Usage: acceptance [path-to-pmc]   (the CLI path enables the command-level determinism check)
#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <memory>
#include <random>
#include <set>
#include <sstream>

#include "pmc/dual_tools.hpp"
#include "pmc/homotopy.hpp"
#include "pmc/oracle.hpp"
#include "pmc/steiner.hpp"
#include "pmc/transform.hpp"
#include "pmc/warmup_solver.hpp"

using namespace pmc;

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

int failures = 0;

void line(bool ok, const std::string& name, const std::string& detail) {
    std::cout << (ok ? "PASS " : "FAIL ") << name << "  " << detail << "\n";
    failures += !ok;
}

void note(const std::string& s) { std::cout << "     " << s << "\n"; }

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", x);
    return buf;
}

struct Solved {
    MwcInstance inst;
    Weight opt = 0;
};

// Isolation ratio inputs collected from every instance solved by the oracle.
std::vector<Solved> bench;

// ---------------------------------------------------------------------------------------------------------------

void k1_equivalence() {
    std::vector<MwcInstance> insts;
    const char* kinds[] = {"grid", "wheel", "triangulation"};
    for (std::uint64_t seed = 1; insts.size() < 210 && seed < 2000; ++seed) {
        GeneratorSpec s;
        s.kind = kinds[seed % 3];
        s.seed = seed;
        s.k = 1;
        s.terminals = 2 + static_cast<int>(seed % 4);
        s.rows = 3 + static_cast<int>(seed % 2);
        s.cols = 3 + static_cast<int>((seed / 2) % 2);
        s.n = 6 + static_cast<int>(seed % 10);
        MwcInstance I;
        try {
            I = generate(s);
        } catch (const std::exception&) {
            continue;
        }
        if (I.k() != 1 || I.n() > 16 || I.terminals.size() > 5) continue;
        double labelings = 1;
        for (int i = 0; i < I.n() - static_cast<int>(I.terminals.size()); ++i) labelings *= I.terminals.size();
        if (labelings > 2e6) continue;
        insts.push_back(std::move(I));
    }
    int agree = 0;
    double solver_time = 0;
    auto t0 = Clock::now();
    for (const auto& I : insts) {
        auto bf = brute_force_mwc(I, 3e6);
        auto t1 = Clock::now();
        auto cw = chen_wu_single_face_solve(I);
        solver_time += since(t1);
        agree += cw.weight == bf.weight && verify_multiway_cut(I, cw.edges);
        bench.push_back({I, bf.weight});
    }
    bool ok = insts.size() >= 200 && agree == static_cast<int>(insts.size()) && solver_time < 60;
    line(ok, "k1-oracle-equivalence",
         std::to_string(agree) + "/" + std::to_string(insts.size()) + " exact, n<=16, |T|<=5, single-face solver " +
             fmt(solver_time) + " s (limit 60 s), with oracle " + fmt(since(t0)) + " s");
}

std::vector<MwcInstance> corpus(const std::string& kind, int k, int count, int max_n) {
    std::vector<MwcInstance> out;
    for (int seed = 1; seed <= 2000 && static_cast<int>(out.size()) < count; ++seed)
        for (int extra = 0; extra <= 3; ++extra) {
            GeneratorSpec s;
            s.kind = kind;
            s.k = k;
            s.terminals = k + extra;
            s.seed = seed;
            s.n = 8 + seed % 4;
            s.rows = 3;
            s.cols = 3 + seed % 2;
            MwcInstance I;
            try {
                I = generate(s);
            } catch (const std::exception&) {
                continue;
            }
            if (I.k() != k || I.n() > max_n) continue;
            out.push_back(std::move(I));
            break;
        }
    return out;
}

void k2_equivalence() {
    auto t0 = Clock::now();
    int n2 = 0, ok2 = 0;
    for (const std::string kind : {"dumbbell", "grid"})
        for (const auto& I : corpus(kind, 2, 30, 12)) {
            auto bf = brute_force_mwc(I);
            auto s = solve(I);
            ok2 += s.weight == bf.weight && verify_multiway_cut(I, s.edges);
            ++n2;
            bench.push_back({I, bf.weight});
        }
    double t2 = since(t0);
    auto t1 = Clock::now();
    int n3 = 0, ok3 = 0;
    for (const auto& I : corpus("triangulation", 3, 6, 12)) {
        auto bf = brute_force_mwc(I);
        auto s = solve(I);
        ok3 += s.weight == bf.weight && verify_multiway_cut(I, s.edges);
        ++n3;
        bench.push_back({I, bf.weight});
    }
    double t3 = since(t1);
    bool ok = n2 >= 50 && ok2 == n2 && n3 >= 5 && ok3 == n3 && t2 + t3 < 600;
    line(ok, "k2-oracle-equivalence",
         "k=2: " + std::to_string(ok2) + "/" + std::to_string(n2) + " exact (dumbbell+grid, n<=12) in " + fmt(t2) +
             " s; curated k=3: " + std::to_string(ok3) + "/" + std::to_string(n3) + " in " + fmt(t3) +
             " s (limit 600 s)");
}

std::vector<MwcInstance> transform_fixtures() {
    std::vector<MwcInstance> out;
    const char* kinds[] = {"grid", "wheel", "triangulation", "dumbbell"};
    for (std::uint64_t seed = 1; seed <= 6; ++seed)
        for (const char* kind : kinds) {
            GeneratorSpec s;
            s.kind = kind;
            s.rows = 3;
            s.cols = 3 + static_cast<int>(seed % 2);
            s.n = 7 + static_cast<int>(seed % 3);
            s.k = std::string(kind) == "dumbbell" ? 2 : 1 + static_cast<int>(seed % 2);
            s.terminals = 3 + static_cast<int>(seed % 2);
            s.max_weight = 6;
            s.seed = seed;
            try {
                out.push_back(generate(s));
            } catch (const OracleError&) {
            }
        }
    return out;
}

void transformation_soundness() {
    int n = 0, recovered = 0, predicates = 0;
    for (const auto& I : transform_fixtures()) {
        auto opt = brute_force_mwc(I);
        auto [t, rec] = transform_instance(I);
        predicates += check_transformed(t).all();
        auto topt = brute_force_mwc(t);
        recovered += recover_optimum(I, topt.edges, rec).weight == opt.weight;
        ++n;
    }
    line(n > 0 && recovered == n && predicates == n, "transformation-soundness",
         std::to_string(recovered) + "/" + std::to_string(n) + " recovered optima exact, " +
             std::to_string(predicates) + "/" + std::to_string(n) + " pass all five predicates");
}

void structural_suite() {
    int n = 0, ok = 0, connected = 0;
    std::vector<std::string> bad;
    for (const auto& I : transform_fixtures()) {
        auto t = transform_instance(I).first;
        auto opt = brute_force_mwc(t);
        auto r = structural_audit(t, opt.edges);
        // the C+ and skeleton predicates are only claimed when C* is connected
        bool good = r.feasible && r.minimal && r.faces_exactly_one && r.bridgeless && r.no_cut_vertices;
        if (r.dual_connected) {
            ++connected;
            good = good && r.all() && r.plus_connected && r.plus_faces == t.k() && r.shrunken_bounds &&
                   r.shrunken_vertices <= 4 * t.k() && r.shrunken_edges <= 12 * t.k();
        }
        ok += good;
        ++n;
        if (!good && bad.size() < 3)
            for (const auto& v : r.violations) bad.push_back(v);
    }
    line(n > 0 && ok == n, "structural-lemmas",
         std::to_string(ok) + "/" + std::to_string(n) + " oracle minima of transformed instances pass every predicate (" +
             std::to_string(connected) + " with connected dual)");
    for (const auto& v : bad) note("violation: " + v);
}

// Distinct vertices of the outer face in walk order.
std::vector<int> outer_ring(const PlaneGraph& g) {
    std::vector<int> ring;
    int d0 = canonical_start(g, g.outer_face()), d = d0;
    do {
        int v = g.origin(d);
        if (std::find(ring.begin(), ring.end(), v) == ring.end()) ring.push_back(v);
        d = g.next(d);
    } while (d != d0);
    return ring;
}

void steiner_equivalence() {
    std::mt19937_64 rng(7);
    int cases = 0, agree = 0;
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        GeneratorSpec s;
        s.seed = seed;
        s.max_weight = 7;
        s.kind = seed % 3 == 0 ? "grid" : seed % 3 == 1 ? "wheel" : "triangulation";
        s.rows = 3;
        s.cols = 3 + static_cast<int>(seed % 2);
        s.n = 6 + static_cast<int>(seed % 5);
        auto g = generate(s).g;
        if (g.vertex_count() > 12) continue;
        auto ring = outer_ring(g);
        for (int rep = 0; rep < 12; ++rep) {
            int want = std::min<int>(2 + static_cast<int>(rng() % 4), static_cast<int>(ring.size()));
            std::vector<int> idx(ring.size());
            for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
            std::shuffle(idx.begin(), idx.end(), rng);
            idx.resize(want);
            std::sort(idx.begin(), idx.end());
            std::vector<int> pick;
            for (int i : idx) pick.push_back(ring[i]);
            Weight oracle = steiner_subset_oracle(g, pick);
            agree += dreyfus_wagner(g, pick).weight == oracle && one_face_steiner(g, pick).weight == oracle;
            ++cases;
        }
    }
    line(cases >= 300 && agree == cases, "steiner-equivalence",
         std::to_string(agree) + "/" + std::to_string(cases) + " one-face = Dreyfus-Wagner = subset oracle, |V|<=12, |T|<=5");
}

void homotopy_engine() {
    struct Built {
        MwcInstance inst;
        AugmentedDual ad;
        CutGraph K;
    };
    std::vector<std::unique_ptr<Built>> fixtures;
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        const int n = 5 + static_cast<int>(seed % 3);
        for (auto [kind, k] : {std::pair{"dumbbell", 2}, {"dumbbell", 3}, {"triangulation", 2}}) {
            MwcInstance raw;
            for (std::uint64_t sd = seed;; ++sd) {
                bool done = false;
                for (int extra = 0; extra <= k && !done; ++extra) {
                    GeneratorSpec s;
                    s.kind = kind;
                    s.n = n;
                    s.k = k;
                    s.terminals = k + extra;
                    s.max_weight = 5;
                    s.seed = sd;
                    try {
                        raw = generate(s);
                        done = true;
                    } catch (const OracleError&) {
                    }
                }
                if (done) break;
            }
            auto b = std::make_unique<Built>();
            b->inst = transform_instance(raw, {true, false}).first;
            b->ad = augmented_dual(b->inst);
            b->K = build_cut_graph(b->inst, b->ad);
            if (b->K.host->vertex_count() <= 10 && b->K.spoke_count() > 0) fixtures.push_back(std::move(b));
        }
    }
    long triples = 0, seq_ok = 0, weight_ok = 0, walk_ok = 0;
    for (const auto& b : fixtures) {
        const auto& K = b->K;
        const PlaneGraph& G = *K.host;
        for (int x = 0; x < G.vertex_count(); ++x)
            for (int y = 0; y < G.vertex_count(); ++y) {
                if (x == y || K.blocked[x] || K.blocked[y]) continue;
                // every crossing sequence realised by a simple x-y path
                std::set<std::vector<std::pair<int, int>>> seqs;
                std::vector<char> on(G.vertex_count(), 0);
                std::vector<int> darts;
                std::function<void(int)> dfs = [&](int v) {
                    if (v == y) {
                        std::vector<std::pair<int, int>> key;
                        for (auto c : crossing_sequence(K, x, darts)) key.push_back({c.spoke, c.dir});
                        seqs.insert(key);
                        return;
                    }
                    for (int d : G.rotation(v)) {
                        int u = G.head(d);
                        if (on[u] || (K.blocked[u] && u != y)) continue;
                        on[u] = 1;
                        darts.push_back(d);
                        dfs(u);
                        darts.pop_back();
                        on[u] = 0;
                    }
                };
                on[x] = 1;
                dfs(x);
                for (const auto& key : seqs) {
                    HomotopyString h;
                    for (auto [sp, dir] : key) h.push_back({sp, dir});
                    auto hp = homotopic_shortest_path(K, x, y, h);
                    auto bf = brute_force_homotopic(K, x, y, h);
                    ++triples;
                    if (!hp || !bf) continue;
                    seq_ok += crossing_sequence(K, x, hp->darts) == h;
                    weight_ok += hp->weight == *bf;
                    walk_ok += brute_force_homotopic_walk(K, x, y, h, *bf) == hp->weight;
                }
            }
    }
    bool ok = triples >= 100 && seq_ok == triples && weight_ok == triples;
    line(ok, "homotopy-engine",
         std::to_string(triples) + " triples on " + std::to_string(fixtures.size()) +
             " fixtures (|V|<=10): crossing sequence = h on " + std::to_string(seq_ok) +
             ", weight = simple-path oracle on " + std::to_string(weight_ok));
    note("walk oracle agrees on " + std::to_string(walk_ok) + "/" + std::to_string(triples) +
         "; the other " + std::to_string(triples - weight_ok) + " have a walk strictly cheaper than every simple path");
}

void isolation_ratio() {
    long n = 0, ok = 0;
    Weight worst_num = 0, worst_den = 1;
    for (const auto& b : bench) {
        auto h = isolation_heuristic(b.inst);
        const Weight t = static_cast<Weight>(b.inst.terminals.size());
        bool good = h.cut.feasible && t * h.cut.weight <= (2 * t - 2) * b.opt;
        ok += good;
        ++n;
        if (b.opt > 0 && h.cut.weight * worst_den > worst_num * b.opt) {
            worst_num = h.cut.weight;
            worst_den = b.opt;
        }
    }
    line(n > 0 && ok == n, "isolation-ratio",
         std::to_string(ok) + "/" + std::to_string(n) + " within 2-2/|T| (exact integer comparison), worst ratio " +
             std::to_string(worst_num) + "/" + std::to_string(worst_den));
}

void splint_audit() {
    long candidates = 0, emitted = 0, rejected = 0, audit_fail = 0, rows = 0, row_fail = 0;
    int insts = 0, optimal = 0;
    bool truncated = false;
    auto t0 = Clock::now();
    for (int seed = 1; seed <= 200 && insts < 6; seed += 2)
        for (int extra = 0; extra <= 2; ++extra) {
            GeneratorSpec s;
            s.kind = "dumbbell";
            s.k = 2;
            s.terminals = 2 + extra;
            s.seed = seed;
            s.n = 6;
            MwcInstance I;
            try {
                I = generate(s);
            } catch (const std::exception&) {
                continue;
            }
            if (I.k() != 2 || I.n() > 9) continue;
            auto s1 = transform_instance(I, TransformOptions{true, false}).first;
            if (augmented_dual(s1).graph.vertex_count() > 9) continue;
            LiteralOptions o;
            o.hcap = 1;
            o.max_groups = 1;
            auto r = literal_solve(I, o);
            candidates += r.candidates;
            emitted += r.splints;
            rejected += r.rejections;
            audit_fail += r.audit_failures;
            rows += r.base_rows;
            row_fail += r.base_row_failures;
            truncated = truncated || r.truncated;
            optimal += r.cut && r.cut->weight == brute_force_mwc(I).weight;
            ++insts;
            break;
        }
    bool ok = emitted > 0 && audit_fail == 0 && rows > 0 && row_fail == 0;
    line(ok, "splint-audit",
         std::to_string(emitted - audit_fail) + "/" + std::to_string(emitted) +
             " emitted splints pass every clause; base row = nerve table on " + std::to_string(rows - row_fail) + "/" +
             std::to_string(rows));
    note(std::to_string(insts) + " k=2 instances, hcap 1, one nerve group: " + std::to_string(candidates) +
         " broken bones, " + std::to_string(rejected) + " unions rejected as non-splints, assembled optimum on " +
         std::to_string(optimal) + "/" + std::to_string(insts) + (truncated ? ", bone enumeration truncated" : "") +
         ", " + fmt(since(t0)) + " s");
}

std::string capture(const std::string& cmd, int* rc) {
    std::string out;
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) {
        *rc = -1;
        return out;
    }
    std::array<char, 4096> buf;
    std::size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), got);
    *rc = pclose(p);
    return out;
}

void determinism(const std::string& cli) {
    int lib = 0, lib_ok = 0;
    for (const auto& I : corpus("dumbbell", 2, 6, 12)) {
        auto a = solve(I), b = solve(I);
        lib_ok += a.edges == b.edges && a.weight == b.weight && a.method == b.method;
        ++lib;
    }
    int cmds = 0, cmd_ok = 0;
    if (!cli.empty()) {
        std::string dir = "acceptance_cli";
        int rc = 0;
        capture("mkdir -p " + dir, &rc);
        capture(cli + " gen --kind dumbbell --n 6 --k 2 --terminals 3 --seed 1 > " + dir + "/d2.json", &rc);
        capture(cli + " gen --kind grid --rows 3 --cols 3 --k 1 --terminals 3 --seed 2 > " + dir + "/g1.json", &rc);
        const std::vector<std::string> runs = {
            "gen --kind triangulation --n 9 --k 2 --terminals 4 --seed 5",
            "solve --input " + dir + "/d2.json",
            "solve --input " + dir + "/g1.json --certify",
            "solve --input " + dir + "/d2.json --algorithm bruteforce",
            "verify --input " + dir + "/d2.json --edges 0,1",
            "audit --input " + dir + "/d2.json --literal",
            "steiner --input " + dir + "/g1.json",
            "bench --kind grid --max-n 12 --count 10 --jobs 2",
        };
        for (const auto& r : runs) {
            int r1 = 0, r2 = 0;
            auto a = capture(cli + " " + r + " 2>&1", &r1);
            auto b = capture(cli + " " + r + " 2>&1", &r2);
            cmd_ok += !a.empty() && a == b && r1 == r2;
            ++cmds;
        }
    }
    bool ok = lib_ok == lib && cmd_ok == cmds && (cli.empty() || cmds > 0);
    line(ok, "determinism",
         std::to_string(lib_ok) + "/" + std::to_string(lib) + " repeated library solves identical, " +
             std::to_string(cmd_ok) + "/" + std::to_string(cmds) + " CLI commands byte-identical across two runs" +
             (cli.empty() ? " (no CLI path given)" : ""));
}

}  // namespace

int main(int argc, char** argv) {
    std::string cli = argc > 1 ? argv[1] : "";
    auto t0 = Clock::now();
    k1_equivalence();
    k2_equivalence();
    transformation_soundness();
    structural_suite();
    steiner_equivalence();
    homotopy_engine();
    isolation_ratio();
    splint_audit();
    determinism(cli);
    std::cout << "acceptance: " << 9 - failures << "/9 criteria pass, " << fmt(since(t0)) << " s\n";
    return failures == 0 ? 0 : 1;
}
