#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "pmc/dual_tools.hpp"
#include "pmc/oracle.hpp"
#include "pmc/steiner.hpp"
#include "pmc/transform.hpp"
#include "pmc/warmup_solver.hpp"

using namespace pmc;
using Json = nlohmann::ordered_json;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string digest(const MwcInstance& inst) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : serialize_instance(inst)) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

MwcInstance read_input(const std::string& path) {
    if (path.empty()) throw UsageError("--input is required");
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_instance(ss.str());
}

Json header(const std::string& command, const std::string& input, const MwcInstance& inst) {
    Json j;
    j["command"] = command;
    j["input"] = input;
    j["digest"] = digest(inst);
    j["n"] = inst.n();
    j["m"] = inst.g.edge_count();
    j["terminals"] = inst.terminals.size();
    j["k"] = inst.k();
    return j;
}

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct Common {
    std::string input;
    std::string algorithm = "auto";
    int hcap = -1;
    bool certify = false;
    int jobs = 1;
    std::string dot;
    std::uint64_t seed = 1;
    bool timings = false;
};

int cmd_solve(const Common& c) {
    auto inst = read_input(c.input);
    auto t0 = std::chrono::steady_clock::now();
    std::string algo = c.algorithm;
    if (algo == "auto") algo = inst.k() <= 1 ? "singleface" : "warmup";
    CutSolution sol;
    bool certified = false;
    Json stats = Json::object();
    if (algo == "bruteforce") {
        sol = brute_force_mwc(inst);
        certified = true;
    } else if (algo == "singleface") {
        if (inst.k() > 1) throw UsageError("singleface needs all terminals on one face");
        sol = chen_wu_single_face_solve(inst);
        certified = true;
    } else if (algo == "warmup") {
        SolveOptions opt;
        opt.hcap = c.hcap;
        SolveStats st;
        sol = solve(inst, opt, &st);
        certified = st.certified;
        stats["subinstances"] = st.subinstances;
        stats["chord_sets"] = st.chord_sets;
        stats["chord_sets_pruned"] = st.chord_sets_pruned;
        stats["combinations"] = st.combinations;
    } else {
        throw UsageError("unknown algorithm " + c.algorithm);
    }
    double dt = seconds_since(t0);
    bool feasible = verify_multiway_cut(inst, sol.edges);
    certified = certified && feasible;

    Json j = header("solve", c.input, inst);
    j["algorithm"] = algo;
    j["hcap"] = c.hcap;
    j["weight"] = sol.weight;
    j["edges"] = sol.edges;
    j["feasible"] = feasible;
    j["minimal"] = check_minimal(inst, sol.edges);
    j["certified"] = certified;
    j["method"] = sol.method;
    j["stats"] = stats;
    if (c.timings) j["timings"] = {{"solve_seconds", dt}};
    if (!c.dot.empty()) {
        std::ofstream out(c.dot);
        out << dot_subgraph(inst.g, sol.edges, "cut");
        j["dot"] = c.dot;
    }
    emit(j);
    if (!feasible) return 1;
    return c.certify && !certified ? 1 : 0;
}

std::vector<int> parse_edges(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ','))
        if (!tok.empty()) out.push_back(std::stoi(tok));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

int cmd_verify(const Common& c, const std::string& edges, const std::string& report) {
    auto inst = read_input(c.input);
    std::vector<int> C;
    if (!report.empty()) {
        std::ifstream in(report);
        if (!in) throw UsageError("cannot open " + report);
        C = Json::parse(in).at("edges").get<std::vector<int>>();
    } else {
        C = parse_edges(edges);
    }
    for (int e : C)
        if (e < 0 || e >= inst.g.edge_count()) throw UsageError("edge id out of range: " + std::to_string(e));
    Json j = header("verify", c.input, inst);
    j["edges"] = C;
    j["weight"] = cut_weight(inst.g, C);
    bool feasible = verify_multiway_cut(inst, C);
    j["feasible"] = feasible;
    j["minimal"] = check_minimal(inst, C);
    if (!feasible) {
        auto [a, b] = connected_pair(inst, C);
        j["connected_pair"] = {a, b};
    }
    emit(j);
    return feasible ? 0 : 1;
}

int cmd_audit(const Common& c, bool literal) {
    auto inst = read_input(c.input);
    Json j = header("audit", c.input, inst);
    auto [tr, rec] = transform_instance(inst);
    auto d = check_transformed(tr);
    j["transformed"] = {{"n", tr.n()},
                        {"m", tr.g.edge_count()},
                        {"bridgeless", d.bridgeless},
                        {"faces_disjoint", d.faces_disjoint},
                        {"faces_all_terminals", d.faces_all_terminals},
                        {"short_other_faces", d.short_other_faces},
                        {"neighbors_are_digons", d.neighbors_are_digons}};
    CutSolution opt;
    std::string source = "bruteforce";
    try {
        opt = brute_force_mwc(tr);
    } catch (const OracleError&) {
        source = "warmup";
        opt = solve(tr);
    }
    auto r = structural_audit(tr, opt.edges);
    auto rec_cut = recover_optimum(inst, opt.edges, rec);
    j["minimum"] = {{"source", source}, {"weight", opt.weight}, {"recovered_weight", rec_cut.weight}};
    j["structure"] = {{"feasible", r.feasible},
                      {"minimal", r.minimal},
                      {"faces_exactly_one", r.faces_exactly_one},
                      {"bridgeless", r.bridgeless},
                      {"no_cut_vertices", r.no_cut_vertices},
                      {"dual_connected", r.dual_connected},
                      {"plus_connected", r.plus_connected},
                      {"plus_faces", r.plus_faces},
                      {"shrunken_vertices", r.shrunken_vertices},
                      {"shrunken_edges", r.shrunken_edges},
                      {"shrunken_bounds", r.shrunken_bounds},
                      {"violations", r.violations}};
    bool ok = d.all() && r.all();
    if (literal) {
        if (inst.k() != 2) throw UsageError("--literal needs k = 2");
        LiteralOptions lo;
        lo.hcap = c.hcap < 0 ? 1 : c.hcap;
        lo.max_groups = 1;
        auto L = literal_solve(inst, lo);
        j["splints"] = {{"hcap", lo.hcap},
                        {"candidates", L.candidates},
                        {"emitted", L.splints},
                        {"rejected", L.rejections},
                        {"audit_failures", L.audit_failures},
                        {"base_rows", L.base_rows},
                        {"base_row_failures", L.base_row_failures},
                        {"truncated", L.truncated},
                        {"weight", L.cut ? Json(L.cut->weight) : Json(nullptr)}};
        ok = ok && L.audit_failures == 0 && L.base_row_failures == 0;
    }
    j["ok"] = ok;
    emit(j);
    return ok ? 0 : 1;
}

int cmd_steiner(const Common& c) {
    auto inst = read_input(c.input);
    Json j = header("steiner", c.input, inst);
    auto dw = dreyfus_wagner(inst.g, inst.terminals);
    j["dreyfus_wagner"] = {{"weight", dw.weight}, {"edges", dw.edges}};
    bool agree = true;
    if (inst.k() == 1) {
        auto of = one_face_steiner(inst.g, inst.faces[0].terminals);
        j["one_face"] = {{"weight", of.weight}, {"edges", of.edges}};
        agree = of.weight == dw.weight;
    }
    j["agree"] = agree;
    if (!c.dot.empty()) {
        std::ofstream out(c.dot);
        out << dot_subgraph(inst.g, dw.edges, "steiner");
    }
    emit(j);
    return agree ? 0 : 1;
}

int cmd_gen(const GeneratorSpec& s) {
    auto inst = generate(s);
    std::cout << serialize_instance(inst) << "\n";
    return 0;
}

// "a/b" in lowest terms.
std::string fraction(Weight a, Weight b) {
    Weight g = std::gcd(a, b);
    if (g == 0) g = 1;
    return std::to_string(a / g) + "/" + std::to_string(b / g);
}

int cmd_bench(const Common& c, const std::string& kind, int max_n, int count, int k) {
    struct Row {
        bool ok = false;
        std::string line;
    };
    std::vector<Row> rows(count);
    std::atomic<int> next{0};
    auto work = [&] {
        for (int i = next++; i < count; i = next++) {
            std::uint64_t seed = c.seed + static_cast<std::uint64_t>(i);
            GeneratorSpec s;
            s.kind = kind;
            s.seed = seed;
            s.k = k;
            s.terminals = 3 + static_cast<int>(seed % 3);
            s.rows = 3;
            s.cols = std::max(2, std::min(4, max_n / 3));
            s.n = std::max(4, max_n - static_cast<int>(seed % 4));
            MwcInstance inst;
            try {
                inst = generate(s);
            } catch (const std::exception&) {
                rows[i].line = std::to_string(seed) + "," + kind + ",,,,,,,,skipped";
                rows[i].ok = true;
                continue;
            }
            if (inst.n() > max_n) {
                rows[i].line = std::to_string(seed) + "," + kind + ",,,,,,,,skipped";
                rows[i].ok = true;
                continue;
            }
            auto opt = brute_force_mwc(inst);
            auto iso = isolation_heuristic(inst);
            Weight t = static_cast<Weight>(inst.terminals.size());
            bool within = opt.weight == 0 ? iso.cut.weight == 0 : iso.cut.weight * t <= opt.weight * (2 * t - 2);
            std::ostringstream os;
            os << seed << "," << kind << "," << inst.n() << "," << t << "," << inst.k() << "," << opt.weight << ","
               << iso.cut.weight << "," << (opt.weight == 0 ? std::string("0/1") : fraction(iso.cut.weight, opt.weight))
               << "," << fraction(2 * t - 2, t) << "," << (within ? "yes" : "no");
            rows[i] = {within, os.str()};
        }
    };
    std::vector<std::thread> pool;
    for (int w = 1; w < std::max(1, c.jobs); ++w) pool.emplace_back(work);
    work();
    for (auto& th : pool) th.join();
    std::cout << "seed,kind,n,terminals,k,opt,isolation,ratio,bound,within\n";
    bool all = true;
    for (const auto& r : rows) {
        std::cout << r.line << "\n";
        all = all && r.ok;
    }
    return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pmc: exact edge multiway cut on plane graphs with terminals on few faces"};
    app.require_subcommand(1);
    Common c;
    auto add_common = [&](CLI::App* sub, bool input) {
        if (input) sub->add_option("--input", c.input, "instance JSON")->required();
        sub->add_option("--algorithm", c.algorithm, "auto | bruteforce | singleface | warmup")
            ->check(CLI::IsMember({"auto", "bruteforce", "singleface", "warmup"}));
        sub->add_option("--hcap", c.hcap, "homotopy string cap, -1 for the default");
        sub->add_flag("--certify", c.certify, "exit 1 unless the answer is certified optimal");
        sub->add_option("--jobs", c.jobs, "worker threads")->check(CLI::PositiveNumber);
        sub->add_option("--emit-dot", c.dot, "write a DOT drawing of the result");
        sub->add_option("--seed", c.seed, "base seed");
        sub->add_flag("--timings", c.timings, "add wall-clock timings to the report");
    };
    auto* solve_cmd = app.add_subcommand("solve", "minimum multiway cut");
    add_common(solve_cmd, true);

    std::string edges, report;
    auto* verify_cmd = app.add_subcommand("verify", "feasibility and minimality of a cut");
    add_common(verify_cmd, true);
    auto* eo = verify_cmd->add_option("--edges", edges, "comma separated edge ids");
    auto* ro = verify_cmd->add_option("--report", report, "solve report holding the edges");
    eo->excludes(ro);

    bool literal = false;
    auto* audit_cmd = app.add_subcommand("audit", "structural report on a minimum of the transformed instance");
    add_common(audit_cmd, true);
    audit_cmd->add_flag("--literal", literal, "also run the splint pipeline (k = 2)");

    auto* steiner_cmd = app.add_subcommand("steiner", "Steiner tree on the instance terminals");
    add_common(steiner_cmd, true);

    GeneratorSpec gs;
    auto* gen_cmd = app.add_subcommand("gen", "generate an instance");
    gen_cmd->add_option("--kind", gs.kind, "grid | wheel | dumbbell | triangulation")
        ->check(CLI::IsMember({"grid", "wheel", "dumbbell", "triangulation"}));
    gen_cmd->add_option("--rows", gs.rows);
    gen_cmd->add_option("--cols", gs.cols);
    gen_cmd->add_option("--n", gs.n);
    gen_cmd->add_option("--k", gs.k);
    gen_cmd->add_option("--terminals", gs.terminals);
    gen_cmd->add_option("--max-weight", gs.max_weight);
    gen_cmd->add_option("--seed", gs.seed);
    gen_cmd->add_flag("--corners", gs.corners);

    std::string bkind = "grid";
    int max_n = 12, count = 20, bk = 1;
    auto* bench_cmd = app.add_subcommand("bench", "isolation heuristic against the oracle, CSV");
    add_common(bench_cmd, false);
    bench_cmd->add_option("--kind", bkind)->check(CLI::IsMember({"grid", "wheel", "dumbbell", "triangulation"}));
    bench_cmd->add_option("--max-n", max_n)->check(CLI::Range(4, 16));
    bench_cmd->add_option("--count", count)->check(CLI::PositiveNumber);
    bench_cmd->add_option("--k", bk)->check(CLI::Range(1, 4));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    try {
        if (*solve_cmd) return cmd_solve(c);
        if (*verify_cmd) return cmd_verify(c, edges, report);
        if (*audit_cmd) return cmd_audit(c, literal);
        if (*steiner_cmd) return cmd_steiner(c);
        if (*gen_cmd) return cmd_gen(gs);
        if (*bench_cmd) return cmd_bench(c, bkind, max_n, count, bk);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const InstanceError& e) {
        std::cerr << "invalid instance: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
