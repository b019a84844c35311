#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "pmc/cut.hpp"
#include "pmc/dual_tools.hpp"
#include "pmc/homotopy.hpp"
#include "pmc/steiner.hpp"
#include "pmc/transform.hpp"

namespace pmc {

struct SolveOptions {
    int hcap = -1;          // homotopy string cap for the splint machinery; -1 selects default_hcap(k)
    bool driver = true;     // run the sub-instance driver on top of solve_connected
    long chord_budget = 0;  // 0: no limit on chord sets examined per connected solve
};

struct SolveStats {
    long subinstances = 0;
    long chord_sets = 0;
    long chord_sets_pruned = 0;
    long combinations = 0;
    bool certified = true;  // false when a budget cut the search short or a fallback answer was used
};

// Minimum edge set D of G+ (step-1 instance) that is connected, contains every augmented terminal of a plural
// face and has the terminal faces in pairwise distinct faces of D. Edge ids are step-1 edge ids.
struct SeparatingSubgraph {
    std::vector<int> edges;
    std::vector<int> chords;
    Weight weight = kInf;
    bool found() const { return weight < kInf; }
};

// Cycle-signature search: a spanning tree plus k-1 chords whose fundamental cycles separate the terminal faces.
// `step1` must have every plural terminal face bounded by its terminal-to-terminal edges.
SeparatingSubgraph min_separating_subgraph(const MwcInstance& step1, const AugmentedDual& ad, long chord_budget = 0,
                                           SolveStats* stats = nullptr);

// Exact when some minimum multiway cut has a connected augmented dual; always returns a multiway cut.
CutSolution solve_connected(const MwcInstance& inst, const SolveOptions& opt = {}, SolveStats* stats = nullptr);

// Exact minimum multiway cut: sub-instance driver over (full faces, representative faces) keys.
CutSolution solve(const MwcInstance& inst, const SolveOptions& opt = {}, SolveStats* stats = nullptr);

// ---------------------------------------------------------------------------------------------------------------
// Skeletons and topologies.

struct SkeletonShape {
    int vertices = 0;
    std::vector<std::array<int, 2>> edges;  // directed from [0] to [1]
    std::vector<std::vector<int>> rotation; // per vertex, darts 2e (tail) / 2e+1 (head), clockwise
    int face_count = 0;
    std::vector<std::vector<int>> faces;    // dart walks
    std::vector<std::array<int, 2>> edge_faces;  // faces of dart 2e (side 0) and of dart 2e+1 (side 1)
    std::string code;                       // canonical embedding code
};

// Connected plane multigraphs with k faces, at most 4k+1 vertices, degrees 2 or 3 and no self-loops, up to
// embedding equivalence. A vertexless single cycle is not produced; k=1 yields nothing.
std::vector<SkeletonShape> enumerate_skeleton_candidates(int k);

struct BoneLabel {
    std::vector<int> s;                       // sides of the nerve groups: 0 = left of the bone, 1 = right
    std::vector<HomotopyString> h;            // 2|s|+1 strings; entry 5 is empty and unused when |s| = 4
};

struct Topology {
    const SkeletonShape* S = nullptr;
    std::vector<int> face_of;                 // skeleton face -> terminal face
    std::vector<BoneLabel> bones;             // per skeleton edge
};

// Side sequences s(b) of length <= 4 using each side at most twice, no equal neighbours except the middle
// pair when |s| = 4. Eleven in total.
std::vector<std::vector<int>> bone_label_choices();

struct TopologyCount {
    long skeletons = 0;
    long bijections = 0;
    long s_choices = 0;
    long topologies = 0;
    bool truncated = false;
};

// Streams every topology with strings from `strings` (all strings up to the cap) until fn returns false or
// `limit` topologies were produced.
TopologyCount enumerate_topologies(int k, const std::vector<HomotopyString>& strings, long limit,
                                   const std::function<bool(const Topology&)>& fn);

// ---------------------------------------------------------------------------------------------------------------
// Broken bones, splints and the splinting DP. All of these work on a step-1 instance and its augmented dual; the
// cut graph K must be built on the same pair.

struct BoneSpec {
    int alpha = -1, beta = -1;     // terminal faces left (side 0) and right (side 1) of the bone
    std::vector<int> s;            // sides, as in BoneLabel
    std::vector<HomotopyString> h; // 2|s|+1 strings, entry 4 ignored when |s| = 4
    int from = -1, to = -1;        // fixed ends y+_0 and x+_{|s|+1}; -1 leaves them free
    int face(int side) const { return side == 0 ? alpha : beta; }
};

// Canonical nerves of every terminal face, memoized. An empty interval gives the empty nerve at v.
class NerveTable {
public:
    explicit NerveTable(const AugmentedDual& ad);
    std::optional<Nerve> get(int face, int v, int lo, int len);
    int p(int face) const { return static_cast<int>(ad_->aug_terminals[face].size()); }

private:
    const AugmentedDual* ad_;
    std::vector<NerveEngine> engines_;
};

struct BrokenBone {
    Interval I[2];                 // I_alpha, I_beta
    std::vector<int> x;            // x+_1 .. x+_{m+1}
    std::vector<int> y;            // y+_0 .. y+_m
    std::vector<Nerve> nerves;     // N_1 .. N_{2m}
};

// The three clauses on intervals, roots and nerve order. Nerve weights and trees are not rechecked.
bool broken_bone_valid(const AugmentedDual& ad, const BoneSpec& spec, const BrokenBone& bb);

// Broken bones matching `spec` with canonical nerves, at most `limit` of them (the flag reports a cut).
std::vector<BrokenBone> enumerate_broken_bones(const MwcInstance& s1, const AugmentedDual& ad, NerveTable& nt,
                                               const BoneSpec& spec, long limit = 100000,
                                               bool* truncated = nullptr);

struct Splint {
    std::vector<int> edges;        // G+ edges, sorted
    std::vector<int> path;         // darts of P_b from y+_0 to x+_{m+1}
    std::vector<int> x_pos, y_pos; // positions of x+_j and y+_j in the vertex sequence of P_b
    std::vector<Nerve> nerves;     // every nerve of the splint
    Weight weight = kInf;          // weight of the edge set
};

struct SplintAudit {
    bool encloses = false;           // terminals between I_alpha and I_beta each sit alone in a region
    bool ordering = false;           // P_b is a walk in D+ visiting y_0, x_1, y_1, ..., x_{m+1} in order
    bool connectors_simple = false;  // connector interiors have degree 2 in D+
    bool connector_strings = false;
    bool segment_strings = false;
    bool nerves_attached = false;    // branching on a nerve path only at roots of its nerves
    bool partition = false;          // nerve intervals partition I_alpha and I_beta
    bool all() const {
        return encloses && ordering && connectors_simple && connector_strings && segment_strings &&
               nerves_attached && partition;
    }
    std::string failures() const;
};

SplintAudit audit_splint(const MwcInstance& s1, const AugmentedDual& ad, const CutGraph& K, const BoneSpec& spec,
                         const BrokenBone& bb, const Splint& sp);

// Splinting DP for one nerve path: nerves N1 (root x) and N2 (root y) towards `face`, string h. Positions are
// augmented-terminal offsets from the start of N1's interval; c'[x][a][a'][e] is flattened.
struct SplintTables {
    int face = -1;
    int n = 0, positions = 0, len = 0;
    std::vector<Weight> cprime;
    Weight c_base = kInf;          // c[x_1, l, l'] from a fresh nerve computation
    Weight result = kInf;
    bool base_row_matches = false; // row e = 0 at (l, l') equals the nerve table exactly
    long side_checks = 0, side_rejections = 0;

    Weight at(int x, int a, int a2, int e) const {
        return cprime[((static_cast<std::size_t>(x) * positions + a) * positions + a2) * (len + 1) + e];
    }
};

struct NervePath {
    Weight weight = kInf;
    std::vector<Nerve> nerves;     // in order along the path
    std::vector<int> darts;        // from N1's root to N2's root
};

std::optional<NervePath> nerve_path(const MwcInstance& s1, const AugmentedDual& ad, const CutGraph& K,
                                    NerveTable& nt, int face, const Nerve& N1, const Nerve& N2,
                                    const HomotopyString& h, bool side_conditions = true,
                                    SplintTables* tables = nullptr);

// The union of connectors, nerve paths and nerves. Candidates failing audit_splint are not splints and yield
// none; `rejected` then receives the failed audit.
std::optional<Splint> splint(const MwcInstance& s1, const AugmentedDual& ad, const CutGraph& K, NerveTable& nt,
                             const BoneSpec& spec, const BrokenBone& bb, SplintAudit* rejected = nullptr);

// Minimum Steiner tree on `terminals` using only vertices marked in `region`. Throws std::invalid_argument when
// the region holds the vertex of the outer face.
SteinerTree mst_inside(const MwcInstance& s1, const AugmentedDual& ad, const std::vector<char>& region,
                       const std::vector<int>& terminals);

// Union of splint edges; none when two splints share an edge or the union is not a multiway cut of s1.
std::optional<CutSolution> assemble(const MwcInstance& s1, const std::vector<Splint>& splints);

// The topology pipeline on the two-bone skeleton for k = 2: every pair of ends, every label with at most
// `max_groups` nerve groups, strings up to `hcap`, broken bones, splints, audits and assembly.
struct LiteralOptions {
    int hcap = 0;
    int max_groups = 2;
    long bone_limit = 20000;
};

struct LiteralReport {
    std::optional<CutSolution> cut;  // in input edge ids
    long candidates = 0;             // broken bones handed to splint()
    long splints = 0;                // emitted splints
    long rejections = 0;             // candidates whose union failed a clause check
    long audit_failures = 0;         // emitted splints failing a re-audit
    long base_rows = 0;
    long base_row_failures = 0;
    bool truncated = false;
    std::vector<std::string> failures;
};

LiteralReport literal_solve(const MwcInstance& inst, const LiteralOptions& opt = {});

}  // namespace pmc
