#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pmc/cut.hpp"
#include "pmc/homotopy.hpp"
#include "pmc/instance.hpp"

namespace pmc {

struct OracleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Exact minimum multiway cut by labeling every non-terminal with a terminal.
// Throws OracleError when |T|^(n-|T|) exceeds `budget`.
CutSolution brute_force_mwc(const MwcInstance& inst, double budget = 1e7);

// Exact minimum by enumerating all edge subsets (tiny graphs only).
CutSolution edge_subset_mwc(const MwcInstance& inst, int max_edges = 20);

// Union of minimum isolating cuts except the heaviest one.
struct IsolationResult {
    CutSolution cut;
    std::vector<Weight> isolating_weights;  // per terminal in instance order
    int dropped = -1;                       // index of the heaviest isolating cut
};
IsolationResult isolation_heuristic(const MwcInstance& inst);

// Minimum s-t style cut between vertex sets S and T (edge ids), by max-flow.
std::vector<int> min_cut_between(const PlaneGraph& g, const std::vector<int>& S, const std::vector<int>& T,
                                 Weight* value = nullptr);

// Minimum Steiner tree weight over all vertex supersets of the terminals, each spanned by an MST.
// Throws OracleError when more than 20 non-terminal vertices are available.
Weight steiner_subset_oracle(const PlaneGraph& H, const std::vector<int>& terminals,
                             const std::vector<char>& removed = {});

// Minimum weight over simple paths from x to y in the host of K, avoiding blocked vertices, whose crossing
// sequence equals h. Throws OracleError on hosts with more than 24 vertices.
std::optional<Weight> brute_force_homotopic(const CutGraph& K, int x, int y, const HomotopyString& h);
// Same over all walks of weight at most `bound` (vertices may repeat); exhaustive depth-first search pruned by
// plain distance to y and by the settled crossings having to be a prefix of h.
std::optional<Weight> brute_force_homotopic_walk(const CutGraph& K, int x, int y, const HomotopyString& h,
                                                 Weight bound);

struct GeneratorSpec {
    std::string kind = "grid";  // grid | wheel | dumbbell | triangulation
    int rows = 3, cols = 3;     // grid
    int n = 8;                  // wheel rim / triangulation points
    int k = 1;                  // number of terminal faces to place
    int terminals = 3;          // total terminals
    int max_weight = 9;
    std::uint64_t seed = 1;
    bool corners = false;       // grid: use the four corners as terminals on the outer face
};

MwcInstance generate(const GeneratorSpec& spec);

}  // namespace pmc
