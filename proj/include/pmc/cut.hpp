#pragma once

#include <string>
#include <vector>

#include "pmc/instance.hpp"

namespace pmc {

struct CutSolution {
    std::vector<int> edges;  // sorted primal edge ids
    Weight weight = 0;
    bool feasible = false;
    bool minimal = false;
    std::string method;
};

Weight cut_weight(const PlaneGraph& g, const std::vector<int>& edges);

// True iff all terminals are pairwise disconnected in G - C.
bool verify_multiway_cut(const MwcInstance& inst, const std::vector<int>& C);

// First terminal pair still connected in G - C, or {-1,-1}.
std::pair<int, int> connected_pair(const MwcInstance& inst, const std::vector<int>& C);

// True iff C is feasible and removing any single edge breaks feasibility.
bool check_minimal(const MwcInstance& inst, const std::vector<int>& C);

// Drops redundant edges (heaviest first, then highest id) until minimal.
std::vector<int> prune_to_minimal(const MwcInstance& inst, std::vector<int> C);

// Fills weight/feasible/minimal from scratch.
CutSolution make_solution(const MwcInstance& inst, std::vector<int> C, std::string method);

}  // namespace pmc
