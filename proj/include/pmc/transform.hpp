#pragma once

#include <array>
#include <vector>

#include "pmc/cut.hpp"
#include "pmc/instance.hpp"

namespace pmc {

enum class EdgeOrigin { Original, Subdivided, TerminalEdge };

struct TransformRecord {
    int original_edges = 0;
    int n1 = 0;              // vertex count after step 1; the n of the weight scaling
    Weight additive = 0;     // sum of p over plural faces
    Weight scale = 0;        // 6 * n1
    MwcInstance step1;       // instance after step 1 only
    std::vector<int> s1_from;           // step-1 edge -> original edge, -1 for added terminal edges
    std::vector<EdgeOrigin> s1_kind;
    std::vector<int> final_from;        // transformed edge -> step-1 edge, -1 for triangulation edges
    std::vector<std::array<int, 2>> copies;  // step-1 edge -> its two transformed edges
    std::vector<int> x_edges;           // the triangulation set X
    bool applied_step1 = true;
    bool applied_step23 = true;
};

struct TransformOptions {
    bool step1 = true;
    bool step23 = true;
};

// Steps 1-3 of the reduction to a transformed instance. Requires a connected graph.
std::pair<MwcInstance, TransformRecord> transform_instance(const MwcInstance& inst, TransformOptions opt = {});

struct TransformedReport {
    bool bridgeless = false;
    bool faces_disjoint = false;
    bool faces_all_terminals = false;
    bool short_other_faces = false;
    bool neighbors_are_digons = false;
    bool all() const {
        return bridgeless && faces_disjoint && faces_all_terminals && short_other_faces && neighbors_are_digons;
    }
};

TransformedReport check_transformed(const MwcInstance& inst);

struct RecoverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Maps a minimal cut of the transformed instance back to the original instance.
CutSolution recover_optimum(const MwcInstance& original, const std::vector<int>& transformed_cut,
                            const TransformRecord& rec);

// Step-1 edge set of a transformed cut (both copies present). Throws on a lone copy.
std::vector<int> collapse_copies(const std::vector<int>& transformed_cut, const TransformRecord& rec);

// Original edges corresponding to a step-1 edge set.
std::vector<int> step1_to_original(const std::vector<int>& s1_cut, const TransformRecord& rec);

}  // namespace pmc
