#pragma once

#include <string>
#include <vector>

#include "pmc/plane_graph.hpp"

namespace pmc {

struct TerminalFace {
    int face_dart = -1;           // any dart on the face walk, as given in the input
    int face = -1;                // face id in the instance graph
    std::vector<int> terminals;   // t_1..t_p in first-encounter order
    int p() const { return static_cast<int>(terminals.size()); }
};

struct MwcInstance {
    PlaneGraph g;
    std::vector<int> terminals;  // sorted ascending
    std::vector<TerminalFace> faces;
    bool transformed = false;

    int k() const { return static_cast<int>(faces.size()); }
    int n() const { return g.vertex_count(); }
    std::vector<int> terminal_face_of() const;  // per vertex: index into faces, -1 for non-terminals
    std::vector<char> terminal_mask() const;
};

struct InstanceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Start dart of the canonical walk of face f: its smallest dart id.
int canonical_start(const PlaneGraph& g, int f);

// Assign terminals to the given faces (earliest face wins) and order them along each face.
// Throws InstanceError if some terminal lies on none of the faces.
std::vector<TerminalFace> assign_terminals(const PlaneGraph& g, const std::vector<int>& terminals,
                                           const std::vector<int>& face_ids);

MwcInstance make_instance(PlaneGraph g, std::vector<int> terminals, const std::vector<int>& face_ids);

// Faces are computed with compute_face_cover when the document has no terminal_faces.
MwcInstance parse_instance(const std::string& text);
std::string serialize_instance(const MwcInstance& inst);
MwcInstance load_instance(const std::string& path);

// Parses an integer, decimal or "p/q" weight string into a reduced fraction.
struct Fraction {
    long long num = 0, den = 1;
};
Fraction parse_fraction(const std::string& s);

struct NormalizedParts {
    std::vector<MwcInstance> parts;
    std::vector<std::vector<int>> edge_from;  // per part: part edge -> input edge
    std::vector<std::vector<int>> vertex_from;
    bool k_grew = false;
};

NormalizedParts normalize_weights(const MwcInstance& inst);

// Scales fractions to integers by the least common denominator.
std::vector<Weight> scale_fractions(const std::vector<Fraction>& w);

// All inclusion-minimal covers of T by at most k_max faces, smallest first then lexicographic.
std::vector<std::vector<int>> compute_face_cover(const PlaneGraph& g, const std::vector<int>& T, int k_max);

// First cover of minimum size.
std::vector<int> min_face_cover(const PlaneGraph& g, const std::vector<int>& T);

}  // namespace pmc
