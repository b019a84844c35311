#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "pmc/dual_tools.hpp"

namespace pmc {

struct Crossing {
    int spoke = -1;
    int dir = +1;  // +1 west to east, -1 east to west; west is the left of the spoke's direction
    bool operator==(const Crossing&) const = default;
};

using HomotopyString = std::vector<Crossing>;

struct Spoke {
    int id = -1;
    int from_face = -1, to_face = -1;  // terminal face indices, from < to
    std::vector<int> darts;            // dual darts from the vertex of from_face to the vertex of to_face
    Weight weight = 0;
};

// One interior vertex of a spoke in G+, with the spoke's incoming and outgoing darts there.
struct SpokeVisit {
    int spoke = -1;
    int back = -1;  // dart at the vertex pointing to the previous spoke vertex
    int fwd = -1;   // dart at the vertex pointing to the next spoke vertex
};

struct CutGraph {
    std::vector<Spoke> spokes;
    std::vector<int> edges;                     // union of the spokes, sorted
    std::vector<std::vector<SpokeVisit>> at;    // per G+ vertex, sorted by spoke id
    const PlaneGraph* host = nullptr;           // the G+ the visits refer to
    std::vector<char> blocked;                  // augmented terminals, never entered by walks

    int spoke_count() const { return static_cast<int>(spokes.size()); }
};

// Spokes are lexicographically tie-broken shortest dual paths that avoid other terminal-face vertices,
// chosen by a minimum spanning tree over all pairs of terminal faces.
CutGraph build_cut_graph(const MwcInstance& inst, const AugmentedDual& ad);

// Shortest dual path with exact tie-breaking: among equal weights, the edge set whose largest differing edge
// id is absent wins. Vertices marked in `blocked` are not entered except as the target.
std::optional<std::vector<int>> unique_shortest_path(const PlaneGraph& H, int s, int t,
                                                     const std::vector<char>& blocked = {});

// Crossings of a walk in G+ given by its start vertex and darts. Walk ends lying on a spoke count as
// touching it from the west.
HomotopyString crossing_sequence(const CutGraph& K, int start, const std::vector<int>& darts);

// Incremental form of crossing_sequence: events holds the crossings settled so far, finished() adds the
// crossings resolved by ending the walk at the current vertex.
struct CrossingTracker {
    const CutGraph* K = nullptr;
    int at = -1;
    unsigned pending = 0;
    HomotopyString events;

    CrossingTracker(const CutGraph& K_, int start) : K(&K_), at(start) {}
    void advance(int dart);
    HomotopyString finished() const;
};

struct HomotopicPath {
    int from = -1, to = -1;
    std::vector<int> darts;
    Weight weight = 0;
};

// Minimum-weight walk from x to y in G+ whose crossing sequence equals h exactly; walks avoid augmented
// terminals and infinite edges.
std::optional<HomotopicPath> homotopic_shortest_path(const CutGraph& K, int x, int y, const HomotopyString& h);

// Shortest homotopic distances from x to every vertex for every prefix of h: dist[e][v] has crossing sequence
// h[0..e). Pending crossings at v are resolved as at a walk end.
std::vector<std::vector<Weight>> homotopic_distances(const CutGraph& K, int x, const HomotopyString& h);

// Default string-length cap L(k) = 60k - 30.
int default_hcap(int k);

// All strings of length <= max_len over spokes x {+,-}, shortest first then lexicographic.
void for_each_homotopy_string(const CutGraph& K, int max_len, const std::function<void(const HomotopyString&)>& fn);
std::vector<HomotopyString> enumerate_homotopy_strings(const CutGraph& K, int max_len);

// Spokes cross pairwise nowhere.
bool spokes_noncrossing(const CutGraph& K);

std::string to_string(const HomotopyString& h);

}  // namespace pmc
