#pragma once

#include <map>
#include <optional>
#include <tuple>
#include <vector>

#include "pmc/cut.hpp"
#include "pmc/dual_tools.hpp"

namespace pmc {

struct SteinerError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SteinerTree {
    std::vector<int> edges;      // sorted edge ids of the host graph
    std::vector<int> terminals;  // sorted, deduplicated
    Weight weight = kInf;
};

// Removed vertices (mask may be empty) and infinite-weight edges are never used.
SteinerTree dreyfus_wagner(const PlaneGraph& H, const std::vector<int>& terminals,
                           const std::vector<char>& removed = {});

// Terminals must appear in this cyclic order (either orientation) along one face walk.
SteinerTree one_face_steiner(const PlaneGraph& H, const std::vector<int>& ring, const std::vector<char>& removed = {});

// True iff the vertices occur in this cyclic order, in either orientation, along some face walk of H.
bool cyclic_on_face(const PlaneGraph& H, const std::vector<int>& ring);

// Minimum Steiner trees on X ∪ {v} for every subset X of a base terminal list and every vertex v.
class SubsetSteiner {
public:
    SubsetSteiner() = default;
    SubsetSteiner(const PlaneGraph& H, std::vector<int> base, std::vector<char> removed = {});

    int base_size() const { return static_cast<int>(base_.size()); }
    Weight weight(unsigned mask, int v) const { return mask == 0 ? 0 : dp_[mask][v]; }
    SteinerTree tree(unsigned mask, int v) const;

private:
    const PlaneGraph* H_ = nullptr;
    std::vector<int> base_;
    std::vector<std::vector<Weight>> dp_;
    std::vector<std::vector<int>> pred_;
    std::vector<std::vector<unsigned>> split_;
};

// Minimum Steiner trees on I ∪ {v} for every cyclic interval I of a ring of face terminals and every vertex v.
class IntervalSteiner {
public:
    IntervalSteiner() = default;
    IntervalSteiner(const PlaneGraph& H, std::vector<int> ring, int max_len, std::vector<char> removed = {});

    int ring_size() const { return static_cast<int>(ring_.size()); }
    Weight weight(int lo, int len, int v) const;
    SteinerTree tree(int lo, int len, int v) const;

private:
    const PlaneGraph* H_ = nullptr;
    std::vector<int> ring_;
    int max_len_ = 0;
    std::vector<char> removed_;
    std::vector<std::vector<Weight>> dp_;
    std::vector<std::vector<int>> pred_;   // dart into v, or -1
    std::vector<std::vector<int>> split_;  // length of the left part, or 0
    int slot(int lo, int len) const { return lo * max_len_ + (len - 1); }
    void collect(int lo, int len, int v, std::vector<int>& out) const;
};

// Cyclic interval {a_lo, ..., a_{lo+len-1}} of the augmented terminals of one face; indices are 0-based and
// a_j stands for the boundary edge from t_{j-1} to t_j.
struct Interval {
    int face = -1;
    int p = 0;
    int lo = 0;
    int len = 0;

    bool empty() const { return len == 0; }
    bool full() const { return len == p; }
    int hi() const { return (lo + len - 1 + p) % p; }
    int at(int i) const { return (lo + i) % p; }
    bool contains(int j) const { return len > 0 && ((j - lo + p) % p) < len; }
    std::vector<int> members() const;
    bool operator==(const Interval&) const = default;
};

struct IntervalError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

bool consecutive(const Interval& I, const Interval& J);
// Terminal indices (into the face's terminal list) inbetween consecutive intervals: one, or two when I ∪ J is full.
std::vector<int> inbetween_terminals(const Interval& I, const Interval& J);
// Terminals shared by consecutive members of I.
std::vector<int> between_terminals(const Interval& I);
bool is_subinterval(const Interval& S, const Interval& I);
bool is_prefix(const Interval& S, const Interval& I);
bool is_suffix(const Interval& S, const Interval& I);
// Non-empty members of the list are consecutive in list order and cover all p augmented terminals exactly once.
bool partition_check(const std::vector<Interval>& parts, int p);

struct Nerve {
    int v = -1;
    Interval interval;
    std::vector<int> edges;  // G+ edges, sorted
    Weight weight = kInf;
    int root_edge = -1;      // the single edge at v
    bool canonical = true;
};

// Nerves on the augmented terminals of one face. Steiner trees come from subset tables over the face's
// augmented terminals, one on G+ and one on G+ - v per attachment point v (cached).
class NerveEngine {
public:
    NerveEngine(const AugmentedDual& ad, int alpha);

    // Minimum Steiner weight on {v} ∪ I in G+.
    Weight steiner_weight(int v, const Interval& I);
    // First neighbour u in rotation order with ω(Z+) = ω(Z+_u) + ω(v,u); none when no neighbour qualifies.
    std::optional<Nerve> nerve(int v, const Interval& I);
    Weight nerve_weight(int v, const Interval& I);
    Interval interval(int lo, int len) const { return {alpha_, p_, lo, len}; }

private:
    const AugmentedDual* ad_;
    int alpha_, p_;
    SubsetSteiner full_;
    std::map<int, SubsetSteiner> without_;
    std::map<std::tuple<int, int, int>, std::optional<Nerve>> memo_;
    const SubsetSteiner& without(int v);
    unsigned mask(const Interval& I) const;
};

std::optional<Nerve> compute_nerve(const AugmentedDual& ad, int v, const Interval& I);

// k = 1: minimum Steiner tree on the augmented terminals of the step-1 instance, mapped back to input edges.
CutSolution chen_wu_single_face_solve(const MwcInstance& inst);

}  // namespace pmc
