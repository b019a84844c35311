#pragma once

#include <cstdint>
#include <limits>
#include <string>

namespace pmc {

// Edge weights are exact integers; kInf marks uncuttable edges.
using Weight = std::int64_t;

inline constexpr Weight kInf = std::numeric_limits<Weight>::max() / 4;

inline bool is_inf(Weight w) { return w >= kInf; }

inline Weight wadd(Weight a, Weight b) {
    if (is_inf(a) || is_inf(b)) return kInf;
    Weight s = a + b;
    return s >= kInf ? kInf : s;
}

inline Weight wmul(Weight a, Weight f) {
    if (is_inf(a)) return kInf;
    if (a != 0 && f > kInf / a) return kInf;
    return a * f;
}

inline std::string weight_str(Weight w) { return is_inf(w) ? std::string("inf") : std::to_string(w); }

}  // namespace pmc
