#pragma once

#include <vector>

namespace ckext {

// Open interval (lo, hi); lo may be -infinity and hi may be +infinity.
struct Interval {
    double lo;
    double hi;
    bool operator==(const Interval&) const = default;
};

// Finite union of maximal disjoint open intervals, sorted ascending.
struct OpenSet {
    std::vector<Interval> components;

    bool empty() const { return components.empty(); }
    bool is_full_line() const;
    bool contains(double x) const { return component_index(x) >= 0; }
    // Index of the component with x strictly inside, or -1.
    int component_index(double x) const;
    bool operator==(const OpenSet&) const = default;
};

// Merge raw intervals into maximal disjoint components.  Intervals that only
// touch at a shared endpoint stay separate (the point is not interior to the
// union).  Throws std::invalid_argument unless lo < hi for each.
OpenSet normalize(const std::vector<Interval>& raw);

// V = U union interior(R \ U): the dense open set whose complement is the
// (finite) boundary of U.  Throws std::invalid_argument on empty U.
OpenSet densify(const OpenSet& U);

enum class Side { left, right };

// Geometric knot ladder of one component (u, v).  Knots march from the
// midpoint toward each finite endpoint, halving the remaining distance at
// every step: a_n = v - L/2^n on the right, b_n = u + L/2^n on the left,
// a_1 = b_1 = midpoint.  An interval unbounded on one side gets a ladder
// only toward its finite endpoint (with L = 1) and is constant beyond the
// first knot; the full line gets no ladder at all.
struct KnotLadder {
    Interval interval;
    double effective_u = 0.0;
    double effective_v = 0.0;
    double L = 1.0;
    bool full_line = false;
    int max_depth = 0;
    // Deepest index whose knot is still distinct from its predecessor in
    // floating point; the region past it is treated as the zero tail.
    int usable_depth = 0;
    std::vector<double> right_knots; // a_1..a_usable (empty if v = +inf omitted side)
    std::vector<double> left_knots;  // b_1..b_usable

    bool has_right_ladder() const { return !right_knots.empty(); }
    bool has_left_ladder() const { return !left_knots.empty(); }
};

KnotLadder make_ladder(const Interval& component, int max_depth = 40);

// Knot a_n (right) or b_n (left), n >= 1.  Throws std::out_of_range past the
// usable depth (callers treat that tail as the zero region).
double knot(const KnotLadder& ladder, Side side, int n);

enum class Region {
    outside,          // not in V (boundary point or off every component)
    ladder_segment,   // x in [a_n, a_{n+1}) resp. (b_{n+1}, b_n]
    constant_stretch, // unbounded stretch beyond the first knot
    zero_tail         // past the deepest usable knot
};

struct Location {
    Region region = Region::outside;
    int component = -1;
    Side side = Side::right;
    int index = 0; // segment index n (ladder_segment only)
};

// Region of x within one component; x must lie strictly inside it.
Location locate(const KnotLadder& ladder, double x);

// Component lookup plus ladder location; boundary points map to outside.
Location locate(const OpenSet& V, const std::vector<KnotLadder>& ladders, double x);

} // namespace ckext
