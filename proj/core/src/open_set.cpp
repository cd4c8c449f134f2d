#include "ckext/open_set.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ckext {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

void validate(const Interval& iv) {
    if (std::isnan(iv.lo) || std::isnan(iv.hi))
        throw std::invalid_argument("interval endpoint is NaN");
    if (!(iv.lo < iv.hi))
        throw std::invalid_argument("interval requires lo < hi");
}

} // namespace

bool OpenSet::is_full_line() const {
    return components.size() == 1 && components[0].lo == -inf && components[0].hi == inf;
}

int OpenSet::component_index(double x) const {
    if (!std::isfinite(x)) return -1;
    auto it = std::upper_bound(components.begin(), components.end(), x,
                               [](double v, const Interval& iv) { return v < iv.hi; });
    if (it == components.end()) return -1;
    if (!(it->lo < x && x < it->hi)) return -1;
    return static_cast<int>(it - components.begin());
}

OpenSet normalize(const std::vector<Interval>& raw) {
    std::vector<Interval> sorted = raw;
    for (const Interval& iv : sorted) validate(iv);
    std::sort(sorted.begin(), sorted.end(),
              [](const Interval& a, const Interval& b) { return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi); });
    OpenSet out;
    for (const Interval& iv : sorted) {
        // merge only on genuine overlap; touching endpoints stay separate
        if (!out.components.empty() && iv.lo < out.components.back().hi)
            out.components.back().hi = std::max(out.components.back().hi, iv.hi);
        else
            out.components.push_back(iv);
    }
    return out;
}

OpenSet densify(const OpenSet& U) {
    if (U.empty()) throw std::invalid_argument("densify: empty open set");
    OpenSet V;
    const auto& cs = U.components;
    if (cs.front().lo > -inf) V.components.push_back({-inf, cs.front().lo});
    for (std::size_t m = 0; m < cs.size(); ++m) {
        V.components.push_back(cs[m]);
        if (m + 1 < cs.size() && cs[m].hi < cs[m + 1].lo)
            V.components.push_back({cs[m].hi, cs[m + 1].lo});
    }
    if (cs.back().hi < inf) V.components.push_back({cs.back().hi, inf});
    return V;
}

KnotLadder make_ladder(const Interval& component, int max_depth) {
    validate(component);
    if (max_depth < 1) throw std::invalid_argument("make_ladder: max_depth must be >= 1");
    KnotLadder lad;
    lad.interval = component;
    lad.max_depth = max_depth;
    const bool lo_inf = component.lo == -inf;
    const bool hi_inf = component.hi == inf;
    if (lo_inf && hi_inf) {
        lad.full_line = true;
        lad.L = 1.0;
        lad.usable_depth = 0;
        return lad;
    }
    if (lo_inf) { // ladder toward v only
        lad.effective_v = component.hi;
        lad.effective_u = component.hi - 1.0;
        lad.L = 1.0;
    } else if (hi_inf) { // ladder toward u only
        lad.effective_u = component.lo;
        lad.effective_v = component.lo + 1.0;
        lad.L = 1.0;
    } else {
        lad.effective_u = component.lo;
        lad.effective_v = component.hi;
        lad.L = component.hi - component.lo;
    }

    const double mid = lad.effective_u + 0.5 * (lad.effective_v - lad.effective_u);
    const bool build_right = !hi_inf;
    const bool build_left = !lo_inf;
    int depth = max_depth;
    if (build_right) {
        lad.right_knots.push_back(mid); // a_1
        for (int n = 2; n <= max_depth; ++n) {
            const double a = lad.effective_v - std::ldexp(lad.L, -n);
            if (!(a > lad.right_knots.back()) || !(a < lad.effective_v)) break;
            lad.right_knots.push_back(a);
        }
        depth = std::min<int>(depth, static_cast<int>(lad.right_knots.size()));
    }
    if (build_left) {
        lad.left_knots.push_back(mid); // b_1 (shared with a_1)
        for (int n = 2; n <= max_depth; ++n) {
            const double b = lad.effective_u + std::ldexp(lad.L, -n);
            if (!(b < lad.left_knots.back()) || !(b > lad.effective_u)) break;
            lad.left_knots.push_back(b);
        }
        depth = std::min<int>(depth, static_cast<int>(lad.left_knots.size()));
    }
    lad.usable_depth = depth;
    if (build_right) lad.right_knots.resize(depth);
    if (build_left) lad.left_knots.resize(depth);
    return lad;
}

double knot(const KnotLadder& ladder, Side side, int n) {
    if (n < 1) throw std::invalid_argument("knot: index must be >= 1");
    const auto& ks = side == Side::right ? ladder.right_knots : ladder.left_knots;
    if (n > static_cast<int>(ks.size()))
        throw std::out_of_range("knot: depth exceeded");
    return ks[n - 1];
}

Location locate(const KnotLadder& ladder, double x) {
    Location loc;
    if (ladder.full_line) {
        loc.region = Region::constant_stretch;
        loc.index = 1;
        return loc;
    }
    if (!(x > ladder.interval.lo && x < ladder.interval.hi)) {
        loc.region = Region::outside;
        return loc;
    }
    const bool has_right = ladder.has_right_ladder();
    const bool has_left = ladder.has_left_ladder();
    // the shared first knot (midpoint) prefers the right-hand segment
    if (has_right && x >= ladder.right_knots.front()) {
        loc.side = Side::right;
        const auto& ks = ladder.right_knots;
        if (x >= ks.back()) { // at or past the deepest knot
            loc.region = Region::zero_tail;
            return loc;
        }
        auto it = std::upper_bound(ks.begin(), ks.end(), x);
        loc.region = Region::ladder_segment;
        loc.index = static_cast<int>(it - ks.begin()); // a_n <= x < a_{n+1}
        return loc;
    }
    if (has_left && (!has_right || x < ladder.right_knots.front())) {
        loc.side = Side::left;
        const auto& ks = ladder.left_knots; // decreasing toward u
        if (x > ks.front()) {
            loc.region = Region::constant_stretch; // (u, inf): right of b_1
            loc.index = 1;
            return loc;
        }
        if (x <= ks.back()) {
            loc.region = Region::zero_tail;
            return loc;
        }
        // segment n holds (b_{n+1}, b_n]; an exact knot b_n reports index n
        auto it = std::upper_bound(ks.begin(), ks.end(), x, std::greater<>());
        loc.region = Region::ladder_segment;
        loc.index = static_cast<int>(it - ks.begin());
        return loc;
    }
    // right-ladder-only component, x left of a_1
    loc.side = Side::right;
    loc.region = Region::constant_stretch;
    loc.index = 1;
    return loc;
}

Location locate(const OpenSet& V, const std::vector<KnotLadder>& ladders, double x) {
    const int m = V.component_index(x);
    if (m < 0) return Location{};
    Location loc = locate(ladders[m], x);
    loc.component = m;
    return loc;
}

} // namespace ckext
