#include "ckext/verification.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ckext {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

double binomial(int n, int k) {
    double r = 1.0;
    for (int j = 1; j <= k; ++j) r = r * (n - k + j) / j;
    return r;
}

double ulp_of(double a) {
    a = std::fabs(a);
    return std::nextafter(a, inf) - a;
}

// strictly interior sample; unbounded components are probed within 2 of
// the finite end (or [-1,1] on the full line)
double component_sample(const Interval& c, int t, int n) {
    const double frac = (t + 0.5) / n;
    const bool lo_inf = std::isinf(c.lo), hi_inf = std::isinf(c.hi);
    if (lo_inf && hi_inf) return -1.0 + 2.0 * frac;
    if (lo_inf) return c.hi - 2.0 + 2.0 * frac;
    if (hi_inf) return c.lo + 2.0 * frac;
    return c.lo + frac * (c.hi - c.lo);
}

struct MarginTracker {
    double worst = inf;
    bool violated = false;
    void observe(double margin, bool ok) {
        worst = std::min(worst, margin);
        if (!ok) violated = true;
    }
    void finish(CheckResult& r) const {
        if (!std::isfinite(worst) && !violated) r.worst_margin = 0.0; // nothing sampled
        else r.worst_margin = worst;
        r.status = violated ? "FAIL" : "PASS";
    }
};

} // namespace

double fd_derivative(const std::function<double(double)>& f, int i, double x, double step) {
    if (!(step > 0)) throw std::invalid_argument("fd_derivative: step must be positive");
    if (i < 0 || i > 8) throw std::invalid_argument("fd_derivative: order outside [0, 8]");
    if (i == 0) return f(x);
    double acc = 0.0;
    for (int m = 0; m <= i; ++m) {
        const double sign = m % 2 == 0 ? 1.0 : -1.0;
        acc += sign * binomial(i, m) * f(x + (0.5 * i - m) * step);
    }
    return acc / std::pow(step, i);
}

CheckResult check_extension_identity(const SmoothEvaluator& g, const SmoothEvaluator& h,
                                     int samples) {
    CheckResult r;
    r.check = "extension_identity";
    r.paper_ref = "identity h = f*g on the open support";
    const OpenSet& V = h.support();
    const OraclePtr f = h.oracle();
    if (!f) throw std::invalid_argument("check_extension_identity: evaluator carries no oracle");
    const int per = std::max<int>(1, samples / std::max<std::size_t>(1, V.components.size()));
    MarginTracker mt;
    long count = 0;
    for (const Interval& c : V.components) {
        for (int t = 0; t < per; ++t) {
            const double x = component_sample(c, t, per);
            const double prod = f->deriv(0, x) * g.eval(x);
            const double dev = std::fabs(h.eval(x) - prod);
            const double allow = ulp_of(prod);
            mt.observe(allow - dev, dev <= allow);
            ++count;
        }
    }
    r.params = {{"samples", static_cast<double>(count)}};
    mt.finish(r);
    return r;
}

CheckResult check_boundary_vanishing(const SmoothEvaluator& e, int r,
                                     const std::vector<int>& depths) {
    CheckResult res;
    res.check = "boundary_vanishing";
    res.paper_ref = "FD-estimated derivatives decay to 0 at boundary points";
    res.params = {{"order", static_cast<double>(r)}};
    if (r > e.order_bound()) {
        res.status = "N/A"; // only guaranteed up to the smoothness class
        return res;
    }
    if (depths.empty()) throw std::invalid_argument("check_boundary_vanishing: no depths");
    const auto fn = [&e](double x) { return e.eval(x); };
    MarginTracker mt;
    int approaches = 0;
    for (int m = 0; m < e.component_count(); ++m) {
        const KnotLadder& lad = e.ladder(m);
        if (lad.full_line) continue;
        for (const Side side : {Side::left, Side::right}) {
            const double w = side == Side::right ? lad.interval.hi : lad.interval.lo;
            if (std::isinf(w)) continue;
            double first = -1.0, last = -1.0;
            for (const int j : depths) {
                const double delta = std::ldexp(lad.L, -j);
                const double x = side == Side::right ? w - delta : w + delta;
                const double est = std::fabs(fd_derivative(fn, r, x, std::ldexp(lad.L, -(j + 4))));
                if (first < 0) first = est;
                last = est;
            }
            const double margin = std::max(1e-8 * first - last, 1e-30 - last);
            mt.observe(margin, margin > 0);
            ++approaches;
        }
    }
    res.params.emplace_back("approaches", static_cast<double>(approaches));
    res.params.emplace_back("depth_first", static_cast<double>(depths.front()));
    res.params.emplace_back("depth_last", static_cast<double>(depths.back()));
    mt.finish(res);
    return res;
}

CheckResult check_quotient_bound(const SmoothEvaluator& h, int r) {
    CheckResult res;
    res.check = "quotient_bound";
    res.paper_ref = "|h^(r-1)(x)|/dist(x, boundary) <= 5rL/2^(n+2) + L/2^n";
    res.params = {{"order", static_cast<double>(r)}};
    if (r < 1) throw std::invalid_argument("check_quotient_bound: r must be >= 1");
    if (r - 1 > h.order_bound()) {
        res.status = "N/A";
        return res;
    }
    MarginTracker mt;
    long points = 0;
    for (int m = 0; m < h.component_count(); ++m) {
        const KnotLadder& lad = h.ladder(m);
        if (lad.full_line) continue;
        for (const Side side : {Side::left, Side::right}) {
            const TamingTable& tab = h.table(m, side);
            if (tab.empty()) continue;
            const double bdry = side == Side::right ? lad.interval.hi : lad.interval.lo;
            for (int n = r; n <= tab.segments; ++n) {
                const double kn = knot(lad, side, n);
                const double kn1 = knot(lad, side, n + 1);
                const double bound = 5.0 * r * std::ldexp(lad.L, -(n + 2)) + std::ldexp(lad.L, -n);
                for (const double x : {kn, 0.5 * (kn + kn1)}) {
                    const double dist = std::fabs(bdry - x);
                    const double q = std::fabs(h.eval_deriv(r - 1, x)) / dist;
                    mt.observe(bound - q, q <= bound);
                    ++points;
                }
            }
        }
    }
    res.params.emplace_back("points", static_cast<double>(points));
    mt.finish(res);
    return res;
}

CheckResult check_product_bound(const SmoothEvaluator& h) {
    CheckResult res;
    res.check = "product_bound";
    res.paper_ref = "|h| <= L^2/2^(2n+1) on ladder segment n";
    MarginTracker mt;
    long points = 0;
    for (int m = 0; m < h.component_count(); ++m) {
        const KnotLadder& lad = h.ladder(m);
        if (lad.full_line) continue;
        for (const Side side : {Side::left, Side::right}) {
            const TamingTable& tab = h.table(m, side);
            if (tab.empty()) continue;
            for (int n = 1; n <= tab.segments; ++n) {
                const double kn = knot(lad, side, n);
                const double kn1 = knot(lad, side, n + 1);
                const double bound = knot_value_formula(lad.L, n, 1.0);
                for (int t = 0; t < 16; ++t) {
                    // 16 samples covering the segment, knot end included
                    const double x = kn + (t / 16.0) * (kn1 - kn);
                    const double val = std::fabs(h.eval(x));
                    mt.observe(bound - val, val <= bound);
                    ++points;
                }
            }
        }
    }
    res.params = {{"samples_per_segment", 16.0}, {"points", static_cast<double>(points)}};
    mt.finish(res);
    return res;
}

CheckResult check_knot_values(const SmoothEvaluator& g) {
    CheckResult res;
    res.check = "knot_values";
    res.paper_ref = "g(knot l) = L^2/(2^(2l+1)*S_l), successive ratio <= 1/4";
    MarginTracker mt;
    long checked = 0;
    for (int m = 0; m < g.component_count(); ++m) {
        const KnotLadder& lad = g.ladder(m);
        if (lad.full_line) continue;
        for (const Side side : {Side::left, Side::right}) {
            const TamingTable& tab = g.table(m, side);
            if (tab.empty()) continue;
            const int levels = static_cast<int>(tab.knot_values.size());
            for (int l = 1; l <= levels; ++l) {
                const double expected = tab.knot_values[l - 1];
                const double got = g.eval(knot(lad, side, l));
                const bool same = got == expected;
                mt.observe(same ? 0.0 : -std::fabs(got - expected), same);
                if (l < levels) {
                    const double lhs = 4.0 * tab.knot_values[l];
                    mt.observe(expected - lhs, lhs <= expected);
                }
                ++checked;
            }
        }
    }
    res.params = {{"knots", static_cast<double>(checked)}};
    mt.finish(res);
    return res;
}

CheckResult check_cozero_support(const SmoothEvaluator& e, const OpenSet& U, int n) {
    CheckResult res;
    res.check = "cozero_support";
    res.paper_ref = "witness is positive exactly on the target open set";
    MarginTracker mt;
    const int per = std::max<int>(1, n / std::max<std::size_t>(1, U.components.size()));
    for (const Interval& c : U.components) {
        for (int t = 0; t < per; ++t) {
            const double val = e.eval(component_sample(c, t, per));
            mt.observe(val, val > 0.0);
        }
    }
    // outside samples over the padded hull of the finite endpoints
    double lo = inf, hi = -inf;
    for (const Interval& c : U.components) {
        if (std::isfinite(c.lo)) { lo = std::min(lo, c.lo); hi = std::max(hi, c.lo); }
        if (std::isfinite(c.hi)) { lo = std::min(lo, c.hi); hi = std::max(hi, c.hi); }
    }
    int outside = 0;
    if (std::isfinite(lo)) {
        lo -= 1.0;
        hi += 1.0;
        for (int t = 0; t < n; ++t) {
            const double x = lo + (hi - lo) * t / std::max(1, n - 1);
            if (U.contains(x)) continue;
            const double val = e.eval(x);
            mt.observe(val == 0.0 ? 0.0 : -std::fabs(val), val == 0.0);
            ++outside;
        }
    }
    res.params = {{"inside_per_component", static_cast<double>(per)},
                  {"outside", static_cast<double>(outside)}};
    mt.finish(res);
    return res;
}

CheckResult check_mutual_annihilation(const SmoothEvaluator* a, const SmoothEvaluator* b,
                                      double lo, double hi, int samples) {
    CheckResult res;
    res.check = "mutual_annihilation";
    res.paper_ref = "product of the two witnesses is identically zero";
    MarginTracker mt;
    for (int t = 0; t < samples; ++t) {
        const double x = lo + (hi - lo) * t / std::max(1, samples - 1);
        const double prod = (a ? a->eval(x) : 0.0) * (b ? b->eval(x) : 0.0);
        mt.observe(prod == 0.0 ? 0.0 : -std::fabs(prod), prod == 0.0);
    }
    res.params = {{"samples", static_cast<double>(samples)}};
    mt.finish(res);
    return res;
}

CheckResult check_coverage(const SmoothEvaluator* a, const SmoothEvaluator* b,
                           double lo, double hi, int cells) {
    CheckResult res;
    res.check = "cozero_coverage";
    res.paper_ref = "sum of the witnesses is nonzero within every grid cell";
    MarginTracker mt;
    const double w = (hi - lo) / cells;
    for (int c = 0; c < cells; ++c) {
        double best = 0.0;
        for (int t = 0; t < 9; ++t) {
            const double x = lo + c * w + (t + 0.5) / 9.0 * w;
            const double sum = (a ? a->eval(x) : 0.0) + (b ? b->eval(x) : 0.0);
            best = std::max(best, std::fabs(sum));
        }
        mt.observe(best, best != 0.0);
    }
    res.params = {{"cells", static_cast<double>(cells)}, {"probes_per_cell", 9.0}};
    mt.finish(res);
    return res;
}

} // namespace ckext
