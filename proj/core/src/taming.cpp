#include "ckext/taming.hpp"

#include "ckext/errors.hpp"
#include "ckext/mollifier.hpp"
#include "ckext/mspline.hpp"
#include "ckext/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ckext {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();
constexpr int grid_points = 4096; // 2^12
constexpr double safety = 1.05;

} // namespace

double derivative_sup(const FunctionOracle& f, int i, double lo, double hi) {
    if (!(lo < hi)) throw std::invalid_argument("derivative_sup: requires lo < hi");
    const auto fn = [&f, i](double x) { return f.deriv(i, x); };
    const double m = max_abs_on_interval(fn, lo, hi, grid_points);
    if (!std::isfinite(m)) {
        if (i == 0) throw construction_error("function not finite on a closed subinterval");
        return inf; // saturates the products; knot values go to 0
    }
    return safety * m;
}

double knot_value_formula(double L, int l, double S) {
    return L * L / (std::ldexp(1.0, 2 * l + 1) * S);
}

TamingTable build_taming(const FunctionOracle& f, const KnotLadder& ladder, Side side, int k) {
    TamingTable t;
    t.side = side;
    t.L = ladder.L;
    t.case_b = ladder.L < 1.0;
    t.p = t.case_b ? std::floor(1.0 / ladder.L) : 0.0;
    if (k < 0) k = 0;

    const auto& ks = side == Side::right ? ladder.right_knots : ladder.left_knots;
    if (ladder.full_line || ks.size() < 2) return t;
    const int n_seg = static_cast<int>(ks.size()) - 1;
    t.segments = n_seg;
    t.S.assign(n_seg, inf);
    t.knot_values.assign(n_seg + 1, 0.0);

    // segment j spans the j-th and (j+1)-th knots, ordered by abscissa
    const auto seg_lo = [&](int j) { return side == Side::right ? ks[j - 1] : ks[j]; };
    const auto seg_hi = [&](int j) { return side == Side::right ? ks[j] : ks[j - 1]; };
    const auto f_sup = [&](int i, int j) {
        return derivative_sup(f, std::min(i, k), seg_lo(j), seg_hi(j));
    };

    double running_S = 1.0;
    for (int n = 1; n <= n_seg; ++n) {
        const double case_top = t.case_b ? std::max<double>(t.p, n) : n;
        const int top = static_cast<int>(std::min<double>(case_top, max_bump_order));
        std::vector<double> arow(top + 1), brow(top + 1);
        for (int i = 0; i <= top; ++i) {
            const bool have_prev = n >= 2 && i < static_cast<int>(t.A[n - 2].size());
            if (have_prev) {
                arow[i] = std::max(t.A[n - 2][i], 1.0 + f_sup(i, n));
                brow[i] = std::max(t.B[n - 2][i], 1.0 + mspline_sup_deriv(i, seg_lo(n), seg_hi(n)));
            } else {
                // index newly in range: cover every segment up to n
                double a = 1.0, b = 1.0;
                for (int j = 1; j <= n; ++j) {
                    a = std::max(a, 1.0 + f_sup(i, j));
                    b = std::max(b, 1.0 + mspline_sup_deriv(i, seg_lo(j), seg_hi(j)));
                }
                arow[i] = a;
                brow[i] = b;
            }
        }
        double prod = 1.0;
        for (double a : arow) prod *= a;
        for (double b : brow) prod *= b;
        running_S = std::max(running_S, prod);
        t.S[n - 1] = running_S;
        t.A.push_back(std::move(arow));
        t.B.push_back(std::move(brow));
        if (std::isinf(running_S)) break; // deeper knot values are exact 0 anyway
    }
    for (int l = 1; l <= n_seg; ++l)
        t.knot_values[l - 1] = knot_value_formula(t.L, l, t.S[l - 1]);
    return t;
}

void recompute_products(TamingTable& t) {
    double running = 0.0; // no floor: mutated tables may legitimately dip below 1
    for (int n = 1; n <= t.segments; ++n) {
        double s = inf;
        if (n <= static_cast<int>(t.A.size())) {
            s = 1.0;
            for (double a : t.A[n - 1]) s *= a;
            for (double b : t.B[n - 1]) s *= b;
        }
        running = std::max(running, s);
        t.S[n - 1] = running;
    }
    for (int l = 1; l <= t.segments; ++l)
        t.knot_values[l - 1] = knot_value_formula(t.L, l, t.S[l - 1]);
    if (!t.knot_values.empty()) t.knot_values.back() = 0.0;
}

void finalize_pair(TamingTable* left, TamingTable* right) {
    if (left && right && !left->empty() && !right->empty()) {
        // the midpoint knot is shared; both sides must agree on g there
        const double s1 = std::max(left->S[0], right->S[0]);
        left->S[0] = s1;
        right->S[0] = s1;
    }
    for (TamingTable* t : {left, right}) {
        if (!t || t->empty()) continue;
        for (int n = 2; n <= t->segments; ++n)
            t->S[n - 1] = std::max(t->S[n - 1], t->S[n - 2]);
        for (int l = 1; l <= t->segments; ++l)
            t->knot_values[l - 1] = knot_value_formula(t->L, l, t->S[l - 1]);
        t->knot_values.back() = 0.0;
    }
}

} // namespace ckext
