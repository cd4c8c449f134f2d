#include "ckext/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ckext {

namespace {

constexpr int max_recursion = 50;

double simpson_step(const std::function<double(double)>& f,
                    double a, double b, double fa, double fm, double fb,
                    double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double err = left + right - whole;
    if (depth >= max_recursion || std::fabs(err) <= 15.0 * tol)
        return left + right + err / 15.0;
    return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1)
         + simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
}

} // namespace

double adaptive_simpson(const std::function<double(double)>& f,
                        double a, double b, double tol) {
    if (a == b) return 0.0;
    const double fa = f(a);
    const double fb = f(b);
    const double fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_step(f, a, b, fa, fm, fb, whole, tol, 0);
}

double max_abs_on_interval(const std::function<double(double)>& f,
                           double lo, double hi, int n) {
    if (n < 2) n = 2;
    double best = 0.0;
    int best_i = 0;
    for (int i = 0; i < n; ++i) {
        const double x = lo + (hi - lo) * static_cast<double>(i) / (n - 1);
        const double v = std::fabs(f(x));
        if (!std::isfinite(v)) return std::numeric_limits<double>::infinity();
        if (v > best) { best = v; best_i = i; }
    }
    // polish inside the bracket around the grid argmax
    double a = lo + (hi - lo) * static_cast<double>(std::max(best_i - 1, 0)) / (n - 1);
    double b = lo + (hi - lo) * static_cast<double>(std::min(best_i + 1, n - 1)) / (n - 1);
    constexpr double inv_gold = 0.3819660112501051; // 2 - golden ratio
    double x1 = a + inv_gold * (b - a);
    double x2 = b - inv_gold * (b - a);
    double f1 = std::fabs(f(x1));
    double f2 = std::fabs(f(x2));
    for (int it = 0; it < 80 && b - a > 0.0; ++it) {
        if (f1 < f2) {
            a = x1; x1 = x2; f1 = f2;
            x2 = b - inv_gold * (b - a);
            f2 = std::fabs(f(x2));
        } else {
            b = x2; x2 = x1; f2 = f1;
            x1 = a + inv_gold * (b - a);
            f1 = std::fabs(f(x1));
        }
    }
    if (!std::isfinite(f1) || !std::isfinite(f2))
        return std::numeric_limits<double>::infinity();
    return std::max({best, f1, f2});
}

} // namespace ckext
