#pragma once

#include "ckext/extension.hpp"
#include "ckext/open_set.hpp"

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace ckext {

// One executable bound, its attained margin, and the verdict.
// worst_margin is (bound - attained) at the tightest sampled point;
// negative margin means the bound was violated.
struct CheckResult {
    std::string check;
    std::string paper_ref; // self-describing statement of the bound
    std::vector<std::pair<std::string, double>> params;
    double worst_margin = 0.0;
    std::string status; // "PASS" | "FAIL" | "N/A"
    bool failed() const { return status == "FAIL"; }
};

// Central i-th difference quotient with the binomial stencil.
// Requires step > 0 and i <= 8 (beyond that the quotient is noise).
double fd_derivative(const std::function<double(double)>& f, int i, double x, double step);

// |h - f*g| <= 1 ulp of |f*g| at every sample of V (f is h's oracle).
CheckResult check_extension_identity(const SmoothEvaluator& g, const SmoothEvaluator& h,
                                     int samples);

// FD-estimated r-th derivative of e decays toward 0 on approach to every
// boundary point of V: sampled at distance L/2^j for j in depths, PASS iff
// the last estimate is < 1e-8 of the first or < 1e-30 absolutely.
// Returns N/A when r exceeds e's guaranteed order.
CheckResult check_boundary_vanishing(const SmoothEvaluator& e, int r,
                                     const std::vector<int>& depths);

// |h^(r-1)(x)| / dist(x, boundary) <= 5rL/2^(n+2) + L/2^n at the knots
// a_n (n >= r) and the segment midpoints, both sides of every component.
CheckResult check_quotient_bound(const SmoothEvaluator& h, int r);

// |h| <= L^2/2^(2n+1) at 16 samples of every ladder segment n.
CheckResult check_product_bound(const SmoothEvaluator& h);

// g at knot l equals the stored L^2/(2^(2l+1)*S_l) bit-identically, and
// consecutive knot values decay at least by 4 (checked multiplicatively).
CheckResult check_knot_values(const SmoothEvaluator& g);

// Witness positivity: e > 0 at n interior samples of each component of U
// and exactly 0 at n samples outside U (window pads U by 1 on each side).
CheckResult check_cozero_support(const SmoothEvaluator& e, const OpenSet& U, int n);

// a(x)*b(x) == 0 exactly at every sample of the window (either evaluator
// may be absent, standing for the zero function).
CheckResult check_mutual_annihilation(const SmoothEvaluator* a, const SmoothEvaluator* b,
                                      double lo, double hi, int samples);

// a + b is nonzero somewhere in every cell of a uniform partition of the
// window (9 probes per cell): coz(a+b) is dense at grid scale.
CheckResult check_coverage(const SmoothEvaluator* a, const SmoothEvaluator* b,
                           double lo, double hi, int cells);

} // namespace ckext
