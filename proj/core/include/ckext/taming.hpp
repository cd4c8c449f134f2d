#pragma once

#include "ckext/function_catalog.hpp"
#include "ckext/open_set.hpp"

#include <vector>

namespace ckext {

// Upper bound on sup |f^(i)| over [lo, hi]: 2^12-point grid max with
// golden-section refinement, times a 1.05 safety factor.  A non-finite
// sample at order 0 (pole inside the interval) is a construction error;
// at higher orders the bound saturates to +inf and the products absorb it.
double derivative_sup(const FunctionOracle& f, int i, double lo, double hi);

// Per-side constant tables for one ladder.  Row n (1-based) covers the
// segment between knots n and n+1; products are capped at index 32 (the
// derivative-order ceiling of the mollifier recurrence), far beyond the
// depth at which S overflows to +inf and the knot values hit exact 0.
struct TamingTable {
    Side side = Side::right;
    bool case_b = false;              // effective length < 1
    double p = 0.0;                   // Case B product top floor(1/L)
    double L = 1.0;
    int segments = 0;                 // rows computed for n = 1..segments
    std::vector<std::vector<double>> A; // A[n-1][i]; rows freeze once S saturates
    std::vector<std::vector<double>> B; // B[n-1][i]
    std::vector<double> S;              // S[n-1], +inf once saturated
    std::vector<double> knot_values;    // value at knot l = 1..segments+1;
                                        // the deepest entry is the truncation 0

    bool empty() const { return segments == 0; }
};

// g at knot l: L^2 / (2^(2l+1) * S_l).  Shared by construction and checks
// so the comparison is bit-identical.
double knot_value_formula(double L, int l, double S);

// Tables for one side of a ladder (n = 1..usable_depth-1), k = order bound
// of f (kInfiniteOrder for smooth f).  Returns an empty table for a side
// without a ladder.
TamingTable build_taming(const FunctionOracle& f, const KnotLadder& ladder,
                         Side side, int k);

// Rebuild S and knot values from the (possibly modified) A/B rows:
// products per row, running max down the column, knot formula per level.
void recompute_products(TamingTable& t);

// Reconcile the two sides of a bounded interval at the shared midpoint
// knot: S_1 becomes the max of both sides, monotonicity is re-enforced,
// and knot values are recomputed.  Either pointer may be null.
void finalize_pair(TamingTable* left, TamingTable* right);

} // namespace ckext
