#pragma once

#include "ckext/function_catalog.hpp"
#include "ckext/open_set.hpp"
#include "ckext/taming.hpp"

#include <memory>
#include <vector>

namespace ckext {

enum class EvalRole { g, h, cozero };

struct ComponentSummary {
    Interval interval;
    double L = 1.0;
    bool case_b = false;
    double p = 0.0;
    int usable_depth = 0;
    double truncation_bound = 0.0; // L^2 / 2^(2*usable_depth+1)
    double S1 = 1.0;               // shared first-knot constant (0 if no ladder)
};

// Piecewise evaluator over a dense open V: M-spline segments between the
// ladder knots, a constant stretch on unbounded halves, exact 0 outside V
// and past the deepest knot.  Role g is the taming multiplier itself;
// roles h and cozero evaluate f(x)*g(x) with the stored oracle.
// Immutable after build; safe for concurrent evaluation.
class SmoothEvaluator {
public:
    double eval(double x) const;
    // i-th derivative: analytic spline derivatives for the g part, the
    // binomial Leibniz sum for h.  Exactly 0 outside V (boundary included)
    // and at every knot for i >= 1.  Throws order_exceeded for i beyond
    // order_bound() on roles h/cozero.
    double eval_deriv(int i, double x) const;

    EvalRole role() const;
    int order_bound() const;         // k for h; unbounded for g/cozero
    const OpenSet& support() const;  // V
    OraclePtr oracle() const;        // f for h/cozero, null for g

    int component_count() const;
    const KnotLadder& ladder(int component) const;
    const TamingTable& table(int component, Side side) const;
    std::vector<ComponentSummary> summarize() const;

    // Same underlying construction viewed under a different role (e.g. the
    // bare multiplier g of a built h).
    SmoothEvaluator companion(EvalRole role) const;

    // Deep-copy builders for fault demonstrations: the checks must be able
    // to catch a corrupted construction.
    SmoothEvaluator with_perturbed_knot(int component, Side side, int l, double rel) const;
    SmoothEvaluator with_deflated_constants(double factor) const;

    struct Core;
    explicit SmoothEvaluator(std::shared_ptr<const Core> core, EvalRole role);

private:
    std::shared_ptr<const Core> core_;
    EvalRole role_;
};

struct ExtensionPair {
    SmoothEvaluator g;
    SmoothEvaluator h;
};

// Main entry: densify U, zero-extend f to the rest of V, build one shared
// set of ladders and taming tables, and return g and h = f*g over it.
// k is the requested smoothness order of h (kInfiniteOrder for smooth f);
// the effective bound also respects f's own order_bound().
ExtensionPair build_extension(const OpenSet& U, OraclePtr f, int k, int max_depth = 40);

// Spec-level single builders over an already-dense V.
SmoothEvaluator build_g(const OpenSet& V, OraclePtr f, int k, int max_depth = 40);
SmoothEvaluator build_h(const OpenSet& V, OraclePtr f, int k, int max_depth = 40);

// Witness with coz = U exactly (up to ladder truncation): f = indicator(U).
SmoothEvaluator build_cozero(const OpenSet& U, int max_depth = 40);

} // namespace ckext
