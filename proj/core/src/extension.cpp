#include "ckext/extension.hpp"

#include "ckext/errors.hpp"
#include "ckext/mspline.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace ckext {

namespace {

constexpr double full_line_level = 0.125; // g on a component with no boundary

double binomial(int n, int k) {
    double r = 1.0;
    for (int j = 1; j <= k; ++j) r = r * (n - k + j) / j;
    return r;
}

} // namespace

struct SmoothEvaluator::Core {
    OpenSet V;
    std::vector<KnotLadder> ladders;
    std::vector<TamingTable> left;  // aligned with V.components
    std::vector<TamingTable> right;
    OraclePtr f; // zero-extended to V; null for role g built standalone
    int k = kInfiniteOrder;
};

namespace {

std::shared_ptr<const SmoothEvaluator::Core> build_core(const OpenSet& V, OraclePtr f, int k,
                                                        int max_depth) {
    auto core = std::make_shared<SmoothEvaluator::Core>();
    core->V = V;
    core->f = std::move(f);
    core->k = k;
    for (const Interval& comp : V.components) {
        KnotLadder lad = make_ladder(comp, max_depth);
        TamingTable tl = build_taming(*core->f, lad, Side::left, k);
        TamingTable tr = build_taming(*core->f, lad, Side::right, k);
        finalize_pair(&tl, &tr);
        core->ladders.push_back(std::move(lad));
        core->left.push_back(std::move(tl));
        core->right.push_back(std::move(tr));
    }
    return core;
}

// g's value/derivative machinery over one located point
struct GPiece {
    const SmoothEvaluator::Core& core;
    Location loc;

    const TamingTable& tab() const {
        return loc.side == Side::left ? core.left[loc.component] : core.right[loc.component];
    }
    bool constant() const { return loc.region == Region::constant_stretch; }
    double constant_value() const {
        const KnotLadder& lad = core.ladders[loc.component];
        if (lad.full_line) return full_line_level;
        // the single laddered side carries the value of g at its first knot
        const TamingTable& t = lad.has_right_ladder() ? core.right[loc.component]
                                                      : core.left[loc.component];
        return t.knot_values[0];
    }
    MSpline spline() const {
        const KnotLadder& lad = core.ladders[loc.component];
        const TamingTable& t = tab();
        const int n = loc.index;
        if (loc.side == Side::right) {
            return MSpline{lad.right_knots[n - 1], t.knot_values[n - 1],
                           lad.right_knots[n], t.knot_values[n]};
        }
        return MSpline{lad.left_knots[n], t.knot_values[n],
                       lad.left_knots[n - 1], t.knot_values[n - 1]};
    }
    double value(double x) const {
        if (constant()) return constant_value();
        return mspline_eval(spline(), x);
    }
    double deriv(int i, double x) const {
        if (i == 0) return value(x);
        if (constant()) return 0.0;
        return mspline_deriv(i, spline(), x);
    }
};

} // namespace

SmoothEvaluator::SmoothEvaluator(std::shared_ptr<const Core> core, EvalRole role)
    : core_(std::move(core)), role_(role) {}

EvalRole SmoothEvaluator::role() const { return role_; }

int SmoothEvaluator::order_bound() const {
    return role_ == EvalRole::h ? core_->k : kInfiniteOrder;
}

const OpenSet& SmoothEvaluator::support() const { return core_->V; }

OraclePtr SmoothEvaluator::oracle() const {
    return role_ == EvalRole::g ? nullptr : core_->f;
}

int SmoothEvaluator::component_count() const {
    return static_cast<int>(core_->V.components.size());
}

const KnotLadder& SmoothEvaluator::ladder(int component) const {
    return core_->ladders.at(component);
}

const TamingTable& SmoothEvaluator::table(int component, Side side) const {
    return side == Side::left ? core_->left.at(component) : core_->right.at(component);
}

double SmoothEvaluator::eval(double x) const {
    const Location loc = locate(core_->V, core_->ladders, x);
    if (loc.region == Region::outside || loc.region == Region::zero_tail) return 0.0;
    const double g = GPiece{*core_, loc}.value(x);
    if (role_ == EvalRole::g) return g;
    return core_->f->deriv(0, x) * g;
}

double SmoothEvaluator::eval_deriv(int i, double x) const {
    if (i < 0) throw std::invalid_argument("eval_deriv: negative order");
    if (i == 0) return eval(x);
    if (role_ != EvalRole::g && i > core_->k)
        throw order_exceeded("derivative order exceeds the guaranteed smoothness class");
    const Location loc = locate(core_->V, core_->ladders, x);
    if (loc.region == Region::outside || loc.region == Region::zero_tail) return 0.0;
    const GPiece piece{*core_, loc};
    if (role_ == EvalRole::g) return piece.deriv(i, x);
    // Leibniz: h^(i) = sum_j C(i,j) f^(j) g^(i-j), with analytic f derivatives
    double acc = 0.0;
    for (int j = 0; j <= i; ++j) {
        const double gpart = piece.deriv(i - j, x);
        if (gpart == 0.0) continue;
        acc += binomial(i, j) * core_->f->deriv(j, x) * gpart;
    }
    return acc;
}

std::vector<ComponentSummary> SmoothEvaluator::summarize() const {
    std::vector<ComponentSummary> out;
    for (int m = 0; m < component_count(); ++m) {
        const KnotLadder& lad = core_->ladders[m];
        ComponentSummary s;
        s.interval = lad.interval;
        s.L = lad.L;
        s.usable_depth = lad.usable_depth;
        const TamingTable& t = lad.has_right_ladder() ? core_->right[m] : core_->left[m];
        s.case_b = t.case_b;
        s.p = t.p;
        if (!t.S.empty()) s.S1 = t.S[0];
        if (!lad.full_line)
            s.truncation_bound = knot_value_formula(lad.L, lad.usable_depth, 1.0);
        out.push_back(s);
    }
    return out;
}

SmoothEvaluator SmoothEvaluator::companion(EvalRole role) const {
    return SmoothEvaluator(core_, role);
}

SmoothEvaluator SmoothEvaluator::with_perturbed_knot(int component, Side side, int l,
                                                     double rel) const {
    auto core = std::make_shared<Core>(*core_);
    auto& tables = side == Side::left ? core->left : core->right;
    auto& kv = tables.at(component).knot_values;
    if (l < 1 || l > static_cast<int>(kv.size()))
        throw std::out_of_range("with_perturbed_knot: no such knot level");
    kv[l - 1] *= (1.0 + rel);
    return SmoothEvaluator(std::move(core), role_);
}

SmoothEvaluator SmoothEvaluator::with_deflated_constants(double factor) const {
    auto core = std::make_shared<Core>(*core_);
    for (int m = 0; m < static_cast<int>(core->V.components.size()); ++m) {
        for (auto* tables : {&core->left, &core->right}) {
            TamingTable& t = (*tables)[m];
            for (auto& row : t.A)
                for (double& a : row) a /= factor;
            for (auto& row : t.B)
                for (double& b : row) b /= factor;
            recompute_products(t);
        }
        finalize_pair(&core->left[m], &core->right[m]);
    }
    return SmoothEvaluator(std::move(core), role_);
}

ExtensionPair build_extension(const OpenSet& U, OraclePtr f, int k, int max_depth) {
    const OpenSet V = densify(U);
    const int k_eff = std::min(k, f->order_bound());
    auto core = build_core(V, zero_extended(std::move(f), U), k_eff, max_depth);
    return ExtensionPair{SmoothEvaluator(core, EvalRole::g),
                         SmoothEvaluator(core, EvalRole::h)};
}

SmoothEvaluator build_g(const OpenSet& V, OraclePtr f, int k, int max_depth) {
    return SmoothEvaluator(build_core(V, std::move(f), k, max_depth), EvalRole::g);
}

SmoothEvaluator build_h(const OpenSet& V, OraclePtr f, int k, int max_depth) {
    return SmoothEvaluator(build_core(V, std::move(f), k, max_depth), EvalRole::h);
}

SmoothEvaluator build_cozero(const OpenSet& U, int max_depth) {
    const OpenSet V = densify(U);
    auto core = build_core(V, make_indicator(U), kInfiniteOrder, max_depth);
    return SmoothEvaluator(std::move(core), EvalRole::cozero);
}

} // namespace ckext
