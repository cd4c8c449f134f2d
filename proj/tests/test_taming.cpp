#include "ckext/taming.hpp"

#include "ckext/errors.hpp"
#include "ckext/function_catalog.hpp"
#include "ckext/mollifier.hpp"
#include "ckext/mspline.hpp"
#include "ckext/open_set.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>

using namespace ckext;

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

OraclePtr constant_one() {
    OracleParams p;
    p.scalar["c"] = 1.0;
    return make_oracle("constant", p);
}

} // namespace

TEST_SUITE("taming") {

TEST_CASE("derivative_sup dominates and flags poles") {
    const auto f = make_oracle("reciprocal", {});
    // sup of 1/x on [1/4, 1/2] is 4; the estimate carries the safety factor
    const double s = derivative_sup(*f, 0, 0.25, 0.5);
    CHECK(s >= 4.0);
    CHECK(s == doctest::Approx(4.2).epsilon(1e-6));
    // |f'| = 1/x^2, sup 16 on the same interval
    CHECK(derivative_sup(*f, 1, 0.25, 0.5) == doctest::Approx(16.8).epsilon(1e-6));
    // a sampled pole is a construction error at order 0...
    CHECK_THROWS_AS(derivative_sup(*f, 0, 0.0, 1.0), construction_error);
    // ...and saturates at higher orders
    CHECK(derivative_sup(*f, 2, 0.0, 1.0) == inf);
    CHECK_THROWS_AS(derivative_sup(*f, 0, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("knot value formula is exact binary arithmetic") {
    CHECK(knot_value_formula(1.0, 1, 32.0) == 0.00390625); // 1/(8*32) = 2^-8
    CHECK(knot_value_formula(0.5, 2, 1.0) == 0.0078125);   // 0.25/32
    CHECK(knot_value_formula(2.0, 3, 1.0) == 0.03125);     // 4/128
    // deterministic: repeated evaluation is bit-identical
    CHECK(knot_value_formula(0.7, 5, 123.456) == knot_value_formula(0.7, 5, 123.456));
}

TEST_CASE("constant function on the unit interval hits the reference bands") {
    const auto f = constant_one();
    const KnotLadder lad = make_ladder({0.0, 1.0});
    TamingTable right = build_taming(*f, lad, Side::right, kInfiniteOrder);
    TamingTable left = build_taming(*f, lad, Side::left, kInfiniteOrder);
    finalize_pair(&left, &right);

    REQUIRE(!right.empty());
    CHECK(right.segments == lad.usable_depth - 1);
    CHECK(!right.case_b);

    // A_{1,0} = 1 + sup|f| within the sampling safety factor
    CHECK(right.A[0][0] >= 2.0);
    CHECK(right.A[0][0] <= 2.0500001);
    // A_{1,1} = 1 + sup|f'| = 1 for a constant
    CHECK(right.A[0][1] == 1.0);
    // B_{n,0} = 1 + sup|spline| = 2 exactly, every row
    for (std::size_t n = 0; n < right.B.size(); ++n) CHECK(right.B[n][0] == 2.0);
    // B_{1,1} = 1 + 8*sup|Phi'| over the first segment (width 1/4)
    CHECK(right.B[0][1] >= 7.6286);
    CHECK(right.B[0][1] <= 7.9601);
    // S_1 = A_{1,0}*A_{1,1}*B_{1,0}*B_{1,1}
    CHECK(right.S[0] >= 30.51);
    CHECK(right.S[0] <= 33.64);
    // g at the first knot
    CHECK(right.knot_values[0] >= 0.003716);
    CHECK(right.knot_values[0] <= 0.0040964);
    // symmetric function, symmetric ladder: the sides agree everywhere
    CHECK(left.S[0] == right.S[0]);
    CHECK(left.knot_values[0] == right.knot_values[0]);
}

TEST_CASE("row sizes follow the case A/B product tops") {
    const auto f = constant_one();

    const KnotLadder unit = make_ladder({0.0, 1.0});
    const TamingTable a = build_taming(*f, unit, Side::right, kInfiniteOrder);
    CHECK(!a.case_b);
    CHECK(a.p == 0.0);
    // case A row n covers orders 0..n
    for (std::size_t n = 0; n < a.A.size(); ++n) {
        CHECK(a.A[n].size() == n + 2);
        CHECK(a.B[n].size() == n + 2);
    }

    const KnotLadder quarter = make_ladder({0.0, 0.25});
    const TamingTable b = build_taming(*f, quarter, Side::right, kInfiniteOrder);
    CHECK(b.case_b);
    CHECK(b.p == 4.0);
    // case B rows start at the floor(1/L) top
    REQUIRE(b.A.size() >= 1);
    CHECK(b.A[0].size() == 5);
    if (b.A.size() >= 6) CHECK(b.A[5].size() == 7);

    // a very short interval caps the top at the recurrence ceiling
    const KnotLadder tiny = make_ladder({0.0, 1e-12});
    const TamingTable c = build_taming(*f, tiny, Side::right, kInfiniteOrder);
    REQUIRE(c.A.size() >= 1);
    CHECK(c.A[0].size() == static_cast<std::size_t>(max_bump_order) + 1);
    // such narrow segments saturate immediately: every knot value is 0
    CHECK(c.knot_values[0] == 0.0);
}

TEST_CASE("S is monotone and knot values decay by at least 4 per level") {
    const auto f = make_oracle("exp", {});
    const KnotLadder lad = make_ladder({0.0, 1.0});
    TamingTable right = build_taming(*f, lad, Side::right, kInfiniteOrder);
    TamingTable left = build_taming(*f, lad, Side::left, kInfiniteOrder);
    finalize_pair(&left, &right);

    for (const TamingTable* t : {&left, &right}) {
        for (int n = 1; n < t->segments; ++n) CHECK(t->S[n] >= t->S[n - 1]);
        CHECK(t->S[0] > 1.0);
        for (int l = 0; l + 1 < static_cast<int>(t->knot_values.size()); ++l) {
            CHECK(4.0 * t->knot_values[l + 1] <= t->knot_values[l]);
            CHECK(t->knot_values[l] >= 0.0);
        }
        CHECK(t->knot_values.back() == 0.0); // truncation sentinel
    }
    // exp grows to the right: the right side pays a larger S somewhere deep
    CHECK(right.S[right.segments - 1] >= left.S[left.segments - 1]);
}

TEST_CASE("finalize_pair reconciles the shared midpoint knot") {
    const auto f = make_oracle("exp", {});
    const KnotLadder lad = make_ladder({0.0, 1.0});
    TamingTable right = build_taming(*f, lad, Side::right, kInfiniteOrder);
    TamingTable left = build_taming(*f, lad, Side::left, kInfiniteOrder);
    const double s1l = left.S[0], s1r = right.S[0];
    CHECK(s1l != s1r); // exp is asymmetric on (0,1)
    finalize_pair(&left, &right);
    CHECK(left.S[0] == std::max(s1l, s1r));
    CHECK(right.S[0] == left.S[0]);
    CHECK(left.knot_values[0] == right.knot_values[0]);

    // one-sided ladders finalize alone
    const KnotLadder half = make_ladder({-inf, 0.0});
    TamingTable only = build_taming(*f, half, Side::right, kInfiniteOrder);
    TamingTable none = build_taming(*f, half, Side::left, kInfiniteOrder);
    CHECK(none.empty());
    finalize_pair(&none, &only);
    CHECK(only.knot_values[0] > 0.0);
}

TEST_CASE("order bound clamps which f-derivatives enter the tables") {
    OracleParams p;
    p.scalar["k"] = 2.0;
    p.scalar["shift"] = 0.5;
    const auto f = make_oracle("ck_only", p);
    const KnotLadder lad = make_ladder({0.0, 1.0});
    // rows reach order > k; without clamping this would throw order_exceeded
    const TamingTable t = build_taming(*f, lad, Side::right, 2);
    CHECK(t.segments > 0);
    CHECK(t.A.size() >= 3);
    CHECK(t.knot_values[0] > 0.0);
}

TEST_CASE("recompute_products reproduces the build and tracks mutations") {
    const auto f = make_oracle("exp", {});
    const KnotLadder lad = make_ladder({0.0, 1.0});
    TamingTable t = build_taming(*f, lad, Side::right, kInfiniteOrder);
    const std::vector<double> s0 = t.S;
    const std::vector<double> kv0 = t.knot_values;

    recompute_products(t);
    CHECK(t.S == s0);
    CHECK(t.knot_values == kv0);

    // deflate one constant: downstream S scales down, knot values scale up
    t.A[0][0] /= 10.0;
    recompute_products(t);
    CHECK(t.S[0] == doctest::Approx(s0[0] / 10.0).epsilon(1e-14));
    CHECK(t.knot_values[0] == doctest::Approx(kv0[0] * 10.0).epsilon(1e-14));
    CHECK(t.knot_values.back() == 0.0);
}

} // TEST_SUITE
