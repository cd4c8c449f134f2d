#include "ckext/open_set.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>

using namespace ckext;

namespace {
constexpr double inf = std::numeric_limits<double>::infinity();
}

TEST_SUITE("open_set") {

TEST_CASE("normalize merges overlaps and keeps touching intervals apart") {
    const OpenSet merged = normalize({{0.0, 1.0}, {0.5, 2.0}});
    REQUIRE(merged.components.size() == 1);
    CHECK(merged.components[0] == Interval{0.0, 2.0});

    const OpenSet touching = normalize({{0.0, 1.0}, {1.0, 2.0}});
    CHECK(touching.components.size() == 2); // the shared point 1 is not interior

    const OpenSet sorted = normalize({{3.0, 4.0}, {-1.0, 0.5}});
    CHECK(sorted.components[0].lo == -1.0);
    CHECK(sorted.components[1].lo == 3.0);

    CHECK_THROWS_AS(normalize({{1.0, 1.0}}), std::invalid_argument);
    CHECK_THROWS_AS(normalize({{2.0, 1.0}}), std::invalid_argument);
    CHECK_THROWS_AS(normalize({{0.0, std::nan("")}}), std::invalid_argument);
    CHECK(normalize({}).empty());
}

TEST_CASE("membership is strict interior") {
    const OpenSet U = normalize({{0.0, 1.0}, {2.0, 3.0}});
    CHECK(U.contains(0.5));
    CHECK(U.component_index(2.5) == 1);
    CHECK(!U.contains(0.0));
    CHECK(!U.contains(1.0));
    CHECK(!U.contains(1.5));
    CHECK(U.component_index(1.5) == -1);
    CHECK(!U.contains(inf));
    CHECK(!U.contains(std::nan("")));

    const OpenSet line = normalize({{-inf, inf}});
    CHECK(line.is_full_line());
    CHECK(line.contains(1e300));
    CHECK(!U.is_full_line());
}

TEST_CASE("densify fills the gaps and the unbounded ends") {
    const OpenSet V = densify(normalize({{0.0, 1.0}}));
    REQUIRE(V.components.size() == 3);
    CHECK(V.components[0] == Interval{-inf, 0.0});
    CHECK(V.components[1] == Interval{0.0, 1.0});
    CHECK(V.components[2] == Interval{1.0, inf});

    const OpenSet W = densify(normalize({{-inf, 0.0}, {1.0, inf}}));
    REQUIRE(W.components.size() == 3);
    CHECK(W.components[1] == Interval{0.0, 1.0});

    CHECK(densify(V) == V); // already dense
    CHECK(densify(normalize({{-inf, inf}})).is_full_line());
    CHECK_THROWS_AS(densify(OpenSet{}), std::invalid_argument);
}

TEST_CASE("bounded ladder marches from the midpoint toward both endpoints") {
    const KnotLadder lad = make_ladder({0.0, 1.0});
    CHECK(!lad.full_line);
    CHECK(lad.L == 1.0);
    CHECK(lad.usable_depth == 40);
    REQUIRE(lad.has_right_ladder());
    REQUIRE(lad.has_left_ladder());
    CHECK(lad.right_knots[0] == 0.5);
    CHECK(lad.left_knots[0] == 0.5); // shared midpoint knot
    CHECK(knot(lad, Side::right, 2) == 0.75);
    CHECK(knot(lad, Side::right, 3) == 0.875);
    CHECK(knot(lad, Side::left, 2) == 0.25);
    CHECK(knot(lad, Side::left, 3) == 0.125);
    CHECK_THROWS_AS(knot(lad, Side::right, 41), std::out_of_range);
    CHECK_THROWS_AS(knot(lad, Side::right, 0), std::invalid_argument);
}

TEST_CASE("half-infinite components ladder only toward the finite end") {
    const KnotLadder lad = make_ladder({-inf, 3.0});
    CHECK(lad.L == 1.0);
    CHECK(lad.effective_u == 2.0);
    CHECK(lad.has_right_ladder());
    CHECK(!lad.has_left_ladder());
    CHECK(knot(lad, Side::right, 1) == 2.5);
    CHECK(knot(lad, Side::right, 2) == 2.75);

    const KnotLadder mirrored = make_ladder({0.0, inf});
    CHECK(mirrored.effective_v == 1.0);
    CHECK(!mirrored.has_right_ladder());
    CHECK(knot(mirrored, Side::left, 1) == 0.5);
    CHECK(knot(mirrored, Side::left, 2) == 0.25);

    const KnotLadder line = make_ladder({-inf, inf});
    CHECK(line.full_line);
    CHECK(!line.has_right_ladder());
    CHECK(!line.has_left_ladder());
}

TEST_CASE("knots stay strictly ordered and collapse trims the depth") {
    // Coarse ulps force an early floating point collapse of the march.
    const KnotLadder coarse = make_ladder({1e15, 1e15 + 1.0});
    CHECK(coarse.usable_depth < 10);
    CHECK(coarse.usable_depth >= 1);
    for (int n = 1; n < coarse.usable_depth; ++n) {
        CHECK(knot(coarse, Side::right, n) < knot(coarse, Side::right, n + 1));
        CHECK(knot(coarse, Side::left, n) > knot(coarse, Side::left, n + 1));
    }
    CHECK(knot(coarse, Side::right, coarse.usable_depth) < 1e15 + 1.0);

    const KnotLadder fine = make_ladder({0.0, 1.0}, 7);
    CHECK(fine.usable_depth == 7);
    CHECK(static_cast<int>(fine.right_knots.size()) == 7);
    CHECK_THROWS_AS(make_ladder({0.0, 1.0}, 0), std::invalid_argument);
}

TEST_CASE("locate resolves segments, tails, and stretches") {
    const KnotLadder lad = make_ladder({0.0, 1.0});

    // right segments are [a_n, a_{n+1})
    Location loc = locate(lad, 0.6);
    CHECK(loc.region == Region::ladder_segment);
    CHECK(loc.side == Side::right);
    CHECK(loc.index == 1);
    loc = locate(lad, 0.75); // exactly a_2
    CHECK(loc.index == 2);
    loc = locate(lad, 0.5); // the midpoint opens the right ladder
    CHECK(loc.side == Side::right);
    CHECK(loc.index == 1);

    // left segments are (b_{n+1}, b_n]
    loc = locate(lad, 0.3);
    CHECK(loc.side == Side::left);
    CHECK(loc.index == 1);
    loc = locate(lad, 0.25); // exactly b_2
    CHECK(loc.index == 2);

    // the deepest knot on each side belongs to the zero tail
    CHECK(locate(lad, knot(lad, Side::right, lad.usable_depth)).region == Region::zero_tail);
    CHECK(locate(lad, knot(lad, Side::left, lad.usable_depth)).region == Region::zero_tail);
    CHECK(locate(lad, 1.0 - 1e-15).region == Region::zero_tail);
    CHECK(locate(lad, 1e-300).region == Region::zero_tail);

    // every knot up to the tail locates at its own index
    for (int n = 1; n < lad.usable_depth; ++n) {
        CHECK(locate(lad, knot(lad, Side::right, n)).index == n);
        CHECK(locate(lad, knot(lad, Side::left, n)).index == n);
    }
}

TEST_CASE("locate on half-infinite and full-line ladders") {
    const KnotLadder half = make_ladder({-inf, 3.0});
    CHECK(locate(half, -100.0).region == Region::constant_stretch);
    CHECK(locate(half, 2.4999).region == Region::constant_stretch);
    CHECK(locate(half, 2.5).region == Region::ladder_segment);
    CHECK(locate(half, 2.6).index == 1);

    const KnotLadder up = make_ladder({0.0, inf});
    CHECK(locate(up, 100.0).region == Region::constant_stretch);
    CHECK(locate(up, 0.51).region == Region::constant_stretch);
    CHECK(locate(up, 0.5).region == Region::ladder_segment);
    CHECK(locate(up, 0.3).index == 1);

    CHECK(locate(make_ladder({-inf, inf}), 42.0).region == Region::constant_stretch);
}

TEST_CASE("locate across a whole dense set") {
    const OpenSet V = densify(normalize({{0.0, 1.0}, {2.0, 3.0}}));
    std::vector<KnotLadder> ladders;
    ladders.reserve(V.components.size());
    for (const Interval& c : V.components) ladders.push_back(make_ladder(c));

    Location loc = locate(V, ladders, 0.6);
    CHECK(loc.component == 1);
    CHECK(loc.region == Region::ladder_segment);
    loc = locate(V, ladders, 2.5);
    CHECK(loc.component == 3);
    loc = locate(V, ladders, -7.0);
    CHECK(loc.component == 0);
    CHECK(loc.region == Region::constant_stretch);

    // boundary points of V belong to no component
    for (double w : {0.0, 1.0, 2.0, 3.0})
        CHECK(locate(V, ladders, w).region == Region::outside);
}

} // TEST_SUITE
