#include "ckext/mollifier.hpp"
#include "ckext/quadrature.hpp"
#include "ckext/verification.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>

using namespace ckext;

// Reference values below were computed by independent multiprecision
// quadrature / symbolic differentiation and are frozen here.
namespace {
constexpr double kC = 0.4439938161680794378;      // integral of sigma
constexpr double kPhi0 = 0.8285688398691051517;   // e^-1 / C
constexpr double kM2 = 1.7982902526087073;        // sup |Phi''|
constexpr double kM3 = 17.454533508098224;        // sup |Phi'''|
constexpr double kM4 = 419.82548975020920;        // sup |Phi''''|
} // namespace

TEST_SUITE("mollifier") {

TEST_CASE("sigma point values") {
    CHECK(sigma(0.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
    CHECK(sigma(0.5) == doctest::Approx(0.26359713811572677).epsilon(1e-15));
    CHECK(sigma(0.5) == doctest::Approx(std::exp(-4.0 / 3.0)).epsilon(1e-15));
    CHECK(sigma(-0.5) == sigma(0.5)); // even
    CHECK(sigma(1.0) == 0.0);
    CHECK(sigma(-1.0) == 0.0);
    CHECK(sigma(1.5) == 0.0);
    CHECK(sigma(-273.0) == 0.0);
    CHECK(sigma(0.999) > 0.0);
    // still inside the support, but exp(-1/u) is below the smallest denormal
    CHECK(sigma(0.999999) == 0.0);
    CHECK_THROWS_AS(sigma(std::nan("")), std::domain_error);
}

TEST_CASE("sigma derivatives at 0 match the closed forms") {
    // sigma^(i)(0) = e^-1 * {1, 0, -2, 0, -12, 0, -120}
    const double e1 = std::exp(-1.0);
    const double want[] = {1.0, 0.0, -2.0, 0.0, -12.0, 0.0, -120.0};
    for (int i = 0; i <= 6; ++i) {
        INFO("order ", i);
        if (want[i] == 0.0)
            CHECK(sigma_deriv(i, 0.0) == 0.0);
        else
            CHECK(sigma_deriv(i, 0.0) == doctest::Approx(e1 * want[i]).epsilon(1e-13));
    }
}

TEST_CASE("sigma derivatives vanish identically outside the support") {
    for (int i = 0; i <= 8; ++i) {
        CHECK(sigma_deriv(i, 1.0) == 0.0);
        CHECK(sigma_deriv(i, -1.0) == 0.0);
        CHECK(sigma_deriv(i, 2.5) == 0.0);
    }
}

TEST_CASE("sigma_deriv(0) coincides with sigma") {
    for (double x : {-0.9, -0.3, 0.0, 0.42, 0.97, 0.9999})
        CHECK(sigma_deriv(0, x) == sigma(x));
}

TEST_CASE("sigma derivative recurrence agrees with finite differences") {
    for (int i = 1; i <= 4; ++i) {
        for (double x : {-0.7, -0.3, 0.2, 0.6}) {
            const double fd = fd_derivative([](double t) { return sigma(t); }, i, x, 0.004);
            const double an = sigma_deriv(i, x);
            INFO("order ", i, " at x=", x);
            CHECK(an == doctest::Approx(fd).epsilon(5e-3));
        }
    }
}

TEST_CASE("log-space branch is continuous across the switchover") {
    // u = (1-x)(1+x) crosses 0.05 near x = 0.97467943...; compare both
    // branches through a narrow bracket by finite differences of the value
    const double xs = std::sqrt(1.0 - 0.05);
    for (int i = 0; i <= 6; ++i) {
        const double lo = sigma_deriv(i, xs - 1e-7);
        const double hi = sigma_deriv(i, xs + 1e-7);
        INFO("order ", i);
        CHECK(lo == doctest::Approx(hi).epsilon(1e-4));
    }
}

TEST_CASE("sigma_deriv rejects out-of-range orders") {
    CHECK_THROWS_AS(sigma_deriv(-1, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(sigma_deriv(max_bump_order + 1, 0.0), std::out_of_range);
    CHECK(std::isfinite(sigma_deriv(max_bump_order, 0.3)));
}

TEST_CASE("normalization constant") {
    CHECK(normalization_constant() == doctest::Approx(kC).epsilon(1e-12));
    const double direct = adaptive_simpson([](double x) { return sigma(x); }, -1.0, 1.0, 1e-13);
    CHECK(normalization_constant() == doctest::Approx(direct).epsilon(1e-11));
}

TEST_CASE("phi is the unit-mass density") {
    CHECK(phi(0.0) == doctest::Approx(kPhi0).epsilon(1e-12));
    const double mass = adaptive_simpson([](double x) { return phi(x); }, -1.0, 1.0, 1e-12);
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("phi_big saturates exactly outside [-1, 1]") {
    CHECK(phi_big(-1.0) == 0.0);
    CHECK(phi_big(-5.0) == 0.0);
    CHECK(phi_big(1.0) == 1.0);
    CHECK(phi_big(100.0) == 1.0);
}

TEST_CASE("phi_big table agrees with direct quadrature") {
    for (int t = 0; t <= 24; ++t) {
        const double x = -1.2 + 2.4 * t / 24.0;
        INFO("x=", x);
        CHECK(phi_big(x) == doctest::Approx(phi_big_direct(x)).epsilon(5e-10).scale(1.0));
    }
    CHECK(phi_big(0.0) == doctest::Approx(0.5).epsilon(1e-11)); // even density
}

TEST_CASE("phi_big is monotone nondecreasing") {
    double prev = phi_big(-1.1);
    for (int t = 1; t <= 2000; ++t) {
        const double x = -1.1 + 2.2 * t / 2000.0;
        const double v = phi_big(x);
        CHECK(v >= prev);
        prev = v;
    }
}

TEST_CASE("phi_big first derivative is phi") {
    for (double x : {-0.9, -0.25, 0.0, 0.33, 0.8})
        CHECK(phi_big_deriv(1, x) == phi(x));
    for (int i = 1; i <= 6; ++i) {
        CHECK(phi_big_deriv(i, 1.0) == 0.0);
        CHECK(phi_big_deriv(i, -1.0) == 0.0);
        CHECK(phi_big_deriv(i, 3.0) == 0.0);
    }
    CHECK_THROWS_AS(phi_big_deriv(0, 0.0), std::invalid_argument);
}

TEST_CASE("derivative sup bounds carry the 1.05 safety factor") {
    CHECK(sup_phi_big_deriv(0) == 1.0);
    const double m[] = {0.0, kPhi0, kM2, kM3, kM4};
    for (int i = 1; i <= 4; ++i) {
        INFO("order ", i);
        CHECK(sup_phi_big_deriv(i) >= m[i]);              // genuinely an upper bound
        CHECK(sup_phi_big_deriv(i) == doctest::Approx(1.05 * m[i]).epsilon(1e-4));
    }
    // cached: repeated calls return the identical double
    CHECK(sup_phi_big_deriv(3) == sup_phi_big_deriv(3));
}

} // TEST_SUITE
