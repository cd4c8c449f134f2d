#pragma once

namespace ckext {

/** Highest derivative order supported by the bump recurrence tables.
 *  The numerator polynomials grow with the order; everything downstream
 *  (constant products, spline derivatives) is capped here as well. */
inline constexpr int max_bump_order = 32;

/** The standard bump: exp(-1/(1-x^2)) on (-1,1), exactly 0 for |x| >= 1. */
double sigma(double x);

/** i-th derivative of sigma. Exactly 0 for |x| >= 1 (all one-sided limits
 *  at the endpoints vanish). order in [0, max_bump_order]. */
double sigma_deriv(int order, double x);

/** C = integral of sigma over [-1,1], computed once by adaptive quadrature. */
double normalization_constant();

/** phi = sigma / C, a smooth density with unit mass on [-1,1]. */
double phi(double x);

/** Phi(x) = integral of phi from -1 to x. Exactly 0 for x <= -1 and
 *  exactly 1 for x >= 1; evaluated from a cached monotone interpolation table. */
double phi_big(double x);

/** Phi by direct quadrature, bypassing the table. Slow; cross-check path. */
double phi_big_direct(double x);

/** Phi^{(order)}(x) = sigma^{(order-1)}(x)/C for order >= 1.
 *  Exactly 0 for |x| >= 1. order 0 is phi_big, not accepted here. */
double phi_big_deriv(int order, double x);

/** Upper bound for M_order = max |Phi^{(order)}| over [-1,1], within a factor
 *  1.05 of the true supremum (exact 1 for order 0). Cached per order. */
double sup_phi_big_deriv(int order);

} // namespace ckext
