#pragma once

namespace ckext {

// Monotone C-infinity connector between the points (a, b) and (c, d):
// gamma(x) = b + (d - b) * Phi((2x - (a + c)) / (c - a)).  All one-sided
// derivatives vanish at both abscissae, so piecewise assemblies of these
// splines are smooth across their junctions.
struct MSpline {
    double a; // left abscissa
    double b; // left ordinate
    double c; // right abscissa
    double d; // right ordinate
};

// Affine map sending [a, c] onto [-1, 1].  Requires a < c.
double affine_pullback(double a, double c, double x);

// gamma(x) for x in [a, c].  Degenerate b == d yields the constant b.
double mspline_eval(const MSpline& s, double x);

// i-th derivative of gamma at x (one-sided at the endpoints, where it is
// exactly zero).  Requires i >= 1.
double mspline_deriv(int i, const MSpline& s, double x);

// Upper bound on sup |Phi_{a,c}^{(i)}| over [a, c]:
// (2/(c-a))^i * sup_phi_big_deriv(i).  Exactly 1 for i = 0.
double mspline_sup_deriv(int i, double a, double c);

} // namespace ckext
