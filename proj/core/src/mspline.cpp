#include "ckext/mspline.hpp"

#include "ckext/mollifier.hpp"

#include <cmath>
#include <stdexcept>

namespace ckext {

namespace {

void require_ordered(double a, double c) {
    if (!(a < c)) throw std::invalid_argument("mspline: abscissae must satisfy a < c");
}

void require_inside(const MSpline& s, double x) {
    if (!(x >= s.a && x <= s.c)) throw std::domain_error("mspline: argument outside [a, c]");
}

} // namespace

double affine_pullback(double a, double c, double x) {
    require_ordered(a, c);
    return (2.0 * x - (a + c)) / (c - a);
}

double mspline_eval(const MSpline& s, double x) {
    require_ordered(s.a, s.c);
    require_inside(s, x);
    if (s.b == s.d) return s.b;
    return s.b + (s.d - s.b) * phi_big(affine_pullback(s.a, s.c, x));
}

double mspline_deriv(int i, const MSpline& s, double x) {
    if (i < 1) throw std::invalid_argument("mspline_deriv: order must be >= 1");
    require_ordered(s.a, s.c);
    require_inside(s, x);
    if (s.b == s.d) return 0.0;
    if (x == s.a || x == s.c) return 0.0;
    const double t = affine_pullback(s.a, s.c, x);
    return (s.d - s.b) * std::pow(2.0 / (s.c - s.a), i) * phi_big_deriv(i, t);
}

double mspline_sup_deriv(int i, double a, double c) {
    if (i < 0) throw std::invalid_argument("mspline_sup_deriv: negative order");
    require_ordered(a, c);
    if (i == 0) return 1.0;
    return std::pow(2.0 / (c - a), i) * sup_phi_big_deriv(i);
}

} // namespace ckext
