#pragma once

#include <functional>

namespace ckext {

/** Adaptive Simpson integration of f over [a, b] to absolute tolerance tol. */
double adaptive_simpson(const std::function<double(double)>& f,
                        double a, double b, double tol);

/** Upper estimate of max |f| over [lo, hi]: n-point inclusive grid scan
 *  followed by a golden-section polish around the best bracket.
 *  Returns +inf if any sample is non-finite. */
double max_abs_on_interval(const std::function<double(double)>& f,
                           double lo, double hi, int n);

} // namespace ckext
