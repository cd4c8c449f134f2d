#include "ckext/mollifier.hpp"

#include "ckext/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace ckext {

namespace {

constexpr double quad_tol = 1e-12;

using Poly = std::vector<double>; // coefficients, ascending powers

Poly poly_deriv(const Poly& p) {
    Poly r;
    for (std::size_t j = 1; j < p.size(); ++j) r.push_back(p[j] * static_cast<double>(j));
    if (r.empty()) r.push_back(0.0);
    return r;
}

void poly_add_scaled(Poly& acc, const Poly& p, double s, int shift) {
    if (acc.size() < p.size() + shift) acc.resize(p.size() + shift, 0.0);
    for (std::size_t j = 0; j < p.size(); ++j) acc[j + shift] += s * p[j];
}

double poly_eval(const Poly& p, double x) {
    double r = 0.0;
    for (std::size_t j = p.size(); j-- > 0;) r = r * x + p[j];
    return r;
}

// sigma^{(i)}(x) = num_i(x) / (1-x^2)^{2i} * sigma(x).  Differentiating adds
// num' * (1-x^2)^2 + 2*d*x*num*(1-x^2) - 2*x*num and raises the power by 2.
const std::vector<Poly>& numerator_table() {
    static const std::vector<Poly> table = [] {
        std::vector<Poly> t;
        t.push_back(Poly{1.0});
        for (int i = 0; i < max_bump_order; ++i) {
            const Poly& p = t.back();
            const Poly dp = poly_deriv(p);
            const double d = 2.0 * i;
            Poly next;
            // dp * (1 - 2x^2 + x^4)
            poly_add_scaled(next, dp, 1.0, 0);
            poly_add_scaled(next, dp, -2.0, 2);
            poly_add_scaled(next, dp, 1.0, 4);
            // 2*d*x*p*(1-x^2) = 2d*(x - x^3)*p
            poly_add_scaled(next, p, 2.0 * d, 1);
            poly_add_scaled(next, p, -2.0 * d, 3);
            // -2x*p
            poly_add_scaled(next, p, -2.0, 1);
            t.push_back(std::move(next));
        }
        return t;
    }();
    return table;
}

void require_finite(double x) {
    if (!std::isfinite(x)) throw std::domain_error("mollifier: non-finite argument");
}

// 15-point Gauss-Legendre rule on [p, q]
double gauss15(const std::function<double(double)>& f, double p, double q) {
    static constexpr std::array<double, 8> xs = {
        0.0,
        0.2011940939974345, 0.3941513470775634, 0.5709721726085388,
        0.7244177313601701, 0.8482065834104272, 0.9372733924007060,
        0.9879925180204854};
    static constexpr std::array<double, 8> ws = {
        0.2025782419255613,
        0.1984314853271116, 0.1861610000155622, 0.1662692058169939,
        0.1395706779261543, 0.1071592204671719, 0.0703660474881081,
        0.0307532419961173};
    const double mid = 0.5 * (p + q);
    const double half = 0.5 * (q - p);
    double acc = ws[0] * f(mid);
    for (int i = 1; i < 8; ++i)
        acc += ws[i] * (f(mid + half * xs[i]) + f(mid - half * xs[i]));
    return acc * half;
}

// Cumulative table for Phi on 4096 uniform nodes with monotone-limited
// cubic Hermite cells (slopes are the exact density values, clamped to
// three times the adjacent secants so each cell stays monotone).
struct PhiTable {
    static constexpr int n_nodes = 4096;
    std::array<double, n_nodes> value;
    std::array<double, n_nodes> slope;
    double h;
    double total;

    PhiTable() {
        h = 2.0 / (n_nodes - 1);
        std::array<double, n_nodes> raw;
        raw[0] = 0.0;
        for (int j = 0; j + 1 < n_nodes; ++j) {
            const double a = -1.0 + h * j;
            const double b = -1.0 + h * (j + 1);
            raw[j + 1] = raw[j] + gauss15(sigma, a, b);
        }
        total = raw[n_nodes - 1];
        for (int j = 0; j < n_nodes; ++j)
            value[j] = std::clamp(raw[j] / total, 0.0, 1.0);
        value[0] = 0.0;
        value[n_nodes - 1] = 1.0;
        for (int j = 0; j < n_nodes; ++j) {
            const double d = sigma(-1.0 + h * j) / total;
            const double dl = j > 0 ? (value[j] - value[j - 1]) / h : std::numeric_limits<double>::infinity();
            const double dr = j + 1 < n_nodes ? (value[j + 1] - value[j]) / h : std::numeric_limits<double>::infinity();
            slope[j] = std::min(d, 3.0 * std::min(dl, dr));
        }
    }

    double eval(double x) const {
        if (x <= -1.0) return 0.0;
        if (x >= 1.0) return 1.0;
        int j = static_cast<int>((x + 1.0) / h);
        j = std::clamp(j, 0, n_nodes - 2);
        const double x0 = -1.0 + h * j;
        const double t = (x - x0) / h;
        const double t2 = t * t;
        const double t3 = t2 * t;
        const double v = value[j] * (2 * t3 - 3 * t2 + 1) + slope[j] * h * (t3 - 2 * t2 + t)
                       + value[j + 1] * (-2 * t3 + 3 * t2) + slope[j + 1] * h * (t3 - t2);
        return std::clamp(v, value[j], value[j + 1]);
    }
};

const PhiTable& phi_table() {
    static const PhiTable table;
    return table;
}

} // namespace

double sigma(double x) {
    require_finite(x);
    if (std::fabs(x) >= 1.0) return 0.0;
    const double u = (1.0 - x) * (1.0 + x);
    return std::exp(-1.0 / u);
}

double sigma_deriv(int order, double x) {
    if (order < 0) throw std::invalid_argument("sigma_deriv: negative order");
    if (order > max_bump_order) throw std::out_of_range("sigma_deriv: order beyond recurrence cap");
    require_finite(x);
    if (std::fabs(x) >= 1.0) return 0.0;
    if (order == 0) return sigma(x);
    const Poly& num = numerator_table()[order];
    const double p = poly_eval(num, x);
    const double u = (1.0 - x) * (1.0 + x);
    if (u >= 0.05)
        return p * std::exp(-1.0 / u) * std::pow(u, -2.0 * order);
    // near the endpoints the rational prefactor overflows long before the
    // exponential underflow wins; combine the factors in log space
    if (p == 0.0) return 0.0;
    const double t = std::log(std::fabs(p)) - 1.0 / u - 2.0 * order * std::log(u);
    const double mag = std::exp(t);
    return p > 0.0 ? mag : -mag;
}

double normalization_constant() {
    static const double c = adaptive_simpson(sigma, -1.0, 1.0, quad_tol);
    return c;
}

double phi(double x) {
    return sigma(x) / normalization_constant();
}

double phi_big(double x) {
    require_finite(x);
    return phi_table().eval(x);
}

double phi_big_direct(double x) {
    require_finite(x);
    if (x <= -1.0) return 0.0;
    if (x >= 1.0) return 1.0;
    return adaptive_simpson(sigma, -1.0, x, quad_tol) / normalization_constant();
}

double phi_big_deriv(int order, double x) {
    if (order < 1) throw std::invalid_argument("phi_big_deriv: order must be >= 1 (use phi_big)");
    if (order > max_bump_order + 1) throw std::out_of_range("phi_big_deriv: order beyond recurrence cap");
    require_finite(x);
    if (std::fabs(x) >= 1.0) return 0.0;
    return sigma_deriv(order - 1, x) / normalization_constant();
}

double sup_phi_big_deriv(int order) {
    if (order < 0) throw std::invalid_argument("sup_phi_big_deriv: negative order");
    if (order == 0) return 1.0; // Phi ranges over [0,1]
    if (order > max_bump_order + 1) throw std::out_of_range("sup_phi_big_deriv: order beyond recurrence cap");
    static std::array<std::once_flag, max_bump_order + 2> flags;
    static std::array<double, max_bump_order + 2> cache;
    std::call_once(flags[order], [order] {
        const auto f = [order](double t) { return phi_big_deriv(order, t); };
        // grid argmax, golden-section polish, then a safety margin: the
        // constants built from these bounds must dominate the true suprema
        cache[order] = 1.05 * max_abs_on_interval(f, -1.0, 1.0, 100001);
    });
    return cache[order];
}

} // namespace ckext
