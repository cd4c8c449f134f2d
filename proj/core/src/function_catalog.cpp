#include "ckext/function_catalog.hpp"

#include "ckext/errors.hpp"

#include <cmath>
#include <mutex>
#include <stdexcept>
#include <utility>

namespace ckext {

namespace {

double require_scalar(const OracleParams& p, const std::string& key, double fallback,
                      bool required = false) {
    auto it = p.scalar.find(key);
    if (it != p.scalar.end()) return it->second;
    if (required) throw std::invalid_argument("missing parameter '" + key + "'");
    return fallback;
}

// falling factorial a·(a−1)···(a−m+1)
double falling(double a, int m) {
    double r = 1.0;
    for (int j = 0; j < m; ++j) r *= a - j;
    return r;
}

struct Constant final : FunctionOracle {
    double c;
    explicit Constant(double c_) : c(c_) {}
    double deriv(int i, double) const override { return i == 0 ? c : 0.0; }
    std::string id() const override { return "constant"; }
};

struct Polynomial final : FunctionOracle {
    std::vector<double> coeffs; // ascending
    explicit Polynomial(std::vector<double> c) : coeffs(std::move(c)) {
        if (coeffs.empty()) throw std::invalid_argument("polynomial: empty coefficient list");
    }
    double deriv(int i, double x) const override {
        double r = 0.0;
        for (std::size_t j = coeffs.size(); j-- > static_cast<std::size_t>(i);)
            r = r * x + coeffs[j] * falling(static_cast<double>(j), i);
        return r;
    }
    std::string id() const override { return "polynomial"; }
};

struct Reciprocal final : FunctionOracle {
    double deriv(int i, double x) const override {
        // d^i/dx^i x^{-1} = (-1)^i i! x^{-i-1}
        const double sign = i % 2 == 0 ? 1.0 : -1.0;
        return sign * falling(static_cast<double>(i), i) * std::pow(x, -(i + 1.0));
    }
    std::string id() const override { return "reciprocal"; }
};

struct ReciprocalPower final : FunctionOracle {
    double m;
    explicit ReciprocalPower(double m_) : m(m_) {
        if (!(m > 0)) throw std::invalid_argument("reciprocal_power: m must be positive");
    }
    double deriv(int i, double x) const override {
        // d^i/dx^i x^{-m} = (-1)^i m(m+1)···(m+i-1) x^{-m-i}
        double rising = 1.0;
        for (int j = 0; j < i; ++j) rising *= m + j;
        const double sign = i % 2 == 0 ? 1.0 : -1.0;
        return sign * rising * std::pow(x, -m - i);
    }
    std::string id() const override { return "reciprocal_power"; }
};

// f(x) = sin(1/x).  With u = 1/x, f^{(i)}(x) = S_i(u)·sin(u) + C_i(u)·cos(u)
// where the polynomial pair obeys S' := -u^2(S'_u - C), C' := -u^2(S + C'_u)
// (one extra derivative in x multiplies du/dx = -u^2 through the chain rule).
struct SinReciprocal final : FunctionOracle {
    using Poly = std::vector<double>;

    static Poly poly_deriv(const Poly& p) {
        Poly r;
        for (std::size_t j = 1; j < p.size(); ++j) r.push_back(p[j] * static_cast<double>(j));
        if (r.empty()) r.push_back(0.0);
        return r;
    }
    static Poly shift2(const Poly& p, double s) { // s * u^2 * p
        Poly r(p.size() + 2, 0.0);
        for (std::size_t j = 0; j < p.size(); ++j) r[j + 2] = s * p[j];
        return r;
    }
    static Poly add(Poly a, const Poly& b) {
        if (a.size() < b.size()) a.resize(b.size(), 0.0);
        for (std::size_t j = 0; j < b.size(); ++j) a[j] += b[j];
        return a;
    }
    static double eval(const Poly& p, double u) {
        double r = 0.0;
        for (std::size_t j = p.size(); j-- > 0;) r = r * u + p[j];
        return r;
    }

    static const std::pair<Poly, Poly>& pair_for(int i) {
        static std::vector<std::pair<Poly, Poly>> table = {{Poly{1.0}, Poly{0.0}}};
        static std::mutex mu;
        std::lock_guard<std::mutex> lock(mu);
        while (static_cast<int>(table.size()) <= i) {
            const auto& [s, c] = table.back();
            Poly ns = add(shift2(poly_deriv(s), -1.0), shift2(c, 1.0));
            Poly nc = add(shift2(poly_deriv(c), -1.0), shift2(s, -1.0));
            table.emplace_back(std::move(ns), std::move(nc));
        }
        return table[i];
    }

    double deriv(int i, double x) const override {
        const double u = 1.0 / x;
        const auto& [s, c] = pair_for(i);
        return eval(s, u) * std::sin(u) + eval(c, u) * std::cos(u);
    }
    std::string id() const override { return "sin_reciprocal"; }
};

struct Exp final : FunctionOracle {
    double deriv(int, double x) const override { return std::exp(x); }
    std::string id() const override { return "exp"; }
};

struct Log final : FunctionOracle {
    double deriv(int i, double x) const override {
        if (i == 0) return std::log(x);
        // d^i/dx^i log x = (-1)^{i-1} (i-1)! x^{-i}
        const double sign = i % 2 == 1 ? 1.0 : -1.0;
        return sign * falling(i - 1.0, i - 1) * std::pow(x, -static_cast<double>(i));
    }
    std::string id() const override { return "log"; }
};

struct Indicator final : FunctionOracle {
    OpenSet U;
    explicit Indicator(OpenSet u) : U(std::move(u)) {}
    double deriv(int i, double x) const override {
        if (i > 0) return 0.0;
        return U.contains(x) ? 1.0 : 0.0;
    }
    std::string id() const override { return "indicator_smooth"; }
};

// t^k·|t| around the shift point: C^k everywhere but not C^{k+1} at t = 0.
struct CkOnly final : FunctionOracle {
    int k;
    double shift;
    CkOnly(int k_, double shift_) : k(k_), shift(shift_) {
        if (k < 0) throw std::invalid_argument("ck_only: k must be >= 0");
    }
    double deriv(int i, double x) const override {
        if (i > k)
            throw order_exceeded("ck_only: derivative order exceeds smoothness class k=" + std::to_string(k));
        const double t = x - shift;
        if (t == 0.0) return 0.0;
        // f(t) = sign(t)·t^{k+1} away from 0
        const double s = t > 0 ? 1.0 : -1.0;
        return s * falling(k + 1.0, i) * std::pow(t, static_cast<double>(k + 1 - i));
    }
    int order_bound() const override { return k; }
    std::string id() const override { return "ck_only"; }
};

struct ZeroExtended final : FunctionOracle {
    OraclePtr base;
    OpenSet U;
    ZeroExtended(OraclePtr b, OpenSet u) : base(std::move(b)), U(std::move(u)) {}
    double deriv(int i, double x) const override {
        return U.contains(x) ? base->deriv(i, x) : 0.0;
    }
    int order_bound() const override { return base->order_bound(); }
    std::string id() const override { return base->id() + "|zero_extended"; }
};

} // namespace

OraclePtr make_oracle(const std::string& id, const OracleParams& params, const OpenSet& domain) {
    if (id == "constant") return std::make_shared<Constant>(require_scalar(params, "c", 1.0));
    if (id == "polynomial") {
        auto it = params.vec.find("coeffs");
        if (it == params.vec.end()) throw std::invalid_argument("polynomial: missing 'coeffs'");
        return std::make_shared<Polynomial>(it->second);
    }
    if (id == "reciprocal") return std::make_shared<Reciprocal>();
    if (id == "reciprocal_power")
        return std::make_shared<ReciprocalPower>(require_scalar(params, "m", 2.0));
    if (id == "sin_reciprocal") return std::make_shared<SinReciprocal>();
    if (id == "exp") return std::make_shared<Exp>();
    if (id == "log") return std::make_shared<Log>();
    if (id == "indicator_smooth") {
        if (domain.empty()) throw std::invalid_argument("indicator_smooth: requires a domain");
        return std::make_shared<Indicator>(domain);
    }
    if (id == "ck_only") {
        const int k = static_cast<int>(require_scalar(params, "k", 0.0, true));
        return std::make_shared<CkOnly>(k, require_scalar(params, "shift", 0.0));
    }
    throw std::invalid_argument("unknown function id '" + id + "'");
}

OraclePtr make_indicator(const OpenSet& U) {
    return std::make_shared<Indicator>(U);
}

OraclePtr zero_extended(OraclePtr base, const OpenSet& U) {
    return std::make_shared<ZeroExtended>(std::move(base), U);
}

const std::vector<std::pair<std::string, std::string>>& catalog_entries() {
    static const std::vector<std::pair<std::string, std::string>> entries = {
        {"constant", "constant c (param c, default 1)"},
        {"polynomial", "polynomial with ascending coefficients (param coeffs)"},
        {"reciprocal", "1/x, unbounded with all derivatives near 0"},
        {"reciprocal_power", "x^(-m) (param m, default 2)"},
        {"sin_reciprocal", "sin(1/x), bounded with unbounded derivatives near 0"},
        {"exp", "e^x"},
        {"log", "log x"},
        {"indicator_smooth", "1 on the open set, 0 elsewhere"},
        {"ck_only", "t^k|t| about t = x - shift: C^k but not C^(k+1) (params k, shift)"},
    };
    return entries;
}

} // namespace ckext
