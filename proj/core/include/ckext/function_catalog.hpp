#pragma once

#include "ckext/open_set.hpp"

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace ckext {

// Order bound for functions smooth to every order.
inline constexpr int kInfiniteOrder = 0x7fffffff;

struct OracleParams {
    std::map<std::string, double> scalar;
    std::map<std::string, std::vector<double>> vec;
};

// A function with analytic derivatives of every order up to order_bound().
// Derivatives are closed-form recurrences, never finite differences: the
// taming constants built from them must dominate the true suprema.
class FunctionOracle {
public:
    virtual ~FunctionOracle() = default;
    virtual double deriv(int i, double x) const = 0;
    virtual int order_bound() const { return kInfiniteOrder; }
    virtual std::string id() const = 0;
    double operator()(double x) const { return deriv(0, x); }
};

using OraclePtr = std::shared_ptr<const FunctionOracle>;

// Instantiate a catalog entry.  Known ids: constant(c), polynomial(coeffs),
// reciprocal, reciprocal_power(m), sin_reciprocal, exp, log,
// indicator_smooth (needs a domain), ck_only(k, shift).
// Throws std::invalid_argument for unknown ids or invalid parameters.
OraclePtr make_oracle(const std::string& id, const OracleParams& params,
                      const OpenSet& domain = {});

// 1 on U, 0 elsewhere; smooth on any open set avoiding U's boundary.
OraclePtr make_indicator(const OpenSet& U);

// base on U, 0 off U: the zero-extension of f|U to the rest of a dense V.
OraclePtr zero_extended(OraclePtr base, const OpenSet& U);

// (id, one-line description) for every catalog entry.
const std::vector<std::pair<std::string, std::string>>& catalog_entries();

} // namespace ckext
