#include "ckext/pipeline.hpp"

#include "ckext/errors.hpp"
#include "ckext/extension.hpp"
#include "ckext/function_catalog.hpp"
#include "ckext/open_set.hpp"
#include "ckext/verification.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace ckext {

namespace {

using json = nlohmann::ordered_json;
constexpr double inf = std::numeric_limits<double>::infinity();

double parse_endpoint(const json& v, const char* what) {
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) {
        const std::string s = v.get<std::string>();
        if (s == "inf" || s == "+inf") return inf;
        if (s == "-inf") return -inf;
    }
    throw std::invalid_argument(std::string(what) +
                                ": endpoints must be numbers or \"-inf\"/\"inf\"");
}

std::vector<Interval> parse_intervals(const json& arr, const char* what) {
    if (!arr.is_array())
        throw std::invalid_argument(std::string(what) + " must be an array of [lo, hi] pairs");
    std::vector<Interval> out;
    for (const auto& e : arr) {
        if (!e.is_array() || e.size() != 2)
            throw std::invalid_argument(std::string(what) + " entries must be [lo, hi] pairs");
        out.push_back({parse_endpoint(e[0], what), parse_endpoint(e[1], what)});
    }
    return out;
}

json endpoint_json(double v) {
    if (v == inf) return "inf";
    if (v == -inf) return "-inf";
    return v;
}

json number_json(double v) {
    if (std::isnan(v)) return "nan";
    return std::isfinite(v) ? json(v) : endpoint_json(v);
}

struct Config {
    OpenSet U;
    std::string function_id;
    OracleParams params;
    int k = kInfiniteOrder;
    int max_depth = 40;
    int max_order = 8;
    int orders = 4;
    int samples = 10000;
    std::vector<int> depths;
    std::string samples_csv, report_json;
    std::string mode = "extend";
    std::string fault = "none";
    std::vector<Interval> zero_set; // closed, complement mode only
};

Config parse_config(const std::string& text) {
    const json j = json::parse(text);
    Config c;
    if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");

    if (j.contains("mode")) c.mode = j.at("mode").get<std::string>();
    if (c.mode != "extend" && c.mode != "cozero" && c.mode != "complement")
        throw std::invalid_argument("mode must be one of extend|cozero|complement");

    if (c.mode == "complement") {
        if (!j.contains("zero_set"))
            throw std::invalid_argument("complement mode requires zero_set");
        c.zero_set = parse_intervals(j.at("zero_set"), "zero_set");
        for (const Interval& z : c.zero_set) {
            if (std::isnan(z.lo) || std::isnan(z.hi) || z.lo > z.hi)
                throw std::invalid_argument("zero_set entries must satisfy lo <= hi");
        }
    } else {
        if (!j.contains("open_set"))
            throw std::invalid_argument(c.mode + " mode requires open_set");
        c.U = normalize(parse_intervals(j.at("open_set"), "open_set"));
        if (c.U.empty()) throw std::invalid_argument("open_set must be nonempty");
    }

    if (c.mode == "extend") {
        if (!j.contains("function") || !j.at("function").contains("id"))
            throw std::invalid_argument("extend mode requires function.id");
        const json& fn = j.at("function");
        c.function_id = fn.at("id").get<std::string>();
        if (fn.contains("params")) {
            for (const auto& [key, val] : fn.at("params").items()) {
                if (val.is_array())
                    c.params.vec[key] = val.get<std::vector<double>>();
                else
                    c.params.scalar[key] = val.get<double>();
            }
        }
    }

    if (j.contains("k")) {
        const json& kj = j.at("k");
        if (kj.is_string()) {
            if (kj.get<std::string>() != "inf")
                throw std::invalid_argument("k must be a non-negative integer or \"inf\"");
        } else {
            c.k = kj.get<int>();
            if (c.k < 0) throw std::invalid_argument("k must be >= 0");
        }
    }
    if (j.contains("max_depth")) c.max_depth = j.at("max_depth").get<int>();
    if (c.max_depth < 1 || c.max_depth > 60)
        throw std::invalid_argument("max_depth must lie in [1, 60]");
    if (j.contains("max_order")) c.max_order = j.at("max_order").get<int>();
    if (c.max_order < 1 || c.max_order > 32)
        throw std::invalid_argument("max_order must lie in [1, 32]");

    if (j.contains("checks")) {
        const json& ck = j.at("checks");
        if (ck.contains("orders")) c.orders = ck.at("orders").get<int>();
        if (ck.contains("samples")) c.samples = ck.at("samples").get<int>();
        if (ck.contains("depths")) c.depths = ck.at("depths").get<std::vector<int>>();
    }
    if (c.orders < 1 || c.orders > 8)
        throw std::invalid_argument("checks.orders must lie in [1, 8] (FD stencil range)");
    if (c.samples < 1) throw std::invalid_argument("checks.samples must be positive");
    if (c.depths.empty())
        for (int d = 5; d <= 20; ++d) c.depths.push_back(d);
    for (int d : c.depths)
        if (d < 1 || d > 40) throw std::invalid_argument("checks.depths entries must lie in [1, 40]");

    if (j.contains("outputs")) {
        const json& o = j.at("outputs");
        if (o.contains("samples_csv")) c.samples_csv = o.at("samples_csv").get<std::string>();
        if (o.contains("report_json")) c.report_json = o.at("report_json").get<std::string>();
    }
    if (j.contains("fault_injection")) c.fault = j.at("fault_injection").get<std::string>();
    if (c.fault != "none" && c.fault != "knot_perturb" && c.fault != "deflate_constants")
        throw std::invalid_argument("fault_injection must be none|knot_perturb|deflate_constants");
    return c;
}

// ---- fault wiring -----------------------------------------------------

void apply_fault(const Config& c, SmoothEvaluator& g, SmoothEvaluator& h) {
    if (c.fault == "none") return;
    if (c.fault == "knot_perturb") {
        // Corrupt one stored knot value of h only; g keeps the honest tables.
        // The target must sit where the oracle is not identically zero, or
        // h = f*g = 0 on both sides of the corruption and nothing can see it.
        const OraclePtr f = h.oracle();
        const auto alive_near = [&](int m, Side side, int l) {
            if (!f) return true;
            const KnotLadder& lad = h.ladder(m);
            const auto& ks = side == Side::right ? lad.right_knots : lad.left_knots;
            for (const int seg : {l - 1, l}) {
                if (seg < 1 || seg >= lad.usable_depth) continue;
                for (int t = 1; t <= 5; ++t) {
                    const double x = ks[seg - 1] + (ks[seg] - ks[seg - 1]) * t / 6.0;
                    if (f->deriv(0, x) != 0.0) return true;
                }
            }
            return false;
        };
        for (int m = 0; m < h.component_count(); ++m) {
            if (h.ladder(m).full_line) continue;
            for (const Side side : {Side::right, Side::left}) {
                const auto& kv = h.table(m, side).knot_values;
                for (const int l : {3, 1}) {
                    if (static_cast<int>(kv.size()) >= l && kv[l - 1] > 0.0 &&
                        alive_near(m, side, l)) {
                        h = h.with_perturbed_knot(m, side, l, 1e-6);
                        return;
                    }
                }
            }
        }
        throw construction_error("knot_perturb: no positive knot value to perturb");
    }
    // deflate_constants: both evaluators see the corrupted tables, so the
    // identity holds but the proof bounds must trip
    h = h.with_deflated_constants(10.0);
    g = h.companion(g.role());
}

// ---- report assembly --------------------------------------------------

json summarize_build(const Config& c, const SmoothEvaluator& e) {
    json b;
    b["mode"] = c.mode;
    if (e.oracle()) b["function"] = e.oracle()->id();
    b["k"] = e.order_bound() == kInfiniteOrder ? json("inf") : json(e.order_bound());
    b["max_depth"] = c.max_depth;
    b["fault_injection"] = c.fault;
    b["component_count"] = e.component_count();
    b["components"] = json::array();
    for (const ComponentSummary& s : e.companion(EvalRole::g).summarize()) {
        json cs;
        cs["interval"] = {endpoint_json(s.interval.lo), endpoint_json(s.interval.hi)};
        cs["L"] = s.L;
        cs["case"] = s.case_b ? "B" : "A";
        if (s.case_b) cs["p"] = s.p;
        cs["usable_depth"] = s.usable_depth;
        cs["truncation_error_bound"] = number_json(s.truncation_bound);
        cs["S1"] = number_json(s.S1);
        b["components"].push_back(cs);
    }
    return b;
}

std::string iso_now() {
    const std::time_t t = std::time(nullptr);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

CheckResult tag(CheckResult r, const char* target) {
    r.check += std::string(":") + target;
    return r;
}

// ---- CSV export ---------------------------------------------------------

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_csv(const std::string& path, const SmoothEvaluator& g, const SmoothEvaluator& h) {
    struct RowInfo {
        int component = -1;
        int knot = 0; // n for right-side knots, -n for left-side, 0 otherwise
    };
    std::map<double, RowInfo> rows;
    const OpenSet& V = g.support();
    double hull_lo = inf, hull_hi = -inf;
    for (int m = 0; m < g.component_count(); ++m) {
        const KnotLadder& lad = g.ladder(m);
        const Interval& c = lad.interval;
        if (std::isfinite(c.lo)) { hull_lo = std::min(hull_lo, c.lo); hull_hi = std::max(hull_hi, c.lo); }
        if (std::isfinite(c.hi)) { hull_lo = std::min(hull_lo, c.hi); hull_hi = std::max(hull_hi, c.hi); }
        if (lad.full_line) {
            for (int t = 0; t <= 16; ++t) rows.insert({-2.0 + 0.25 * t, {m, 0}});
            continue;
        }
        const int dmax = std::min(20, lad.usable_depth);
        for (const Side side : {Side::right, Side::left}) {
            const auto& ks = side == Side::right ? lad.right_knots : lad.left_knots;
            if (ks.empty()) continue;
            for (int n = 1; n <= dmax; ++n)
                rows.insert({ks[n - 1], {m, side == Side::right ? n : -n}});
            for (int n = 1; n < dmax; ++n)
                rows.insert({0.5 * (ks[n - 1] + ks[n]), {m, 0}});
        }
        // constant stretch probes and uniform interior coverage
        if (!lad.has_left_ladder())
            for (double d : {0.75, 1.5, 3.0, 6.0}) rows.insert({lad.right_knots.front() - d, {m, 0}});
        if (!lad.has_right_ladder())
            for (double d : {0.75, 1.5, 3.0, 6.0}) rows.insert({lad.left_knots.front() + d, {m, 0}});
        if (std::isfinite(c.lo) && std::isfinite(c.hi)) {
            for (int t = 0; t < 24; ++t)
                rows.insert({c.lo + (t + 0.5) / 24.0 * (c.hi - c.lo), {m, 0}});
        }
    }
    if (std::isfinite(hull_lo)) {
        rows.insert({hull_lo - 1.5, {}});
        rows.insert({hull_hi + 1.5, {}});
    }

    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open samples_csv path '" + path + "'");
    out << "x,in_V,g,h,f,component_index,knot_index\n";
    const OraclePtr f = h.oracle();
    for (const auto& [x, info] : rows) {
        const bool in_v = V.contains(x);
        out << fmt(x) << ',' << (in_v ? 1 : 0) << ',' << fmt(g.eval(x)) << ',' << fmt(h.eval(x))
            << ',';
        if (in_v && f) out << fmt(f->deriv(0, x));
        out << ',';
        if (in_v) out << V.component_index(x);
        out << ',';
        if (info.knot != 0) out << info.knot;
        out << '\n';
    }
}

// ---- mode runners -------------------------------------------------------

// shared battery over a built (g, h) pair
void standard_checks(const Config& c, const SmoothEvaluator& g, const SmoothEvaluator& h,
                     std::vector<CheckResult>& out) {
    out.push_back(tag(check_knot_values(g), "g"));
    out.push_back(check_extension_identity(g, h, c.samples));
    out.push_back(tag(check_product_bound(h), "h"));
    for (int r = 1; r <= c.orders; ++r) out.push_back(tag(check_quotient_bound(h, r), "h"));
    for (int r = 1; r <= c.orders; ++r)
        out.push_back(tag(check_boundary_vanishing(g, r, c.depths), "g"));
    for (int r = 1; r <= c.orders; ++r)
        out.push_back(tag(check_boundary_vanishing(h, r, c.depths), "h"));
}

void run_extend(const Config& c, json& report, std::vector<CheckResult>& checks,
                const std::string& csv_path) {
    OraclePtr f = make_oracle(c.function_id, c.params, c.U);
    ExtensionPair pair = build_extension(c.U, std::move(f), c.k, c.max_depth);
    SmoothEvaluator g = pair.g, h = pair.h;
    apply_fault(c, g, h);
    report["build"] = summarize_build(c, h);
    standard_checks(c, g, h, checks);
    if (!csv_path.empty()) write_csv(csv_path, g, h);
}

void run_cozero(const Config& c, json& report, std::vector<CheckResult>& checks,
                const std::string& csv_path) {
    SmoothEvaluator h = build_cozero(c.U, c.max_depth);
    SmoothEvaluator g = h.companion(EvalRole::g);
    apply_fault(c, g, h);
    report["build"] = summarize_build(c, h);
    checks.push_back(check_cozero_support(h, c.U, 200));
    standard_checks(c, g, h, checks);
    if (!csv_path.empty()) write_csv(csv_path, g, h);
}

// closed-interval union: merge overlapping or touching entries
std::vector<Interval> merge_closed(std::vector<Interval> z) {
    std::sort(z.begin(), z.end(),
              [](const Interval& a, const Interval& b) { return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi); });
    std::vector<Interval> out;
    for (const Interval& iv : z) {
        if (!out.empty() && iv.lo <= out.back().hi)
            out.back().hi = std::max(out.back().hi, iv.hi);
        else
            out.push_back(iv);
    }
    return out;
}

void run_complement(const Config& c, json& report, std::vector<CheckResult>& checks,
                    const std::string& csv_path) {
    const std::vector<Interval> z = merge_closed(c.zero_set);

    OpenSet W; // interior of the complement of the declared zero set
    if (z.empty()) {
        W.components.push_back({-inf, inf});
    } else {
        if (z.front().lo > -inf) W.components.push_back({-inf, z.front().lo});
        for (std::size_t i = 0; i + 1 < z.size(); ++i)
            W.components.push_back({z[i].hi, z[i + 1].lo});
        if (z.back().hi < inf) W.components.push_back({z.back().hi, inf});
    }
    OpenSet int_z;
    for (const Interval& iv : z)
        if (iv.lo < iv.hi) int_z.components.push_back(iv); // open interior; points drop

    std::optional<SmoothEvaluator> b, a;
    if (!W.empty()) b = build_cozero(W, c.max_depth);
    if (!int_z.empty()) a = build_cozero(int_z, c.max_depth);

    double win_lo = inf, win_hi = -inf;
    for (const Interval& iv : z) {
        if (std::isfinite(iv.lo)) { win_lo = std::min(win_lo, iv.lo); win_hi = std::max(win_hi, iv.lo); }
        if (std::isfinite(iv.hi)) { win_lo = std::min(win_lo, iv.hi); win_hi = std::max(win_hi, iv.hi); }
    }
    if (!std::isfinite(win_lo)) { win_lo = 0.0; win_hi = 0.0; }
    win_lo -= 1.0;
    win_hi += 1.0;

    const SmoothEvaluator& exported = a ? *a : *b; // at least one always exists
    report["build"] = summarize_build(c, exported);
    report["build"]["zero_set"] = json::array();
    for (const Interval& iv : z)
        report["build"]["zero_set"].push_back({endpoint_json(iv.lo), endpoint_json(iv.hi)});
    report["build"]["a_is_zero_function"] = !a.has_value();
    report["build"]["b_is_zero_function"] = !b.has_value();

    checks.push_back(check_mutual_annihilation(a ? &*a : nullptr, b ? &*b : nullptr,
                                               win_lo, win_hi, 500));
    checks.push_back(check_coverage(a ? &*a : nullptr, b ? &*b : nullptr, win_lo, win_hi, 100));
    if (a) checks.push_back(check_cozero_support(*a, int_z, 200));
    if (!csv_path.empty()) write_csv(csv_path, exported.companion(EvalRole::g), exported);
}

} // namespace

int run_pipeline(const std::string& config_text, std::ostream& out, std::ostream& err,
                 const RunOptions& opts) {
    try {
        Config c = parse_config(config_text);
        if (!opts.report_json_override.empty()) c.report_json = opts.report_json_override;
        if (!opts.samples_csv_override.empty()) c.samples_csv = opts.samples_csv_override;

        json report;
        std::vector<CheckResult> checks;
        if (c.mode == "extend") run_extend(c, report, checks, c.samples_csv);
        else if (c.mode == "cozero") run_cozero(c, report, checks, c.samples_csv);
        else run_complement(c, report, checks, c.samples_csv);

        bool any_fail = false;
        report["checks"] = json::array();
        for (const CheckResult& cr : checks) {
            any_fail = any_fail || cr.failed();
            json e;
            e["check"] = cr.check;
            e["paper_ref"] = cr.paper_ref;
            e["params"] = json::object();
            for (const auto& [key, val] : cr.params) e["params"][key] = number_json(val);
            e["worst_margin"] = number_json(cr.worst_margin);
            e["status"] = cr.status;
            report["checks"].push_back(e);
            out << '[' << cr.status << "] " << cr.check << " worst_margin=" << fmt(cr.worst_margin)
                << '\n';
        }
        if (opts.timestamp) report["timestamp"] = iso_now();

        if (!c.report_json.empty()) {
            std::ofstream rf(c.report_json);
            if (!rf) throw std::runtime_error("cannot open report_json path '" + c.report_json + "'");
            rf << report.dump(2) << '\n';
        }
        const int passed = static_cast<int>(
            std::count_if(checks.begin(), checks.end(),
                          [](const CheckResult& cr) { return !cr.failed(); }));
        out << passed << '/' << checks.size() << " checks passed\n";
        return any_fail ? 2 : 0;
    } catch (const std::exception& ex) {
        err << "error: " << ex.what() << '\n';
        return 1;
    }
}

} // namespace ckext
