#include "deltapol/cli.hpp"

#include "deltapol/greensfn.hpp"
#include "deltapol/version.hpp"

#include "json.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>
#include <utility>

namespace deltapol {

namespace {

constexpr double pi = 3.14159265358979323846;

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return {};
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

double parse_config_double(const std::string& key, const std::string& val) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(val, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (val.empty() || pos != val.size())
        throw invalid_params("bad numeric value for " + key + ": '" + val + "'");
    return v;
}

int parse_config_int(const std::string& key, const std::string& val) {
    std::size_t pos = 0;
    long v = 0;
    try {
        v = std::stol(val, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (val.empty() || pos != val.size())
        throw invalid_params("bad integer value for " + key + ": '" + val + "'");
    return static_cast<int>(v);
}

double scale_factor(const sweep_table& t) {
    return t.request.scaled ? 4.0 * t.state.binding * t.state.binding : 1.0;
}

nlohmann::json point_json(const polarizability_point& p, double scale) {
    return {{"re_alpha_plus", p.alpha_plus.real() * scale},
            {"im_alpha_plus", p.alpha_plus.imag() * scale},
            {"alpha_minus", p.alpha_minus * scale},
            {"re_total", p.total.real() * scale},
            {"im_total", p.total.imag() * scale}};
}

}  // namespace

const char* route_name(route r) {
    switch (r) {
        case route::closed: return "closed";
        case route::greens: return "greens";
        case route::oracle: return "oracle";
    }
    return "unknown";
}

route parse_route(const std::string& name) {
    if (name == "closed") return route::closed;
    if (name == "greens") return route::greens;
    if (name == "oracle") return route::oracle;
    throw invalid_params("unknown route '" + name +
                         "' (expected closed, greens or oracle)");
}

run_config load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw invalid_params("cannot open config file: " + path);
    run_config cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string stripped = trim(line);
        if (stripped.empty()) continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw invalid_params("config line " + std::to_string(lineno) +
                                 " is not of the form key = value");
        const std::string key = trim(stripped.substr(0, eq));
        const std::string val = trim(stripped.substr(eq + 1));
        if (key == "quad_rel_tol") cfg.quad.rel_tol = parse_config_double(key, val);
        else if (key == "quad_abs_tol") cfg.quad.abs_tol = parse_config_double(key, val);
        else if (key == "quad_k_cutoff") cfg.quad.k_cutoff = parse_config_double(key, val);
        else if (key == "quad_max_subdivisions")
            cfg.quad.max_subdivisions = parse_config_int(key, val);
        else if (key == "box_length") cfg.box.length = parse_config_double(key, val);
        else if (key == "box_n_grid") cfg.box.n_grid = parse_config_int(key, val);
        else if (key == "box_mu") cfg.box.mu = parse_config_double(key, val);
        else throw invalid_params("unknown config key: " + key);
    }
    validate(cfg.quad);
    return cfg;
}

sweep_table run_sweep(const sweep_request& req, const run_config& cfg) {
    validate(cfg.quad);
    if (req.samples < 2) throw invalid_params("need at least 2 samples");
    if (!(req.x_min >= 0.0) || !(req.x_max > req.x_min))
        throw invalid_params("need 0 <= x_min < x_max");
    if (req.routes.empty()) throw invalid_params("no routes requested");
    if (!(req.mu > 0.0) || !std::isfinite(req.mu))
        throw invalid_params("broadening mu must be positive");

    sweep_table t;
    t.request = req;
    t.state = make_bound_state({req.g});
    t.xs.resize(req.samples);
    const double step = (req.x_max - req.x_min) / (req.samples - 1);
    for (int i = 0; i < req.samples; ++i) t.xs[i] = req.x_min + step * i;
    t.xs.back() = req.x_max;

    eigensystem es;
    if (std::find(req.routes.begin(), req.routes.end(), route::oracle) !=
        req.routes.end()) {
        box_spec box = cfg.box;
        box.strength = req.g;
        box.mu = req.mu;
        es = build_box_eigensystem(box);
    }

    t.values.assign(req.routes.size(),
                    std::vector<polarizability_point>(req.samples));
    const double scale2 = 4.0 * t.state.binding * t.state.binding;

    auto eval_sample = [&](int i) {
        const double omega = t.xs[i] * t.state.binding;
        for (std::size_t r = 0; r < req.routes.size(); ++r) {
            polarizability_point p{};
            switch (req.routes[r]) {
                case route::closed:
                    p = alpha_total(t.state, omega);
                    break;
                case route::greens:
                    p.x = t.xs[i];
                    p.alpha_plus =
                        alpha_from_g0(t.state, omega, frequency_sign::plus, cfg.quad);
                    p.alpha_minus =
                        alpha_from_g0(t.state, omega, frequency_sign::minus, cfg.quad)
                            .real();
                    p.total = p.alpha_plus + p.alpha_minus;
                    p.scaled_total = p.total * scale2;
                    break;
                case route::oracle: {
                    const auto sp = alpha_split_oracle(es, omega, req.mu);
                    p.x = t.xs[i];
                    p.alpha_plus = sp.plus;
                    p.alpha_minus = sp.minus.real();
                    p.total = sp.plus + sp.minus;
                    p.scaled_total = p.total * scale2;
                    break;
                }
            }
            t.values[r][i] = p;
        }
    };

    const unsigned hw = std::thread::hardware_concurrency();
    const int nthreads =
        std::max(1, std::min<int>(hw == 0 ? 1 : static_cast<int>(hw), req.samples));
    if (nthreads == 1) {
        for (int i = 0; i < req.samples; ++i) eval_sample(i);
    } else {
        std::atomic<int> next{0};
        std::mutex fail_mx;
        std::exception_ptr fail;
        auto worker = [&]() {
            try {
                for (int i = next++; i < req.samples; i = next++) eval_sample(i);
            } catch (...) {
                const std::lock_guard<std::mutex> lock(fail_mx);
                if (!fail) fail = std::current_exception();
            }
        };
        std::vector<std::thread> pool;
        pool.reserve(nthreads);
        for (int k = 0; k < nthreads; ++k) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
        if (fail) std::rethrow_exception(fail);
    }
    return t;
}

std::string format_csv(const sweep_table& t) {
    static const char* const cols[5] = {"re_alpha_plus", "im_alpha_plus",
                                        "alpha_minus", "re_total", "im_total"};
    const bool single = t.request.routes.size() == 1;
    const double scale = scale_factor(t);
    std::string out = "x";
    for (const route r : t.request.routes) {
        for (const char* c : cols) {
            out += ',';
            out += c;
            if (!single) {
                out += '_';
                out += route_name(r);
            }
        }
    }
    out += '\n';
    for (std::size_t i = 0; i < t.xs.size(); ++i) {
        out += fmt17(t.xs[i]);
        for (std::size_t r = 0; r < t.values.size(); ++r) {
            const polarizability_point& p = t.values[r][i];
            out += ',' + fmt17(p.alpha_plus.real() * scale);
            out += ',' + fmt17(p.alpha_plus.imag() * scale);
            out += ',' + fmt17(p.alpha_minus * scale);
            out += ',' + fmt17(p.total.real() * scale);
            out += ',' + fmt17(p.total.imag() * scale);
        }
        out += '\n';
    }
    return out;
}

std::string format_json(const sweep_table& t) {
    nlohmann::json routes = nlohmann::json::array();
    for (const route r : t.request.routes) routes.push_back(route_name(r));
    nlohmann::json doc;
    doc["meta"] = {{"g", t.request.g},
                   {"binding", t.state.binding},
                   {"routes", routes},
                   {"scaled", t.request.scaled},
                   {"mu", t.request.mu},
                   {"version", tool_version}};
    const double scale = scale_factor(t);
    const bool single = t.request.routes.size() == 1;
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < t.xs.size(); ++i) {
        nlohmann::json row{{"x", t.xs[i]}};
        if (single) {
            row.update(point_json(t.values[0][i], scale));
        } else {
            for (std::size_t r = 0; r < t.values.size(); ++r)
                row[route_name(t.request.routes[r])] =
                    point_json(t.values[r][i], scale);
        }
        rows.push_back(std::move(row));
    }
    doc["rows"] = std::move(rows);
    return doc.dump(2) + "\n";
}

comparison_report run_compare(const run_config& cfg) {
    validate(cfg.quad);
    const bound_state s = make_bound_state({1.0});
    comparison_report rep{};
    rep.below_x_lo = 0.1;
    rep.below_x_hi = 0.98;
    rep.above_x_lo = 1.02;
    rep.above_x_hi = 16.0;

    const int npts = 1000;
    for (int i = 0; i < npts; ++i) {
        const double x =
            rep.below_x_lo + (rep.below_x_hi - rep.below_x_lo) * i / (npts - 1.0);
        const double w = x * s.binding;
        const double diff =
            std::abs(alpha_total(s, w).total.real() - reference_total_below(w));
        rep.grid_max_abs_diff_below = std::max(rep.grid_max_abs_diff_below, diff);
    }
    for (int i = 0; i < npts; ++i) {
        const double x =
            rep.above_x_lo + (rep.above_x_hi - rep.above_x_lo) * i / (npts - 1.0);
        const double w = x * s.binding;
        const double diff =
            std::abs(alpha_total(s, w).total.real() - reference_total_above(w));
        rep.grid_max_abs_diff_above = std::max(rep.grid_max_abs_diff_above, diff);
    }
    for (int i = 0; i < npts; ++i) {
        const double x = 1.02 + (40.0 - 1.02) * i / (npts - 1.0);
        const double w = x * s.binding;
        const double diff =
            std::abs(alpha_plus_above(s, w).imag() - im_alpha_reduced(w));
        rep.im_identity_max_diff = std::max(rep.im_identity_max_diff, diff);
    }

    const series_coefficients ours = small_omega_series(s, series_route::ours);
    const series_coefficients prior = small_omega_series(s, series_route::reference);
    rep.series_c0 = ours.c0;
    rep.series_c2_normalized_ours = ours.normalized_c2;
    rep.series_c2_normalized_reference = prior.normalized_c2;

    rep.sum_rule_value = im_sum_rule(s, cfg.quad);

    const double k_eps = 1e-6;
    const double below_w = s.binding - 0.5 * k_eps * k_eps;
    const double above_w = s.binding + 0.5 * k_eps * k_eps;
    rep.threshold_gap =
        std::abs(alpha_plus_below(s, below_w) - alpha_plus_above(s, above_w).real());
    const double w_eps = 1e-6;
    rep.threshold_gap_omega = std::abs(alpha_plus_below(s, s.binding - w_eps) -
                                       alpha_plus_above(s, s.binding + w_eps).real());
    return rep;
}

std::string format_text(const comparison_report& rep) {
    char buf[256];
    std::string out;
    out += "cross-checks against the prior closed forms (reduced units, g = 1)\n";
    std::snprintf(buf, sizeof buf,
                  "  real part, below threshold   max |diff| = %.3e  (x in [%.2f, %.2f])\n",
                  rep.grid_max_abs_diff_below, rep.below_x_lo, rep.below_x_hi);
    out += buf;
    std::snprintf(buf, sizeof buf,
                  "  real part, above threshold   max |diff| = %.3e  (x in [%.2f, %.2f])\n",
                  rep.grid_max_abs_diff_above, rep.above_x_lo, rep.above_x_hi);
    out += buf;
    std::snprintf(buf, sizeof buf,
                  "  imaginary part vs compact    max |diff| = %.3e\n",
                  rep.im_identity_max_diff);
    out += buf;
    std::snprintf(buf, sizeof buf,
                  "  static series                c0 = %.12g, c2/c0 ours = %.10g, prior = %.10g\n",
                  rep.series_c0, rep.series_c2_normalized_ours,
                  rep.series_c2_normalized_reference);
    out += buf;
    std::snprintf(buf, sizeof buf,
                  "  absorption sum rule          %.15g  (pi/2 = %.15g)\n",
                  rep.sum_rule_value, pi / 2.0);
    out += buf;
    std::snprintf(buf, sizeof buf,
                  "  threshold two-sidedness      gap %.3e at matched momenta 1e-6\n",
                  rep.threshold_gap);
    out += buf;
    std::snprintf(buf, sizeof buf,
                  "                               gap %.3e at omega offsets 1e-6 "
                  "(open channel rises as a square root)\n",
                  rep.threshold_gap_omega);
    out += buf;
    return out;
}

std::string format_json(const comparison_report& rep) {
    nlohmann::json doc{
        {"grid_max_abs_diff_below", rep.grid_max_abs_diff_below},
        {"grid_max_abs_diff_above", rep.grid_max_abs_diff_above},
        {"below_x_lo", rep.below_x_lo},
        {"below_x_hi", rep.below_x_hi},
        {"above_x_lo", rep.above_x_lo},
        {"above_x_hi", rep.above_x_hi},
        {"im_identity_max_diff", rep.im_identity_max_diff},
        {"series_c0", rep.series_c0},
        {"series_c2_normalized_ours", rep.series_c2_normalized_ours},
        {"series_c2_normalized_reference", rep.series_c2_normalized_reference},
        {"sum_rule_value", rep.sum_rule_value},
        {"sum_rule_target", pi / 2.0},
        {"threshold_gap", rep.threshold_gap},
        {"threshold_gap_omega", rep.threshold_gap_omega},
        {"version", tool_version}};
    return doc.dump(2) + "\n";
}

bool verify_summary::all_pass() const {
    for (const verify_check& c : checks)
        if (!c.pass) return false;
    return !checks.empty();
}

verify_summary run_verify(verify_level level, const run_config& cfg) {
    validate(cfg.quad);
    verify_summary out;
    auto add = [&out](std::string name, double measured, double expected, double tol,
                      std::string note = {}) {
        const bool pass =
            std::isfinite(measured) && std::abs(measured - expected) <= tol;
        out.checks.push_back({std::move(name), pass, measured, expected, tol,
                              std::move(note)});
    };
    auto guard = [&out](const char* name, auto&& body) {
        try {
            body();
        } catch (const std::exception& e) {
            out.checks.push_back({name, false, 0.0, 0.0, 0.0, e.what()});
        }
    };

    const bound_state s = make_bound_state({1.0});

    guard("closed-form statics", [&] {
        const auto p = alpha_total(s, 0.0);
        add("static scaled total", p.scaled_total.real(), 1.25, 1e-12);
        add("static halves split evenly",
            std::abs(p.alpha_plus.real() - p.alpha_minus), 0.0, 1e-12,
            "alpha(+0) = alpha(-0) = 5/8");
    });
    guard("threshold value", [&] {
        add("closed channel at threshold", alpha_plus_below(s, s.binding), 5.0, 1e-12);
    });
    guard("threshold continuity", [&] {
        const double k = 1e-6;
        const double gap = std::abs(alpha_plus_below(s, s.binding - 0.5 * k * k) -
                                    alpha_plus_above(s, s.binding + 0.5 * k * k).real());
        add("threshold gap at matched momenta 1e-6", gap, 0.0, 1e-4);
    });
    guard("prior-form agreement", [&] {
        double below = 0.0, above = 0.0, imdiff = 0.0;
        for (int i = 0; i < 100; ++i) {
            const double xb = 0.1 + (0.98 - 0.1) * i / 99.0;
            below = std::max(below, std::abs(alpha_total(s, 0.5 * xb).total.real() -
                                             reference_total_below(0.5 * xb)));
            const double xa = 1.02 + (16.0 - 1.02) * i / 99.0;
            above = std::max(above, std::abs(alpha_total(s, 0.5 * xa).total.real() -
                                             reference_total_above(0.5 * xa)));
            imdiff = std::max(imdiff, std::abs(alpha_plus_above(s, 0.5 * xa).imag() -
                                               im_alpha_reduced(0.5 * xa)));
        }
        add("below-threshold real part vs prior", below, 0.0, 1e-9);
        add("above-threshold real part vs prior", above, 0.0, 1e-10);
        add("imaginary part vs compact form", imdiff, 0.0, 1e-12);
    });
    guard("static series", [&] {
        const auto ours = small_omega_series(s, series_route::ours);
        add("series c0", ours.c0, 1.25, 1e-10);
        add("series curvature ratio c2/c0", ours.normalized_c2, 2.1, 1e-6);
        const auto prior = small_omega_series(s, series_route::reference);
        add("prior series curvature ratio", prior.normalized_c2, 2.1, 1e-6);
    });
    guard("absorption sum rule", [&] {
        add("integral of omega Im alpha", im_sum_rule(s, cfg.quad), pi / 2.0, 1e-6);
    });
    guard("resolvent-route agreement", [&] {
        double worst = 0.0;
        for (int i = 0; i < 20; ++i) {
            const double x = 8.0 * (i + 0.5) / 20.0;
            const double w = 0.5 * x;
            const auto closed = alpha_total(s, w);
            const cdouble plus =
                alpha_from_g0(s, w, frequency_sign::plus, cfg.quad);
            const double minus =
                alpha_from_g0(s, w, frequency_sign::minus, cfg.quad).real();
            worst = std::max(worst, std::abs(plus - closed.alpha_plus));
            worst = std::max(worst, std::abs(minus - closed.alpha_minus));
        }
        add("resolvent quadrature vs closed form", worst, 0.0, 1e-8,
            "20 points, x in (0, 8)");
    });
    guard("parametric integral family", [&] {
        double worst = 0.0;
        const double vals[3] = {0.5, 1.0, 2.0};
        for (const double x0 : vals)
            for (const double a : vals) {
                const auto v = integral_i1({x0, {a, 0.0}}, cfg.quad);
                worst = std::max(worst,
                                 std::abs(v.direct - v.parametric) / std::abs(v.parametric));
            }
        add("differentiated family vs direct quadrature", worst, 0.0, 1e-9,
            "relative, 3x3 grid");
    });
    guard("free resolvent branches", [&] {
        add("below-edge diagonal", std::abs(g0_diag({-0.5}) - cdouble{-1.0, 0.0}), 0.0,
            1e-15);
        add("open-channel diagonal", std::abs(g0_diag({0.5}) - cdouble{0.0, -1.0}), 0.0,
            1e-15);
    });
    guard("bound pole from the Dyson denominator", [&] {
        add("bisected pole energy", locate_bound_pole(s, 1e-12), s.energy, 1e-10);
    });
    guard("Dyson correction at shifted energies", [&] {
        const resolvent_energy e{s.energy + 0.25};
        add("odd-symmetry numerator",
            std::abs(dyson_correction_numerator(s, e, cfg.quad)), 0.0, 1e-12);
        add("full element vs closed form",
            std::abs(dyson_dipole_element(s, e, cfg.quad) +
                     cdouble{alpha_plus_below(s, 0.25), 0.0}),
            0.0, 1e-8, "the element is minus alpha(+0.25)");
    });
    guard("dipole strength normalization", [&] {
        const double W = cfg.quad.k_cutoff * s.k0;
        auto f = [&](double k) { return dipole_strength(s, k); };
        const double w5 = std::pow(W, -5.0);
        const double tail =
            (8.0 / pi) * (w5 / 5.0 - 4.0 * s.k0 * s.k0 * w5 / (7.0 * W * W));
        const double total = 2.0 * (integrate(f, 0.0, W, cfg.quad).value + tail);
        add("integrated strength = <x^2>", total, 1.0 / (2.0 * s.k0 * s.k0), 1e-9);
    });

    if (level == verify_level::full) {
        guard("box oracle", [&] {
            box_spec box = cfg.box;
            box.strength = s.k0;
            const eigensystem es = build_box_eigensystem(box);
            add("discrete ground energy", es.energies[es.ground_index], s.energy,
                0.01, "second-order spacing bias");
            int negatives = 0;
            for (const double e : es.energies) negatives += e < 0.0 ? 1 : 0;
            add("single bound level", negatives, 1.0, 0.0);
            const std::vector<double> d = dipole_elements(es);
            double even_leak = 0.0, sum_d2 = 0.0, fsum = 0.0;
            for (int n = 0; n < es.n; ++n) {
                if (n == es.ground_index) continue;
                if (n % 2 == 0) even_leak = std::max(even_leak, std::abs(d[n]));
                sum_d2 += d[n] * d[n];
                fsum += es.omega_n0[n] * d[n] * d[n];
            }
            add("parity selection", even_leak, 0.0, 1e-8,
                "even levels carry no dipole weight");
            add("discrete <x^2>", sum_d2, 0.5, 0.005);
            add("discrete f-sum", fsum, 0.5, 0.005);
            const auto st = alpha_split_oracle(es, 0.0, box.mu);
            add("oracle static half", st.plus.real(), 0.625, 0.0125, "2%");
            const auto mid = alpha_split_oracle(es, 0.25, box.mu);
            add("oracle below threshold", mid.plus.real(), alpha_plus_below(s, 0.25),
                0.02 * alpha_plus_below(s, 0.25), "x = 0.5, 2%");
        });
    }
    return out;
}

std::string format_text(const verify_summary& sum) {
    std::string out;
    char buf[320];
    int passed = 0;
    for (const verify_check& c : sum.checks) {
        passed += c.pass ? 1 : 0;
        std::snprintf(buf, sizeof buf, "[%s] %-42s measured %.12g  expected %.12g  tol %.2g%s%s\n",
                      c.pass ? " ok " : "FAIL", c.name.c_str(), c.measured, c.expected,
                      c.tolerance, c.note.empty() ? "" : "  : ", c.note.c_str());
        out += buf;
    }
    std::snprintf(buf, sizeof buf, "%d/%zu checks passed\n", passed,
                  sum.checks.size());
    out += buf;
    return out;
}

std::string format_json(const verify_summary& sum) {
    nlohmann::json checks = nlohmann::json::array();
    for (const verify_check& c : sum.checks)
        checks.push_back({{"name", c.name},
                          {"pass", c.pass},
                          {"measured", c.measured},
                          {"expected", c.expected},
                          {"tolerance", c.tolerance},
                          {"note", c.note}});
    nlohmann::json doc{{"checks", std::move(checks)},
                       {"all_pass", sum.all_pass()},
                       {"version", tool_version}};
    return doc.dump(2) + "\n";
}

}  // namespace deltapol
