#pragma once

#include <string>
#include <vector>

#include "deltapol/closedform.hpp"
#include "deltapol/quadrature.hpp"
#include "deltapol/response.hpp"

namespace deltapol {

enum class route { closed, greens, oracle };

const char* route_name(route r);
route parse_route(const std::string& name);  // invalid_params on unknown names

struct sweep_request {
    double x_min = 0.0;
    double x_max = 4.0;
    int samples = 201;            // >= 2
    double g = 1.0;
    double mu = 1e-3;             // oracle broadening
    std::vector<route> routes = {route::closed};
    bool scaled = true;           // emit 4B^2-scaled values (--raw turns off)
};

// Engine settings a config file may override; CLI flags take precedence.
struct run_config {
    quadrature_config quad;
    box_spec box;
};

// key = value lines, '#' comments. Known keys: quad_rel_tol, quad_abs_tol,
// quad_k_cutoff, quad_max_subdivisions, box_length, box_n_grid, box_mu.
run_config load_config(const std::string& path);

struct sweep_table {
    sweep_request request;
    bound_state state{};
    std::vector<double> xs;
    // values[r][i]: route request.routes[r] evaluated at xs[i]
    std::vector<std::vector<polarizability_point>> values;
};

// Rows are computed in parallel over samples; assembly is index-ordered, so
// repeated runs are byte-identical.
sweep_table run_sweep(const sweep_request& req, const run_config& cfg);

std::string format_csv(const sweep_table& t);
std::string format_json(const sweep_table& t);

struct comparison_report {
    // max |our total real part - prior closed form| on evaluation grids
    double grid_max_abs_diff_below = 0.0;
    double grid_max_abs_diff_above = 0.0;
    double below_x_lo = 0.0, below_x_hi = 0.0;   // grid ranges in x = omega/B
    double above_x_lo = 0.0, above_x_hi = 0.0;
    double im_identity_max_diff = 0.0;           // compact Im form cross-check
    double series_c0 = 0.0;
    double series_c2_normalized_ours = 0.0;
    double series_c2_normalized_reference = 0.0;
    double sum_rule_value = 0.0;                 // target pi/2
    double threshold_gap = 0.0;        // two-sided gap, momenta k = Lambda = 1e-6
    double threshold_gap_omega = 0.0;  // same gap at omega offsets +/- 1e-6
};

comparison_report run_compare(const run_config& cfg);
std::string format_text(const comparison_report& r);
std::string format_json(const comparison_report& r);

enum class verify_level { fast, full };

struct verify_check {
    std::string name;
    bool pass = false;
    double measured = 0.0;
    double expected = 0.0;
    double tolerance = 0.0;
    std::string note;
};

struct verify_summary {
    std::vector<verify_check> checks;
    bool all_pass() const;
};

// fast: closed-form invariants and route agreement (seconds).
// full: fast plus the box-oracle cross-checks (builds the box).
verify_summary run_verify(verify_level level, const run_config& cfg);
std::string format_text(const verify_summary& s);
std::string format_json(const verify_summary& s);

}  // namespace deltapol
