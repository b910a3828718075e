#include "deltapol/response.hpp"

#include <lapacke.h>

#include <cmath>
#include <cstdio>
#include <utility>

namespace deltapol {

namespace {

// <0|Op|n> for a diagonal (multiplicative) operator, all n at once
std::vector<double> transition_row(const eigensystem& es,
                                   const std::vector<double>& diag_op) {
    if (static_cast<int>(diag_op.size()) != es.n)
        throw invalid_params("operator grid size does not match the eigensystem");
    const double* v0 = es.state(es.ground_index);
    std::vector<double> weighted(es.n);
    for (int i = 0; i < es.n; ++i) weighted[i] = diag_op[i] * v0[i];
    std::vector<double> row(es.n);
    for (int j = 0; j < es.n; ++j) {
        const double* vj = es.state(j);
        double acc = 0.0;
        for (int i = 0; i < es.n; ++i) acc += weighted[i] * vj[i];
        row[j] = acc;
    }
    return row;
}

// <0|Op|n> for a dense symmetric operator (row-major n x n)
std::vector<double> transition_row_dense(const eigensystem& es,
                                         const std::vector<double>& mat) {
    const std::size_t n = static_cast<std::size_t>(es.n);
    if (mat.size() != n * n)
        throw invalid_params("operator matrix size does not match the eigensystem");
    const double* v0 = es.state(es.ground_index);
    std::vector<double> opv0(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        const double* mrow = mat.data() + i * n;
        for (std::size_t j = 0; j < n; ++j) acc += mrow[j] * v0[j];
        opv0[i] = acc;
    }
    std::vector<double> row(es.n);
    for (int j = 0; j < es.n; ++j) {
        const double* vj = es.state(j);
        double acc = 0.0;
        for (int i = 0; i < es.n; ++i) acc += vj[i] * opv0[i];
        row[j] = acc;
    }
    return row;
}

cdouble chi_from_rows(const eigensystem& es, const std::vector<double>& row_b,
                      const std::vector<double>& row_a, double omega, double mu) {
    if (!(mu > 0.0)) throw invalid_params("broadening mu must be positive");
    if (!std::isfinite(omega)) throw domain_error("frequency must be finite");
    cdouble chi{};
    for (int n = 0; n < es.n; ++n) {
        if (n == es.ground_index) continue;
        const double num = row_b[n] * row_a[n];
        const double dm = omega - es.omega_n0[n];
        const double dp = omega + es.omega_n0[n];
        chi += num * (cdouble{dm, -mu} / (dm * dm + mu * mu) -
                      cdouble{dp, -mu} / (dp * dp + mu * mu));
    }
    return chi;
}

}  // namespace

eigensystem build_box_eigensystem(const box_spec& spec) {
    if (!(spec.length > 0.0) || !std::isfinite(spec.length))
        throw invalid_params("box length must be positive and finite");
    if (spec.n_grid < 3) throw invalid_params("need at least 3 interior grid nodes");
    if (!(spec.strength >= 0.0) || !std::isfinite(spec.strength))
        throw invalid_params("well depth must be >= 0 and finite");

    // a center node is required to place the well; even counts round up
    const int n = spec.n_grid % 2 == 0 ? spec.n_grid + 1 : spec.n_grid;
    const double dx = spec.length / (n + 1);
    if (spec.strength > 0.0 && !(spec.strength * dx < 0.1)) {
        char msg[176];
        std::snprintf(msg, sizeof msg,
                      "grid spacing dx = %.4g cannot resolve the bound state "
                      "(k0 dx = %.4g >= 0.1); raise n_grid or shrink the box",
                      dx, spec.strength * dx);
        throw discretization_error(msg);
    }

    eigensystem es;
    es.n = n;
    es.dx = dx;
    es.strength = spec.strength;
    es.grid.resize(n);
    for (int i = 0; i < n; ++i) es.grid[i] = -0.5 * spec.length + (i + 1) * dx;

    std::vector<double> diag(n, 1.0 / (dx * dx));
    std::vector<double> off(n - 1, -0.5 / (dx * dx));
    diag[(n - 1) / 2] -= spec.strength / dx;

    es.states.assign(static_cast<std::size_t>(n) * n, 0.0);
    const int info = LAPACKE_dstevd(LAPACK_COL_MAJOR, 'V', n, diag.data(),
                                    off.data(), es.states.data(), n);
    if (info != 0) {
        char msg[96];
        std::snprintf(msg, sizeof msg, "tridiagonal eigensolver failed (info = %d)",
                      info);
        throw numerical_error(msg);
    }
    es.energies = std::move(diag);
    es.ground_index = 0;
    if (spec.strength > 0.0 && !(es.energies[0] < 0.0))
        throw discretization_error(
            "no level below the continuum edge; the grid cannot hold the bound state");

    es.omega_n0.resize(n);
    for (int i = 0; i < n; ++i) es.omega_n0[i] = es.energies[i] - es.energies[0];
    return es;
}

std::vector<double> dipole_elements(const eigensystem& es) {
    return transition_row(es, es.grid);
}

cdouble chi_ba(const eigensystem& es, const std::vector<double>& diag_b,
               const std::vector<double>& diag_a, double omega, double mu) {
    const std::vector<double> row_b = transition_row(es, diag_b);
    const std::vector<double> row_a =
        &diag_a == &diag_b ? row_b : transition_row(es, diag_a);
    return chi_from_rows(es, row_b, row_a, omega, mu);
}

cdouble chi_ba_dense(const eigensystem& es, const std::vector<double>& mat_b,
                     const std::vector<double>& mat_a, double omega, double mu) {
    const std::vector<double> row_b = transition_row_dense(es, mat_b);
    const std::vector<double> row_a =
        &mat_a == &mat_b ? row_b : transition_row_dense(es, mat_a);
    return chi_from_rows(es, row_b, row_a, omega, mu);
}

split_polarizability alpha_split_oracle(const eigensystem& es, double omega,
                                        double mu) {
    if (!(mu > 0.0)) throw invalid_params("broadening mu must be positive");
    if (!std::isfinite(omega) || !(omega >= 0.0))
        throw domain_error("frequency must be finite and >= 0");
    const std::vector<double> d = dipole_elements(es);
    split_polarizability out{};
    for (int n = 0; n < es.n; ++n) {
        if (n == es.ground_index) continue;
        const double d2 = d[n] * d[n];
        const double dm = es.omega_n0[n] - omega;  // alpha(+w): 1/(w_n0 - w - i mu)
        const double dp = es.omega_n0[n] + omega;  // alpha(-w): 1/(w_n0 + w + i mu)
        out.plus += d2 * cdouble{dm, mu} / (dm * dm + mu * mu);
        out.minus += d2 * cdouble{dp, -mu} / (dp * dp + mu * mu);
    }
    return out;
}

}  // namespace deltapol
