#pragma once

#include <cmath>
#include <complex>
#include <cstdio>
#include <type_traits>
#include <vector>

#include "deltapol/errors.hpp"

namespace deltapol {

struct quadrature_config {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    // Momentum integrals run to k_cutoff * k0 and close with an analytic tail.
    double k_cutoff = 50.0;
    int max_subdivisions = 2000;
};

void validate(const quadrature_config& cfg);

template <class V>
struct quadrature_result {
    V value{};
    double error = 0.0;
    int subdivisions = 0;
};

namespace detail {

// Gauss 7 / Kronrod 15 pair on [-1, 1].
inline constexpr double gk_nodes[8] = {
    0.9914553711208126, 0.9491079123427585, 0.8648644233597691,
    0.7415311855993944, 0.5860872354676911, 0.4058451513773972,
    0.2077849550078985, 0.0};
inline constexpr double gk_wk[8] = {
    0.0229353220105292, 0.0630920926299785, 0.1047900103222502,
    0.1406532597155259, 0.1690047266392679, 0.1903505780647854,
    0.2044329400752989, 0.2094821410847278};
inline constexpr double gk_wg[4] = {
    0.1294849661688697, 0.2797053914892767,
    0.3818300505051189, 0.4179591836734694};

template <class F>
auto gk15(F&& f, double lo, double hi, double& err)
    -> std::decay_t<decltype(f(0.0))> {
    using V = std::decay_t<decltype(f(0.0))>;
    const double c = 0.5 * (lo + hi);
    const double h = 0.5 * (hi - lo);
    V fc = f(c);
    V kron = gk_wk[7] * fc;
    V gauss = gk_wg[3] * fc;
    for (int i = 0; i < 7; ++i) {
        const double dx = h * gk_nodes[i];
        V fs = f(c - dx) + f(c + dx);
        kron += gk_wk[i] * fs;
        // odd i are the embedded Gauss nodes
        if (i % 2 == 1) gauss += gk_wg[i / 2] * fs;
    }
    kron *= h;
    gauss *= h;
    err = std::abs(kron - gauss);
    return kron;
}

}  // namespace detail

// Adaptive Gauss-Kronrod on [lo, hi], worst interval first. Works for
// real- and complex-valued integrands. Throws numerical_error carrying the
// worst remaining subinterval when the subdivision budget runs out.
template <class F>
auto integrate(F&& f, double lo, double hi, const quadrature_config& cfg)
    -> quadrature_result<std::decay_t<decltype(f(0.0))>> {
    using V = std::decay_t<decltype(f(0.0))>;
    quadrature_result<V> out;
    if (lo == hi) return out;

    struct piece {
        double lo, hi, err;
        V value;
    };
    double err0 = 0.0;
    V v0 = detail::gk15(f, lo, hi, err0);
    std::vector<piece> pieces{{lo, hi, err0, v0}};
    V total = v0;
    double total_err = err0;

    int splits = 0;
    while (total_err > std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total))) {
        std::size_t worst = 0;
        for (std::size_t i = 1; i < pieces.size(); ++i)
            if (pieces[i].err > pieces[worst].err) worst = i;
        if (splits >= cfg.max_subdivisions) {
            char msg[256];
            std::snprintf(msg, sizeof msg,
                          "quadrature did not converge after %d subdivisions; "
                          "worst subinterval [%.17g, %.17g] err %.3g, total err %.3g",
                          splits, pieces[worst].lo, pieces[worst].hi,
                          pieces[worst].err, total_err);
            throw numerical_error(msg);
        }
        piece p = pieces[worst];
        const double mid = 0.5 * (p.lo + p.hi);
        double e1 = 0.0, e2 = 0.0;
        V v1 = detail::gk15(f, p.lo, mid, e1);
        V v2 = detail::gk15(f, mid, p.hi, e2);
        pieces[worst] = {p.lo, mid, e1, v1};
        pieces.push_back({mid, p.hi, e2, v2});
        ++splits;
        total = V{};
        total_err = 0.0;
        for (const auto& q : pieces) {
            total += q.value;
            total_err += q.err;
        }
    }

    out.value = total;
    out.error = total_err;
    out.subdivisions = splits;
    return out;
}

}  // namespace deltapol
