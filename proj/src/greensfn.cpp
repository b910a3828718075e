#include "deltapol/greensfn.hpp"

#include <algorithm>
#include <cmath>

namespace deltapol {

namespace {

constexpr double pi = 3.14159265358979323846;

// k^2 / (k0^2 + k^2)^4, the momentum profile of the dipole strength
double strength_core(double k0, double k) {
    const double d = k0 * k0 + k * k;
    const double d2 = d * d;
    return k * k / (d2 * d2);
}

// int_0^W k^2 / ((k0^2+k^2)^4 (k^2 + a2)) dk plus the analytic k^-8 tail;
// a2 >= 0 (a2 = 0 cancels against the k^2 upstairs)
double closed_channel_integral(double k0, double a2, const quadrature_config& cfg) {
    const double W = cfg.k_cutoff * k0;
    auto f = [=](double k) {
        const double d = k0 * k0 + k * k;
        const double d2 = d * d;
        return a2 == 0.0 ? 1.0 / (d2 * d2) : strength_core(k0, k) / (k * k + a2);
    };
    const double w7 = std::pow(W, -7.0);
    const double tail = w7 / 7.0 - (4.0 * k0 * k0 + a2) * w7 / (9.0 * W * W);
    return integrate(f, 0.0, W, cfg).value + tail;
}

// PV int_0^W k^2 / ((k0^2+k^2)^4 (k^2 - lam^2)) dk plus the tail.
// The pole interval [0, 2 lam] is folded about k = lam so the quadrature sees
// a smooth difference quotient instead of the principal-value singularity.
double open_channel_pv(double k0, double lam, const quadrature_config& cfg) {
    const double W = cfg.k_cutoff * k0;
    if (!(W > 2.0 * lam))
        throw numerical_error(
            "momentum cutoff below twice the open-channel momentum; raise k_cutoff");
    auto r = [=](double k) { return strength_core(k0, k) / (k + lam); };
    auto folded = [=](double t) { return (r(lam + t) - r(lam - t)) / t; };
    auto regular = [=](double k) {
        return strength_core(k0, k) / ((k - lam) * (k + lam));
    };
    const double w7 = std::pow(W, -7.0);
    const double tail = w7 / 7.0 + (lam * lam - 4.0 * k0 * k0) * w7 / (9.0 * W * W);
    return integrate(folded, 0.0, lam, cfg).value +
           integrate(regular, 2.0 * lam, W, cfg).value + tail;
}

// <psi0| x G0(E) x |psi0>
cdouble free_dipole_element(const bound_state& s, double energy,
                            const quadrature_config& cfg) {
    const double k0 = s.k0;
    const double pref = 32.0 * k0 * k0 * k0 / pi;
    if (energy <= 0.0)
        return {-pref * closed_channel_integral(k0, -2.0 * energy, cfg), 0.0};
    const double lam = std::sqrt(2.0 * energy);
    const double d = k0 * k0 + lam * lam;
    const double d2 = d * d;
    return {-pref * open_channel_pv(k0, lam, cfg),
            -16.0 * k0 * k0 * k0 * lam / (d2 * d2)};
}

}  // namespace

cdouble dipole_momentum_element(const bound_state& s, double k) {
    const double d = s.k0 * s.k0 + k * k;
    return {0.0, 4.0 * s.k0 * std::sqrt(s.k0) * k / (std::sqrt(2.0 * pi) * d * d)};
}

double dipole_strength(const bound_state& s, double k) {
    return 8.0 * s.k0 * s.k0 * s.k0 * strength_core(s.k0, k) / pi;
}

cdouble g0_diag(resolvent_energy e) {
    if (!std::isfinite(e.value))
        throw domain_error("resolvent energy must be finite");
    if (e.value == 0.0)
        throw branch_point_error("free resolvent has a branch point at E = 0");
    if (e.value < 0.0) return {-1.0 / std::sqrt(-2.0 * e.value), 0.0};
    return {0.0, -1.0 / std::sqrt(2.0 * e.value)};
}

double dyson_denominator(const bound_state& s, resolvent_energy e) {
    if (e.in_continuum() || e.value == 0.0)
        throw domain_error("Dyson denominator is real only below the continuum");
    return 1.0 + s.k0 * g0_diag(e).real();
}

double locate_bound_pole(const bound_state& s, double tol) {
    if (!(tol > 0.0)) throw invalid_params("bisection tolerance must be positive");
    const double g = s.k0;
    double lo = -2.0 * g * g;   // denominator +1/2 here
    double hi = -g * g / 8.0;   // and -1 here
    auto den = [&](double e) { return dyson_denominator(s, {e}); };
    if (!(den(lo) > 0.0) || !(den(hi) < 0.0))
        throw numerical_error("lost the sign change bracketing the bound pole");
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        (den(mid) > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

cdouble dyson_correction_numerator(const bound_state& s, resolvent_energy e,
                                   const quadrature_config& cfg) {
    validate(cfg);
    const double W = cfg.k_cutoff * s.k0;
    const double norm = std::sqrt(2.0 * pi);
    if (!e.in_continuum()) {
        auto f = [&](double k) {
            return dipole_momentum_element(s, k) / (norm * (e.value - 0.5 * k * k));
        };
        return integrate(f, -W, 0.0, cfg).value + integrate(f, 0.0, W, cfg).value;
    }
    // open channel: fold the halves first; the odd element cancels pointwise,
    // which also removes the on-axis poles from the quadrature's view
    auto folded = [&](double k) {
        const cdouble sum =
            dipole_momentum_element(s, k) + dipole_momentum_element(s, -k);
        if (sum == cdouble{}) return cdouble{};
        return sum / (norm * (e.value - 0.5 * k * k));
    };
    return integrate(folded, 0.0, W, cfg).value;
}

cdouble dyson_dipole_element(const bound_state& s, resolvent_energy e,
                             const quadrature_config& cfg) {
    validate(cfg);
    if (!std::isfinite(e.value))
        throw domain_error("resolvent energy must be finite");
    if (e.value == 0.0)
        throw branch_point_error("free resolvent has a branch point at E = 0");
    const cdouble den = 1.0 + s.k0 * g0_diag(e);
    if (std::abs(den) < 1e-10)
        throw pole_error("resolvent energy sits on the bound-state pole");
    const cdouble free_part = free_dipole_element(s, e.value, cfg);
    const cdouble num = dyson_correction_numerator(s, e, cfg);
    return free_part - s.k0 * num * num / den;
}

cdouble alpha_from_g0(const bound_state& s, double omega, frequency_sign sign,
                      const quadrature_config& cfg) {
    validate(cfg);
    if (!std::isfinite(omega) || !(omega >= 0.0))
        throw domain_error("frequency must be finite and >= 0");
    const double energy =
        sign == frequency_sign::plus ? s.energy + omega : s.energy - omega;
    // the interaction correction to the shifted resolvent carries x|psi0>,
    // odd about the well, so only the free part survives
    return -free_dipole_element(s, energy, cfg);
}

i1_value integral_i1(const i1_params& p, const quadrature_config& cfg) {
    validate(cfg);
    if (!(p.x0 > 0.0) || !std::isfinite(p.x0))
        throw invalid_params("x0 must be positive and finite");
    if (!std::isfinite(p.a.real()) || !std::isfinite(p.a.imag()) || p.a.real() < 0.0)
        throw invalid_params("need finite a with Re a >= 0");
    if (p.a.real() == 0.0 && p.a.imag() != 0.0)
        throw domain_error("purely imaginary a puts poles on the contour");
    const double W = cfg.k_cutoff * std::max(p.x0, std::abs(p.a));
    const cdouble a2 = p.a * p.a;
    auto f = [&](double x) -> cdouble {
        const double d = p.x0 * p.x0 + x * x;
        const double d2 = d * d;
        if (a2 == cdouble{}) return {1.0 / (d2 * d2), 0.0};
        return x * x / (d2 * d2 * (x * x + a2));
    };
    const double w7 = std::pow(W, -7.0);
    const cdouble tail = w7 / 7.0 - (4.0 * p.x0 * p.x0 + a2) * w7 / (9.0 * W * W);
    i1_value out;
    out.direct = 2.0 * (integrate(f, 0.0, W, cfg).value + tail);
    const cdouble u = p.x0 + p.a;
    const cdouble u2 = u * u;
    const double x03 = p.x0 * p.x0 * p.x0;
    out.parametric = pi / 16.0 *
                     (1.0 / (x03 * p.x0 * p.x0 * u2) + 2.0 / (x03 * p.x0 * u2 * u) +
                      2.0 / (x03 * u2 * u2));
    return out;
}

cdouble i1_base_closed(double x0, cdouble a) {
    if (!(x0 > 0.0)) throw invalid_params("x0 must be positive");
    if (a.real() < 0.0) throw invalid_params("need Re a >= 0");
    return pi / (x0 + a);
}

}  // namespace deltapol
