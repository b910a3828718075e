#include "deltapol/closedform.hpp"

#include <cmath>
#include <cstdio>

namespace deltapol {

namespace {

// 1/(k0^2 u^2) + 2/(k0 u^3) + 2/u^4 with u = k0 + q; the shape shared by the
// closed channel (q = k), the negative branch (q = k') and, continued to
// q = i Lambda, the open channel.
double resolvent_triplet(double k0, double q) {
    const double u = k0 + q;
    const double u2 = u * u;
    return 1.0 / (k0 * k0 * u2) + 2.0 / (k0 * u2 * u) + 2.0 / (u2 * u2);
}

// Prior below-threshold form by its own Taylor series,
// sum_{m >= 2} [-2 C(1/2, 2m) 4^m] w^{2m-4}; converges for |w| < 1/2.
double reference_below_series(double w) {
    const double w2 = w * w;
    double binom = 1.0;  // C(1/2, n)
    for (int n = 0; n < 4; ++n) binom *= (0.5 - n) / (n + 1);
    double pow4 = 16.0;  // 4^m
    double wpow = 1.0;   // w^{2m-4}
    double sum = 0.0;
    for (int m = 2; m < 80; ++m) {
        const double term = -2.0 * binom * pow4 * wpow;
        sum += term;
        if (std::abs(term) <= 1e-17 * std::abs(sum)) break;
        binom *= (0.5 - 2 * m) / (2 * m + 1);
        binom *= (0.5 - (2 * m + 1)) / (2 * m + 2);
        pow4 *= 4.0;
        wpow *= w2;
    }
    return sum;
}

}  // namespace

double alpha_plus_below(const bound_state& s, double omega) {
    const auto kin = make_branch_kinematics(s, omega, frequency_sign::plus);
    if (kin.channel != region::below)
        throw domain_error("closed-channel form needs omega <= B");
    return resolvent_triplet(s.k0, kin.momentum);
}

cdouble alpha_plus_above(const bound_state& s, double omega) {
    const auto kin = make_branch_kinematics(s, omega, frequency_sign::plus);
    if (kin.channel != region::above)
        throw domain_error("open-channel form needs omega > B");
    const double k02 = s.k0 * s.k0;
    const double d = k02 + kin.momentum * kin.momentum;
    const double d2 = d * d;
    const double re = -1.0 / (k02 * d) - 2.0 / d2 - 8.0 * k02 / (d2 * d) +
                      16.0 * k02 * k02 / (d2 * d2);
    const double im = 16.0 * kin.momentum * k02 * s.k0 / (d2 * d2);
    return {re, im};
}

double alpha_minus(const bound_state& s, double omega) {
    const auto kin = make_branch_kinematics(s, omega, frequency_sign::minus);
    return resolvent_triplet(s.k0, kin.momentum);
}

polarizability_point alpha_total(const bound_state& s, double omega) {
    polarizability_point p;
    p.x = omega / s.binding;
    p.alpha_plus = omega <= s.binding
                       ? cdouble{alpha_plus_below(s, omega), 0.0}
                       : alpha_plus_above(s, omega);
    p.alpha_minus = alpha_minus(s, omega);
    p.total = p.alpha_plus + p.alpha_minus;
    p.scaled_total = p.total * (4.0 * s.binding * s.binding);
    return p;
}

double reference_total_below(double omega) {
    if (!(omega >= 0.0) || !(omega < 0.5))
        throw domain_error("prior below-threshold form needs 0 <= omega < 1/2");
    // The printed quotient is 0/0 at omega = 0 and loses ~(eps/w^4) digits to
    // cancellation; below 0.05 its own series is the accurate evaluation.
    if (omega < 0.05) return reference_below_series(omega);
    const double w2 = omega * omega;
    return (2.0 - w2 - std::sqrt(1.0 + 2.0 * omega) - std::sqrt(1.0 - 2.0 * omega)) /
           (w2 * w2);
}

double reference_total_above(double omega) {
    if (!(omega > 0.5))
        throw domain_error("prior above-threshold form needs omega > 1/2");
    const double w2 = omega * omega;
    return (2.0 - w2 - std::sqrt(2.0 * omega + 1.0)) / (w2 * w2);
}

double combined_real_above(double omega) {
    if (!(omega > 0.5))
        throw domain_error("regrouped form needs omega > 1/2");
    const double w2 = omega * omega;
    const double open_part = (2.0 - 2.0 * omega - w2 - w2 * omega) / (2.0 * w2 * w2);
    return open_part + resolvent_triplet(1.0, std::sqrt(1.0 + 2.0 * omega));
}

double im_alpha_reduced(double omega) {
    if (!(omega > 0.5))
        throw domain_error("absorption starts at omega = 1/2");
    const double w2 = omega * omega;
    return std::sqrt(2.0 * omega - 1.0) / (w2 * w2);
}

double im_sum_rule(const bound_state& s, const quadrature_config& cfg) {
    validate(cfg);
    const double k0 = s.k0;
    const double B = s.binding;
    const double W = 400.0 * B;
    // omega = B + t^2 flattens the sqrt edge at threshold
    auto f = [=](double t) {
        const double l2 = 2.0 * t * t;  // Lambda^2
        const double d = k0 * k0 + l2;
        const double d2 = d * d;
        const double im = 16.0 * std::sqrt(l2) * k0 * k0 * k0 / (d2 * d2);
        return (B + t * t) * im * 2.0 * t;
    };
    const auto q = integrate(f, 0.0, std::sqrt(W - B), cfg);
    // remaining weight of omega Im alpha ~ sqrt(2) k0^3 w^{-5/2} (1 - k0^2/(4w))
    const double tail =
        std::sqrt(2.0) * k0 * k0 * k0 *
        ((2.0 / 3.0) * std::pow(W, -1.5) - 0.1 * k0 * k0 * std::pow(W, -2.5));
    return q.value + tail;
}

series_coefficients small_omega_series(const bound_state& s, series_route route) {
    if (route == series_route::reference && std::abs(s.k0 - 1.0) > 1e-12)
        throw domain_error("prior forms are stated in reduced units k0 = 1");
    // the pair total(omega) is even under omega -> -omega by construction
    auto f = [&](double w) {
        w = std::abs(w);
        return route == series_route::ours ? alpha_total(s, w).total.real()
                                           : reference_total_below(w);
    };
    const double h[3] = {1e-2, 5e-3, 2.5e-3};
    const double f0 = f(0.0);
    double est[3];
    for (int i = 0; i < 3; ++i)
        est[i] = (f(h[i]) - 2.0 * f0 + f(-h[i])) / (2.0 * h[i] * h[i]);
    const double r1a = (4.0 * est[1] - est[0]) / 3.0;
    const double r1b = (4.0 * est[2] - est[1]) / 3.0;
    const double c2 = (16.0 * r1b - r1a) / 15.0;
    if (std::abs(c2 - r1b) > 1e-6) {
        char msg[160];
        std::snprintf(msg, sizeof msg,
                      "curvature estimate did not settle: levels %.12g, %.12g, %.12g",
                      r1a, r1b, c2);
        throw numerical_error(msg);
    }
    series_coefficients out;
    out.c0 = f0;
    out.c1 = (f(h[2]) - f(-h[2])) / (2.0 * h[2]);
    out.c2 = c2;
    out.normalized_c2 = c2 / f0;
    return out;
}

}  // namespace deltapol
