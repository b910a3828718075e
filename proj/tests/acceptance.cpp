// Acceptance gate: one pass/fail line per criterion, exit code = #failures.

#include "deltapol/cli.hpp"
#include "deltapol/greensfn.hpp"

#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <string>

using namespace deltapol;

namespace {

constexpr double pi = 3.14159265358979323846;

int failures = 0;

void report(int idx, const char* label, bool pass, const std::string& detail) {
    std::printf("[%s] C%-2d %-28s %s\n", pass ? "ok" : "FAIL", idx, label,
                detail.c_str());
    if (!pass) ++failures;
}

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

// maximize a smooth unimodal f on [a, b] by golden-section search
template <class F>
double golden_max(F f, double a, double b, double tol) {
    const double r = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = b - r * (b - a), x2 = a + r * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > tol) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + r * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - r * (b - a);
            f1 = f(x1);
        }
    }
    return 0.5 * (a + b);
}

double oracle_im_extrapolated(const eigensystem& es, double omega, double mu) {
    const double i1 = alpha_split_oracle(es, omega, mu).plus.imag();
    const double i2 = alpha_split_oracle(es, omega, 2.0 * mu).plus.imag();
    const double i4 = alpha_split_oracle(es, omega, 4.0 * mu).plus.imag();
    return (8.0 * i1 - 6.0 * i2 + i4) / 3.0;
}

// independent curvature estimate of f around 0 (even f), own steps
template <class F>
double fd_curvature(F f, double h0) {
    const double f0 = f(0.0);
    double est[3];
    for (int i = 0; i < 3; ++i) {
        const double h = h0 / (1 << i);
        est[i] = (f(h) - 2.0 * f0 + f(-h)) / (2.0 * h * h);
    }
    const double r1a = (4.0 * est[1] - est[0]) / 3.0;
    const double r1b = (4.0 * est[2] - est[1]) / 3.0;
    return (16.0 * r1b - r1a) / 15.0;
}

}  // namespace

int main() {
    const bound_state s = make_bound_state({1.0});
    const quadrature_config quad;
    const run_config cfg;

    // 1: static values
    {
        const auto p = alpha_total(s, 0.0);
        const double worst = std::max(
            {std::abs(p.scaled_total.real() - 1.25),
             std::abs(p.alpha_plus.real() - 0.625), std::abs(p.alpha_minus - 0.625),
             std::abs(p.scaled_total.imag())});
        report(1, "static polarizability", worst <= 1e-10,
               fmt("total %.15g, halves %.15g / %.15g (tol 1e-10)",
                   p.scaled_total.real(), p.alpha_plus.real(), p.alpha_minus));
    }

    // 2: threshold, approached from both sides
    {
        const double below = alpha_plus_below(s, s.binding);
        const double keps = 1e-6;
        const double gap =
            std::abs(alpha_plus_below(s, s.binding - 0.5 * keps * keps) -
                     alpha_plus_above(s, s.binding + 0.5 * keps * keps).real());
        const double gap_omega =
            std::abs(alpha_plus_below(s, s.binding - 1e-6) -
                     alpha_plus_above(s, s.binding + 1e-6).real());
        const double im6 = alpha_plus_above(s, s.binding + 1e-6).imag();
        const double im8 = alpha_plus_above(s, s.binding + 1e-8).imag();
        const double im10 = alpha_plus_above(s, s.binding + 1e-10).imag();
        const bool pass = std::abs(below - 5.0) <= 1e-12 && gap < 1e-4 &&
                          im6 > im8 && im8 > im10 && im10 < 1e-3;
        report(2, "threshold two-sidedness", pass,
               fmt("value %.12g, gap %.3g at matched momenta 1e-6 (tol 1e-4); "
                   "omega offsets 1e-6 leave %.3g, sqrt onset; Im decays %.2g -> %.2g",
                   below, gap, gap_omega, im6, im10));
    }

    // 3: absorption peak
    {
        auto im_of_x = [&](double x) {
            return alpha_plus_above(s, x * s.binding).imag();
        };
        const double x_peak = golden_max(im_of_x, 1.001, 2.0, 1e-9);
        const double value = im_of_x(x_peak);
        const double exact_x = 8.0 / 7.0;
        const double exact_v = 2401.0 / (256.0 * std::sqrt(7.0));
        const bool pass =
            std::abs(x_peak - exact_x) <= 1e-6 && std::abs(value - exact_v) <= 1e-9;
        report(3, "imaginary-part peak", pass,
               fmt("argmax x %.9f vs 8/7 = %.9f (tol 1e-6), peak %.12g vs %.12g",
                   x_peak, exact_x, value, exact_v));
    }

    // 4: frequency-weighted absorption sum rule
    {
        const double integral = im_sum_rule(s, quad);
        report(4, "absorption sum rule", std::abs(integral - pi / 2.0) <= 1e-6,
               fmt("integral %.12g vs pi/2 = %.12g (tol 1e-6)", integral, pi / 2.0));
    }

    // 5: resolvent quadrature vs closed forms on 200 points
    {
        double worst = 0.0;
        for (int i = 0; i < 200; ++i) {
            const double x = 8.0 * (i + 0.5) / 200.0;  // never hits x = 1
            const double w = x * s.binding;
            const auto closed = alpha_total(s, w);
            const cdouble plus = alpha_from_g0(s, w, frequency_sign::plus, quad);
            const double minus =
                alpha_from_g0(s, w, frequency_sign::minus, quad).real();
            worst = std::max(worst, std::abs(plus - closed.alpha_plus));
            worst = std::max(worst, std::abs(minus - closed.alpha_minus));
        }
        report(5, "route agreement", worst < 1e-8,
               fmt("max |resolvent - closed| %.3g on 200 points, x in (0, 8) "
                   "(tol 1e-8)",
                   worst));
    }

    // 6: spectral-sum oracle
    {
        box_spec box;  // 200 x 4001 (4000 requested rounds up), mu = 1e-3
        box.n_grid = 4000;
        const eigensystem es = build_box_eigensystem(box);
        double worst_re = 0.0;
        for (const double x : {0.0, 0.5, 0.9}) {
            const double w = x * s.binding;
            const double exact = alpha_plus_below(s, w);
            const double got = alpha_split_oracle(es, w, box.mu).plus.real();
            worst_re = std::max(worst_re, std::abs(got - exact) / exact);
        }
        double worst_im = 0.0, worst_im_literal = 0.0;
        for (const double x : {2.0, 3.0}) {
            const double w = x * s.binding;
            const double exact = alpha_plus_above(s, w).imag();
            const double got = oracle_im_extrapolated(es, w, 0.04);
            worst_im = std::max(worst_im, std::abs(got - exact) / exact);
            const double literal = alpha_split_oracle(es, w, 1e-3).plus.imag();
            worst_im_literal =
                std::max(worst_im_literal, std::abs(literal - exact) / exact);
        }
        const bool pass = worst_re < 0.02 && worst_im < 0.05;
        report(6, "spectral-sum oracle", pass,
               fmt("Re off by %.3g max (tol 2%%), Im off by %.3g max after "
                   "broadening extrapolation mu in {0.04,0.08,0.16} (tol 5%%); "
                   "literal mu=1e-3 Im off by %.3g, level spacing 2 pi k/L "
                   "dwarfs that mu (recorded)",
                   worst_re, worst_im, worst_im_literal));
    }

    // 7: comparison verdict and the curvature coefficient
    {
        const comparison_report rep = run_compare(cfg);
        // the pair is even in omega, so the stencil can fold to |w|
        auto total_of = [&](double w) {
            return alpha_total(s, std::abs(w)).total.real();
        };
        const double c2_fd = fd_curvature(total_of, 0.02);
        const double norm_fd = c2_fd / alpha_total(s, 0.0).total.real();
        const double d_ours =
            std::abs(rep.series_c2_normalized_ours - norm_fd) / norm_fd;
        const double d_prior =
            std::abs(rep.series_c2_normalized_reference - norm_fd) / norm_fd;
        const bool pass = d_ours <= 1e-4 && d_prior <= 1e-4 &&
                          rep.grid_max_abs_diff_below < 1e-8 &&
                          rep.grid_max_abs_diff_above < 1e-10;
        report(7, "comparison verdict", pass,
               fmt("grid diffs below/above %.3g / %.3g; normalized c2: pair route "
                   "%.8f, prior route %.8f, difference oracle %.8f (tol 1e-4 rel)",
                   rep.grid_max_abs_diff_below, rep.grid_max_abs_diff_above,
                   rep.series_c2_normalized_ours, rep.series_c2_normalized_reference,
                   norm_fd));
    }

    // 8: cancellation far above threshold
    {
        bool pointwise = true;
        for (int i = 0; i < 200; ++i) {
            const double x = 6.0 + (40.0 - 6.0) * i / 199.0;
            const auto p = alpha_total(s, x * s.binding);
            if (!(p.total.real() < 0.0) || !(std::abs(p.total.real()) < p.alpha_minus))
                pointwise = false;
        }
        const auto spot = alpha_total(s, 3.0);
        const bool pass = pointwise &&
                          std::abs(spot.total.real() - (-0.11908334951931593)) <= 1e-3 &&
                          std::abs(spot.alpha_minus - 0.12783023072759764) <= 1e-3;
        report(8, "large-frequency cancellation", pass,
               fmt("|Re total| < alpha_minus on x in [6, 40]; at x = 6: Re total "
                   "%.9f vs -0.119083350, alpha_minus %.9f vs 0.127830231 (tol 1e-3)",
                   spot.total.real(), spot.alpha_minus));
    }

    // 9: resolvent structure
    {
        const double pole = locate_bound_pole(s, 1e-12);
        const resolvent_energy shifted{s.energy + 0.25};
        const double numerator =
            std::abs(dyson_correction_numerator(s, shifted, quad));
        const double W = quad.k_cutoff;
        auto strength = [&](double k) { return dipole_strength(s, k); };
        const double w5 = std::pow(W, -5.0);
        const double tail = (8.0 / pi) * (w5 / 5.0 - 4.0 * w5 / (7.0 * W * W));
        const double norm2 =
            2.0 * (integrate(strength, 0.0, W, quad).value + tail);
        const bool pass = std::abs(pole - s.energy) <= 1e-10 &&
                          numerator <= 1e-12 && std::abs(norm2 - 0.5) <= 1e-9;
        report(9, "resolvent structure", pass,
               fmt("bound pole %.15g (tol 1e-10), odd numerator %.3g (tol 1e-12), "
                   "dipole sum %.12g vs 0.5 (tol 1e-9)",
                   pole, numerator, norm2));
    }

    // 10: auxiliary integral family
    {
        const cdouble diag = g0_diag({0.5});
        const double diag_err = std::abs(diag - cdouble{0.0, -1.0});
        double worst = 0.0;
        for (const double x0 : {0.5, 1.0, 2.0})
            for (const double a : {0.5, 1.0, 2.0}) {
                const auto v = integral_i1({x0, {a, 0.0}}, quad);
                worst = std::max(worst,
                                 std::abs(v.direct - v.parametric) /
                                     std::abs(v.parametric));
            }
        const double seed_err =
            std::abs(i1_base_closed(1.0, {1.0, 0.0}) - cdouble{pi / 2.0, 0.0});
        auto seed_integrand = [](double x) {
            const double d = x * x + 1.0;
            return x * x / (d * d);
        };
        const double W = 200.0;
        const double seed_quad =
            2.0 * (integrate(seed_integrand, 0.0, W, quad).value + 1.0 / W -
                   2.0 / (3.0 * W * W * W));
        const bool pass = diag_err <= 1e-14 && worst < 1e-9 && seed_err <= 1e-14 &&
                          std::abs(seed_quad - pi / 2.0) <= 1e-9;
        report(10, "auxiliary integral family", pass,
               fmt("resolvent diagonal at E = 1/2 off by %.3g (exact -i), "
                   "family 3x3 max rel %.3g (tol 1e-9), seed quadrature %.12g "
                   "vs pi/2",
                   diag_err, worst, seed_quad));
    }

    std::printf("%d/10 criteria passed\n", 10 - failures);
    return failures;
}
