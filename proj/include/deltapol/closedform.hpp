#pragma once

#include <complex>

#include "deltapol/model.hpp"
#include "deltapol/quadrature.hpp"

namespace deltapol {

using cdouble = std::complex<double>;

// Polarizability of the bound particle at one drive frequency omega = x * B.
// alpha_plus is alpha(omega), alpha_minus is alpha(-omega) (real for real
// drive below the negative-frequency continuum, i.e. always here).
struct polarizability_point {
    double x = 0.0;
    cdouble alpha_plus{};
    double alpha_minus = 0.0;
    cdouble total{};         // alpha_plus + alpha_minus
    cdouble scaled_total{};  // total * (2B)^2, dimensionless
};

// Closed forms. Frequencies are physical (not scaled); all take omega >= 0.
double alpha_plus_below(const bound_state& s, double omega);   // 0 <= omega <= B
cdouble alpha_plus_above(const bound_state& s, double omega);  // omega > B
double alpha_minus(const bound_state& s, double omega);
polarizability_point alpha_total(const bound_state& s, double omega);

// Independent prior closed forms for the same total, in reduced units
// k0 = 1, B = 1/2 (domain errors outside their branch):
//   below: (2 - w^2 - sqrt(1+2w) - sqrt(1-2w)) / w^4, series near w = 0
//   above: (2 - w^2 - sqrt(2w+1)) / w^4, the real part
double reference_total_below(double omega);
double reference_total_above(double omega);

// Our regrouped real part above threshold (reduced units), combining
// alpha(omega) + alpha(-omega) over a common denominator.
double combined_real_above(double omega);

// Imaginary part above threshold in reduced units, single compact expression.
double im_alpha_reduced(double omega);

// Frequency-weighted absorption integral over the continuum,
// int_B^inf omega Im alpha(omega) d omega; equals pi/2 for every coupling.
double im_sum_rule(const bound_state& s, const quadrature_config& cfg);

struct series_coefficients {
    double c0 = 0.0;
    double c1 = 0.0;
    double c2 = 0.0;
    double normalized_c2 = 0.0;  // c2 / c0
};

enum class series_route { ours, reference };

// Static expansion total(omega) = c0 + c1 omega + c2 omega^2 + ... by
// Richardson-extrapolated central differences (steps 1e-2, 5e-3, 2.5e-3).
// The reference route requires reduced units (k0 = 1).
series_coefficients small_omega_series(const bound_state& s, series_route route);

}  // namespace deltapol
