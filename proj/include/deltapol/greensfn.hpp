#pragma once

#include <complex>

#include "deltapol/closedform.hpp"
#include "deltapol/model.hpp"
#include "deltapol/quadrature.hpp"

namespace deltapol {

// Energy argument of the resolvent, E = E0 +/- omega. Whenever the energy
// sits in the continuum (E > 0) a retarded +i0 prescription is implied;
// there E coincides with the Appendix-style symbol Omega = omega + omega0.
struct resolvent_energy {
    double value = 0.0;
    bool in_continuum() const { return value > 0.0; }
};

// <psi0| x |k> against plane waves e^{ikx}/sqrt(2pi); purely imaginary and
// odd in k (from the derivative of the Fourier transform of psi0).
cdouble dipole_momentum_element(const bound_state& s, double k);
// |<psi0| x |k>|^2 = (8 k0^3 / pi) k^2 / (k0^2 + k^2)^4
double dipole_strength(const bound_state& s, double k);

// Free resolvent at the origin, <0|G0(E)|0>:
//   E < 0: -1 / sqrt(-2E),   E > 0: -i / sqrt(2E),   E = 0: branch point.
cdouble g0_diag(resolvent_energy e);

// 1 + g <0|G0(E)|0>, the Dyson closure denominator (real E < 0).
double dyson_denominator(const bound_state& s, resolvent_energy e);

// Bisection zero of the Dyson denominator on E < 0; lands on E0.
double locate_bound_pole(const bound_state& s, double tol);

// <psi0| x G0(E) |0>, the numerator of the Dyson correction. The integrand is
// odd about the well, so the quadrature must return zero to rounding; exposed
// so callers can watch that cancellation directly.
cdouble dyson_correction_numerator(const bound_state& s, resolvent_energy e,
                                   const quadrature_config& cfg);

// <psi0| x G(E) x |psi0> with G closed exactly through the single-site
// Dyson equation. The correction numerator <psi0|x G0|0> vanishes by parity
// and is evaluated by quadrature as a consistency check.
cdouble dyson_dipole_element(const bound_state& s, resolvent_energy e,
                             const quadrature_config& cfg);

// alpha(+omega) or alpha(-omega) assembled from the momentum-space resolvent:
// principal value plus analytic half-residue above threshold, plain
// quadrature (with analytic k^-8 tail) everywhere else.
cdouble alpha_from_g0(const bound_state& s, double omega, frequency_sign sign,
                      const quadrature_config& cfg);

// I1(x0, a) = int dx x^2 / ((x^2 + x0^2)^4 (x^2 + a^2)) over the real line.
struct i1_params {
    double x0 = 1.0;    // > 0
    cdouble a = 1.0;    // Re a >= 0, a != -x0
};

struct i1_value {
    cdouble direct;      // adaptive quadrature with analytic tail
    cdouble parametric;  // closed form from differentiating pi/(x0+a)
};

i1_value integral_i1(const i1_params& p, const quadrature_config& cfg);

// The seed of the parametric route: int dx x^2/((x^2+x0^2)(x^2+a^2)) = pi/(x0+a).
cdouble i1_base_closed(double x0, cdouble a);

}  // namespace deltapol
