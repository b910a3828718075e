#pragma once

#include "deltapol/errors.hpp"

namespace deltapol {

// One particle bound by V(x) = -g delta(x) in natural units hbar = m = q = 1.

struct model_params {
    double strength = 1.0;  // well depth g > 0
};

// The single bound state psi0(x) = sqrt(k0) exp(-k0 |x|).
struct bound_state {
    double k0;       // inverse decay length, k0 = g
    double energy;   // E0 = -k0^2 / 2
    double binding;  // B = -E0, the photoionization threshold
};

bound_state make_bound_state(const model_params& p);

double bound_wavefunction(const bound_state& s, double x);

enum class region { below, above, negative };
enum class frequency_sign { plus, minus };

// Kinematics of the channel that is active at drive frequency omega >= 0:
//   below:    closed channel,   momentum k,      k^2      = 2 (B - omega)
//   above:    open photo line,  momentum Lambda, Lambda^2 = 2 (omega - B)
//   negative: alpha(-omega),    momentum k',     k'^2     = 2 (B + omega)
// Holding a single momentum keeps "exactly one branch populated" structural.
struct branch_kinematics {
    region channel;
    double momentum;  // >= 0; zero exactly at threshold (below branch)
};

branch_kinematics make_branch_kinematics(const bound_state& s, double omega,
                                         frequency_sign sign);

}  // namespace deltapol
