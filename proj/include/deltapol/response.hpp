#pragma once

#include <cstddef>
#include <vector>

#include "deltapol/closedform.hpp"
#include "deltapol/model.hpp"

namespace deltapol {

// Hard-wall box discretization of the well, used as an independent
// spectral-sum oracle for the closed forms.
struct box_spec {
    double length = 200.0;  // total box width, walls at +/- length/2
    int n_grid = 4001;      // interior nodes; even values round up to odd so
                            // a node sits exactly on the well
    double strength = 1.0;  // well depth g (0 allowed: free box)
    double mu = 1e-3;       // default Lorentzian broadening for the oracle
};

struct eigensystem {
    int n = 0;
    double dx = 0.0;
    double strength = 0.0;
    std::vector<double> grid;      // node positions
    std::vector<double> energies;  // ascending
    std::vector<double> states;    // column-major, l2-normalized eigenvectors
    int ground_index = 0;
    std::vector<double> omega_n0;  // energies[n] - ground energy, >= 0

    const double* state(int j) const {
        return states.data() + static_cast<std::size_t>(n) * j;
    }
};

// Three-point kinetic stencil with Dirichlet walls; the well is one diagonal
// entry -g/dx on the center node. Requires k0 dx < 0.1 and, for g > 0,
// exactly one negative eigenvalue.
eigensystem build_box_eigensystem(const box_spec& spec);

// <ground| x |n> for every state.
std::vector<double> dipole_elements(const eigensystem& es);

// Retarded response function of operators B, A at frequency omega,
//   chi_BA = sum_n!=0 [ <0|B|n><n|A|0>/(omega - w_n0 + i mu)
//                     - <0|A|n><n|B|0>/(omega + w_n0 + i mu) ];
// the n = 0 term cancels identically and is excluded. Operators are either
// diagonal grid functions or dense row-major n x n matrices.
cdouble chi_ba(const eigensystem& es, const std::vector<double>& diag_b,
               const std::vector<double>& diag_a, double omega, double mu);
cdouble chi_ba_dense(const eigensystem& es, const std::vector<double>& mat_b,
                     const std::vector<double>& mat_a, double omega, double mu);

// The two halves of the polarizability from the box spectrum,
//   plus  = sum |x_0n|^2 / (w_n0 - omega - i mu)
//   minus = sum |x_0n|^2 / (w_n0 + omega + i mu).
struct split_polarizability {
    cdouble plus{};
    cdouble minus{};
};

split_polarizability alpha_split_oracle(const eigensystem& es, double omega,
                                        double mu);

}  // namespace deltapol
