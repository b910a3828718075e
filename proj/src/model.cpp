#include "deltapol/model.hpp"

#include <cmath>

namespace deltapol {

bound_state make_bound_state(const model_params& p) {
    if (!std::isfinite(p.strength) || p.strength <= 0.0)
        throw invalid_params("well depth must be positive and finite");
    const double k0 = p.strength;
    return {k0, -0.5 * k0 * k0, 0.5 * k0 * k0};
}

double bound_wavefunction(const bound_state& s, double x) {
    return std::sqrt(s.k0) * std::exp(-s.k0 * std::abs(x));
}

branch_kinematics make_branch_kinematics(const bound_state& s, double omega,
                                         frequency_sign sign) {
    if (!std::isfinite(omega) || omega < 0.0)
        throw domain_error("frequency must be finite and >= 0");
    if (sign == frequency_sign::minus)
        return {region::negative, std::sqrt(2.0 * (s.binding + omega))};
    if (omega <= s.binding)  // threshold itself stays on the closed branch
        return {region::below, std::sqrt(2.0 * (s.binding - omega))};
    return {region::above, std::sqrt(2.0 * (omega - s.binding))};
}

}  // namespace deltapol
