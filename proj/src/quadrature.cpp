#include "deltapol/quadrature.hpp"

namespace deltapol {

void validate(const quadrature_config& cfg) {
    if (!(cfg.rel_tol > 0.0) || !(cfg.abs_tol > 0.0))
        throw invalid_params("quadrature tolerances must be positive");
    if (!(cfg.k_cutoff > 10.0))
        throw invalid_params("momentum cutoff must exceed 10 k0");
    if (cfg.max_subdivisions < 1)
        throw invalid_params("subdivision budget must be at least 1");
}

}  // namespace deltapol
