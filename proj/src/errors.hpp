#ifndef MW_ERRORS_HPP
#define MW_ERRORS_HPP

#include <stdexcept>

namespace mw {

// Quadrature non-convergence, indeterminate roots, integrator stability
// violations.  Maps to exit/status code 3.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Empty result domain: no crossing in range, all-mangled ensembles, cutoff
// above all worlds.  Maps to exit/status code 4.
struct EmptyDomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace mw

#endif
