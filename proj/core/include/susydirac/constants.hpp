#ifndef SUSYDIRAC_CONSTANTS_HPP
#define SUSYDIRAC_CONSTANTS_HPP

#include <cmath>
#include <stdexcept>

namespace susydirac {

/// Physical constants of the model. No hidden unit system: every formula in
/// the library keeps m, c and hbar explicit. The charge e enters only the
/// electro-static validation checks.
struct PhysicalConstants {
    double m = 1.0;     ///< particle mass, > 0
    double c = 1.0;     ///< speed of light, > 0
    double hbar = 1.0;  ///< reduced Planck constant, > 0
    double e = 1.0;     ///< charge (validation only)

    PhysicalConstants() = default;
    PhysicalConstants(double m_, double c_, double hbar_, double e_ = 1.0)
        : m(m_), c(c_), hbar(hbar_), e(e_) {
        validate();
    }

    void validate() const {
        if (!(m > 0.0) || !std::isfinite(m)) throw std::invalid_argument("PhysicalConstants: m must be > 0");
        if (!(c > 0.0) || !std::isfinite(c)) throw std::invalid_argument("PhysicalConstants: c must be > 0");
        if (!(hbar > 0.0) || !std::isfinite(hbar)) throw std::invalid_argument("PhysicalConstants: hbar must be > 0");
        if (!std::isfinite(e)) throw std::invalid_argument("PhysicalConstants: e must be finite");
    }

    /// Rest energy m c^2.
    double rest_energy() const { return m * c * c; }
    /// Rescaling factor sqrt(2 m c^2) between W and the SUSY potential.
    double w_scale() const { return std::sqrt(2.0 * m * c * c); }
};

} // namespace susydirac

#endif
