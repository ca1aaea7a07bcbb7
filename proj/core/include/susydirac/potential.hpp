#ifndef SUSYDIRAC_POTENTIAL_HPP
#define SUSYDIRAC_POTENTIAL_HPP

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "susydirac/constants.hpp"
#include "susydirac/grid.hpp"

namespace susydirac {

enum class PotentialFamily { oscillator, power, tabulated, custom };

/// A pseudo-scalar potential W together with the optional scalar (S) and
/// electro-static (V) parts used by the validation checks. Analytic families
/// carry closed-form derivatives; tabulated samples are interpolated with a
/// natural cubic spline and differentiated through the spline.
///
/// The power family is specified in terms of the rescaled SUSY potential:
/// Phi(x) = strength * |x|^d (unsigned) or strength * sgn(x) |x|^d (signed),
/// with W = sqrt(2 m c^2) Phi, so its construction takes the constants.
class PotentialSpec {
public:
    static PotentialSpec oscillator(const PhysicalConstants& consts, double omega);
    static PotentialSpec power(const PhysicalConstants& consts, double exponent, bool is_signed,
                               double strength);
    /// Samples must be strictly increasing in x.
    static PotentialSpec tabulated(std::vector<double> x, std::vector<double> w);
    static PotentialSpec custom(std::function<double(double)> w,
                                std::function<double(double)> w_prime);

    double W(double x) const { return w_(x); }
    double Wprime(double x) const { return w_prime_(x); }
    double S(double x) const { return s_ ? s_(x) : 0.0; }
    double V(double x) const { return v_ ? v_(x) : 0.0; }
    bool has_scalar() const { return static_cast<bool>(s_); }
    bool has_electrostatic() const { return static_cast<bool>(v_); }
    /// Derivative of S when one was attached; empty otherwise.
    const std::function<double(double)>& scalar_derivative() const { return s_prime_; }

    PotentialFamily family() const { return family_; }
    /// Oscillator frequency when family() == oscillator.
    std::optional<double> oscillator_omega() const { return omega_; }
    /// Position range covered by tabulated samples, when applicable.
    std::optional<std::pair<double, double>> tabulated_range() const { return range_; }

    /// Attach a scalar potential. The derivative is optional; when absent,
    /// reductions that need it fall back to grid sampling plus splines.
    PotentialSpec& with_scalar(std::function<double(double)> s,
                               std::function<double(double)> s_prime = nullptr);
    PotentialSpec& with_electrostatic(std::function<double(double)> v);

    /// Same potential with W -> -W (used when the zero mode is moved between
    /// the partner Hamiltonians).
    PotentialSpec flipped() const;

    /// Characteristic length used to scale default grids.
    double natural_length(const PhysicalConstants& consts) const;

private:
    PotentialSpec() = default;

    PotentialFamily family_ = PotentialFamily::custom;
    std::function<double(double)> w_, w_prime_;
    std::function<double(double)> s_, s_prime_;
    std::function<double(double)> v_;
    std::optional<double> omega_;
    std::optional<double> power_exponent_;
    std::optional<double> power_strength_;
    std::optional<std::pair<double, double>> range_;
    bool flipped_sign_ = false;
};

/// The SUSY potential Phi with W(x) = sqrt(2 m c^2) Phi(x), returned as a
/// callable. Pure algebra, no failure modes.
std::function<double(double)> rescale_pseudoscalar(const PotentialSpec& spec,
                                                   const PhysicalConstants& consts);
/// Same rescaling applied to W'.
std::function<double(double)> rescale_pseudoscalar_derivative(const PotentialSpec& spec,
                                                              const PhysicalConstants& consts);

struct ScalarReduction {
    PotentialSpec spec;        ///< reduced potential with W'(x) = m c^2 + S(x), S = V = 0
    double constant_v = 0.0;   ///< the validated constant electro-static offset
    bool degenerate_zero_w = false;  ///< true when the reduced W vanishes identically
};

/// Map a scalar-potential configuration onto an equivalent pseudo-scalar one
/// by W'(x) := m c^2 + S(x). Requires V constant on the grid within tol;
/// throws NonConstantV otherwise. (The remaining representation, with the
/// momentum term on the diagonal, forces W = const and collapses to constant
/// partner Hamiltonians; it is not implemented.)
ScalarReduction scalar_to_pseudoscalar(const PotentialSpec& spec, const PhysicalConstants& consts,
                                       const Grid& grid, double tol = 1e-10);

/// Default working grid: [-12, 12] in units of the potential's natural
/// length, 4001 points. Tabulated potentials are clipped to their sample
/// range.
Grid make_default_grid(const PotentialSpec& spec, const PhysicalConstants& consts,
                       std::size_t n_points = 4001, double half_width = 12.0);

} // namespace susydirac

#endif
