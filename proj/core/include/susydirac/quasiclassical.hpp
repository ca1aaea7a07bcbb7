#ifndef SUSYDIRAC_QUASICLASSICAL_HPP
#define SUSYDIRAC_QUASICLASSICAL_HPP

#include <functional>
#include <utility>

#include "susydirac/constants.hpp"
#include "susydirac/grid.hpp"
#include "susydirac/potential.hpp"
#include "susydirac/witten.hpp"

namespace susydirac {

enum class QcFormula { cbc, eij };
enum class QcFrame { nonrelativistic, relativistic };

struct QuantizationResult {
    int n = 0;
    QcFormula formula = QcFormula::cbc;
    QcFrame frame = QcFrame::nonrelativistic;
    double value = 0.0;     ///< eps (nonrelativistic) or E^2 (relativistic)
    double E_plus = 0.0;    ///< relativistic branches; E_minus = -E_plus
    double E_minus = 0.0;
    double x_left = 0.0;
    double x_right = 0.0;
    double quadrature_error = 0.0;
    int iterations = 0;
};

/// Positions where f(x) = value, for a confining profile with exactly two
/// crossings inside [a, b]; bisection refined to 1e-12 in position.
/// Throws NotConfining when the crossing count differs from two.
std::pair<double, double> turning_points(const std::function<double(double)>& f, double value,
                                         double a, double b);

struct ActionIntegral {
    double value = 0.0;
    double error_estimate = 0.0;
    int nodes = 0;
};

/// int_{xL}^{xR} sqrt(2 m (eps - Phi^2(x))) dx with the inverse-square-root
/// endpoints absorbed by the cosine substitution x = mid - half cos(t);
/// the node count doubles from 128 until two successive estimates agree to
/// 1e-9 relative. Throws QuadratureFailure when that never happens.
ActionIntegral action_integral(const PotentialSpec& spec, const PhysicalConstants& consts,
                               double eps, const Grid& grid);

struct QcOptions {
    double quad_tol = 1e-9;
    double root_tol = 1e-12;
    /// Skip the SUSY classification check (tabulated potentials with
    /// ambiguous tails).
    bool override_regime = false;
    int max_iterations = 200;
};

/// Quantization conditions for the Witten model: action(eps) = hbar pi n
/// (unbroken SUSY; n = 0 returns eps = 0 exactly) and
/// action(eps) = hbar pi (n - 1/2) (broken SUSY, n >= 1). The classification
/// must match the formula unless override_regime is set; mismatches throw
/// RegimeMismatch.
QuantizationResult cbc_level(const PotentialSpec& spec, const PhysicalConstants& consts,
                             const Grid& grid, int n, const QcOptions& options = {});
QuantizationResult eij_level(const PotentialSpec& spec, const PhysicalConstants& consts,
                             const Grid& grid, int n, const QcOptions& options = {});

/// Relativistic versions: solve int sqrt(E^2 - m^2 c^4 - W^2) dx = c hbar pi n
/// (or n - 1/2) for E^2, turning points from W^2 = E^2 - m^2 c^4. The n = 0
/// unbroken level returns E = -m c^2 exactly.
QuantizationResult relativistic_cbc_level(const PotentialSpec& spec,
                                          const PhysicalConstants& consts, const Grid& grid,
                                          int n, const QcOptions& options = {});
QuantizationResult relativistic_eij_level(const PotentialSpec& spec,
                                          const PhysicalConstants& consts, const Grid& grid,
                                          int n, const QcOptions& options = {});

} // namespace susydirac

#endif
