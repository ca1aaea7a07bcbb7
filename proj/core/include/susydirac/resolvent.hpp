#ifndef SUSYDIRAC_RESOLVENT_HPP
#define SUSYDIRAC_RESOLVENT_HPP

#include <array>
#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

#include "susydirac/constants.hpp"
#include "susydirac/grid.hpp"
#include "susydirac/gridfn.hpp"
#include "susydirac/potential.hpp"
#include "susydirac/witten.hpp"

namespace susydirac {

/// zeta(z) = z^2 / (2 m c^2) - m c^2 / 2, the spectral parameter seen by the
/// partner Hamiltonians.
cxd zeta_map(cxd z, const PhysicalConstants& consts);

struct SpectralParameter {
    cxd z;
    cxd zeta;
    double epsilon = 0.0;     ///< zeta / (hbar omega) on oscillator paths
    bool epsilon_real = false;
};

/// Bundle z with zeta; epsilon is filled when an oscillator frequency is
/// supplied and is real exactly when z^2 is real.
SpectralParameter make_spectral_parameter(cxd z, const PhysicalConstants& consts,
                                          double omega = 0.0);

enum class ResolventMethod { grid_inverse, spectral_truncated, closed_form_oscillator };

struct PartnerResolventColumns {
    cxd zeta;
    std::vector<std::size_t> sources;       ///< grid indices of the delta sources
    std::vector<std::vector<cxd>> columns;  ///< kernel columns G(., x_src)
};

/// Columns of (H - zeta)^{-1} delta_{x'}/h for the requested source indices.
/// Throws NearPole when zeta sits within guard of a computed eigenvalue.
PartnerResolventColumns partner_resolvent_grid(const WittenOperator& op, cxd zeta,
                                               const std::vector<std::size_t>& sources,
                                               double guard = 1e-6);

struct KernelEntry {
    double x2 = 0.0;  ///< x'' (row position)
    double x1 = 0.0;  ///< x'  (source position)
    std::array<cxd, 4> g{};  ///< row-major 2x2 block: g11, g12, g21, g22
};

struct ResolventKernel {
    ResolventMethod method = ResolventMethod::grid_inverse;
    cxd z;
    cxd zeta;
    std::size_t truncation = 0;   ///< modes kept by the spectral method
    double tail_estimate = 0.0;   ///< rough bound on the neglected spectral tail
    /// Grid method only: sup norm of (H_D - z) G - 1 over the solved columns,
    /// rows straddling the source excluded (the kernel's derivative jump sits
    /// inside the stencil there).
    double identity_residual = 0.0;
    std::vector<KernelEntry> entries;
};

struct ResolventOptions {
    std::size_t truncation = 400;  ///< spectral mode count
    int stencil_order = 6;         ///< kinetic stencil for the partner operators
    double guard = 1e-6;           ///< pole guard distance in units of m c^2
};

/// Sampled 2x2 kernel <x''| (H_D - z)^{-1} |x'> assembled from the partner
/// resolvents. Sample positions snap to the nearest grid node for the grid
/// and spectral methods. Throws NearPole when z is within guard * m c^2 of
/// a known eigenvalue and MethodUnavailable when the closed form is
/// requested away from the oscillator family (or at complex epsilon).
ResolventKernel dirac_resolvent(cxd z, const PotentialSpec& spec, const PhysicalConstants& consts,
                                const Grid& grid, ResolventMethod method,
                                const std::vector<std::pair<double, double>>& points,
                                const ResolventOptions& options = {});

/// Closed-form Dirac oscillator kernel built from the gamma function and
/// parabolic cylinder functions. Valid for real or purely imaginary z (real
/// epsilon); off-diagonal entries at coincident arguments return the mean of
/// the two one-sided limits (the kernel's derivative jumps across x'' = x').
std::array<cxd, 4> oscillator_greens_closed_form(cxd z, double x2, double x1,
                                                 const PhysicalConstants& consts, double omega,
                                                 double guard = 1e-6);

} // namespace susydirac

#endif
