#ifndef SUSYDIRAC_WITTEN_HPP
#define SUSYDIRAC_WITTEN_HPP

#include <cstddef>
#include <vector>

#include "susydirac/constants.hpp"
#include "susydirac/grid.hpp"
#include "susydirac/gridfn.hpp"
#include "susydirac/potential.hpp"

namespace susydirac {

enum class PartnerSign { plus, minus };

enum class SusyClass { unbroken_minus, unbroken_plus_after_flip, broken };

/// Discretized partner Hamiltonian
///   H_sign = p^2/2m + Phi^2(x) +/- (hbar/sqrt(2m)) Phi'(x)
/// as a symmetric banded matrix with Dirichlet boundaries (the wavefunction
/// is treated as zero beyond the grid edges). Supported kinetic stencils are
/// 2nd, 4th and 6th order; the bandwidth is order/2.
class WittenOperator {
public:
    WittenOperator(const PotentialSpec& spec, const PhysicalConstants& consts, const Grid& grid,
                   PartnerSign sign, int stencil_order = 4);

    const Grid& grid() const { return grid_; }
    const PhysicalConstants& constants() const { return consts_; }
    PartnerSign sign() const { return sign_; }
    int stencil_order() const { return order_; }
    std::size_t bandwidth() const { return kd_; }

    /// LAPACK upper-band storage, column-major, leading dimension kd+1.
    const std::vector<double>& band_storage() const { return bands_; }
    /// Diagonal potential term Phi^2 +/- (hbar/sqrt(2m)) Phi' at node i.
    double potential_term(std::size_t i) const { return v_[i]; }
    /// Onset of box-artifact levels: min of the potential term at the edges.
    double continuum_threshold() const { return continuum_threshold_; }

    std::vector<double> apply(const std::vector<double>& f) const;
    std::vector<cxd> apply(const std::vector<cxd>& f) const;

private:
    Grid grid_;
    PhysicalConstants consts_;
    PartnerSign sign_;
    int order_;
    std::size_t kd_;
    std::vector<double> v_;
    std::vector<double> bands_;
    double continuum_threshold_;
};

WittenOperator build_partner(const PotentialSpec& spec, const PhysicalConstants& consts,
                             const Grid& grid, PartnerSign sign, int stencil_order = 4);

/// A := c p - i W(x) applied to a grid function with 6th-order differences:
/// A f = -i (hbar c f' + W f).
std::vector<cxd> apply_A(const std::vector<double>& f, const PotentialSpec& spec,
                         const PhysicalConstants& consts, const Grid& grid);
std::vector<cxd> apply_A(const std::vector<cxd>& f, const PotentialSpec& spec,
                         const PhysicalConstants& consts, const Grid& grid);

/// A^dagger f = -i (hbar c f' - W f).
std::vector<cxd> apply_A_dagger(const std::vector<double>& f, const PotentialSpec& spec,
                                const PhysicalConstants& consts, const Grid& grid);
std::vector<cxd> apply_A_dagger(const std::vector<cxd>& f, const PotentialSpec& spec,
                                const PhysicalConstants& consts, const Grid& grid);

struct SpectrumOptions {
    bool check_edges = true;     ///< reject eigenfunctions that do not decay at the box edges
    double edge_tol = 1e-8;
};

struct Spectrum {
    std::vector<double> eps;                 ///< lowest eigenvalues, ascending
    std::vector<std::vector<double>> phi;    ///< grid-normalized eigenfunctions
    std::vector<bool> above_continuum;       ///< box-artifact warning per level
    double continuum_threshold = 0.0;
};

/// Lowest k eigenpairs of the discretized operator. Eigenfunctions are
/// grid-normalized with the first significant component positive. Throws
/// BoxTooSmall when a returned eigenfunction fails the edge-decay check.
Spectrum solve_spectrum(const WittenOperator& op, std::size_t k,
                        const SpectrumOptions& options = {});

struct ClassifyResult {
    SusyClass susy;
    bool trivial = false;        ///< W is constant on the grid
    double margin_minus = 0.0;   ///< decay exponents accumulated by exp(-int Phi)
    double margin_plus = 0.0;    ///< same for exp(+int Phi)
};

/// Normalizability test for the candidate zero modes exp(-/+ int Phi).
/// Throws Indeterminate when the grid tails cannot establish the sign
/// behavior of Phi.
ClassifyResult classify_susy(const PotentialSpec& spec, const PhysicalConstants& consts,
                             const Grid& grid);

/// The zero mode phi_0^-(x) = N exp{-(1/hbar c) int_0^x W}, grid-normalized.
/// Throws NotNormalizable when the grid-truncated norm keeps growing at the
/// box edges (broken SUSY).
std::vector<double> ground_state_unbroken(const PotentialSpec& spec,
                                          const PhysicalConstants& consts, const Grid& grid);

/// One level of the paired spectrum. phi_plus is empty for the unbroken
/// n = 0 level; when present its sign is aligned so that the SUSY map
/// (hbar c d/dx + W) phi_minus = +sqrt(2 m c^2 eps) phi_plus holds.
struct EigenPair {
    int n = 0;
    double eps = 0.0;
    std::vector<double> phi_plus;
    std::vector<double> phi_minus;
    bool has_plus() const { return !phi_plus.empty(); }
    double pair_mismatch = 0.0;  ///< |eps_minus - eps_plus| across the partners
};

struct PairedSpectrum {
    SusyClass susy = SusyClass::broken;
    bool flipped = false;  ///< W was negated to move the zero mode into H_-
    bool trivial = false;
    std::vector<EigenPair> levels;
    double continuum_threshold = 0.0;
};

/// Solve both partners, classify SUSY (flipping the potential when the zero
/// mode lives in H_+) and return phase-aligned eigenpairs: k levels total,
/// i.e. n = 0..k-1 when unbroken and n = 1..k when broken.
PairedSpectrum solve_pair_spectrum(const PotentialSpec& spec, const PhysicalConstants& consts,
                                   const Grid& grid, std::size_t k, int stencil_order = 4,
                                   const SpectrumOptions& options = {});

/// Cumulative integral of uniformly sampled values (4th-order rule),
/// starting at 0 on the first node.
std::vector<double> cumulative_integral(const std::vector<double>& f, double h);

} // namespace susydirac

#endif
