#ifndef SUSYDIRAC_DIRAC_HPP
#define SUSYDIRAC_DIRAC_HPP

#include <complex>
#include <vector>

#include "susydirac/constants.hpp"
#include "susydirac/grid.hpp"
#include "susydirac/gridfn.hpp"
#include "susydirac/potential.hpp"
#include "susydirac/witten.hpp"

namespace susydirac {

/// Two-component spinor sampled on a grid.
struct Spinor {
    std::vector<cxd> upper;
    std::vector<cxd> lower;

    double grid_norm(double h) const;
    cxd grid_inner(const Spinor& other, double h) const;
};

enum class Branch { plus, minus };

/// Relativistic eigenpair. Spinors follow the convention in which the
/// partner eigenfunctions phi_n^{+/-} are real: with A = c p - i W the
/// eigenvalue equation then forces the lower component to carry a phase i
/// relative to the upper one (the zero mode, annihilated by A, stays real).
struct DiracEigenpair {
    int n = 0;
    Branch branch = Branch::plus;
    double E = 0.0;
    Spinor psi;
};

struct SusyConditionReport {
    bool pass = false;
    double max_abs_v = 0.0;       ///< max |V| on the grid
    double max_s_deviation = 0.0; ///< max |S - mean(S)|
    double mean_s = 0.0;
    double effective_mass_energy = 0.0;  ///< m c^2 + mean(S), reported when S is constant
};

/// Supersymmetry requires the electro-static potential to vanish and the
/// scalar potential to be constant (a constant S is absorbed into m c^2).
SusyConditionReport check_susy_condition(const PotentialSpec& spec,
                                         const PhysicalConstants& consts, const Grid& grid,
                                         double tol = 1e-10);

struct RelativisticLevel {
    int n = 0;
    double E_plus = 0.0;   ///< +sqrt(2 m c^2 eps + m^2 c^4); 0 marks "absent" for n = 0
    double E_minus = 0.0;  ///< mirror branch; the unbroken n = 0 level is exactly -m c^2
    bool has_plus = true;
};

/// Map Witten eigenvalues to the symmetric relativistic spectrum
/// E_n^{+/-} = +/- sqrt(2 m c^2 eps_n + m^2 c^4); when unbroken, n = 0
/// contributes only E_0^- = -m c^2 (exact). Throws NegativeEpsilon for
/// eps below -1e-8 (in units of the natural energy scale).
std::vector<RelativisticLevel> relativistic_energies(const std::vector<double>& eps,
                                                     const PhysicalConstants& consts,
                                                     bool unbroken);

/// Eigenspinors of the Dirac Hamiltonian assembled from paired Witten
/// eigendata. Throws MissingPartner when phi_n^+ is absent for n >= 1.
std::vector<DiracEigenpair> dirac_eigenspinors(const PairedSpectrum& pairs,
                                               const PhysicalConstants& consts);

/// || H_D psi - E psi || with the Hamiltonian applied through the
/// discretized A, A^dagger and the +/- m c^2 diagonal.
double residual_check(const DiracEigenpair& pair, const PotentialSpec& spec,
                      const PhysicalConstants& consts, const Grid& grid);

/// Eigenstates of the self-adjoint charge Q_1 = [[0, A], [A^dagger, 0]].
struct SusyChargeData {
    struct Entry {
        int n = 0;
        double q1_eigenvalue = 0.0;  ///< +/- sqrt(2 m c^2 eps_n)
        Spinor chi;
    };
    std::vector<Entry> states;  ///< chi_n^{+/-} pairs, then the zero mode when unbroken
};

SusyChargeData q1_eigenstates(const PairedSpectrum& pairs, const PhysicalConstants& consts);

struct FwCheckResult {
    double off_diagonal_max = 0.0;       ///< largest |entry| coupling the two blocks
    double diagonal_mismatch = 0.0;      ///< max |diag - (+/-)sqrt(2 m c^2 eps + m^2 c^4)|
    double zero_mode_identity_gap = 0.0; ///< || (U - 1) restricted to the zero mode ||
    std::size_t basis_size = 0;
};

/// Assemble the block-diagonalizing unitary U spectrally on the truncated
/// eigenbasis, form U H_D U^dagger there, and measure how block-diagonal it
/// is. Throws IncompleteBasis when fewer than n_max levels are available.
FwCheckResult fw_blockdiag_check(const PairedSpectrum& pairs, const PotentialSpec& spec,
                                 const PhysicalConstants& consts, const Grid& grid,
                                 std::size_t n_max);

/// Closed-form Dirac oscillator eigenpair (W = m c omega x) sampled on the
/// grid: E = +/- m c^2 sqrt(1 + 2 n hbar omega / m c^2), components built
/// from harmonic oscillator eigenstates. n = 0 exists only on the minus
/// branch; throws InvalidLevel otherwise.
DiracEigenpair oscillator_exact(int n, Branch branch, const PhysicalConstants& consts,
                                double omega, const Grid& grid);

} // namespace susydirac

#endif
