#include "susydirac/dirac.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "susydirac/errors.hpp"
#include "susydirac/special_functions.hpp"

namespace susydirac {

double Spinor::grid_norm(double h) const {
    double s = 0.0;
    for (const cxd& v : upper) s += std::norm(v);
    for (const cxd& v : lower) s += std::norm(v);
    return std::sqrt(h * s);
}

cxd Spinor::grid_inner(const Spinor& other, double h) const {
    cxd s = 0.0;
    for (std::size_t i = 0; i < upper.size(); ++i) s += std::conj(upper[i]) * other.upper[i];
    for (std::size_t i = 0; i < lower.size(); ++i) s += std::conj(lower[i]) * other.lower[i];
    return h * s;
}

SusyConditionReport check_susy_condition(const PotentialSpec& spec,
                                         const PhysicalConstants& consts, const Grid& grid,
                                         double tol) {
    SusyConditionReport rep;
    const std::size_t n = grid.size();
    double s_sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        rep.max_abs_v = std::max(rep.max_abs_v, std::fabs(consts.e * spec.V(grid.x(i))));
        s_sum += spec.S(grid.x(i));
    }
    rep.mean_s = s_sum / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i)
        rep.max_s_deviation = std::max(rep.max_s_deviation, std::fabs(spec.S(grid.x(i)) - rep.mean_s));
    const double scale = std::max(1.0, consts.rest_energy());
    rep.pass = rep.max_abs_v <= tol * scale && rep.max_s_deviation <= tol * scale;
    rep.effective_mass_energy = consts.rest_energy() + rep.mean_s;
    return rep;
}

std::vector<RelativisticLevel> relativistic_energies(const std::vector<double>& eps,
                                                     const PhysicalConstants& consts,
                                                     bool unbroken) {
    const double mc2 = consts.rest_energy();
    std::vector<RelativisticLevel> out;
    out.reserve(eps.size());
    for (std::size_t j = 0; j < eps.size(); ++j) {
        double e = eps[j];
        if (e < -1e-8 * std::max(1.0, mc2))
            throw NegativeEpsilon("relativistic_energies: eps = " + std::to_string(e));
        if (e < 0.0) e = 0.0;
        RelativisticLevel lvl;
        if (unbroken && j == 0) {
            lvl.n = 0;
            lvl.has_plus = false;
            lvl.E_minus = -mc2;  // exact zero-mode energy
            lvl.E_plus = 0.0;
        } else {
            lvl.n = unbroken ? static_cast<int>(j) : static_cast<int>(j) + 1;
            const double E = std::sqrt(2.0 * mc2 * e + mc2 * mc2);
            lvl.E_plus = E;
            lvl.E_minus = -E;
        }
        out.push_back(lvl);
    }
    return out;
}

namespace {

Spinor make_spinor(std::size_t n) {
    Spinor s;
    s.upper.assign(n, cxd(0.0, 0.0));
    s.lower.assign(n, cxd(0.0, 0.0));
    return s;
}

} // namespace

std::vector<DiracEigenpair> dirac_eigenspinors(const PairedSpectrum& pairs,
                                               const PhysicalConstants& consts) {
    const double mc2 = consts.rest_energy();
    std::vector<DiracEigenpair> out;
    const cxd i_unit(0.0, 1.0);
    for (const EigenPair& lvl : pairs.levels) {
        const std::size_t n = lvl.phi_minus.size();
        if (lvl.n == 0) {
            DiracEigenpair zero;
            zero.n = 0;
            zero.branch = Branch::minus;
            zero.E = -mc2;
            zero.psi = make_spinor(n);
            for (std::size_t i = 0; i < n; ++i) zero.psi.lower[i] = lvl.phi_minus[i];
            out.push_back(std::move(zero));
            continue;
        }
        if (!lvl.has_plus())
            throw MissingPartner("dirac_eigenspinors: phi_plus missing for level n = " +
                                 std::to_string(lvl.n));
        const double E = std::sqrt(2.0 * mc2 * std::max(0.0, lvl.eps) + mc2 * mc2);
        const double c_plus = std::sqrt(0.5 * (1.0 + mc2 / E));
        const double c_minus = std::sqrt(0.5 * (1.0 - mc2 / E));

        DiracEigenpair up;
        up.n = lvl.n;
        up.branch = Branch::plus;
        up.E = E;
        up.psi = make_spinor(n);
        DiracEigenpair down;
        down.n = lvl.n;
        down.branch = Branch::minus;
        down.E = -E;
        down.psi = make_spinor(n);
        for (std::size_t i = 0; i < n; ++i) {
            up.psi.upper[i] = c_plus * lvl.phi_plus[i];
            up.psi.lower[i] = i_unit * c_minus * lvl.phi_minus[i];
            down.psi.upper[i] = -c_minus * lvl.phi_plus[i];
            down.psi.lower[i] = i_unit * c_plus * lvl.phi_minus[i];
        }
        out.push_back(std::move(up));
        out.push_back(std::move(down));
    }
    return out;
}

double residual_check(const DiracEigenpair& pair, const PotentialSpec& spec,
                      const PhysicalConstants& consts, const Grid& grid) {
    const double mc2 = consts.rest_energy();
    const auto a_lower = apply_A(pair.psi.lower, spec, consts, grid);
    const auto adag_upper = apply_A_dagger(pair.psi.upper, spec, consts, grid);
    std::vector<cxd> r_up(grid.size()), r_lo(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        r_up[i] = mc2 * pair.psi.upper[i] + a_lower[i] - pair.E * pair.psi.upper[i];
        r_lo[i] = adag_upper[i] - mc2 * pair.psi.lower[i] - pair.E * pair.psi.lower[i];
    }
    double s = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) s += std::norm(r_up[i]) + std::norm(r_lo[i]);
    return std::sqrt(grid.spacing() * s);
}

SusyChargeData q1_eigenstates(const PairedSpectrum& pairs, const PhysicalConstants& consts) {
    SusyChargeData data;
    const double mc2 = consts.rest_energy();
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const cxd i_unit(0.0, 1.0);
    for (const EigenPair& lvl : pairs.levels) {
        const std::size_t n = lvl.phi_minus.size();
        if (lvl.n == 0) {
            SusyChargeData::Entry zero;
            zero.n = 0;
            zero.q1_eigenvalue = 0.0;
            zero.chi = make_spinor(n);
            for (std::size_t i = 0; i < n; ++i) zero.chi.lower[i] = lvl.phi_minus[i];
            data.states.push_back(std::move(zero));
            continue;
        }
        if (!lvl.has_plus())
            throw MissingPartner("q1_eigenstates: phi_plus missing for level n = " +
                                 std::to_string(lvl.n));
        const double q = std::sqrt(2.0 * mc2 * std::max(0.0, lvl.eps));
        for (int s : {+1, -1}) {
            SusyChargeData::Entry e;
            e.n = lvl.n;
            e.q1_eigenvalue = s * q;
            e.chi = make_spinor(n);
            for (std::size_t i = 0; i < n; ++i) {
                e.chi.upper[i] = inv_sqrt2 * lvl.phi_plus[i];
                e.chi.lower[i] = static_cast<double>(s) * i_unit * inv_sqrt2 * lvl.phi_minus[i];
            }
            data.states.push_back(std::move(e));
        }
    }
    return data;
}

namespace {

// Dense complex matrix on the truncated basis; sizes stay below ~30.
struct SmallMatrix {
    std::size_t n = 0;
    std::vector<cxd> a;
    explicit SmallMatrix(std::size_t n_) : n(n_), a(n_ * n_, cxd(0.0, 0.0)) {}
    cxd& at(std::size_t i, std::size_t j) { return a[i * n + j]; }
    const cxd& at(std::size_t i, std::size_t j) const { return a[i * n + j]; }

    SmallMatrix mul(const SmallMatrix& other) const {
        SmallMatrix out(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < n; ++k) {
                const cxd v = at(i, k);
                if (v == cxd(0.0, 0.0)) continue;
                for (std::size_t j = 0; j < n; ++j) out.at(i, j) += v * other.at(k, j);
            }
        return out;
    }

    SmallMatrix adjoint() const {
        SmallMatrix out(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) out.at(i, j) = std::conj(at(j, i));
        return out;
    }
};

} // namespace

FwCheckResult fw_blockdiag_check(const PairedSpectrum& pairs, const PotentialSpec& spec,
                                 const PhysicalConstants& consts, const Grid& grid,
                                 std::size_t n_max) {
    // Basis: (phi_j^+, 0) for j = 1..n_max, then (0, phi_j^-) for
    // j = 0/1..n_max. The eigen-spinors live exactly in this span.
    const bool unbroken = pairs.susy != SusyClass::broken;
    std::size_t available = 0;
    for (const EigenPair& lvl : pairs.levels)
        if (lvl.n >= 1 && lvl.has_plus()) ++available;
    if (available < n_max)
        throw IncompleteBasis("fw_blockdiag_check: need " + std::to_string(n_max) +
                              " paired levels, have " + std::to_string(available));

    std::vector<const EigenPair*> lv;
    const EigenPair* zero = nullptr;
    for (const EigenPair& lvl : pairs.levels) {
        if (lvl.n == 0) zero = &lvl;
        else if (lvl.has_plus() && lv.size() < n_max) lv.push_back(&lvl);
    }
    if (unbroken && zero == nullptr)
        throw IncompleteBasis("fw_blockdiag_check: unbroken spectrum without a zero mode");

    const std::size_t nup = n_max;                     // upper-block basis functions
    const std::size_t nlo = n_max + (unbroken ? 1 : 0); // lower block, zero mode first
    const std::size_t dim = nup + nlo;
    const double h = grid.spacing();
    const double mc2 = consts.rest_energy();
    const cxd i_unit(0.0, 1.0);

    auto minus_fn = [&](std::size_t j) -> const std::vector<double>& {
        // lower-block index j: zero mode first when unbroken
        if (unbroken) return (j == 0) ? zero->phi_minus : lv[j - 1]->phi_minus;
        return lv[j]->phi_minus;
    };

    // H_D on the basis: <b_i | H_D | b_j>.
    SmallMatrix H(dim);
    for (std::size_t j = 0; j < nup; ++j) H.at(j, j) = mc2;
    for (std::size_t j = 0; j < nlo; ++j) H.at(nup + j, nup + j) = -mc2;
    for (std::size_t j = 0; j < nlo; ++j) {
        const auto a_phi = apply_A(minus_fn(j), spec, consts, grid);
        for (std::size_t i = 0; i < nup; ++i) {
            cxd s = 0.0;
            for (std::size_t p = 0; p < grid.size(); ++p)
                s += lv[i]->phi_plus[p] * a_phi[p];
            H.at(i, nup + j) = h * s;                 // <phi_i^+ | A phi_j^->
            H.at(nup + j, i) = std::conj(h * s);      // hermiticity
        }
    }

    // U = sum_k |tilde-psi_k><psi_k| with the spinor coefficients of the
    // eigenbasis; rows are the tilde states, which coincide with the basis.
    SmallMatrix U(dim);
    for (std::size_t k = 0; k < nup; ++k) {
        const double E = std::sqrt(2.0 * mc2 * std::max(0.0, lv[k]->eps) + mc2 * mc2);
        const double c_plus = std::sqrt(0.5 * (1.0 + mc2 / E));
        const double c_minus = std::sqrt(0.5 * (1.0 - mc2 / E));
        const std::size_t lo_index = nup + k + (unbroken ? 1 : 0);
        // psi_k^+ = c_plus |up_k> + i c_minus |lo_k>
        U.at(k, k) += c_plus;
        U.at(k, lo_index) += std::conj(i_unit * c_minus);
        // psi_k^- = -c_minus |up_k> + i c_plus |lo_k>
        U.at(lo_index, k) += -c_minus;
        U.at(lo_index, lo_index) += std::conj(i_unit * c_plus);
    }
    if (unbroken) U.at(nup, nup) = 1.0;  // U restricted to ker H_- is the identity

    const SmallMatrix M = U.mul(H).mul(U.adjoint());

    FwCheckResult res;
    res.basis_size = dim;
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) {
            const bool i_up = i < nup, j_up = j < nup;
            if (i_up != j_up) res.off_diagonal_max = std::max(res.off_diagonal_max, std::abs(M.at(i, j)));
        }
    for (std::size_t k = 0; k < nup; ++k) {
        const double E = std::sqrt(2.0 * mc2 * std::max(0.0, lv[k]->eps) + mc2 * mc2);
        res.diagonal_mismatch =
            std::max(res.diagonal_mismatch, std::abs(M.at(k, k) - cxd(E, 0.0)));
        const std::size_t lo_index = nup + k + (unbroken ? 1 : 0);
        res.diagonal_mismatch =
            std::max(res.diagonal_mismatch, std::abs(M.at(lo_index, lo_index) - cxd(-E, 0.0)));
    }
    if (unbroken) {
        res.diagonal_mismatch =
            std::max(res.diagonal_mismatch, std::abs(M.at(nup, nup) - cxd(-mc2, 0.0)));
        // U acts as the identity on the zero-mode row and column.
        double gap = std::abs(U.at(nup, nup) - cxd(1.0, 0.0));
        for (std::size_t j = 0; j < dim; ++j) {
            if (j == nup) continue;
            gap = std::max(gap, std::abs(U.at(nup, j)));
            gap = std::max(gap, std::abs(U.at(j, nup)));
        }
        res.zero_mode_identity_gap = gap;
    }
    return res;
}

DiracEigenpair oscillator_exact(int n, Branch branch, const PhysicalConstants& consts,
                                double omega, const Grid& grid) {
    if (n < 0) throw InvalidLevel("oscillator_exact: n must be >= 0");
    if (n == 0 && branch == Branch::plus)
        throw InvalidLevel("oscillator_exact: n = 0 exists only on the minus branch");
    const double mc2 = consts.rest_energy();
    const double ratio = 2.0 * n * consts.hbar * omega / mc2;
    const double E_mag = mc2 * std::sqrt(1.0 + ratio);

    DiracEigenpair out;
    out.n = n;
    out.branch = branch;
    out.E = (branch == Branch::plus) ? E_mag : -E_mag;
    out.psi = make_spinor(grid.size());
    const cxd i_unit(0.0, 1.0);

    if (n == 0) {
        for (std::size_t i = 0; i < grid.size(); ++i)
            out.psi.lower[i] = hermite_state(0, grid.x(i), consts.m, omega, consts.hbar);
        return out;
    }
    const double c_plus = std::sqrt(0.5 * (1.0 + mc2 / E_mag));
    const double c_minus = std::sqrt(0.5 * (1.0 - mc2 / E_mag));
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double up = hermite_state(n - 1, grid.x(i), consts.m, omega, consts.hbar);
        const double lo = hermite_state(n, grid.x(i), consts.m, omega, consts.hbar);
        if (branch == Branch::plus) {
            out.psi.upper[i] = c_plus * up;
            out.psi.lower[i] = i_unit * c_minus * lo;
        } else {
            out.psi.upper[i] = -c_minus * up;
            out.psi.lower[i] = i_unit * c_plus * lo;
        }
    }
    return out;
}

} // namespace susydirac
