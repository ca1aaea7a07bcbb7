#include "susydirac/witten.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "lapack.hpp"
#include "susydirac/errors.hpp"

namespace susydirac {

namespace {

// Centered second-derivative stencils (coefficient of f_{i+k}, k = 0..kd),
// to be scaled by 1/h^2.
const double kD2Order2[2] = {-2.0, 1.0};
const double kD2Order4[3] = {-5.0 / 2, 4.0 / 3, -1.0 / 12};
const double kD2Order6[4] = {-49.0 / 18, 3.0 / 2, -3.0 / 20, 1.0 / 90};

const double* d2_stencil(int order, std::size_t& kd) {
    switch (order) {
        case 2: kd = 1; return kD2Order2;
        case 4: kd = 2; return kD2Order4;
        case 6: kd = 3; return kD2Order6;
        default: throw std::invalid_argument("WittenOperator: stencil order must be 2, 4 or 6");
    }
}

} // namespace

WittenOperator::WittenOperator(const PotentialSpec& spec, const PhysicalConstants& consts,
                               const Grid& grid, PartnerSign sign, int stencil_order)
    : grid_(grid), consts_(consts), sign_(sign), order_(stencil_order) {
    const double* st = d2_stencil(stencil_order, kd_);
    const std::size_t n = grid_.size();
    const double h = grid_.spacing();
    const double kin = consts_.hbar * consts_.hbar / (2.0 * consts_.m);  // -(hbar^2/2m) f''
    const double sgn = (sign == PartnerSign::plus) ? 1.0 : -1.0;
    const double dscale = consts_.hbar / std::sqrt(2.0 * consts_.m);
    const double inv_wscale = 1.0 / consts_.w_scale();

    v_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = grid_.x(i);
        const double phi = spec.W(x) * inv_wscale;
        const double phip = spec.Wprime(x) * inv_wscale;
        if (!std::isfinite(phi) || !std::isfinite(phip))
            throw std::invalid_argument("WittenOperator: potential not finite on the grid");
        v_[i] = phi * phi + sgn * dscale * phip;
    }
    continuum_threshold_ = std::min(v_.front(), v_.back());

    // LAPACK upper band storage: bands_[kd + i - j + j*(kd+1)] = H(i, j), i <= j.
    const std::size_t ldab = kd_ + 1;
    bands_.assign(ldab * n, 0.0);
    const double ih2 = 1.0 / (h * h);
    for (std::size_t j = 0; j < n; ++j) {
        bands_[kd_ + j * ldab] = -kin * st[0] * ih2 + v_[j];
        for (std::size_t k = 1; k <= kd_ && k <= j; ++k)
            bands_[kd_ - k + j * ldab] = -kin * st[k] * ih2;
    }
}

namespace {

template <typename T>
std::vector<T> band_apply(const std::vector<double>& bands, std::size_t kd, std::size_t n,
                          const std::vector<T>& f) {
    if (f.size() != n) throw std::invalid_argument("WittenOperator::apply: size mismatch");
    const std::size_t ldab = kd + 1;
    std::vector<T> out(n, T{});
    for (std::size_t j = 0; j < n; ++j) {
        out[j] += bands[kd + j * ldab] * f[j];
        for (std::size_t k = 1; k <= kd && k <= j; ++k) {
            const double a = bands[kd - k + j * ldab];  // H(j-k, j)
            out[j - k] += a * f[j];
            out[j] += a * f[j - k];
        }
    }
    return out;
}

} // namespace

std::vector<double> WittenOperator::apply(const std::vector<double>& f) const {
    return band_apply(bands_, kd_, grid_.size(), f);
}

std::vector<cxd> WittenOperator::apply(const std::vector<cxd>& f) const {
    return band_apply(bands_, kd_, grid_.size(), f);
}

WittenOperator build_partner(const PotentialSpec& spec, const PhysicalConstants& consts,
                             const Grid& grid, PartnerSign sign, int stencil_order) {
    return WittenOperator(spec, consts, grid, sign, stencil_order);
}

namespace {

template <typename T>
std::vector<cxd> apply_a_impl(const std::vector<T>& f, const PotentialSpec& spec,
                              const PhysicalConstants& consts, const Grid& grid, double w_sign) {
    if (f.size() != grid.size()) throw std::invalid_argument("apply_A: size mismatch");
    auto fp = derivative(f, grid.spacing());
    const double hc = consts.hbar * consts.c;
    std::vector<cxd> out(f.size());
    const cxd minus_i(0.0, -1.0);
    for (std::size_t i = 0; i < f.size(); ++i)
        out[i] = minus_i * (hc * fp[i] + w_sign * spec.W(grid.x(i)) * f[i]);
    return out;
}

} // namespace

std::vector<cxd> apply_A(const std::vector<double>& f, const PotentialSpec& spec,
                         const PhysicalConstants& consts, const Grid& grid) {
    return apply_a_impl(f, spec, consts, grid, +1.0);
}
std::vector<cxd> apply_A(const std::vector<cxd>& f, const PotentialSpec& spec,
                         const PhysicalConstants& consts, const Grid& grid) {
    return apply_a_impl(f, spec, consts, grid, +1.0);
}
std::vector<cxd> apply_A_dagger(const std::vector<double>& f, const PotentialSpec& spec,
                                const PhysicalConstants& consts, const Grid& grid) {
    return apply_a_impl(f, spec, consts, grid, -1.0);
}
std::vector<cxd> apply_A_dagger(const std::vector<cxd>& f, const PotentialSpec& spec,
                                const PhysicalConstants& consts, const Grid& grid) {
    return apply_a_impl(f, spec, consts, grid, -1.0);
}

namespace {

void fix_sign(std::vector<double>& phi) {
    // First component reaching a tenth of the peak magnitude decides.
    double peak = 0.0;
    for (double v : phi) peak = std::max(peak, std::fabs(v));
    for (double v : phi) {
        if (std::fabs(v) >= 0.1 * peak) {
            if (v < 0.0)
                for (double& w : phi) w = -w;
            return;
        }
    }
}

} // namespace

namespace {

// Lowest-k eigenvalues: band reduction to tridiagonal form without
// accumulating the transform (the full Q would cost O(n^3)), then bisection.
std::vector<double> band_eigenvalues(const WittenOperator& op, std::size_t k) {
    const int n = static_cast<int>(op.grid().size());
    const int kd = static_cast<int>(op.bandwidth());
    const int ldab = kd + 1;
    std::vector<double> ab = op.band_storage();  // dsbtrd overwrites
    std::vector<double> d(n), e(std::max(1, n - 1)), work(2 * n);
    double q_dummy = 0.0;
    const int ldq = 1;
    int info = 0;
    dsbtrd_("N", "U", &n, &kd, ab.data(), &ldab, d.data(), e.data(), &q_dummy, &ldq, work.data(),
            &info);
    if (info != 0) throw std::runtime_error("solve_spectrum: dsbtrd failed");

    const double abstol = 2.0 * dlamch_("S");
    const int il = 1, iu = static_cast<int>(k);
    const double vl = 0.0, vu = 0.0;
    int m = 0, nsplit = 0;
    std::vector<double> w(n), work2(4 * n);
    std::vector<int> iblock(n), isplit(n), iwork(3 * n);
    dstebz_("I", "E", &n, &vl, &vu, &il, &iu, &abstol, d.data(), e.data(), &m, &nsplit, w.data(),
            iblock.data(), isplit.data(), work2.data(), iwork.data(), &info);
    if (info != 0 || m != static_cast<int>(k))
        throw std::runtime_error("solve_spectrum: dstebz failed (info=" + std::to_string(info) +
                                 ")");
    w.resize(k);
    return w;
}

// Eigenvector by inverse iteration on the banded matrix, shifted to the
// bisection eigenvalue. Near-degenerate vectors are orthogonalized against
// the previously accepted ones.
std::vector<double> band_inverse_iteration(const WittenOperator& op, double eigenvalue,
                                           const std::vector<std::vector<double>>& accepted,
                                           const std::vector<double>& eigenvalues,
                                           std::size_t index) {
    const int n = static_cast<int>(op.grid().size());
    const int kd = static_cast<int>(op.bandwidth());
    const int ldab_sym = kd + 1;
    const int ldab = 3 * kd + 1;
    const std::vector<double>& bands = op.band_storage();

    std::vector<double> ab;
    std::vector<int> ipiv(n);
    double shift = eigenvalue;
    const double scale = std::max(1.0, std::fabs(eigenvalue));
    int info = 0;
    for (int attempt = 0; attempt < 4; ++attempt) {
        ab.assign(static_cast<std::size_t>(ldab) * n, 0.0);
        auto at = [&](int i, int j) -> double& {
            return ab[2 * kd + i - j + static_cast<std::size_t>(j) * ldab];
        };
        for (int j = 0; j < n; ++j) {
            for (int kk = 0; kk <= kd && kk <= j; ++kk) {
                const double a = bands[kd - kk + j * ldab_sym];
                at(j - kk, j) = a;
                if (kk > 0) at(j, j - kk) = a;
            }
            at(j, j) -= shift;
        }
        dgbtrf_(&n, &n, &kd, &kd, ab.data(), &ldab, ipiv.data(), &info);
        if (info == 0) break;
        shift = eigenvalue + (attempt + 1) * 1e-13 * scale;  // nudge off an exact pivot
    }
    if (info != 0) throw std::runtime_error("solve_spectrum: inverse-iteration factorization failed");

    // Deterministic start vector.
    std::vector<double> x(n);
    std::uint64_t state = 0x9e3779b97f4a7c15ull + index;
    for (int i = 0; i < n; ++i) {
        state = state * 6364136223846793005ull + 1442695040888963407ull;
        x[i] = 0.5 + static_cast<double>(state >> 11) / 9.007199254740992e15;
    }

    const int one = 1;
    auto orthogonalize = [&] {
        for (std::size_t j = 0; j < accepted.size(); ++j) {
            if (std::fabs(eigenvalues[j] - eigenvalue) > 1e-3 * scale) continue;
            double dot = 0.0;
            for (int i = 0; i < n; ++i) dot += accepted[j][i] * x[i];
            for (int i = 0; i < n; ++i) x[i] -= dot * accepted[j][i];
        }
    };
    for (int iter = 0; iter < 8; ++iter) {
        dgbtrs_("N", &n, &kd, &kd, &one, ab.data(), &ldab, ipiv.data(), x.data(), &n, &info);
        if (info != 0) throw std::runtime_error("solve_spectrum: inverse-iteration solve failed");
        orthogonalize();
        double nrm = 0.0;
        for (double v : x) nrm += v * v;
        nrm = std::sqrt(nrm);
        for (double& v : x) v /= nrm;
        if (iter >= 2) {
            // residual check against the banded operator
            auto hx = band_apply(bands, static_cast<std::size_t>(kd), static_cast<std::size_t>(n), x);
            double res = 0.0;
            for (int i = 0; i < n; ++i) {
                const double r = hx[i] - eigenvalue * x[i];
                res += r * r;
            }
            if (std::sqrt(res) <= 1e-10 * std::max(1.0, std::fabs(eigenvalue))) break;
        }
    }
    return x;
}

} // namespace

Spectrum solve_spectrum(const WittenOperator& op, std::size_t k, const SpectrumOptions& options) {
    if (k < 1) throw std::invalid_argument("solve_spectrum: k must be >= 1");
    if (k > op.grid().size()) throw std::invalid_argument("solve_spectrum: k exceeds grid size");

    const std::vector<double> w = band_eigenvalues(op, k);

    Spectrum out;
    out.continuum_threshold = op.continuum_threshold();
    const double h = op.grid().spacing();
    std::vector<std::vector<double>> accepted;
    for (std::size_t j = 0; j < k; ++j) {
        std::vector<double> phi = band_inverse_iteration(op, w[j], accepted, w, j);
        accepted.push_back(phi);
        // unit 2-norm vectors; rescale to the grid measure
        for (double& v : phi) v /= std::sqrt(h);
        fix_sign(phi);
        if (options.check_edges) {
            double peak = 0.0;
            for (double v : phi) peak = std::max(peak, std::fabs(v));
            const double edge = std::max(std::fabs(phi.front()), std::fabs(phi.back()));
            if (edge > options.edge_tol * peak)
                throw BoxTooSmall("solve_spectrum: eigenfunction " + std::to_string(j) +
                                  " does not decay at the grid edges (|phi_edge|/|phi|_max = " +
                                  std::to_string(edge / peak) + ")");
        }
        out.above_continuum.push_back(w[j] > out.continuum_threshold);
        out.eps.push_back(w[j]);
        out.phi.push_back(std::move(phi));
    }
    return out;
}

std::vector<double> cumulative_integral(const std::vector<double>& f, double h) {
    const std::size_t n = f.size();
    if (n < 4) throw std::invalid_argument("cumulative_integral: need at least 4 samples");
    std::vector<double> out(n, 0.0);
    // 4th-order rules: cubic through the four nearest samples per interval.
    out[1] = out[0] + h / 24.0 * (9.0 * f[0] + 19.0 * f[1] - 5.0 * f[2] + f[3]);
    for (std::size_t i = 1; i + 2 < n; ++i)
        out[i + 1] = out[i] + h / 24.0 * (-f[i - 1] + 13.0 * f[i] + 13.0 * f[i + 1] - f[i + 2]);
    out[n - 1] = out[n - 2] +
                 h / 24.0 * (9.0 * f[n - 1] + 19.0 * f[n - 2] - 5.0 * f[n - 3] + f[n - 4]);
    return out;
}

namespace {

// Tail sign of samples over a window: +1/-1 when all significant values
// agree, 0 otherwise.
int window_sign(const std::vector<double>& v, std::size_t begin, std::size_t end, double noise) {
    int s = 0;
    for (std::size_t i = begin; i < end; ++i) {
        if (std::fabs(v[i]) <= noise) continue;
        const int si = v[i] > 0.0 ? 1 : -1;
        if (s == 0) s = si;
        else if (s != si) return 0;
    }
    return s;
}

} // namespace

ClassifyResult classify_susy(const PotentialSpec& spec, const PhysicalConstants& consts,
                             const Grid& grid) {
    const std::size_t n = grid.size();
    const double h = grid.spacing();
    std::vector<double> phi(n), phip(n);
    const double inv_wscale = 1.0 / consts.w_scale();
    double phi_max = 0.0, phip_max = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        phi[i] = spec.W(grid.x(i)) * inv_wscale;
        phip[i] = spec.Wprime(grid.x(i)) * inv_wscale;
        phi_max = std::max(phi_max, std::fabs(phi[i]));
        phip_max = std::max(phip_max, std::fabs(phip[i]));
    }

    ClassifyResult out;
    const double span = grid.x_max() - grid.x_min();
    out.trivial = phip_max * span <= 1e-10 * std::max(1.0, phi_max);

    // Decay exponents of exp(-/+ int Phi sqrt(2m)/hbar) relative to their
    // grid minimum; the candidate is normalizable when both edges sit well
    // above the minimum.
    std::vector<double> integrand(n);
    const double scale = std::sqrt(2.0 * consts.m) / consts.hbar;
    for (std::size_t i = 0; i < n; ++i) integrand[i] = scale * phi[i];
    const std::vector<double> I = cumulative_integral(integrand, h);
    const double i_min = *std::min_element(I.begin(), I.end());
    const double i_max = *std::max_element(I.begin(), I.end());
    out.margin_minus = std::min(I.front(), I.back()) - i_min;
    out.margin_plus = i_max - std::max(I.front(), I.back());

    // Suppression of the squared density by at least 1e-8 at the edges.
    const double threshold = 0.5 * std::log(1e8);

    if (out.trivial && phi_max <= 1e-12) {
        out.susy = SusyClass::broken;  // free case: no normalizable zero mode
        return out;
    }
    if (out.margin_minus >= threshold) {
        out.susy = SusyClass::unbroken_minus;
        return out;
    }
    if (out.margin_plus >= threshold) {
        out.susy = SusyClass::unbroken_plus_after_flip;
        return out;
    }

    const std::size_t tail = std::max<std::size_t>(5, n / 20);
    const double noise = 1e-10 * std::max(1.0, phi_max);
    const int s_left = window_sign(phi, 0, tail, noise);
    const int s_right = window_sign(phi, n - tail, n, noise);
    if (s_left != 0 && s_left == s_right) {
        out.susy = SusyClass::broken;
        return out;
    }
    throw Indeterminate(
        "classify_susy: grid tails too short to establish the sign behavior of Phi "
        "(decay margins " +
        std::to_string(out.margin_minus) + ", " + std::to_string(out.margin_plus) + ")");
}

std::vector<double> ground_state_unbroken(const PotentialSpec& spec,
                                          const PhysicalConstants& consts, const Grid& grid) {
    const std::size_t n = grid.size();
    const double h = grid.spacing();
    std::vector<double> w(n);
    for (std::size_t i = 0; i < n; ++i) w[i] = spec.W(grid.x(i)) / (consts.hbar * consts.c);
    const std::vector<double> I = cumulative_integral(w, h);
    const double i_min = *std::min_element(I.begin(), I.end());
    std::vector<double> phi(n);
    for (std::size_t i = 0; i < n; ++i) phi[i] = std::exp(-(I[i] - i_min));
    const double edge = std::max(phi.front(), phi.back());
    double peak = 0.0;
    for (double v : phi) peak = std::max(peak, v);
    if (edge > 1e-6 * peak)
        throw NotNormalizable(
            "ground_state_unbroken: exp(-int W/hbar c) does not decay inside the box "
            "(edge/peak = " +
            std::to_string(edge / peak) + ")");
    normalize(phi, h);
    return phi;
}

PairedSpectrum solve_pair_spectrum(const PotentialSpec& spec, const PhysicalConstants& consts,
                                   const Grid& grid, std::size_t k, int stencil_order,
                                   const SpectrumOptions& options) {
    PairedSpectrum out;
    const ClassifyResult cls = classify_susy(spec, consts, grid);
    out.susy = cls.susy;
    out.trivial = cls.trivial;
    out.flipped = (cls.susy == SusyClass::unbroken_plus_after_flip);
    const PotentialSpec working = out.flipped ? spec.flipped() : spec;
    const bool unbroken = (cls.susy != SusyClass::broken);

    const auto minus = solve_spectrum(build_partner(working, consts, grid, PartnerSign::minus,
                                                    stencil_order),
                                      k, options);
    const std::size_t plus_count = unbroken ? (k > 0 ? k - 1 : 0) : k;
    Spectrum plus;
    if (plus_count > 0)
        plus = solve_spectrum(build_partner(working, consts, grid, PartnerSign::plus,
                                            stencil_order),
                              plus_count, options);
    out.continuum_threshold = minus.continuum_threshold;

    const double h = grid.spacing();
    const double hc = consts.hbar * consts.c;
    auto susy_image = [&](const std::vector<double>& phi_minus) {
        // (hbar c d/dx + W) phi_minus, the real image of A up to the -i.
        auto d = derivative(phi_minus, h);
        std::vector<double> g(phi_minus.size());
        for (std::size_t i = 0; i < g.size(); ++i)
            g[i] = hc * d[i] + working.W(grid.x(i)) * phi_minus[i];
        return g;
    };

    for (std::size_t j = 0; j < k; ++j) {
        EigenPair pair;
        if (unbroken) {
            pair.n = static_cast<int>(j);
            pair.eps = (j == 0) ? std::max(0.0, minus.eps[0]) : minus.eps[j];
            pair.phi_minus = minus.phi[j];
            if (j > 0) {
                pair.phi_plus = plus.phi[j - 1];
                pair.pair_mismatch = std::fabs(minus.eps[j] - plus.eps[j - 1]);
            }
        } else {
            pair.n = static_cast<int>(j) + 1;
            pair.eps = minus.eps[j];
            pair.phi_minus = minus.phi[j];
            pair.phi_plus = plus.phi[j];
            pair.pair_mismatch = std::fabs(minus.eps[j] - plus.eps[j]);
        }
        if (pair.has_plus()) {
            const auto g = susy_image(pair.phi_minus);
            if (inner(g, pair.phi_plus, h) < 0.0)
                for (double& v : pair.phi_plus) v = -v;
        }
        out.levels.push_back(std::move(pair));
    }
    return out;
}

} // namespace susydirac
