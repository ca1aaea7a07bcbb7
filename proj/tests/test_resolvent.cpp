#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "susydirac/dirac.hpp"
#include "susydirac/errors.hpp"
#include "susydirac/potential.hpp"
#include "susydirac/resolvent.hpp"
#include "susydirac/witten.hpp"

using namespace susydirac;

namespace {

const PhysicalConstants kNatural;

const std::vector<std::pair<double, double>> kSamplePairs = {
    {0.0, 0.0},   {0.5, -0.3}, {1.0, 1.0},  {-0.8, 0.4}, {1.5, 0.9},
    {-1.2, -0.6}, {0.3, 1.1},  {2.0, -1.0}, {0.9, 0.9},  {-0.4, -1.6},
    {1.8, 1.2},   {0.05, -0.35}};

double entry_distance(const KernelEntry& a, const KernelEntry& b) {
    double d = 0.0;
    for (int k = 0; k < 4; ++k) d = std::max(d, std::abs(a.g[k] - b.g[k]));
    return d;
}

} // namespace

TEST_SUITE_BEGIN("resolvent");

TEST_CASE("zeta map") {
    CHECK(zeta_map(cxd(1.0, 0.0), kNatural) == cxd(0.0, 0.0));
    CHECK(zeta_map(cxd(0.0, 0.0), kNatural) == cxd(-0.5, 0.0));
    CHECK(zeta_map(cxd(-1.0, 0.0), kNatural) == cxd(0.0, 0.0));
    // purely imaginary z gives real zeta
    auto p = make_spectral_parameter(cxd(0.0, 0.5), kNatural, 1.0);
    CHECK(p.epsilon_real);
    CHECK(p.epsilon == doctest::Approx(-0.625).epsilon(1e-14));
}

TEST_CASE("partner resolvent columns solve (H - zeta) G = delta/h") {
    auto spec = PotentialSpec::oscillator(kNatural, 1.0);
    Grid grid(-12.0, 12.0, 2001);
    auto hm = build_partner(spec, kNatural, grid, PartnerSign::minus, 6);
    const double h = grid.spacing();
    const cxd zeta(-0.37, 0.0);

    auto cols = partner_resolvent_grid(hm, zeta, {grid.index_of(0.2)});
    const auto& col = cols.columns[0];
    auto img = hm.apply(col);
    double err = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        cxd r = img[i] - zeta * col[i];
        if (i == grid.index_of(0.2)) r -= 1.0 / h;
        err = std::max(err, std::abs(r));
    }
    CHECK(err <= 1e-6);
}

TEST_CASE("partner resolvent tends to -1/zeta at coincident points for deep negative zeta") {
    auto spec = PotentialSpec::oscillator(kNatural, 1.0);
    Grid grid(-12.0, 12.0, 2001);
    auto hm = build_partner(spec, kNatural, grid, PartnerSign::minus, 6);
    const double h = grid.spacing();
    const cxd zeta(-1e9, 0.0);
    const std::size_t src = grid.index_of(0.5);
    auto cols = partner_resolvent_grid(hm, zeta, {src});
    // G(x, x) ~ -delta(0)/zeta = -1/(zeta h) on the grid
    const cxd got = cols.columns[0][src];
    CHECK(std::abs(got * (-zeta) * h - 1.0) <= 1e-4);
}

TEST_CASE("partner resolvent near a pole is refused") {
    auto spec = PotentialSpec::oscillator(kNatural, 1.0);
    Grid grid(-12.0, 12.0, 2001);
    auto hm = build_partner(spec, kNatural, grid, PartnerSign::minus, 6);
    CHECK_THROWS_AS(partner_resolvent_grid(hm, cxd(1.0, 0.0) + 1e-9, {1000}), NearPole);
}

TEST_CASE("oscillator G_- matches the tail-completed spectral sum inside the gap") {
    auto spec = PotentialSpec::oscillator(kNatural, 1.0);
    Grid grid(-12.0, 12.0, 2001);
    // grid route
    const cxd z(std::sqrt(2.0 * 0.4 + 1.0), 0.0);  // zeta = 0.4 in (0,1)
    auto grid_kernel = dirac_resolvent(z, spec, kNatural, grid, ResolventMethod::grid_inverse,
                                       kSamplePairs);
    auto spectral = dirac_resolvent(z, spec, kNatural, grid, ResolventMethod::spectral_truncated,
                                    kSamplePairs);
    for (std::size_t i = 0; i < kSamplePairs.size(); ++i) {
        // compare the (2,2) block = (z - mc^2) G_-(zeta) / 2 mc^2
        CHECK(std::abs(grid_kernel.entries[i].g[3] - spectral.entries[i].g[3]) <= 1e-6);
    }
}

TEST_CASE("three-method agreement for the dirac oscillator") {
    auto spec = PotentialSpec::oscillator(kNatural, 1.0);
    Grid grid(-12.0, 12.0, 4001);
    for (cxd z : {cxd(0.0, 0.0), cxd(0.0, 0.5), cxd(1.2, 0.0)}) {
        auto g1 = dirac_resolvent(z, spec, kNatural, grid, ResolventMethod::grid_inverse,
                                  kSamplePairs);
        auto g2 = dirac_resolvent(z, spec, kNatural, grid, ResolventMethod::spectral_truncated,
                                  kSamplePairs);
        auto g3 = dirac_resolvent(z, spec, kNatural, grid,
                                  ResolventMethod::closed_form_oscillator, kSamplePairs);
        for (std::size_t i = 0; i < kSamplePairs.size(); ++i) {
            CHECK(entry_distance(g1.entries[i], g2.entries[i]) <= 1e-5);
            CHECK(entry_distance(g1.entries[i], g3.entries[i]) <= 1e-5);
            CHECK(entry_distance(g2.entries[i], g3.entries[i]) <= 1e-5);
        }
    }
}

TEST_CASE("grid resolvent satisfies the operator identity away from the source") {
    auto spec = PotentialSpec::oscillator(kNatural, 1.0);
    Grid grid(-12.0, 12.0, 4001);
    const double h = grid.spacing();
    const double mc2 = 1.0;
    for (cxd z : {cxd(0.0, 0.0), cxd(0.0, 0.5), cxd(1.2, 0.0)}) {
        for (double x1 : {0.0, 0.7, -1.1}) {
            std::vector<std::pair<double, double>> pts;
            for (std::size_t i = 0; i < grid.size(); ++i) pts.emplace_back(grid.x(i), x1);
            auto k = dirac_resolvent(z, spec, kNatural, grid, ResolventMethod::grid_inverse, pts);
            // columns of the two spinor components
            std::vector<cxd> up(grid.size()), lo(grid.size());
            for (std::size_t i = 0; i < grid.size(); ++i) {
                up[i] = k.entries[i].g[0];  // G11(., x1)
                lo[i] = k.entries[i].g[2];  // G21(., x1)
            }
            auto a_lo = apply_A(lo, spec, kNatural, grid);
            auto adag_up = apply_A_dagger(up, spec, kNatural, grid);
            const std::size_t src = grid.index_of(x1);
            double err = 0.0;
            for (std::size_t i = 0; i < grid.size(); ++i) {
                if (std::llabs(static_cast<long long>(i) - static_cast<long long>(src)) <= 8)
                    continue;  // two stacked stencils straddle the kernel's derivative jump
                cxd r1 = mc2 * up[i] + a_lo[i] - z * up[i];
                cxd r2 = adag_up[i] - mc2 * lo[i] - z * lo[i];
                if (i == src) r1 -= 1.0 / h;
                err = std::max(err, std::max(std::abs(r1), std::abs(r2)));
            }
            CHECK(err <= 1e-5);
        }
    }
}

TEST_CASE("grid method reports its identity residual") {
    auto spec = PotentialSpec::oscillator(kNatural, 1.0);
    Grid grid(-12.0, 12.0, 2001);
    auto k = dirac_resolvent(cxd(0.0, 0.5), spec, kNatural, grid, ResolventMethod::grid_inverse,
                             kSamplePairs);
    CHECK(k.identity_residual > 0.0);
    CHECK(k.identity_residual <= 1e-5);
    auto ks = dirac_resolvent(cxd(0.0, 0.5), spec, kNatural, grid,
                              ResolventMethod::spectral_truncated, kSamplePairs);
    CHECK(ks.identity_residual == 0.0);  // diagnostic belongs to the grid route
}

TEST_CASE("diagonal entries are real for real z in a spectral gap") {
    auto spec = PotentialSpec::oscillator(kNatural, 1.0);
    Grid grid(-12.0, 12.0, 2001);
    auto k = dirac_resolvent(cxd(1.2, 0.0), spec, kNatural, grid, ResolventMethod::grid_inverse,
                             kSamplePairs);
    for (const auto& e : k.entries) {
        CHECK(std::fabs(e.g[0].imag()) <= 1e-8 * std::max(1.0, std::abs(e.g[0])));
        CHECK(std::fabs(e.g[3].imag()) <= 1e-8 * std::max(1.0, std::abs(e.g[3])));
    }
}

TEST_CASE("closed-form structure") {
    SUBCASE("swapping the arguments conjugates the adjoint entry (real z)") {
        auto a = oscillator_greens_closed_form(cxd(0.0, 0.0), 0.7, -0.2, kNatural, 1.0);
        auto b = oscillator_greens_closed_form(cxd(0.0, 0.0), -0.2, 0.7, kNatural, 1.0);
        // self-adjointness: G12(x2, x1) = conj(G21(x1, x2)); both entries are
        // purely imaginary at real z, so the sign flips under the swap
        CHECK(std::abs(a.at(1) - std::conj(b.at(2))) <=
              1e-12 * std::max(1.0, std::abs(a.at(1))));
        CHECK(std::abs(a.at(1) + b.at(2)) <= 1e-12 * std::max(1.0, std::abs(a.at(1))));
        // while the diagonal entries are symmetric
        CHECK(std::abs(a.at(0) - b.at(0)) <= 1e-12 * std::max(1.0, std::abs(a.at(0))));
        CHECK(std::abs(a.at(3) - b.at(3)) <= 1e-12 * std::max(1.0, std::abs(a.at(3))));
    }

    SUBCASE("pole guard near non-negative integer epsilon") {
        // z = mc^2 means epsilon = 0
        CHECK_THROWS_AS(oscillator_greens_closed_form(cxd(1.0, 1e-9), 0.3, 0.1, kNatural, 1.0),
                        MethodUnavailable);
        CHECK_THROWS_AS(oscillator_greens_closed_form(cxd(1.0, 0.0), 0.3, 0.1, kNatural, 1.0),
                        NearPole);
    }

    SUBCASE("closed form requires the oscillator family") {
        auto power = PotentialSpec::power(kNatural, 2.0, true, 1.0);
        Grid grid = make_default_grid(power, kNatural);
        CHECK_THROWS_AS(dirac_resolvent(cxd(0.0, 0.0), power, kNatural, grid,
                                        ResolventMethod::closed_form_oscillator, kSamplePairs),
                        MethodUnavailable);
    }
}

TEST_CASE("zero-mode pole dominates the (2,2) entry near z = -mc^2") {
    auto spec = PotentialSpec::oscillator(kNatural, 1.0);
    Grid grid(-12.0, 12.0, 4001);
    auto phi0 = ground_state_unbroken(spec, kNatural, grid);
    const std::vector<std::pair<double, double>> pts = {{0.0, 0.0}, {0.5, -0.3}, {0.8, 0.2}};
    for (double delta : {1e-2, 1e-3}) {
        const cxd z = cxd(-1.0 + delta, 0.0);
        auto k = dirac_resolvent(z, spec, kNatural, grid, ResolventMethod::spectral_truncated, pts);
        for (std::size_t i = 0; i < pts.size(); ++i) {
            const double expect =
                phi0[grid.index_of(pts[i].first)] * phi0[grid.index_of(pts[i].second)];
            // G22 ~ -phi0 phi0 / (z + mc^2): the residue of (H - z)^{-1}
            const cxd coeff = -(z + 1.0) * k.entries[i].g[3];
            CHECK(std::abs(coeff - expect) <= 2e-2 * std::max(1.0, std::fabs(expect)));
        }
    }
    // Richardson in delta pins the coefficient to 1e-4
    const auto k1 = dirac_resolvent(cxd(-1.0 + 1e-2, 0.0), spec, kNatural, grid,
                                    ResolventMethod::spectral_truncated, pts);
    const auto k2 = dirac_resolvent(cxd(-1.0 + 5e-3, 0.0), spec, kNatural, grid,
                                    ResolventMethod::spectral_truncated, pts);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const double expect =
            phi0[grid.index_of(pts[i].first)] * phi0[grid.index_of(pts[i].second)];
        const cxd c1 = -(cxd(-1.0 + 1e-2, 0.0) + 1.0) * k1.entries[i].g[3];
        const cxd c2 = -(cxd(-1.0 + 5e-3, 0.0) + 1.0) * k2.entries[i].g[3];
        const cxd extrap = 2.0 * c2 - c1;
        CHECK(std::abs(extrap - expect) <= 1e-4 * std::max(1.0, std::fabs(expect)));
    }
}

TEST_CASE("broken potential has no pole at -mc^2") {
    auto spec = PotentialSpec::power(kNatural, 2.0, false, 1.0);
    Grid grid = make_default_grid(spec, kNatural);
    const std::vector<std::pair<double, double>> pts = {{0.3, 0.1}};
    const cxd z(-1.0 + 1e-3, 0.0);
    auto k = dirac_resolvent(z, spec, kNatural, grid, ResolventMethod::spectral_truncated, pts);
    CHECK(std::abs((z + 1.0) * k.entries[0].g[3]) <= 1e-2);
}

TEST_CASE("spectral residues recover the eigenprojectors") {
    auto spec = PotentialSpec::oscillator(kNatural, 1.0);
    Grid grid(-12.0, 12.0, 4001);
    auto pairs = solve_pair_spectrum(spec, kNatural, grid, 3);
    auto spinors = dirac_eigenspinors(pairs, kNatural);
    // find psi_1^+
    const DiracEigenpair* psi1 = nullptr;
    for (const auto& s : spinors)
        if (s.n == 1 && s.branch == Branch::plus) psi1 = &s;
    REQUIRE(psi1 != nullptr);
    const double E1 = psi1->E;

    const std::vector<std::pair<double, double>> pts = {{0.0, 0.4}, {0.8, -0.5}, {1.1, 1.1}};
    auto res_at = [&](double delta) {
        auto k = dirac_resolvent(cxd(E1 + delta, 0.0), spec, kNatural, grid,
                                 ResolventMethod::spectral_truncated, pts);
        std::vector<std::array<cxd, 4>> r;
        for (auto& e : k.entries) {
            std::array<cxd, 4> m;
            for (int q = 0; q < 4; ++q) m[q] = (cxd(E1 + delta, 0.0) - E1) * e.g[q];
            r.push_back(m);
        }
        return r;
    };
    auto r1 = res_at(1e-2), r2 = res_at(5e-3);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const std::size_t i2 = grid.index_of(pts[i].first), i1 = grid.index_of(pts[i].second);
        // residue of (H-z)^{-1} at E1 is -|psi><psi|
        const std::array<cxd, 4> proj = {
            psi1->psi.upper[i2] * std::conj(psi1->psi.upper[i1]),
            psi1->psi.upper[i2] * std::conj(psi1->psi.lower[i1]),
            psi1->psi.lower[i2] * std::conj(psi1->psi.upper[i1]),
            psi1->psi.lower[i2] * std::conj(psi1->psi.lower[i1])};
        for (int q = 0; q < 4; ++q) {
            const cxd extrap = 2.0 * r2[i][q] - r1[i][q];
            CHECK(std::abs(extrap + proj[q]) <= 1e-4 * std::max(1.0, std::abs(proj[q])));
        }
    }
}

TEST_CASE("dirac resolvent refuses z on the spectrum") {
    auto spec = PotentialSpec::oscillator(kNatural, 1.0);
    Grid grid(-12.0, 12.0, 2001);
    CHECK_THROWS_AS(dirac_resolvent(cxd(-1.0, 0.0), spec, kNatural, grid,
                                    ResolventMethod::grid_inverse, kSamplePairs),
                    NearPole);
    CHECK_THROWS_AS(dirac_resolvent(cxd(std::sqrt(3.0), 0.0), spec, kNatural, grid,
                                    ResolventMethod::spectral_truncated, kSamplePairs),
                    NearPole);
}

TEST_CASE("grid and spectral methods accept generic complex z") {
    auto spec = PotentialSpec::oscillator(kNatural, 1.0);
    Grid grid(-12.0, 12.0, 2001);
    const cxd z(0.3, 0.4);
    auto g1 = dirac_resolvent(z, spec, kNatural, grid, ResolventMethod::grid_inverse, kSamplePairs);
    auto g2 =
        dirac_resolvent(z, spec, kNatural, grid, ResolventMethod::spectral_truncated, kSamplePairs);
    for (std::size_t i = 0; i < kSamplePairs.size(); ++i)
        CHECK(entry_distance(g1.entries[i], g2.entries[i]) <= 1e-5);
    CHECK(g2.truncation == 400);
    CHECK(g2.tail_estimate < 1e-5);
}

TEST_SUITE_END();
