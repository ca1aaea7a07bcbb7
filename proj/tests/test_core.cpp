#include <doctest.h>

#include <cmath>
#include <random>

#include "susydirac/errors.hpp"
#include "susydirac/grid.hpp"
#include "susydirac/gridfn.hpp"
#include "susydirac/potential.hpp"

using namespace susydirac;

TEST_SUITE_BEGIN("core");

TEST_CASE("grid derivative is 6th order with one-sided edges") {
    Grid grid(-3.0, 3.0, 601);
    auto f = grid.sample([](double x) { return std::sin(2.0 * x); });
    auto d = derivative(f, grid.spacing());
    double err = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i)
        err = std::max(err, std::fabs(d[i] - 2.0 * std::cos(2.0 * grid.x(i))));
    CHECK(err <= 1e-9);  // includes the biased edge stencils

    CHECK_THROWS_AS(derivative(std::vector<double>(5, 1.0), 0.1), GridTooCoarse);
}

TEST_CASE("physical constants validate positivity") {
    CHECK_NOTHROW(PhysicalConstants(1.0, 1.0, 1.0));
    CHECK_THROWS_AS(PhysicalConstants(-1.0, 1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(PhysicalConstants(1.0, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(PhysicalConstants(1.0, 1.0, -2.0), std::invalid_argument);
}

TEST_CASE("grid basics and invariants") {
    Grid g(-12.0, 12.0, 4001);
    CHECK(g.spacing() == doctest::Approx(24.0 / 4000.0).epsilon(1e-15));
    CHECK(g.x(0) == -12.0);
    CHECK(g.x(4000) == doctest::Approx(12.0).epsilon(1e-15));
    CHECK(g.index_of(0.0) == 2000);
    CHECK_THROWS_AS(Grid(3.0, -3.0, 100), std::invalid_argument);
    CHECK_THROWS_AS(Grid(-1.0, 1.0, 8), std::invalid_argument);
}

TEST_CASE("rescaling W to the SUSY potential") {
    const PhysicalConstants natural;

    SUBCASE("oscillator: W = m c omega x gives Phi = x / sqrt(2)") {
        auto spec = PotentialSpec::oscillator(natural, 1.0);
        auto phi = rescale_pseudoscalar(spec, natural);
        for (double x : {-3.0, -0.5, 0.0, 1.0, 2.5})
            CHECK(phi(x) == doctest::Approx(x / std::sqrt(2.0)).epsilon(1e-14));
    }

    SUBCASE("zero potential stays zero") {
        auto spec = PotentialSpec::custom([](double) { return 0.0; }, [](double) { return 0.0; });
        auto phi = rescale_pseudoscalar(spec, natural);
        for (double x : {-2.0, 0.0, 7.0}) CHECK(phi(x) == 0.0);
    }

    SUBCASE("W = sqrt(2) x gives Phi = x, checked pointwise") {
        auto spec = PotentialSpec::custom([](double x) { return std::sqrt(2.0) * x; },
                                          [](double) { return std::sqrt(2.0); });
        auto phi = rescale_pseudoscalar(spec, natural);
        for (double x : {-2.0, -1.0, 0.0, 0.5, 3.0})
            CHECK(phi(x) == doctest::Approx(x).epsilon(1e-14));
    }

    SUBCASE("property: sqrt(2 m c^2) Phi reproduces W on the grid") {
        std::mt19937 rng(20240817);
        std::uniform_real_distribution<double> par(0.3, 2.7);
        for (int trial = 0; trial < 8; ++trial) {
            PhysicalConstants consts(par(rng), par(rng), par(rng));
            auto spec = PotentialSpec::oscillator(consts, par(rng));
            auto phi = rescale_pseudoscalar(spec, consts);
            Grid grid(-5.0, 5.0, 257);
            const double ws = consts.w_scale();
            for (std::size_t i = 0; i < grid.size(); ++i) {
                const double x = grid.x(i);
                const double w = spec.W(x);
                CHECK(std::fabs(ws * phi(x) - w) <= 1e-12 * std::max(1.0, std::fabs(w)));
            }
        }
    }
}

TEST_CASE("scalar potential reduces to a pseudo-scalar configuration") {
    const PhysicalConstants natural;
    Grid grid(-6.0, 6.0, 513);

    SUBCASE("S = 0 gives the constant W' = m c^2 (trivial partner Hamiltonians)") {
        auto spec = PotentialSpec::custom([](double) { return 0.0; }, [](double) { return 0.0; });
        auto red = scalar_to_pseudoscalar(spec, natural, grid);
        CHECK_FALSE(red.degenerate_zero_w);
        for (double x : {-4.0, 0.0, 4.0}) CHECK(red.spec.W(x) == doctest::Approx(1.0));
    }

    SUBCASE("S = lambda x gives W' = m c^2 + lambda x") {
        const double lambda = 0.7;
        auto spec = PotentialSpec::custom([](double) { return 0.0; }, [](double) { return 0.0; });
        spec.with_scalar([lambda](double x) { return lambda * x; },
                         [lambda](double) { return lambda; });
        auto red = scalar_to_pseudoscalar(spec, natural, grid);
        for (double x : {-3.0, -1.0, 0.0, 2.0})
            CHECK(red.spec.W(x) == doctest::Approx(1.0 + lambda * x).epsilon(1e-12));
        CHECK(red.spec.Wprime(1.0) == doctest::Approx(lambda).epsilon(1e-12));
    }

    SUBCASE("S = -m c^2 collapses W' to zero and is flagged") {
        auto spec = PotentialSpec::custom([](double) { return 0.0; }, [](double) { return 0.0; });
        spec.with_scalar([](double) { return -1.0; }, [](double) { return 0.0; });
        auto red = scalar_to_pseudoscalar(spec, natural, grid);
        CHECK(red.degenerate_zero_w);
        CHECK(red.spec.W(0.3) == doctest::Approx(0.0));
    }

    SUBCASE("varying V is rejected") {
        auto spec = PotentialSpec::custom([](double) { return 0.0; }, [](double) { return 0.0; });
        spec.with_electrostatic([](double x) { return x; });
        CHECK_THROWS_AS(scalar_to_pseudoscalar(spec, natural, grid), NonConstantV);
    }

    SUBCASE("splined reduction matches the closure when no derivative is attached") {
        auto spec = PotentialSpec::custom([](double) { return 0.0; }, [](double) { return 0.0; });
        spec.with_scalar([](double x) { return std::sin(x); });
        auto red = scalar_to_pseudoscalar(spec, natural, grid);
        for (double x : {-2.0, 0.3, 1.9}) {
            CHECK(red.spec.W(x) == doctest::Approx(1.0 + std::sin(x)).epsilon(1e-8));
            CHECK(red.spec.Wprime(x) == doctest::Approx(std::cos(x)).epsilon(1e-6));
        }
    }
}

TEST_CASE("tabulated potentials spline smoothly") {
    const PhysicalConstants natural;
    std::vector<double> xs, ws;
    for (int i = 0; i <= 200; ++i) {
        const double x = -5.0 + 0.05 * i;
        xs.push_back(x);
        ws.push_back(x);  // tabulated oscillator-like W = x
    }
    auto spec = PotentialSpec::tabulated(xs, ws);
    CHECK(spec.W(0.123) == doctest::Approx(0.123).epsilon(1e-10));
    CHECK(spec.Wprime(-1.7) == doctest::Approx(1.0).epsilon(1e-8));
    CHECK_THROWS_AS(spec.W(9.0), std::out_of_range);

    std::vector<double> bad_x = {0.0, 1.0, 1.0, 2.0};
    std::vector<double> bad_w = {0.0, 1.0, 2.0, 3.0};
    CHECK_THROWS_AS(PotentialSpec::tabulated(bad_x, bad_w), std::invalid_argument);
}

TEST_CASE("default grid scales with the potential's natural length") {
    const PhysicalConstants natural;
    auto osc = PotentialSpec::oscillator(natural, 1.0);
    Grid g = make_default_grid(osc, natural);
    CHECK(g.size() == 4001);
    CHECK(g.x_min() == doctest::Approx(-12.0));
    CHECK(g.x_max() == doctest::Approx(12.0));

    auto osc_stiff = PotentialSpec::oscillator(natural, 4.0);
    Grid g2 = make_default_grid(osc_stiff, natural);
    CHECK(g2.x_max() == doctest::Approx(6.0));  // length scale 1/2
}

TEST_SUITE_END();
