#include "susydirac/quasiclassical.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "susydirac/errors.hpp"

namespace susydirac {

namespace {

constexpr double kPi = 3.14159265358979323846;

double bisect_crossing(const std::function<double(double)>& g, double a, double b) {
    // g(a) and g(b) bracket a sign change; bisection to 1e-12 in position.
    double fa = g(a);
    for (int it = 0; it < 200 && b - a > 1e-12; ++it) {
        const double mid = 0.5 * (a + b);
        const double fm = g(mid);
        if ((fa <= 0.0) == (fm <= 0.0)) {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    return 0.5 * (a + b);
}

struct SqrtWell {
    // f(x) = classically inverted profile (Phi^2 or W^2), target = eps or
    // E^2 - m^2 c^4.
    std::function<double(double)> f;
    double target;
};

ActionIntegral sqrt_action(const SqrtWell& well, double x_left, double x_right, double quad_tol) {
    // Cosine substitution x = mid - half cos t absorbs the sqrt endpoints;
    // the midpoint rule in t then converges geometrically.
    ActionIntegral out;
    const double mid = 0.5 * (x_left + x_right);
    const double half = 0.5 * (x_right - x_left);
    if (half <= 0.0) {
        out.value = 0.0;
        out.error_estimate = 0.0;
        return out;
    }
    auto estimate = [&](int k) {
        double acc = 0.0;
        for (int j = 0; j < k; ++j) {
            const double t = kPi * (j + 0.5) / k;
            const double x = mid - half * std::cos(t);
            const double q = well.target - well.f(x);
            acc += std::sin(t) * std::sqrt(std::max(0.0, q));
        }
        return acc * half * kPi / k;
    };
    int k = 128;
    double prev = estimate(k);
    for (int pass = 0; pass < 10; ++pass) {
        k *= 2;
        const double cur = estimate(k);
        const double err = std::fabs(cur - prev);
        if (err <= quad_tol * std::max(1.0, std::fabs(cur))) {
            out.value = cur;
            out.error_estimate = err;
            out.nodes = k;
            return out;
        }
        prev = cur;
    }
    throw QuadratureFailure("action integral did not converge to tolerance " +
                            std::to_string(quad_tol));
}

} // namespace

std::pair<double, double> turning_points(const std::function<double(double)>& f, double value,
                                         double a, double b) {
    const int n_scan = 4096;
    const double h = (b - a) / n_scan;
    auto g = [&](double x) { return f(x) - value; };
    std::vector<std::pair<double, double>> brackets;
    double x_prev = a, g_prev = g(a);
    for (int i = 1; i <= n_scan; ++i) {
        const double x = a + i * h;
        const double gx = g(x);
        if ((g_prev <= 0.0) != (gx <= 0.0)) brackets.emplace_back(x_prev, x);
        x_prev = x;
        g_prev = gx;
    }
    if (brackets.size() != 2)
        throw NotConfining("turning_points: expected 2 crossings, found " +
                           std::to_string(brackets.size()));
    const double xl = bisect_crossing(g, brackets[0].first, brackets[0].second);
    const double xr = bisect_crossing(g, brackets[1].first, brackets[1].second);
    return {std::min(xl, xr), std::max(xl, xr)};
}

ActionIntegral action_integral(const PotentialSpec& spec, const PhysicalConstants& consts,
                               double eps, const Grid& grid) {
    const double inv_ws = 1.0 / consts.w_scale();
    auto phi2 = [&](double x) {
        const double p = spec.W(x) * inv_ws;
        return p * p;
    };
    if (eps <= 0.0) return {0.0, 0.0, 0};
    const auto [xl, xr] = turning_points(phi2, eps, grid.x_min(), grid.x_max());
    SqrtWell well{phi2, eps};
    ActionIntegral base = sqrt_action(well, xl, xr, 1e-9);
    base.value *= std::sqrt(2.0 * consts.m);
    base.error_estimate *= std::sqrt(2.0 * consts.m);
    return base;
}

namespace {

struct RootResult {
    double value;
    double x_left, x_right;
    double quad_error;
    int iterations;
};

// Solve action(v) = target for v by geometric bracket growth plus bisection
// with a secant refinement; the action is strictly increasing for confining
// profiles.
RootResult solve_monotone(const std::function<double(double)>& f_profile, double profile_min,
                          double scale_guess, double target, double a_min, double a_max,
                          double root_tol, double quad_tol, int max_iterations,
                          double mass_prefactor) {
    auto action_of = [&](double v, std::pair<double, double>* tp = nullptr,
                         double* qerr = nullptr) {
        const auto [xl, xr] = turning_points(f_profile, v, a_min, a_max);
        SqrtWell well{f_profile, v};
        const ActionIntegral ai = sqrt_action(well, xl, xr, quad_tol);
        if (tp) *tp = {xl, xr};
        if (qerr) *qerr = ai.error_estimate * mass_prefactor;
        return ai.value * mass_prefactor;
    };

    int iterations = 0;
    double lo = profile_min + std::max(1e-14, 1e-12 * std::max(1.0, std::fabs(profile_min)));
    double hi = std::max(profile_min + scale_guess, lo * 2.0 + 1e-12);
    double act_hi = 0.0;
    bool bracketed = false;
    double prev_act = -1.0;
    for (int g = 0; g < 70; ++g) {
        ++iterations;
        act_hi = action_of(hi);
        if (act_hi < prev_act - 1e-9 * std::max(1.0, prev_act))
            throw QuadratureFailure("quantization: action not increasing in the level value");
        prev_act = act_hi;
        if (act_hi >= target) {
            bracketed = true;
            break;
        }
        lo = hi;
        hi *= 2.0;
    }
    if (!bracketed)
        throw RootNotBracketed("quantization: action never reached the target " +
                               std::to_string(target));

    // Bisection with occasional secant steps.
    double act_lo = (lo <= profile_min * (1.0 + 1e-12) + 1e-13) ? 0.0 : action_of(lo);
    for (int it = 0; it < max_iterations; ++it) {
        ++iterations;
        double mid;
        if (act_hi > act_lo) {
            const double t = (target - act_lo) / (act_hi - act_lo);
            mid = lo + std::clamp(t, 0.12, 0.88) * (hi - lo);
        } else {
            mid = 0.5 * (lo + hi);
        }
        const double am = action_of(mid);
        if (am >= target) {
            hi = mid;
            act_hi = am;
        } else {
            lo = mid;
            act_lo = am;
        }
        if (hi - lo <= root_tol * std::max(1.0, std::fabs(hi))) break;
    }
    RootResult out;
    out.value = 0.5 * (lo + hi);
    std::pair<double, double> tp;
    double qerr = 0.0;
    (void)action_of(out.value, &tp, &qerr);
    out.x_left = tp.first;
    out.x_right = tp.second;
    out.quad_error = qerr;
    out.iterations = iterations;
    return out;
}

enum class Regime { unbroken, broken };

void require_regime(const PotentialSpec& spec, const PhysicalConstants& consts, const Grid& grid,
                    Regime want, bool override_regime) {
    if (override_regime) return;
    const ClassifyResult cls = classify_susy(spec, consts, grid);
    const bool unbroken = cls.susy != SusyClass::broken;
    if ((want == Regime::unbroken) != unbroken)
        throw RegimeMismatch(std::string("quantization: formula requires ") +
                             (want == Regime::unbroken ? "unbroken" : "broken") +
                             " SUSY for this potential");
}

QuantizationResult qc_nonrel(const PotentialSpec& spec, const PhysicalConstants& consts,
                             const Grid& grid, int n, QcFormula formula,
                             const QcOptions& options) {
    QuantizationResult out;
    out.n = n;
    out.formula = formula;
    out.frame = QcFrame::nonrelativistic;

    if (formula == QcFormula::cbc) {
        require_regime(spec, consts, grid, Regime::unbroken, options.override_regime);
        if (n < 0) throw RegimeMismatch("cbc_level: n must be >= 0");
    } else {
        require_regime(spec, consts, grid, Regime::broken, options.override_regime);
        if (n < 1) throw RegimeMismatch("eij_level: n must be >= 1");
    }

    const double inv_ws = 1.0 / consts.w_scale();
    auto phi2 = [spec, inv_ws](double x) {
        const double p = spec.W(x) * inv_ws;
        return p * p;
    };

    if (formula == QcFormula::cbc && n == 0) {
        // Exact: the unbroken ground level has zero action.
        double x_best = grid.x_min();
        double f_best = phi2(x_best);
        for (std::size_t i = 0; i < grid.size(); ++i)
            if (phi2(grid.x(i)) < f_best) {
                f_best = phi2(grid.x(i));
                x_best = grid.x(i);
            }
        out.value = 0.0;
        out.x_left = out.x_right = x_best;
        return out;
    }

    const double target =
        consts.hbar * kPi * (formula == QcFormula::cbc ? double(n) : double(n) - 0.5);
    double profile_min = phi2(grid.x(0));
    for (std::size_t i = 1; i < grid.size(); ++i) profile_min = std::min(profile_min, phi2(grid.x(i)));

    const RootResult r =
        solve_monotone(phi2, profile_min, std::max(1.0, profile_min), target, grid.x_min(),
                       grid.x_max(), options.root_tol, options.quad_tol, options.max_iterations,
                       std::sqrt(2.0 * consts.m));
    out.value = r.value;
    out.x_left = r.x_left;
    out.x_right = r.x_right;
    out.quadrature_error = r.quad_error;
    out.iterations = r.iterations;
    return out;
}

QuantizationResult qc_rel(const PotentialSpec& spec, const PhysicalConstants& consts,
                          const Grid& grid, int n, QcFormula formula, const QcOptions& options) {
    QuantizationResult out;
    out.n = n;
    out.formula = formula;
    out.frame = QcFrame::relativistic;
    const double mc2 = consts.rest_energy();

    if (formula == QcFormula::cbc) {
        require_regime(spec, consts, grid, Regime::unbroken, options.override_regime);
        if (n < 0) throw RegimeMismatch("relativistic_cbc_level: n must be >= 0");
    } else {
        require_regime(spec, consts, grid, Regime::broken, options.override_regime);
        if (n < 1) throw RegimeMismatch("relativistic_eij_level: n must be >= 1");
    }

    auto w2 = [spec](double x) {
        const double w = spec.W(x);
        return w * w;
    };

    if (formula == QcFormula::cbc && n == 0) {
        out.value = mc2 * mc2;
        out.E_plus = 0.0;  // the n = 0 level exists only on the minus branch
        out.E_minus = -mc2;
        double x_best = grid.x_min();
        double f_best = w2(x_best);
        for (std::size_t i = 0; i < grid.size(); ++i)
            if (w2(grid.x(i)) < f_best) {
                f_best = w2(grid.x(i));
                x_best = grid.x(i);
            }
        out.x_left = out.x_right = x_best;
        return out;
    }

    // Solve for Y = E^2 - m^2 c^4 with integrand sqrt(Y - W^2), then restore
    // E^2 = Y + m^2 c^4.
    const double target =
        consts.c * consts.hbar * kPi * (formula == QcFormula::cbc ? double(n) : double(n) - 0.5);
    double profile_min = w2(grid.x(0));
    for (std::size_t i = 1; i < grid.size(); ++i) profile_min = std::min(profile_min, w2(grid.x(i)));

    const RootResult r = solve_monotone(w2, profile_min, std::max(1.0, mc2 * mc2), target,
                                        grid.x_min(), grid.x_max(), options.root_tol,
                                        options.quad_tol, options.max_iterations, 1.0);
    out.value = r.value + mc2 * mc2;
    out.E_plus = std::sqrt(out.value);
    out.E_minus = -out.E_plus;
    out.x_left = r.x_left;
    out.x_right = r.x_right;
    out.quadrature_error = r.quad_error;
    out.iterations = r.iterations;
    return out;
}

} // namespace

QuantizationResult cbc_level(const PotentialSpec& spec, const PhysicalConstants& consts,
                             const Grid& grid, int n, const QcOptions& options) {
    return qc_nonrel(spec, consts, grid, n, QcFormula::cbc, options);
}

QuantizationResult eij_level(const PotentialSpec& spec, const PhysicalConstants& consts,
                             const Grid& grid, int n, const QcOptions& options) {
    return qc_nonrel(spec, consts, grid, n, QcFormula::eij, options);
}

QuantizationResult relativistic_cbc_level(const PotentialSpec& spec,
                                          const PhysicalConstants& consts, const Grid& grid,
                                          int n, const QcOptions& options) {
    return qc_rel(spec, consts, grid, n, QcFormula::cbc, options);
}

QuantizationResult relativistic_eij_level(const PotentialSpec& spec,
                                          const PhysicalConstants& consts, const Grid& grid,
                                          int n, const QcOptions& options) {
    return qc_rel(spec, consts, grid, n, QcFormula::eij, options);
}

} // namespace susydirac
