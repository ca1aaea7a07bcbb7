#include "susydirac/special_functions.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "susydirac/errors.hpp"

namespace susydirac {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kSqrtPi = 1.7724538509055160273;
constexpr double kSqrt2 = 1.4142135623730950488;

bool is_nonneg_integer(double x, double tol = 1e-12) {
    return x >= -tol && std::fabs(x - std::round(x)) <= tol;
}

bool is_nonpos_integer(double x, double tol = 1e-12) {
    return x <= tol && std::fabs(x - std::round(x)) <= tol;
}

// Lanczos approximation, g = 7, 9 coefficients.
double gamma_positive(double x) {
    static const std::array<double, 9> c = {
        0.99999999999980993, 676.5203681218851, -1259.1392167224028,
        771.32342877765313, -176.61502916214059, 12.507343278686905,
        -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
    const double z = x - 1.0;
    double a = c[0];
    for (int i = 1; i < 9; ++i) a += c[i] / (z + i);
    const double t = z + 7.5;
    return kSqrtPi * kSqrt2 * std::pow(t, z + 0.5) * std::exp(-t) * a;
}

} // namespace

double sin_pi(double x) {
    // Reduce to |r| <= 0.5 around the nearest integer so integer arguments
    // give exact zeros.
    const double n = std::round(x);
    const double r = x - n;
    const double s = std::sin(kPi * r);
    return (static_cast<long long>(n) % 2 == 0) ? s : -s;
}

double gamma_function(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("gamma: non-finite argument");
    if (is_nonpos_integer(x))
        throw PoleAtNonPositiveInteger("gamma: pole at x = " + std::to_string(x));
    if (x < 0.5) {
        // Reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x).
        return kPi / (sin_pi(x) * gamma_positive(1.0 - x));
    }
    return gamma_positive(x);
}

double reciprocal_gamma(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("reciprocal_gamma: non-finite argument");
    if (is_nonpos_integer(x)) return 0.0;
    if (x < 0.5) return sin_pi(x) * gamma_positive(1.0 - x) / kPi;
    return 1.0 / gamma_positive(x);
}

namespace {

// Kummer's confluent hypergeometric M(a, b, x) by direct series. Terminates
// when a is a non-positive integer. Reports the largest partial term so
// callers can bound cancellation.
struct KummerResult {
    double value;
    double max_term;
};

KummerResult kummer_m(double a, double b, double x) {
    double term = 1.0, sum = 1.0, max_term = 1.0;
    for (int k = 0; k < 700; ++k) {
        term *= (a + k) * x / ((b + k) * (k + 1));
        sum += term;
        max_term = std::max(max_term, std::fabs(term));
        if (!std::isfinite(sum)) break;
        if (std::fabs(term) <= 1e-18 * std::fabs(sum) + 1e-300) return {sum, max_term};
    }
    throw ConvergenceFailure("kummer_m: series did not converge (a=" + std::to_string(a) +
                             ", b=" + std::to_string(b) + ", x=" + std::to_string(x) + ")");
}

// D_nu through the two Kummer series about y = 0. The reciprocal gamma
// prefactors vanish at the poles, which makes integer orders terminate.
// loss_out receives an estimate of the relative precision lost to
// cancellation between the two series.
double pcf_series(double nu, double y, double* loss_out = nullptr) {
    const double x = 0.5 * y * y;
    const KummerResult m1 = kummer_m(-0.5 * nu, 0.5, x);
    const KummerResult m2 = kummer_m(0.5 * (1.0 - nu), 1.5, x);
    const double g1 = reciprocal_gamma(0.5 * (1.0 - nu));
    const double g2 = reciprocal_gamma(-0.5 * nu);
    const double bracket = g1 * m1.value - kSqrt2 * y * g2 * m2.value;
    const double scale = std::max(std::fabs(g1) * m1.max_term,
                                  std::fabs(kSqrt2 * y * g2) * m2.max_term);
    if (loss_out)
        *loss_out = (bracket == 0.0) ? scale * 1e-16
                                     : 1e-16 * scale / std::max(std::fabs(bracket), 1e-300);
    const double value = std::pow(2.0, 0.5 * nu) * kSqrtPi * std::exp(-0.25 * y * y) * bracket;
    if (!std::isfinite(value))
        throw ConvergenceFailure("pcf_D: series overflow at nu=" + std::to_string(nu) +
                                 ", y=" + std::to_string(y));
    return value;
}

// 24-point Gauss-Legendre nodes on [-1, 1], computed once by Newton
// iteration on the Legendre recurrence.
struct GaussLegendre {
    std::vector<double> node, weight;
    explicit GaussLegendre(int n) : node(n), weight(n) {
        for (int i = 0; i < n; ++i) {
            double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = x;
                for (int k = 2; k <= n; ++k) {
                    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                const double dp = n * (x * p1 - p0) / (x * x - 1.0);
                const double dx = p1 / dp;
                x -= dx;
                if (std::fabs(dx) < 1e-15) {
                    p0 = 1.0;
                    p1 = x;
                    for (int k = 2; k <= n; ++k) {
                        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                        p0 = p1;
                        p1 = p2;
                    }
                    const double dpf = n * (x * p1 - p0) / (x * x - 1.0);
                    node[i] = x;
                    weight[i] = 2.0 / ((1.0 - x * x) * dpf * dpf);
                    break;
                }
            }
        }
    }
};

const GaussLegendre& gl24() {
    static const GaussLegendre g(24);
    return g;
}

// I(nu, y) = int_0^inf t^{-nu-1} exp(-t^2/2 - y t) dt for nu < 0.
// [0, delta]: term-by-term integration of the entire factor's Maclaurin
// series against the algebraic weight; [delta, T]: composite Gauss-Legendre
// over geometrically growing panels.
double pcf_integral_core(double nu, double y) {
    const double delta = 0.5;

    // Series part. Coefficients of exp(-t^2/2 - y t): (k+1) c_{k+1} = -y c_k - c_{k-1}.
    double series = 0.0;
    {
        double ck_m1 = 0.0, ck = 1.0;
        double dpow = std::pow(delta, -nu);  // delta^{0 - nu}
        for (int k = 0; k < 400; ++k) {
            const double term = ck * dpow / (static_cast<double>(k) - nu);
            series += term;
            if (std::fabs(term) < 1e-18 * std::fabs(series) + 1e-300 && k > 3) break;
            const double ck_p1 = (-y * ck - ck_m1) / (k + 1.0);
            ck_m1 = ck;
            ck = ck_p1;
            dpow *= delta;
        }
    }

    // Smooth part on [delta, T]; panels of width <= 2 keep the 24-node rule
    // at machine accuracy for the unit-width Gaussian factor.
    const double T = std::max(12.0, (y < 0 ? -y + std::sqrt(y * y + 120.0) : std::sqrt(120.0)) + 2.0);
    double smooth = 0.0;
    const auto& gl = gl24();
    double a = delta;
    while (a < T) {
        const double b = std::min(T, a + 2.0);
        const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        double acc = 0.0;
        for (std::size_t i = 0; i < gl.node.size(); ++i) {
            const double t = mid + half * gl.node[i];
            acc += gl.weight[i] * std::pow(t, -nu - 1.0) * std::exp(-0.5 * t * t - y * t);
        }
        smooth += half * acc;
        a = b;
    }
    return series + smooth;
}

// D_nu(y) via the integral representation, valid for nu < 0.
double pcf_integral(double nu, double y) {
    return std::exp(-0.25 * y * y) * reciprocal_gamma(-nu) * pcf_integral_core(nu, y);
}

} // namespace

double pcf_D(double nu, double y) {
    if (!std::isfinite(nu) || !std::isfinite(y))
        throw std::invalid_argument("pcf_D: non-finite input");

    if (is_nonneg_integer(nu)) {
        // Terminating series: exact polynomial times Gaussian, any y.
        return pcf_series(std::round(nu), y);
    }
    if (std::fabs(y) <= detail::pcf_y_switch) {
        return pcf_series(nu, y);
    }
    if (nu < 0.0) {
        return pcf_integral(nu, y);
    }
    if (y > 0.0) {
        // Seed the upward order recurrence with integral evaluations at the
        // fractional order shifted into [-2, 0). D_nu is the dominant
        // solution of the recurrence for growing order at positive y.
        const double frac = nu - std::floor(nu);
        double lo = pcf_integral(frac - 2.0, y);
        double hi = pcf_integral(frac - 1.0, y);
        double order = frac - 1.0;
        while (order < nu - 0.5) {
            const double next = y * hi - order * lo;
            lo = hi;
            hi = next;
            order += 1.0;
        }
        return hi;
    }
    // Deep negative y at positive non-integer order: the series still
    // applies because the exponentially growing component dominates, but
    // cancellation must be watched.
    double loss = 0.0;
    const double value = pcf_series(nu, y, &loss);
    if (loss > 1e-9)
        throw ConvergenceFailure("pcf_D: cancellation exceeds tolerance at nu=" +
                                 std::to_string(nu) + ", y=" + std::to_string(y) +
                                 " (estimated relative loss " + std::to_string(loss) + ")");
    return value;
}

double pcf_D_prime(double nu, double y) {
    return nu * pcf_D(nu - 1.0, y) - 0.5 * y * pcf_D(nu, y);
}

double hermite_state(int n, double x, double m, double omega, double hbar) {
    if (n < 0) throw std::invalid_argument("hermite_state: n must be >= 0");
    if (!(m > 0.0) || !(omega > 0.0) || !(hbar > 0.0))
        throw std::invalid_argument("hermite_state: m, omega, hbar must be > 0");
    const double xi = std::sqrt(m * omega / hbar) * x;
    const double h0 = std::pow(m * omega / (kPi * hbar), 0.25) * std::exp(-0.5 * xi * xi);
    if (n == 0) return h0;
    double prev = h0;
    double cur = kSqrt2 * xi * h0;  // n = 1
    for (int k = 1; k < n; ++k) {
        const double next =
            std::sqrt(2.0 / (k + 1.0)) * xi * cur - std::sqrt(k / (k + 1.0)) * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

double hermite_polynomial(int n, double x) {
    if (n < 0) throw std::invalid_argument("hermite_polynomial: n must be >= 0");
    double p0 = 1.0;
    if (n == 0) return p0;
    double p1 = 2.0 * x;
    for (int k = 1; k < n; ++k) {
        const double p2 = 2.0 * x * p1 - 2.0 * k * p0;
        p0 = p1;
        p1 = p2;
    }
    return p1;
}

} // namespace susydirac
