#include "susydirac/potential.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "susydirac/errors.hpp"

namespace susydirac {

namespace {

/// Natural cubic spline through strictly increasing abscissae.
class CubicSpline {
public:
    CubicSpline(std::vector<double> x, std::vector<double> y)
        : x_(std::move(x)), y_(std::move(y)) {
        const std::size_t n = x_.size();
        if (n < 4) throw std::invalid_argument("tabulated potential needs at least 4 samples");
        if (y_.size() != n) throw std::invalid_argument("tabulated potential: x/w size mismatch");
        for (std::size_t i = 0; i + 1 < n; ++i)
            if (!(x_[i] < x_[i + 1]))
                throw std::invalid_argument("tabulated potential: x samples must be strictly increasing");
        for (double v : y_)
            if (!std::isfinite(v)) throw std::invalid_argument("tabulated potential: non-finite sample");

        // Tridiagonal solve for the second derivatives, natural boundary.
        m_.assign(n, 0.0);
        std::vector<double> diag(n, 0.0), rhs(n, 0.0), sub(n, 0.0), sup(n, 0.0);
        diag[0] = diag[n - 1] = 1.0;
        for (std::size_t i = 1; i + 1 < n; ++i) {
            const double hl = x_[i] - x_[i - 1];
            const double hr = x_[i + 1] - x_[i];
            sub[i] = hl / 6.0;
            diag[i] = (hl + hr) / 3.0;
            sup[i] = hr / 6.0;
            rhs[i] = (y_[i + 1] - y_[i]) / hr - (y_[i] - y_[i - 1]) / hl;
        }
        for (std::size_t i = 1; i < n; ++i) {
            const double w = sub[i] / diag[i - 1];
            diag[i] -= w * sup[i - 1];
            rhs[i] -= w * rhs[i - 1];
        }
        m_[n - 1] = rhs[n - 1] / diag[n - 1];
        for (std::size_t i = n - 1; i-- > 0;) m_[i] = (rhs[i] - sup[i] * m_[i + 1]) / diag[i];
    }

    double eval(double x) const {
        const auto [i, t, h] = locate(x);
        const double a = (x_[i + 1] - x) / h, b = (x - x_[i]) / h;
        return a * y_[i] + b * y_[i + 1] +
               ((a * a * a - a) * m_[i] + (b * b * b - b) * m_[i + 1]) * h * h / 6.0;
    }

    double deriv(double x) const {
        const auto [i, t, h] = locate(x);
        const double a = (x_[i + 1] - x) / h, b = (x - x_[i]) / h;
        return (y_[i + 1] - y_[i]) / h +
               (-(3.0 * a * a - 1.0) * m_[i] + (3.0 * b * b - 1.0) * m_[i + 1]) * h / 6.0;
    }

    std::pair<double, double> range() const { return {x_.front(), x_.back()}; }

private:
    std::tuple<std::size_t, double, double> locate(double x) const {
        if (x < x_.front() - 1e-12 || x > x_.back() + 1e-12)
            throw std::out_of_range("tabulated potential evaluated outside its sample range");
        auto it = std::upper_bound(x_.begin(), x_.end(), x);
        std::size_t i = (it == x_.begin()) ? 0 : static_cast<std::size_t>(it - x_.begin()) - 1;
        if (i + 1 >= x_.size()) i = x_.size() - 2;
        const double h = x_[i + 1] - x_[i];
        return {i, (x - x_[i]) / h, h};
    }

    std::vector<double> x_, y_, m_;
};

} // namespace

PotentialSpec PotentialSpec::oscillator(const PhysicalConstants& consts, double omega) {
    if (!(omega > 0.0)) throw std::invalid_argument("oscillator potential: omega must be > 0");
    PotentialSpec p;
    p.family_ = PotentialFamily::oscillator;
    p.omega_ = omega;
    const double k = consts.m * consts.c * omega;
    p.w_ = [k](double x) { return k * x; };
    p.w_prime_ = [k](double) { return k; };
    return p;
}

PotentialSpec PotentialSpec::power(const PhysicalConstants& consts, double exponent, bool is_signed,
                                   double strength) {
    if (!(exponent >= 1.0)) throw std::invalid_argument("power potential: exponent must be >= 1");
    if (!(strength > 0.0)) throw std::invalid_argument("power potential: strength must be > 0");
    PotentialSpec p;
    p.family_ = PotentialFamily::power;
    p.power_exponent_ = exponent;
    p.power_strength_ = strength;
    const double scale = consts.w_scale() * strength;
    const double d = exponent;
    if (is_signed) {
        p.w_ = [scale, d](double x) {
            return scale * (x < 0 ? -std::pow(-x, d) : std::pow(x, d));
        };
        p.w_prime_ = [scale, d](double x) { return scale * d * std::pow(std::fabs(x), d - 1.0); };
    } else {
        p.w_ = [scale, d](double x) { return scale * std::pow(std::fabs(x), d); };
        p.w_prime_ = [scale, d](double x) {
            const double mag = scale * d * std::pow(std::fabs(x), d - 1.0);
            return x < 0 ? -mag : mag;
        };
    }
    return p;
}

PotentialSpec PotentialSpec::tabulated(std::vector<double> x, std::vector<double> w) {
    auto spline = std::make_shared<CubicSpline>(std::move(x), std::move(w));
    PotentialSpec p;
    p.family_ = PotentialFamily::tabulated;
    p.range_ = spline->range();
    p.w_ = [spline](double x) { return spline->eval(x); };
    p.w_prime_ = [spline](double x) { return spline->deriv(x); };
    return p;
}

PotentialSpec PotentialSpec::custom(std::function<double(double)> w,
                                    std::function<double(double)> w_prime) {
    if (!w || !w_prime)
        throw std::invalid_argument("custom potential requires both W and its derivative");
    PotentialSpec p;
    p.family_ = PotentialFamily::custom;
    p.w_ = std::move(w);
    p.w_prime_ = std::move(w_prime);
    return p;
}

PotentialSpec& PotentialSpec::with_scalar(std::function<double(double)> s,
                                          std::function<double(double)> s_prime) {
    s_ = std::move(s);
    s_prime_ = std::move(s_prime);
    return *this;
}

PotentialSpec& PotentialSpec::with_electrostatic(std::function<double(double)> v) {
    v_ = std::move(v);
    return *this;
}

PotentialSpec PotentialSpec::flipped() const {
    PotentialSpec p = *this;
    auto w = p.w_;
    auto wp = p.w_prime_;
    p.w_ = [w](double x) { return -w(x); };
    p.w_prime_ = [wp](double x) { return -wp(x); };
    p.flipped_sign_ = !p.flipped_sign_;
    return p;
}

double PotentialSpec::natural_length(const PhysicalConstants& consts) const {
    switch (family_) {
        case PotentialFamily::oscillator:
            return std::sqrt(consts.hbar / (consts.m * *omega_));
        case PotentialFamily::power: {
            // hbar^2/(2 m L^2) = strength^2 L^{2d}  =>  L = (hbar/(sqrt(2m) s))^{1/(d+1)}
            const double d = *power_exponent_;
            const double s = *power_strength_;
            return std::pow(consts.hbar / (std::sqrt(2.0 * consts.m) * s), 1.0 / (d + 1.0));
        }
        case PotentialFamily::tabulated:
            return (range_->second - range_->first) / 24.0;
        case PotentialFamily::custom:
            return 1.0;
    }
    return 1.0;
}

std::function<double(double)> rescale_pseudoscalar(const PotentialSpec& spec,
                                                   const PhysicalConstants& consts) {
    const double inv = 1.0 / consts.w_scale();
    return [spec, inv](double x) { return inv * spec.W(x); };
}

std::function<double(double)> rescale_pseudoscalar_derivative(const PotentialSpec& spec,
                                                              const PhysicalConstants& consts) {
    const double inv = 1.0 / consts.w_scale();
    return [spec, inv](double x) { return inv * spec.Wprime(x); };
}

ScalarReduction scalar_to_pseudoscalar(const PotentialSpec& spec, const PhysicalConstants& consts,
                                       const Grid& grid, double tol) {
    // V must be constant: the reduced SUSY Hamiltonian absorbs only a fixed
    // energy offset.
    double v0 = spec.V(grid.x(0));
    double v_min = v0, v_max = v0, v_sum = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double v = spec.V(grid.x(i));
        v_min = std::min(v_min, v);
        v_max = std::max(v_max, v);
        v_sum += v;
    }
    const double v_scale = std::max(1.0, std::max(std::fabs(v_min), std::fabs(v_max)));
    if (v_max - v_min > tol * v_scale)
        throw NonConstantV("scalar_to_pseudoscalar: V varies on the grid (max deviation " +
                           std::to_string(v_max - v_min) + ")");
    const double v_const = v_sum / static_cast<double>(grid.size());

    const double mc2 = consts.rest_energy();

    if (!spec.has_scalar()) {
        // S == 0: the reduced potential is the constant m c^2 (trivial SUSY).
        return {PotentialSpec::custom([mc2](double) { return mc2; }, [](double) { return 0.0; }),
                v_const, mc2 == 0.0};
    }

    double w_abs_max = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i)
        w_abs_max = std::max(w_abs_max, std::fabs(mc2 + spec.S(grid.x(i))));
    const bool degenerate = (w_abs_max <= tol * std::max(1.0, mc2));

    if (spec.scalar_derivative()) {
        auto s_fn = [spec](double x) { return spec.S(x); };
        return {PotentialSpec::custom([mc2, s_fn](double x) { return mc2 + s_fn(x); },
                                      spec.scalar_derivative()),
                v_const, degenerate};
    }

    // No derivative closure attached: sample on the grid and spline.
    std::vector<double> xs = grid.points();
    std::vector<double> ws(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) ws[i] = mc2 + spec.S(xs[i]);
    return {PotentialSpec::tabulated(std::move(xs), std::move(ws)), v_const, degenerate};
}

Grid make_default_grid(const PotentialSpec& spec, const PhysicalConstants& consts,
                       std::size_t n_points, double half_width) {
    double half = half_width * spec.natural_length(consts);
    double lo = -half, hi = half;
    if (auto r = spec.tabulated_range()) {
        lo = std::max(lo, r->first);
        hi = std::min(hi, r->second);
    }
    return Grid(lo, hi, n_points);
}

} // namespace susydirac
