#include "susydirac/gridfn.hpp"

#include <cmath>
#include <cstddef>

#include "susydirac/errors.hpp"

namespace susydirac {

double inner(const std::vector<double>& f, const std::vector<double>& g, double h) {
    double s = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) s += f[i] * g[i];
    return h * s;
}

cxd inner(const std::vector<cxd>& f, const std::vector<cxd>& g, double h) {
    cxd s = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) s += std::conj(f[i]) * g[i];
    return h * s;
}

double norm(const std::vector<double>& f, double h) {
    double s = 0.0;
    for (double v : f) s += v * v;
    return std::sqrt(h * s);
}

double norm(const std::vector<cxd>& f, double h) {
    double s = 0.0;
    for (const cxd& v : f) s += std::norm(v);
    return std::sqrt(h * s);
}

double normalize(std::vector<double>& f, double h) {
    const double n = norm(f, h);
    if (n > 0.0)
        for (double& v : f) v /= n;
    return n;
}

namespace {

// 6th-order first-derivative weights (Fornberg). The biased rows evaluate at
// offsets 0..2 into the leading 7 nodes; right-edge points use the reversed,
// negated weights.
constexpr double kCentral[7] = {-1.0 / 60, 3.0 / 20, -3.0 / 4, 0.0, 3.0 / 4, -3.0 / 20, 1.0 / 60};
constexpr double kEdge[3][7] = {
    {-49.0 / 20, 6.0, -15.0 / 2, 20.0 / 3, -15.0 / 4, 6.0 / 5, -1.0 / 6},
    {-1.0 / 6, -77.0 / 60, 5.0 / 2, -5.0 / 3, 5.0 / 6, -1.0 / 4, 1.0 / 30},
    {1.0 / 30, -2.0 / 5, -7.0 / 12, 4.0 / 3, -1.0 / 2, 2.0 / 15, -1.0 / 60},
};

template <typename T>
std::vector<T> derivative_impl(const std::vector<T>& f, double h) {
    const std::size_t n = f.size();
    if (n < 7) throw GridTooCoarse("derivative: 6th-order stencil needs at least 7 grid points");
    std::vector<T> d(n);
    const double ih = 1.0 / h;

    for (std::size_t r = 0; r < 3; ++r) {
        T left{}, right{};
        for (std::size_t k = 0; k < 7; ++k) {
            left += kEdge[r][k] * f[k];
            right += kEdge[r][k] * f[n - 1 - k];
        }
        d[r] = left * ih;
        d[n - 1 - r] = -right * ih;
    }
    for (std::size_t i = 3; i + 3 < n; ++i) {
        T s{};
        for (std::size_t k = 0; k < 7; ++k) s += kCentral[k] * f[i - 3 + k];
        d[i] = s * ih;
    }
    return d;
}

} // namespace

std::vector<double> derivative(const std::vector<double>& f, double h) { return derivative_impl(f, h); }
std::vector<cxd> derivative(const std::vector<cxd>& f, double h) { return derivative_impl(f, h); }

} // namespace susydirac
