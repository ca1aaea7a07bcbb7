#ifndef SUSYDIRAC_GRID_HPP
#define SUSYDIRAC_GRID_HPP

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace susydirac {

/// Uniform position grid on [x_min, x_max] with n_points >= 16 samples.
class Grid {
public:
    Grid(double x_min, double x_max, std::size_t n_points)
        : x_min_(x_min), x_max_(x_max), n_(n_points) {
        if (!(x_min < x_max)) throw std::invalid_argument("Grid: x_min must be < x_max");
        if (n_points < 16) throw std::invalid_argument("Grid: n_points must be >= 16");
        if (!std::isfinite(x_min) || !std::isfinite(x_max))
            throw std::invalid_argument("Grid: bounds must be finite");
        h_ = (x_max_ - x_min_) / static_cast<double>(n_ - 1);
    }

    double x_min() const { return x_min_; }
    double x_max() const { return x_max_; }
    std::size_t size() const { return n_; }
    double spacing() const { return h_; }

    double x(std::size_t i) const { return x_min_ + h_ * static_cast<double>(i); }

    /// Index of the grid point nearest to x. Throws if x is outside the grid.
    std::size_t index_of(double x) const {
        if (x < x_min_ - 0.5 * h_ || x > x_max_ + 0.5 * h_)
            throw std::out_of_range("Grid::index_of: position outside grid");
        const double t = (x - x_min_) / h_;
        auto i = static_cast<std::ptrdiff_t>(std::llround(t));
        if (i < 0) i = 0;
        if (i >= static_cast<std::ptrdiff_t>(n_)) i = static_cast<std::ptrdiff_t>(n_) - 1;
        return static_cast<std::size_t>(i);
    }

    std::vector<double> points() const {
        std::vector<double> xs(n_);
        for (std::size_t i = 0; i < n_; ++i) xs[i] = x(i);
        return xs;
    }

    template <typename F>
    std::vector<double> sample(F&& f) const {
        std::vector<double> v(n_);
        for (std::size_t i = 0; i < n_; ++i) v[i] = f(x(i));
        return v;
    }

private:
    double x_min_, x_max_;
    std::size_t n_;
    double h_;
};

} // namespace susydirac

#endif
