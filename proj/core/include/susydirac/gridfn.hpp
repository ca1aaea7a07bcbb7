#ifndef SUSYDIRAC_GRIDFN_HPP
#define SUSYDIRAC_GRIDFN_HPP

#include <complex>
#include <vector>

namespace susydirac {

using cxd = std::complex<double>;

// Grid inner products use the rectangle rule <f|g> = h * sum conj(f_i) g_i,
// which is spectrally accurate for functions decaying below roundoff at the
// box edges.

double inner(const std::vector<double>& f, const std::vector<double>& g, double h);
cxd inner(const std::vector<cxd>& f, const std::vector<cxd>& g, double h);

double norm(const std::vector<double>& f, double h);
double norm(const std::vector<cxd>& f, double h);

/// Rescale f in place to unit grid norm. Returns the original norm.
double normalize(std::vector<double>& f, double h);

/// First derivative by 6th-order centered differences; biased 6th-order
/// stencils are used at the 3 points nearest each edge.
/// Throws GridTooCoarse when fewer than 7 points are available.
std::vector<double> derivative(const std::vector<double>& f, double h);
std::vector<cxd> derivative(const std::vector<cxd>& f, double h);

} // namespace susydirac

#endif
