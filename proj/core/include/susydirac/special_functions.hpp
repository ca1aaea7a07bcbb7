#ifndef SUSYDIRAC_SPECIAL_FUNCTIONS_HPP
#define SUSYDIRAC_SPECIAL_FUNCTIONS_HPP

namespace susydirac {

/// Euler gamma function for real arguments away from the poles at
/// 0, -1, -2, ... Throws PoleAtNonPositiveInteger at the poles.
/// Lanczos approximation with reflection for x < 0.5; relative accuracy
/// better than 1e-12 on the working range.
double gamma_function(double x);

/// Reciprocal gamma 1/Gamma(x). Entire: returns exactly 0 at the poles of
/// Gamma instead of throwing.
double reciprocal_gamma(double x);

/// sin(pi x) with exact zeros at integer x.
double sin_pi(double x);

/// Parabolic cylinder function D_nu(y) for real order and real argument, in
/// the convention obeying
///     D'_nu(y) + (y/2) D_nu(y) = nu D_{nu-1}(y),
///    -D'_nu(y) + (y/2) D_nu(y) = D_{nu+1}(y),
/// so that for integer n >= 0,
///     D_n(y) = 2^{-n/2} e^{-y^2/4} H_n(y/sqrt(2)).
///
/// Evaluation: Maclaurin/Kummer series about y = 0 for |y| <= y_switch
/// (default 4); for larger positive y, an integral representation seeds the
/// three-term recurrence upward in the order. Integer orders use the
/// terminating series for any y. Throws ConvergenceFailure when the scheme
/// cannot certify the requested accuracy (deep negative y near integer
/// orders, where the recessive solution is swamped).
double pcf_D(double nu, double y);

/// Derivative D'_nu(y), evaluated through nu D_{nu-1}(y) - (y/2) D_nu(y).
double pcf_D_prime(double nu, double y);

/// Normalized harmonic oscillator eigenfunction <x|n> for mass m, frequency
/// omega and Planck constant hbar, evaluated by the stable normalized
/// three-term recurrence.
double hermite_state(int n, double x, double m, double omega, double hbar);

/// Physicists' Hermite polynomial H_n(x).
double hermite_polynomial(int n, double x);

namespace detail {
/// Switch radius between the series and the recurrence/integral scheme.
inline constexpr double pcf_y_switch = 4.0;
} // namespace detail

} // namespace susydirac

#endif
