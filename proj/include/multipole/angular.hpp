#pragma once

// Special functions used by the multipole mode functions.
// All phases follow the Condon-Shortley convention (see docs/conventions.md).

#include <complex>
#include <vector>

namespace multipole {

using cdouble = std::complex<double>;

/// Clebsch-Gordan coefficient <j1 m1; j2 m2 | J M> for integer angular momenta.
/// Returns 0 when M != m1 + m2 or the triangle condition fails; throws InputError
/// for negative j or |m| > j.
double clebsch_gordan(int j1, int m1, int j2, int m2, int J, int M);

/// Orthonormal spherical harmonic Y_lm(theta, phi) with the Condon-Shortley phase.
cdouble spherical_harmonic(int l, int m, double theta, double phi);

enum class BesselKind { j, y, h1 };

/// Spherical Bessel j_l, Neumann y_l, or outgoing Hankel h_l^(1) = j_l + i y_l at x > 0.
cdouble spherical_bessel(BesselKind kind, int l, double x);

/// j_0(x) .. j_lmax(x). Upward recurrence for x > lmax, Miller's downward recurrence otherwise.
std::vector<double> spherical_bessel_j_sequence(int lmax, double x);

/// y_0(x) .. y_lmax(x) by upward recurrence.
std::vector<double> spherical_bessel_y_sequence(int lmax, double x);

}  // namespace multipole
