#include "multipole/angular.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "multipole/errors.hpp"

namespace multipole {

namespace {

constexpr int kMaxFactorial = 170;

const std::array<long double, kMaxFactorial + 1>& factorial_table() {
  static const auto table = [] {
    std::array<long double, kMaxFactorial + 1> t{};
    t[0] = 1.0L;
    for (int n = 1; n <= kMaxFactorial; ++n) t[n] = t[n - 1] * n;
    return t;
  }();
  return table;
}

long double factorial(int n) {
  if (n < 0 || n > kMaxFactorial) {
    throw InputError("factorial argument out of range: " + std::to_string(n));
  }
  return factorial_table()[n];
}

void check_label(int j, int m, const char* what) {
  if (j < 0) throw InputError(std::string(what) + ": negative angular momentum " + std::to_string(j));
  if (std::abs(m) > j) {
    throw InputError(std::string(what) + ": |m| > j (j=" + std::to_string(j) +
                     ", m=" + std::to_string(m) + ")");
  }
}

}  // namespace

double clebsch_gordan(int j1, int m1, int j2, int m2, int J, int M) {
  check_label(j1, m1, "clebsch_gordan");
  check_label(j2, m2, "clebsch_gordan");
  check_label(J, M, "clebsch_gordan");
  if (M != m1 + m2) return 0.0;
  if (J < std::abs(j1 - j2) || J > j1 + j2) return 0.0;

  // Racah's closed form.
  const long double prefactor = std::sqrt(
      (2.0L * J + 1.0L) * factorial(J + j1 - j2) * factorial(J - j1 + j2) *
      factorial(j1 + j2 - J) / factorial(j1 + j2 + J + 1));
  const long double projections =
      std::sqrt(factorial(J + M) * factorial(J - M) * factorial(j1 - m1) * factorial(j1 + m1) *
                factorial(j2 - m2) * factorial(j2 + m2));

  const int kmin = std::max({0, j2 - J - m1, j1 + m2 - J});
  const int kmax = std::min({j1 + j2 - J, j1 - m1, j2 + m2});
  long double sum = 0.0L;
  for (int k = kmin; k <= kmax; ++k) {
    const long double denom = factorial(k) * factorial(j1 + j2 - J - k) * factorial(j1 - m1 - k) *
                              factorial(j2 + m2 - k) * factorial(J - j2 + m1 + k) *
                              factorial(J - j1 - m2 + k);
    sum += ((k % 2 == 0) ? 1.0L : -1.0L) / denom;
  }
  return static_cast<double>(prefactor * projections * sum);
}

cdouble spherical_harmonic(int l, int m, double theta, double phi) {
  check_label(l, m, "spherical_harmonic");
  const int am = std::abs(m);
  const double x = std::cos(theta);
  const double s = std::sin(theta);

  // Fully normalized associated Legendre functions, CS phase included in the
  // diagonal seed.
  double pmm = 0.5 / std::sqrt(std::numbers::pi);
  for (int k = 1; k <= am; ++k) {
    pmm *= -std::sqrt((2.0 * k + 1.0) / (2.0 * k)) * s;
  }
  double plm = pmm;
  if (l > am) {
    double prev = pmm;
    double cur = std::sqrt(2.0 * am + 3.0) * x * pmm;
    for (int ll = am + 2; ll <= l; ++ll) {
      const double a = std::sqrt((4.0 * ll * ll - 1.0) / (double(ll) * ll - double(am) * am));
      const double b = std::sqrt(((ll - 1.0) * (ll - 1.0) - double(am) * am) /
                                 (4.0 * (ll - 1.0) * (ll - 1.0) - 1.0));
      const double next = a * (x * cur - b * prev);
      prev = cur;
      cur = next;
    }
    plm = cur;
  }

  const cdouble y = plm * std::polar(1.0, am * phi);
  if (m >= 0) return y;
  return ((am % 2 == 0) ? 1.0 : -1.0) * std::conj(y);
}

std::vector<double> spherical_bessel_y_sequence(int lmax, double x) {
  if (!(x > 0.0)) throw InputError("spherical Bessel functions require x > 0");
  if (lmax < 0) throw InputError("negative Bessel order");
  std::vector<double> y(lmax + 1);
  y[0] = -std::cos(x) / x;
  if (lmax >= 1) y[1] = -std::cos(x) / (x * x) - std::sin(x) / x;
  for (int l = 1; l < lmax; ++l) y[l + 1] = (2.0 * l + 1.0) / x * y[l] - y[l - 1];
  return y;
}

std::vector<double> spherical_bessel_j_sequence(int lmax, double x) {
  if (!(x > 0.0)) throw InputError("spherical Bessel functions require x > 0");
  if (lmax < 0) throw InputError("negative Bessel order");
  std::vector<double> j(lmax + 1);
  const double j0 = std::sin(x) / x;
  const double j1 = std::sin(x) / (x * x) - std::cos(x) / x;

  if (x > lmax) {
    j[0] = j0;
    if (lmax >= 1) j[1] = j1;
    for (int l = 1; l < lmax; ++l) j[l + 1] = (2.0 * l + 1.0) / x * j[l] - j[l - 1];
    return j;
  }

  // Miller: recur downward from well above lmax, rescaling on growth, then
  // normalize against whichever of j_0, j_1 is larger in magnitude.
  const int start = std::max(lmax, 1) + 30 + static_cast<int>(std::sqrt(40.0 * (lmax + 1)));
  std::vector<double> work(start + 2, 0.0);
  work[start] = 1e-300;
  for (int l = start; l >= 1; --l) {
    work[l - 1] = (2.0 * l + 1.0) / x * work[l] - work[l + 1];
    if (std::abs(work[l - 1]) > 1e250) {
      for (int k = l - 1; k <= start; ++k) work[k] *= 1e-250;
    }
  }
  const double scale = (std::abs(j0) >= std::abs(j1)) ? j0 / work[0] : j1 / work[1];
  for (int l = 0; l <= lmax; ++l) j[l] = work[l] * scale;
  return j;
}

cdouble spherical_bessel(BesselKind kind, int l, double x) {
  if (!(x > 0.0)) throw InputError("spherical Bessel functions require x > 0 (got " + std::to_string(x) + ")");
  if (l < 0) throw InputError("negative Bessel order");
  switch (kind) {
    case BesselKind::j:
      return spherical_bessel_j_sequence(l, x)[l];
    case BesselKind::y:
      return spherical_bessel_y_sequence(l, x)[l];
    case BesselKind::h1:
      return {spherical_bessel_j_sequence(l, x)[l], spherical_bessel_y_sequence(l, x)[l]};
  }
  return {};
}

}  // namespace multipole
