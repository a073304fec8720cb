#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "multipole/effective.hpp"
#include "multipole/fock.hpp"
#include "multipole/modes.hpp"

namespace testing_support {

using multipole::cdouble;

inline double halton(int index, int base) {
  double f = 1.0;
  double r = 0.0;
  for (int i = index; i > 0; i /= base) {
    f /= base;
    r += f * (i % base);
  }
  return r;
}

inline cdouble random_complex(std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> n(0.0, scale);
  return {n(rng), n(rng)};
}

inline std::vector<cdouble> random_coefficients(std::mt19937_64& rng, int count, double scale = 1.0) {
  std::vector<cdouble> c(count);
  for (auto& x : c) x = random_complex(rng, scale);
  return c;
}

inline multipole::SpatialPoint random_point(std::mt19937_64& rng, double kr_lo, double kr_hi) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double kr = std::exp(std::log(kr_lo) + u(rng) * (std::log(kr_hi) - std::log(kr_lo)));
  return {kr, 0.05 + u(rng) * (std::numbers::pi - 0.1), u(rng) * 2.0 * std::numbers::pi};
}

// Random normalized state supported on occupations <= n_max - depth.
inline multipole::FockState random_protected_state(const multipole::FockSpace& space, std::mt19937_64& rng,
                                                   int depth = 2) {
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(space.dimension()));
  for (std::size_t i = 0; i < space.dimension(); ++i) {
    if (space.max_occupation(i) <= space.n_max() - depth) psi(Eigen::Index(i)) = random_complex(rng);
  }
  return multipole::FockState(space, psi);
}

inline std::vector<cdouble> row_coefficients(const Eigen::RowVectorXcd& row) {
  return {row.data(), row.data() + row.size()};
}

// sum_{p,q} c_pq (a+_{+})^p (a+_{-})^q |0>, p + q <= photons; radial effective mode stays empty.
inline multipole::FockState random_transversal_state(const multipole::FockSpace& space,
                                                     const multipole::EffectiveTransform& t, std::mt19937_64& rng,
                                                     int photons) {
  const auto plus = row_coefficients(t.operator_row(+1));
  const auto minus = row_coefficients(t.operator_row(-1));
  Eigen::VectorXcd vac = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(space.dimension()));
  vac(0) = 1.0;
  Eigen::VectorXcd total = Eigen::VectorXcd::Zero(vac.size());
  Eigen::VectorXcd left = vac;
  for (int p = 0; p <= photons; ++p) {
    Eigen::VectorXcd term = left;
    for (int q = 0; p + q <= photons; ++q) {
      total += random_complex(rng) * term;
      term = multipole::apply_creator(space, minus, term);
    }
    left = multipole::apply_creator(space, plus, left);
  }
  return multipole::FockState(space, total);
}

inline double max_abs(const Eigen::MatrixXcd& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

}  // namespace testing_support
