#include "multipole/modes.hpp"

#include <cmath>
#include <string>

#include "multipole/errors.hpp"

namespace multipole {

namespace {

// Helicity unit vectors in Cartesian components.
Eigen::Vector3cd helicity_vector(int mu) {
  const double r = 1.0 / std::sqrt(2.0);
  const cdouble i{0.0, 1.0};
  switch (mu) {
    case +1:
      return Eigen::Vector3cd(-r, -r * i, 0.0);
    case 0:
      return Eigen::Vector3cd(0.0, 0.0, 1.0);
    default:
      return Eigen::Vector3cd(r, -r * i, 0.0);
  }
}

Eigen::Matrix3d rotation_z(double a) {
  Eigen::Matrix3d r;
  r << std::cos(a), -std::sin(a), 0.0, std::sin(a), std::cos(a), 0.0, 0.0, 0.0, 1.0;
  return r;
}

Eigen::Matrix3d rotation_y(double b) {
  Eigen::Matrix3d r;
  r << std::cos(b), 0.0, std::sin(b), 0.0, 1.0, 0.0, -std::sin(b), 0.0, std::cos(b);
  return r;
}

// Coefficient of Y_{l, m-mu} in the (l, j) vector spherical harmonic.
cdouble vsh_component(int l, int j, int mu, int m, double theta, double phi) {
  const int q = m - mu;
  if (std::abs(q) > l) return 0.0;
  return clebsch_gordan(l, q, 1, mu, j, m) * spherical_harmonic(l, q, theta, phi);
}

}  // namespace

Eigen::Matrix3cd local_frame_rotation(double theta, double phi) {
  const Eigen::Matrix3cd rot = (rotation_z(phi) * rotation_y(theta) * rotation_z(-phi)).cast<cdouble>();
  Eigen::Matrix3cd l;
  for (int a = 0; a < 3; ++a) {
    const Eigen::Vector3cd rotated = rot * helicity_vector(row_label(a));
    for (int b = 0; b < 3; ++b) l(a, b) = rotated.dot(helicity_vector(row_label(b)));
  }
  return l;
}

ModeMatrix mode_matrix(int j, Parity parity, const SpatialPoint& p, cdouble gamma, Frame frame) {
  if (j < 1) throw InputError("multipole order j must be >= 1 (got " + std::to_string(j) + ")");
  if (!(p.kr > 0.0)) {
    throw SingularityError("mode functions are singular at kr <= 0 (got kr=" + std::to_string(p.kr) + ")");
  }

  ModeMatrix v;
  v.j = j;
  v.parity = parity;
  v.gamma = gamma;
  v.frame = frame;
  v.point = p;
  v.entries = Matrix3Xcd::Zero(3, 2 * j + 1);

  const auto jl = spherical_bessel_j_sequence(j + 1, p.kr);
  const auto yl = spherical_bessel_y_sequence(j + 1, p.kr);
  auto hankel = [&](int l) { return cdouble(jl[l], yl[l]); };

  const double w_lower = std::sqrt((j + 1.0) / (2.0 * j + 1.0));
  const double w_upper = std::sqrt(j / (2.0 * j + 1.0));

  for (int row = 0; row < 3; ++row) {
    const int mu = row_label(row);
    for (int m = -j; m <= j; ++m) {
      cdouble value;
      if (parity == Parity::magnetic) {
        value = hankel(j) * vsh_component(j, j, mu, m, p.theta, p.phi);
      } else {
        value = w_lower * hankel(j - 1) * vsh_component(j - 1, j, mu, m, p.theta, p.phi) -
                w_upper * hankel(j + 1) * vsh_component(j + 1, j, mu, m, p.theta, p.phi);
      }
      v.entries(row, m + j) = gamma * value;
    }
  }

  if (frame == Frame::local) v.entries = local_frame_rotation(p.theta, p.phi) * v.entries;
  return v;
}

Zone zone_classify(double kr, double near_bound, double far_bound) {
  if (!(kr > 0.0)) throw InputError("kr must be positive");
  if (!(near_bound > 0.0) || !(near_bound < far_bound)) {
    throw InputError("zone bounds must satisfy 0 < near_bound < far_bound");
  }
  if (kr < near_bound) return Zone::near;
  if (kr > far_bound) return Zone::far;
  return Zone::intermediate;
}

const char* zone_name(Zone z) {
  switch (z) {
    case Zone::near:
      return "near";
    case Zone::intermediate:
      return "intermediate";
    case Zone::far:
      return "far";
  }
  return "?";
}

}  // namespace multipole
