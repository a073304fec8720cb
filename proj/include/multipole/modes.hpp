#pragma once

// Mode-function matrix V_{mu m}(r) of a pure multipole of order j.
//
// Rows are polarization labels mu = +1, 0, -1 (row index 0, 1, 2); columns are
// source projections m = -j .. j (column index m + j). The exact convention,
// including the frame in which the mu rows are expressed, is documented in
// docs/conventions.md.

#include <Eigen/Dense>
#include <complex>

#include "multipole/angular.hpp"

namespace multipole {

using Matrix3Xcd = Eigen::Matrix<cdouble, 3, Eigen::Dynamic>;

inline constexpr int kLabels[3] = {+1, 0, -1};

/// Row index of polarization label mu in {+1, 0, -1}.
constexpr int label_row(int mu) { return 1 - mu; }
constexpr int row_label(int row) { return 1 - row; }

enum class Parity { electric, magnetic };

/// Basis in which the polarization rows are expressed.
///  fixed: helicity vectors chi_mu of the laboratory z axis.
///  local: helicity vectors about the radial direction, obtained from the fixed
///         ones by the rotation R(phi, theta, -phi); row mu = 0 is radial.
enum class Frame { fixed, local };

struct SpatialPoint {
  double kr;     // dimensionless, > 0
  double theta;  // [0, pi]
  double phi;    // [0, 2 pi)
};

struct ModeMatrix {
  int j = 1;
  Parity parity = Parity::electric;
  cdouble gamma{1.0, 0.0};
  Frame frame = Frame::local;
  SpatialPoint point{};
  Matrix3Xcd entries;

  int columns() const { return 2 * j + 1; }
  cdouble operator()(int mu, int m) const { return entries(label_row(mu), m + j); }
};

ModeMatrix mode_matrix(int j, Parity parity, const SpatialPoint& p, cdouble gamma = 1.0,
                       Frame frame = Frame::local);

/// Matrix L with L(mu', nu) = chi'_mu'^dagger chi_nu, so that V_local = L * V_fixed.
Eigen::Matrix3cd local_frame_rotation(double theta, double phi);

enum class Zone { near, intermediate, far };

Zone zone_classify(double kr, double near_bound, double far_bound);
const char* zone_name(Zone z);

}  // namespace multipole
