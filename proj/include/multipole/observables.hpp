#pragma once

// Local observables of multipole radiation evaluated on truncated Fock states:
// polarization matrices, Mandel Q of the effective modes, and the generalized
// Stokes operators S1, S2 with their far-zone variance decomposition.

#include <Eigen/Dense>

#include "multipole/effective.hpp"
#include "multipole/fock.hpp"
#include "multipole/modes.hpp"

namespace multipole {

inline constexpr double kVacuumIntensity = 1e-12;

struct PolarizationMatrices {
  // Both indexed (label_row(mu'), label_row(mu)).
  Eigen::Matrix3cd normal;      // <A+_{mu'} A_{mu}>
  Eigen::Matrix3cd antinormal;  // <A_{mu} A+_{mu'}>
};

/// A_mu = sum_m V_{mu m} a_{jm}; expectations evaluated on `state`.
PolarizationMatrices polarization_matrices(const FockState& state, const ModeMatrix& v);

/// Q_mu = (<(dn_mu)^2> - <n_mu>) / <n_mu> for n_mu = a+_mu a_mu built from row mu of T.
/// Throws UndefinedQError if <n_mu> <= threshold, SuppressedModeError for a suppressed mu.
double mandel_q(const FockState& state, const EffectiveTransform& t, int mu,
                double threshold = kVacuumIntensity);

struct StokesOperators {
  OperatorMatrix s1;
  OperatorMatrix s2;
};

/// S1 = X + X+, S2 = -i (X - X+), X = a+_{+} a_0 + a+_0 a_{-} + a+_{-} a_{+},
/// built on the three operator rows of T (suppressed labels use the vacuum-mode row).
StokesOperators stokes_operators(const FockSpace& space, const EffectiveTransform& t);

struct StokesMeans {
  double s1 = 0.0;
  double s2 = 0.0;
};

StokesMeans stokes_means(const FockState& state, const EffectiveTransform& t);

struct StokesReport {
  double mean_s1 = 0.0;
  double mean_s2 = 0.0;
  double var_s1_oracle = 0.0;            // <S1^2> - <S1>^2
  double var_s1_moment_expansion = 0.0;  // sum of covariances of the six bilinears of S1
  double var_s1_far_zone_formula = 0.0;     // plane-wave terms + extra terms
  double var_s1_plane_wave = 0.0;
  double extra_terms = 0.0;              // 2 Re<a+_{+} a_{-}> + <n_+> + <n_->
  double radial_occupation = 0.0;        // <n_0>
  bool far_zone_assumption = true;       // radial effective mode in vacuum

  double discrepancy() const { return var_s1_far_zone_formula - var_s1_oracle; }
};

StokesReport stokes_variance_report(const FockState& state, const EffectiveTransform& t);

}  // namespace multipole
