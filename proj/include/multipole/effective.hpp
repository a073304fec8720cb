#pragma once

// Position-dependent effective photon operators.
//
// The fluctuation matrix F = V V^dagger (3x3, Hermitian, PSD) is diagonalized
// as U^dagger F U = diag(W). Column mu of U is the eigenvector carrying
// polarization label mu. The effective annihilators are the rows of
//     T = diag(W)^{-1/2} U^dagger V,
// i.e. a_mu(r) = sum_m T(mu, m) a_{jm}; T T^dagger = I on the active rows.

#include <Eigen/Dense>
#include <array>
#include <span>

#include "multipole/modes.hpp"

namespace multipole {

inline constexpr double kDefaultWEpsilon = 1e-8;
/// Absolute eigenvalue floor below which a point counts as fully dark.
inline constexpr double kDarkFloor = 1e-280;

struct FluctuationMatrix {
  Eigen::Matrix3cd entries;  // entries(row(mu), row(mu')) = sum_m V_{mu m} V*_{mu' m}
};

FluctuationMatrix fluctuation_matrix(const ModeMatrix& v);

struct Diagonalization {
  Eigen::Matrix3cd U;              // column label_row(mu) is the eigenvector labeled mu
  std::array<double, 3> W{};       // indexed by label_row(mu)
  std::array<bool, 3> suppressed{};
};

/// Labeled eigendecomposition of a Hermitian PSD fluctuation matrix.
///
/// Eigenvalues equal to within 1e-13 * max(W) form a degenerate cluster. Labels
/// are handed out greedily by the largest squared overlap between a cluster and
/// a helicity basis vector (ties: larger eigenvalue first, then label order
/// +1, 0, -1). Inside a cluster the basis is the unitary closest to the assigned
/// helicity vectors. Each eigenvector is then rephased so that its largest
/// magnitude component is real positive. Labels with W < w_epsilon * max(W) are
/// suppressed. Throws DarkPointError if max(W) < kDarkFloor.
Diagonalization diagonalize_fluctuation(const FluctuationMatrix& f,
                                        double w_epsilon = kDefaultWEpsilon);

class EffectiveTransform {
 public:
  EffectiveTransform() = default;
  EffectiveTransform(int j, Eigen::Matrix3cd u, std::array<double, 3> w,
                     std::array<bool, 3> suppressed, Eigen::MatrixXcd rows);

  int j() const { return j_; }
  int columns() const { return 2 * j_ + 1; }
  const Eigen::Matrix3cd& U() const { return u_; }
  double W(int mu) const { return w_[label_row(mu)]; }
  const std::array<double, 3>& W() const { return w_; }
  bool suppressed(int mu) const { return suppressed_[label_row(mu)]; }
  const std::array<bool, 3>& suppressed() const { return suppressed_; }
  bool any_suppressed() const { return suppressed_[0] || suppressed_[1] || suppressed_[2]; }

  /// Row mu of T. Throws SuppressedModeError for a suppressed label.
  Eigen::RowVectorXcd row(int mu) const;

  /// Coefficients used to build ladder operators for label mu. For active labels
  /// this is row(mu); for a suppressed label it is a unit vector orthogonal to
  /// all other operator rows (the vacuum-mode completion).
  Eigen::RowVectorXcd operator_row(int mu) const { return rows_.row(label_row(mu)); }

  /// All three operator rows (3 x (2j+1)); T T^dagger = I whenever 2j+1 >= 3.
  const Eigen::MatrixXcd& operator_rows() const { return rows_; }

 private:
  int j_ = 1;
  Eigen::Matrix3cd u_ = Eigen::Matrix3cd::Identity();
  std::array<double, 3> w_{};
  std::array<bool, 3> suppressed_{};
  Eigen::MatrixXcd rows_;
};

/// Builds T from V and its labeled diagonalization. Every label listed in
/// `required` must be active, otherwise SuppressedModeError is thrown.
EffectiveTransform effective_transform(const ModeMatrix& v, const Diagonalization& d,
                                       std::span<const int> required = {});

/// Convenience: fluctuation matrix, diagonalization and transform in one call.
EffectiveTransform effective_transform(const ModeMatrix& v, double w_epsilon = kDefaultWEpsilon);

struct CoherentParameters {
  std::array<cdouble, 3> value{};   // indexed by label_row(mu); zero where suppressed
  std::array<bool, 3> suppressed{};
  cdouble operator()(int mu) const { return value[label_row(mu)]; }
};

/// alpha_mu(r) = sum_m T(mu, m) alpha_m for the product coherent state |alpha>.
/// `alpha` is indexed by m + j.
CoherentParameters coherent_parameters(const EffectiveTransform& t, std::span<const cdouble> alpha);

/// Multiplies row mu of V by exp(sign * i * mu * phi).
ModeMatrix longitude_gauge(const ModeMatrix& v, int sign);

/// max |Im F_ij| / max |F_ij|.
double imaginary_fraction(const FluctuationMatrix& f);

}  // namespace multipole
