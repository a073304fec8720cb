#pragma once

// Truncated (2j+1)-mode bosonic Fock space.
//
// Basis states are occupation tuples (n_{-j}, ..., n_{j}) with 0 <= n_m <= n_max,
// enumerated lexicographically: mode m = -j is the most significant digit in
// base n_max + 1, so index = sum_m n_m * (n_max+1)^(j - m).
//
// Ladder operators are the truncated matrices <n-1|a|n> = sqrt(n). The canonical
// commutator [a, a^dagger] = 1 holds on occupations <= n_max - 1.

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <cstddef>
#include <span>
#include <vector>

#include "multipole/angular.hpp"

namespace multipole {

inline constexpr std::size_t kDefaultMaxDimension = 1'000'000;

class FockSpace {
 public:
  FockSpace(int j, int n_max, std::size_t max_dimension = kDefaultMaxDimension);

  int j() const { return j_; }
  int n_max() const { return n_max_; }
  int modes() const { return 2 * j_ + 1; }
  std::size_t dimension() const { return dimension_; }

  /// Index step for one quantum in mode m.
  std::size_t stride(int m) const { return strides_[m + j_]; }
  int occupation(std::size_t index, int m) const {
    return static_cast<int>((index / stride(m)) % static_cast<std::size_t>(n_max_ + 1));
  }
  std::vector<int> occupations(std::size_t index) const;
  /// occupations indexed by m + j.
  std::size_t index_of(std::span<const int> occupations) const;
  int max_occupation(std::size_t index) const;

  /// (n_max + 1)^(2j+1), or 0 when it would overflow.
  static std::size_t dimension_for(int j, int n_max);

  bool operator==(const FockSpace& other) const { return j_ == other.j_ && n_max_ == other.n_max_; }

 private:
  int j_;
  int n_max_;
  std::size_t dimension_;
  std::vector<std::size_t> strides_;
};

using SparseOperator = Eigen::SparseMatrix<cdouble, Eigen::RowMajor>;

class OperatorMatrix {
 public:
  OperatorMatrix(FockSpace space, SparseOperator matrix);

  const FockSpace& space() const { return space_; }
  const SparseOperator& matrix() const { return matrix_; }
  Eigen::MatrixXcd dense() const { return Eigen::MatrixXcd(matrix_); }

  OperatorMatrix adjoint() const;
  bool is_hermitian(double tolerance = 1e-12) const;

  friend OperatorMatrix operator+(const OperatorMatrix& a, const OperatorMatrix& b);
  friend OperatorMatrix operator-(const OperatorMatrix& a, const OperatorMatrix& b);
  friend OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b);
  friend OperatorMatrix operator*(cdouble s, const OperatorMatrix& a);

 private:
  FockSpace space_;
  SparseOperator matrix_;
};

OperatorMatrix commutator(const OperatorMatrix& a, const OperatorMatrix& b);
OperatorMatrix identity_operator(const FockSpace& space);

/// a_{jm}; throws InputError for |m| > j.
OperatorMatrix mode_annihilator(const FockSpace& space, int m);

/// sum_m c[m + j] a_{jm}; throws InputError unless c has 2j+1 entries.
OperatorMatrix composite_annihilator(const FockSpace& space, std::span<const cdouble> c);

/// a^dagger a.
OperatorMatrix number_operator(const OperatorMatrix& annihilator);

/// Diagonal projector onto basis states whose occupations are all <= n_max - depth.
OperatorMatrix protected_projector(const FockSpace& space, int depth);

class FockState {
 public:
  /// Normalizes `amplitudes`; throws InputError on a size mismatch or zero vector.
  FockState(FockSpace space, Eigen::VectorXcd amplitudes);

  const FockSpace& space() const { return space_; }
  const Eigen::VectorXcd& amplitudes() const { return amplitudes_; }

  /// Probability that some mode sits at the cutoff n_max.
  double tail_mass() const;

 private:
  FockSpace space_;
  Eigen::VectorXcd amplitudes_;
};

FockState vacuum_state(const FockSpace& space);
/// occupations indexed by m + j.
FockState basis_state(const FockSpace& space, std::span<const int> occupations);

/// Normalized product of truncated single-mode coherent states, alpha indexed by m + j.
FockState coherent_state(const FockSpace& space, std::span<const cdouble> alpha);

/// Modes (as m values) violating |alpha_m|^2 + 6|alpha_m| + 8 <= n_max.
std::vector<int> coherent_tail_violations(const FockSpace& space, std::span<const cdouble> alpha);

cdouble expectation(const OperatorMatrix& op, const FockState& state);
/// <Op^2> - <Op>^2; throws InputError for a non-Hermitian operator.
double variance(const OperatorMatrix& op, const FockState& state);

// Matrix-free actions on amplitude vectors, O(dimension * (2j+1)).

/// (sum_m c_m a_m) psi
Eigen::VectorXcd apply_annihilator(const FockSpace& space, std::span<const cdouble> c,
                                   const Eigen::VectorXcd& psi);
/// (sum_m c_m a_m)^dagger psi
Eigen::VectorXcd apply_creator(const FockSpace& space, std::span<const cdouble> c,
                               const Eigen::VectorXcd& psi);

}  // namespace multipole
