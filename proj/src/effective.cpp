#include "multipole/effective.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "multipole/errors.hpp"

namespace multipole {

namespace {

constexpr double kClusterTolerance = 1e-13;
constexpr double kOverlapTie = 1e-12;
// Below this relative eigenvalue the projection u^dagger V is roundoff noise.
constexpr double kNoiseEigenvalue = 1e-20;

void fix_phase(Eigen::Ref<Eigen::Vector3cd> u) {
  const double largest = u.cwiseAbs().maxCoeff();
  int k = 0;
  while (std::abs(u(k)) < largest * (1.0 - 1e-12)) ++k;
  u *= std::conj(u(k)) / std::abs(u(k));
}

struct Cluster {
  std::vector<int> eigen_index;
  double value = 0.0;
  std::vector<int> rows;  // assigned label rows
};

// Removes the components of `x` along the given orthonormal rows (twice, for stability).
Eigen::RowVectorXcd orthogonalize(Eigen::RowVectorXcd x, const std::vector<Eigen::RowVectorXcd>& basis) {
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& b : basis) x -= (x * b.adjoint())(0, 0) * b;
  }
  return x;
}

}  // namespace

FluctuationMatrix fluctuation_matrix(const ModeMatrix& v) {
  return FluctuationMatrix{v.entries * v.entries.adjoint()};
}

Diagonalization diagonalize_fluctuation(const FluctuationMatrix& f, double w_epsilon) {
  const Eigen::Matrix3cd h = 0.5 * (f.entries + f.entries.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3cd> solver(h);
  if (solver.info() != Eigen::Success) throw DarkPointError("eigensolver failed on fluctuation matrix");
  const Eigen::Vector3d values = solver.eigenvalues();
  const Eigen::Matrix3cd vectors = solver.eigenvectors();

  const double wmax = values.maxCoeff();
  if (!(wmax >= kDarkFloor)) {
    throw DarkPointError("fully dark point: all fluctuation eigenvalues below " + std::to_string(kDarkFloor));
  }
  if (values.minCoeff() < -1e-12 * values.cwiseAbs().sum()) {
    throw InputError("fluctuation matrix is not positive semidefinite");
  }

  // Descending eigenvalue order, grouped into degenerate clusters.
  std::array<int, 3> order{2, 1, 0};
  std::vector<Cluster> clusters;
  for (int idx : order) {
    if (!clusters.empty() &&
        std::abs(clusters.back().value - values(idx)) <= kClusterTolerance * wmax) {
      clusters.back().eigen_index.push_back(idx);
    } else {
      clusters.push_back(Cluster{{idx}, values(idx), {}});
    }
  }

  std::array<bool, 3> row_taken{};
  for (int step = 0; step < 3; ++step) {
    int best_c = -1;
    int best_row = -1;
    double best = -1.0;
    for (int c = 0; c < static_cast<int>(clusters.size()); ++c) {
      if (clusters[c].rows.size() >= clusters[c].eigen_index.size()) continue;
      for (int row = 0; row < 3; ++row) {
        if (row_taken[row]) continue;
        double overlap = 0.0;
        for (int idx : clusters[c].eigen_index) overlap += std::norm(vectors(row, idx));
        if (overlap > best + kOverlapTie) {
          best = overlap;
          best_c = c;
          best_row = row;
        }
      }
    }
    clusters[best_c].rows.push_back(best_row);
    row_taken[best_row] = true;
  }

  Diagonalization d;
  for (auto& cluster : clusters) {
    std::sort(cluster.rows.begin(), cluster.rows.end());
    const int k = static_cast<int>(cluster.rows.size());
    Eigen::MatrixXcd q(3, k);
    Eigen::MatrixXcd e = Eigen::MatrixXcd::Zero(3, k);
    for (int i = 0; i < k; ++i) {
      q.col(i) = vectors.col(cluster.eigen_index[i]);
      e(cluster.rows[i], i) = 1.0;
    }
    // Orthogonal Procrustes: the unitary inside span(q) closest to the helicity vectors.
    const Eigen::MatrixXcd overlap = q.adjoint() * e;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(overlap, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Eigen::MatrixXcd basis = q * (svd.matrixU() * svd.matrixV().adjoint());
    for (int i = 0; i < k; ++i) d.U.col(cluster.rows[i]) = basis.col(i);
  }

  for (int row = 0; row < 3; ++row) {
    fix_phase(d.U.col(row));
    d.W[row] = std::max(0.0, (d.U.col(row).adjoint() * h * d.U.col(row))(0, 0).real());
  }
  const double wtop = *std::max_element(d.W.begin(), d.W.end());
  for (int row = 0; row < 3; ++row) d.suppressed[row] = d.W[row] < w_epsilon * wtop;
  return d;
}

EffectiveTransform::EffectiveTransform(int j, Eigen::Matrix3cd u, std::array<double, 3> w,
                                       std::array<bool, 3> suppressed, Eigen::MatrixXcd rows)
    : j_(j), u_(std::move(u)), w_(w), suppressed_(suppressed), rows_(std::move(rows)) {}

Eigen::RowVectorXcd EffectiveTransform::row(int mu) const {
  if (suppressed(mu)) {
    throw SuppressedModeError("effective mode mu=" + std::to_string(mu) + " is suppressed (W=" +
                              std::to_string(W(mu)) + ")");
  }
  return rows_.row(label_row(mu));
}

EffectiveTransform effective_transform(const ModeMatrix& v, const Diagonalization& d,
                                       std::span<const int> required) {
  for (int mu : required) {
    if (mu < -1 || mu > 1) throw InputError("polarization label must be -1, 0 or +1");
    if (d.suppressed[label_row(mu)]) {
      throw SuppressedModeError("effective mode mu=" + std::to_string(mu) + " requested but suppressed");
    }
  }
  const int n = v.columns();
  Eigen::MatrixXcd rows = Eigen::MatrixXcd::Zero(3, n);
  std::vector<Eigen::RowVectorXcd> done;
  for (int row = 0; row < 3; ++row) {
    if (d.suppressed[row]) continue;
    rows.row(row) = (d.U.col(row).adjoint() * v.entries) / std::sqrt(d.W[row]);
    done.push_back(rows.row(row));
  }

  const double wmax = *std::max_element(d.W.begin(), d.W.end());
  for (int row = 0; row < 3; ++row) {
    if (!d.suppressed[row]) continue;
    Eigen::RowVectorXcd candidate = Eigen::RowVectorXcd::Zero(n);
    if (d.W[row] > kNoiseEigenvalue * wmax) {
      candidate = orthogonalize(d.U.col(row).adjoint() * v.entries, done);
    }
    if (candidate.norm() < 1e-6 * std::sqrt(std::max(d.W[row], 0.0)) || candidate.norm() == 0.0) {
      // Vacuum-mode completion from the standard basis.
      double best = -1.0;
      for (int m = 0; m < n; ++m) {
        Eigen::RowVectorXcd unit = Eigen::RowVectorXcd::Zero(n);
        unit(m) = 1.0;
        Eigen::RowVectorXcd residual = orthogonalize(unit, done);
        if (residual.norm() > best + 1e-12) {
          best = residual.norm();
          candidate = residual;
        }
      }
    }
    rows.row(row) = candidate / candidate.norm();
    done.push_back(rows.row(row));
  }
  return EffectiveTransform(v.j, d.U, d.W, d.suppressed, std::move(rows));
}

EffectiveTransform effective_transform(const ModeMatrix& v, double w_epsilon) {
  return effective_transform(v, diagonalize_fluctuation(fluctuation_matrix(v), w_epsilon));
}

CoherentParameters coherent_parameters(const EffectiveTransform& t, std::span<const cdouble> alpha) {
  if (static_cast<int>(alpha.size()) != t.columns()) {
    throw InputError("coherent amplitude vector has length " + std::to_string(alpha.size()) +
                     ", expected 2j+1 = " + std::to_string(t.columns()));
  }
  const Eigen::Map<const Eigen::VectorXcd> a(alpha.data(), static_cast<Eigen::Index>(alpha.size()));
  CoherentParameters out;
  for (int row = 0; row < 3; ++row) {
    out.suppressed[row] = t.suppressed()[row];
    if (!out.suppressed[row]) out.value[row] = (t.operator_rows().row(row) * a)(0, 0);
  }
  return out;
}

ModeMatrix longitude_gauge(const ModeMatrix& v, int sign) {
  ModeMatrix out = v;
  for (int row = 0; row < 3; ++row) {
    out.entries.row(row) *= std::polar(1.0, sign * row_label(row) * v.point.phi);
  }
  return out;
}

double imaginary_fraction(const FluctuationMatrix& f) {
  const double scale = f.entries.cwiseAbs().maxCoeff();
  if (scale == 0.0) return 0.0;
  return f.entries.imag().cwiseAbs().maxCoeff() / scale;
}

}  // namespace multipole
