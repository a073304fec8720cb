#include "multipole/observables.hpp"

#include <array>
#include <string>
#include <vector>

#include "multipole/errors.hpp"

namespace multipole {

namespace {

std::vector<cdouble> coefficients(const Eigen::RowVectorXcd& row) {
  return std::vector<cdouble>(row.data(), row.data() + row.size());
}

// Ladder actions of the three effective modes of T on a fixed state vector.
class EffectiveLadders {
 public:
  EffectiveLadders(const FockSpace& space, const EffectiveTransform& t) : space_(space) {
    if (t.columns() != space.modes()) throw InputError("effective transform and Fock space disagree on j");
    for (int row = 0; row < 3; ++row) rows_[row] = coefficients(t.operator_rows().row(row));
  }

  Eigen::VectorXcd lower(int mu, const Eigen::VectorXcd& psi) const {
    return apply_annihilator(space_, rows_[label_row(mu)], psi);
  }
  Eigen::VectorXcd raise(int mu, const Eigen::VectorXcd& psi) const {
    return apply_creator(space_, rows_[label_row(mu)], psi);
  }
  /// a+_p a_q psi
  Eigen::VectorXcd bilinear(int p, int q, const Eigen::VectorXcd& psi) const { return raise(p, lower(q, psi)); }

 private:
  const FockSpace& space_;
  std::array<std::vector<cdouble>, 3> rows_;
};

// (p, q) pairs of the bilinears a+_p a_q that make up X in S1 = X + X+.
constexpr std::array<std::pair<int, int>, 3> kStokesPairs{{{+1, 0}, {0, -1}, {-1, +1}}};

}  // namespace

PolarizationMatrices polarization_matrices(const FockState& state, const ModeMatrix& v) {
  const FockSpace& space = state.space();
  if (v.columns() != space.modes()) throw InputError("mode matrix and Fock space disagree on j");
  const Eigen::VectorXcd& psi = state.amplitudes();

  std::array<Eigen::VectorXcd, 3> lowered;
  std::array<Eigen::VectorXcd, 3> raised;
  for (int row = 0; row < 3; ++row) {
    const auto c = coefficients(v.entries.row(row));
    lowered[row] = apply_annihilator(space, c, psi);
    raised[row] = apply_creator(space, c, psi);
  }
  PolarizationMatrices p;
  for (int r1 = 0; r1 < 3; ++r1) {
    for (int r2 = 0; r2 < 3; ++r2) {
      p.normal(r1, r2) = lowered[r1].dot(lowered[r2]);
      p.antinormal(r1, r2) = raised[r2].dot(raised[r1]);
    }
  }
  return p;
}

double mandel_q(const FockState& state, const EffectiveTransform& t, int mu, double threshold) {
  const auto c = coefficients(t.row(mu));
  const FockSpace& space = state.space();
  const Eigen::VectorXcd lowered = apply_annihilator(space, c, state.amplitudes());
  const double mean = lowered.squaredNorm();
  if (mean <= threshold) {
    throw UndefinedQError("Mandel Q undefined for mu=" + std::to_string(mu) + ": <n> = " + std::to_string(mean));
  }
  const double second = apply_creator(space, c, lowered).squaredNorm();
  return (second - mean * mean - mean) / mean;
}

StokesOperators stokes_operators(const FockSpace& space, const EffectiveTransform& t) {
  if (t.columns() != space.modes()) throw InputError("effective transform and Fock space disagree on j");
  std::array<OperatorMatrix, 3> a{
      composite_annihilator(space, coefficients(t.operator_row(+1))),
      composite_annihilator(space, coefficients(t.operator_row(0))),
      composite_annihilator(space, coefficients(t.operator_row(-1))),
  };
  auto op = [&](int mu) -> const OperatorMatrix& { return a[label_row(mu)]; };

  OperatorMatrix x = op(kStokesPairs[0].first).adjoint() * op(kStokesPairs[0].second);
  for (std::size_t k = 1; k < kStokesPairs.size(); ++k) {
    x = x + op(kStokesPairs[k].first).adjoint() * op(kStokesPairs[k].second);
  }
  const OperatorMatrix xd = x.adjoint();
  return StokesOperators{x + xd, cdouble(0.0, -1.0) * (x - xd)};
}

StokesMeans stokes_means(const FockState& state, const EffectiveTransform& t) {
  const EffectiveLadders ladders(state.space(), t);
  const Eigen::VectorXcd& psi = state.amplitudes();
  cdouble x = 0.0;
  for (auto [p, q] : kStokesPairs) x += psi.dot(ladders.bilinear(p, q, psi));
  // <S1> = 2 Re<X>, <S2> = -i(<X> - <X>*) = 2 Im<X>
  return StokesMeans{2.0 * x.real(), 2.0 * x.imag()};
}

StokesReport stokes_variance_report(const FockState& state, const EffectiveTransform& t) {
  const EffectiveLadders ladders(state.space(), t);
  const Eigen::VectorXcd& psi = state.amplitudes();
  StokesReport r;

  // The six bilinears O_k of S1 = sum_k O_k: X terms first, then their adjoints.
  std::array<Eigen::VectorXcd, 6> applied;
  for (std::size_t k = 0; k < 3; ++k) {
    const auto [p, q] = kStokesPairs[k];
    applied[k] = ladders.bilinear(p, q, psi);
    applied[k + 3] = ladders.bilinear(q, p, psi);
  }
  auto partner = [](std::size_t k) { return k < 3 ? k + 3 : k - 3; };

  Eigen::VectorXcd s1_psi = Eigen::VectorXcd::Zero(psi.size());
  cdouble x = 0.0;
  for (std::size_t k = 0; k < 6; ++k) s1_psi += applied[k];
  for (std::size_t k = 0; k < 3; ++k) x += psi.dot(applied[k]);
  r.mean_s1 = 2.0 * x.real();
  r.mean_s2 = 2.0 * x.imag();
  r.var_s1_oracle = s1_psi.squaredNorm() - r.mean_s1 * r.mean_s1;

  double expansion = 0.0;
  for (std::size_t k = 0; k < 6; ++k) {
    const cdouble mean_k = psi.dot(applied[k]);
    for (std::size_t l = 0; l < 6; ++l) {
      const cdouble mean_l = psi.dot(applied[l]);
      // <O_k O_l> = (O_k+ psi)+ (O_l psi), and O_k+ is the partner bilinear.
      expansion += (applied[partner(k)].dot(applied[l]) - mean_k * mean_l).real();
    }
  }
  r.var_s1_moment_expansion = expansion;

  // Moments entering the far-zone formula.
  const Eigen::VectorXcd lower_plus = ladders.lower(+1, psi);
  const Eigen::VectorXcd lower_minus = ladders.lower(-1, psi);
  const double n_plus = lower_plus.squaredNorm();
  const double n_minus = lower_minus.squaredNorm();
  r.radial_occupation = ladders.lower(0, psi).squaredNorm();
  r.far_zone_assumption = r.radial_occupation <= kVacuumIntensity;

  const Eigen::VectorXcd y_psi = ladders.raise(-1, lower_plus);    // a+_{-} a_{+} psi
  const Eigen::VectorXcd yd_psi = ladders.raise(+1, lower_minus);  // a+_{+} a_{-} psi
  const cdouble y_mean = psi.dot(y_psi);
  const cdouble y_squared = yd_psi.dot(y_psi);
  const cdouble plus_minus = psi.dot(yd_psi);  // <a+_{+} a_{-}>
  const Eigen::VectorXcd n_plus_psi = ladders.raise(+1, lower_plus);
  const Eigen::VectorXcd n_minus_psi = ladders.raise(-1, lower_minus);
  const double n_plus_n_minus = n_plus_psi.dot(n_minus_psi).real();

  r.var_s1_plane_wave = 2.0 * (y_squared - y_mean * y_mean).real() +
                        2.0 * (n_plus_n_minus - std::norm(plus_minus)) + n_plus + n_minus;
  r.extra_terms = 2.0 * plus_minus.real() + n_plus + n_minus;
  r.var_s1_far_zone_formula = r.var_s1_plane_wave + r.extra_terms;
  return r;
}

}  // namespace multipole
