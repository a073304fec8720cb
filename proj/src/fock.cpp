#include "multipole/fock.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "multipole/errors.hpp"

namespace multipole {

namespace {

void require_same_space(const FockSpace& a, const FockSpace& b) {
  if (!(a == b)) throw InputError("operands live on different Fock spaces");
}

void require_coefficients(const FockSpace& space, std::span<const cdouble> c) {
  if (static_cast<int>(c.size()) != space.modes()) {
    throw InputError("coefficient vector has length " + std::to_string(c.size()) +
                     ", expected 2j+1 = " + std::to_string(space.modes()));
  }
}

}  // namespace

std::size_t FockSpace::dimension_for(int j, int n_max) {
  std::size_t dim = 1;
  const auto base = static_cast<std::size_t>(n_max + 1);
  for (int k = 0; k < 2 * j + 1; ++k) {
    if (dim > std::numeric_limits<std::size_t>::max() / base) return 0;
    dim *= base;
  }
  return dim;
}

FockSpace::FockSpace(int j, int n_max, std::size_t max_dimension) : j_(j), n_max_(n_max) {
  if (j < 0) throw InputError("Fock space needs j >= 0");
  if (n_max < 1) throw InputError("Fock space needs n_max >= 1");
  dimension_ = dimension_for(j, n_max);
  if (dimension_ == 0 || dimension_ > max_dimension) {
    throw DimensionError("Fock space dimension (n_max+1)^(2j+1) with j=" + std::to_string(j) +
                         ", n_max=" + std::to_string(n_max) + " exceeds the limit of " +
                         std::to_string(max_dimension));
  }
  strides_.assign(modes(), 1);
  for (int k = modes() - 2; k >= 0; --k) strides_[k] = strides_[k + 1] * static_cast<std::size_t>(n_max + 1);
}

std::vector<int> FockSpace::occupations(std::size_t index) const {
  std::vector<int> occ(modes());
  for (int m = -j_; m <= j_; ++m) occ[m + j_] = occupation(index, m);
  return occ;
}

std::size_t FockSpace::index_of(std::span<const int> occupations) const {
  if (static_cast<int>(occupations.size()) != modes()) throw InputError("occupation tuple has wrong length");
  std::size_t index = 0;
  for (int k = 0; k < modes(); ++k) {
    if (occupations[k] < 0 || occupations[k] > n_max_) {
      throw InputError("occupation " + std::to_string(occupations[k]) + " outside [0, n_max]");
    }
    index += static_cast<std::size_t>(occupations[k]) * strides_[k];
  }
  return index;
}

int FockSpace::max_occupation(std::size_t index) const {
  int top = 0;
  for (int m = -j_; m <= j_; ++m) top = std::max(top, occupation(index, m));
  return top;
}

OperatorMatrix::OperatorMatrix(FockSpace space, SparseOperator matrix)
    : space_(std::move(space)), matrix_(std::move(matrix)) {
  const auto dim = static_cast<Eigen::Index>(space_.dimension());
  if (matrix_.rows() != dim || matrix_.cols() != dim) throw InputError("operator dimension does not match space");
}

OperatorMatrix OperatorMatrix::adjoint() const {
  return OperatorMatrix(space_, SparseOperator(matrix_.adjoint()));
}

bool OperatorMatrix::is_hermitian(double tolerance) const {
  const SparseOperator diff = matrix_ - SparseOperator(matrix_.adjoint());
  double worst = 0.0;
  for (int k = 0; k < diff.outerSize(); ++k) {
    for (SparseOperator::InnerIterator it(diff, k); it; ++it) worst = std::max(worst, std::abs(it.value()));
  }
  return worst <= tolerance;
}

OperatorMatrix operator+(const OperatorMatrix& a, const OperatorMatrix& b) {
  require_same_space(a.space_, b.space_);
  return OperatorMatrix(a.space_, a.matrix_ + b.matrix_);
}

OperatorMatrix operator-(const OperatorMatrix& a, const OperatorMatrix& b) {
  require_same_space(a.space_, b.space_);
  return OperatorMatrix(a.space_, a.matrix_ - b.matrix_);
}

OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b) {
  require_same_space(a.space_, b.space_);
  return OperatorMatrix(a.space_, SparseOperator(a.matrix_ * b.matrix_));
}

OperatorMatrix operator*(cdouble s, const OperatorMatrix& a) {
  return OperatorMatrix(a.space_, SparseOperator(s * a.matrix_));
}

OperatorMatrix commutator(const OperatorMatrix& a, const OperatorMatrix& b) { return a * b - b * a; }

OperatorMatrix identity_operator(const FockSpace& space) {
  const auto dim = static_cast<Eigen::Index>(space.dimension());
  SparseOperator id(dim, dim);
  id.setIdentity();
  return OperatorMatrix(space, std::move(id));
}

OperatorMatrix mode_annihilator(const FockSpace& space, int m) {
  if (std::abs(m) > space.j()) {
    throw InputError("mode label m=" + std::to_string(m) + " outside [-j, j] for j=" + std::to_string(space.j()));
  }
  const auto dim = space.dimension();
  const auto step = space.stride(m);
  std::vector<Eigen::Triplet<cdouble>> entries;
  entries.reserve(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    const int n = space.occupation(i, m);
    if (n > 0) entries.emplace_back(static_cast<int>(i - step), static_cast<int>(i), std::sqrt(double(n)));
  }
  SparseOperator a(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  a.setFromTriplets(entries.begin(), entries.end());
  return OperatorMatrix(space, std::move(a));
}

OperatorMatrix composite_annihilator(const FockSpace& space, std::span<const cdouble> c) {
  require_coefficients(space, c);
  const auto dim = space.dimension();
  std::vector<Eigen::Triplet<cdouble>> entries;
  entries.reserve(dim * c.size());
  for (int m = -space.j(); m <= space.j(); ++m) {
    const cdouble coeff = c[m + space.j()];
    if (coeff == 0.0) continue;
    const auto step = space.stride(m);
    for (std::size_t i = 0; i < dim; ++i) {
      const int n = space.occupation(i, m);
      if (n > 0) entries.emplace_back(static_cast<int>(i - step), static_cast<int>(i), coeff * std::sqrt(double(n)));
    }
  }
  SparseOperator a(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  a.setFromTriplets(entries.begin(), entries.end());
  return OperatorMatrix(space, std::move(a));
}

OperatorMatrix number_operator(const OperatorMatrix& annihilator) { return annihilator.adjoint() * annihilator; }

OperatorMatrix protected_projector(const FockSpace& space, int depth) {
  const auto dim = space.dimension();
  std::vector<Eigen::Triplet<cdouble>> entries;
  for (std::size_t i = 0; i < dim; ++i) {
    if (space.max_occupation(i) <= space.n_max() - depth) entries.emplace_back(int(i), int(i), 1.0);
  }
  SparseOperator p(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  p.setFromTriplets(entries.begin(), entries.end());
  return OperatorMatrix(space, std::move(p));
}

FockState::FockState(FockSpace space, Eigen::VectorXcd amplitudes)
    : space_(std::move(space)), amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() != static_cast<Eigen::Index>(space_.dimension())) {
    throw InputError("state vector length does not match Fock space dimension");
  }
  const double norm = amplitudes_.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) throw InputError("state vector has zero or non-finite norm");
  amplitudes_ /= norm;
}

double FockState::tail_mass() const {
  double mass = 0.0;
  for (std::size_t i = 0; i < space_.dimension(); ++i) {
    if (space_.max_occupation(i) == space_.n_max()) mass += std::norm(amplitudes_(static_cast<Eigen::Index>(i)));
  }
  return mass;
}

FockState vacuum_state(const FockSpace& space) {
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(space.dimension()));
  psi(0) = 1.0;
  return FockState(space, std::move(psi));
}

FockState basis_state(const FockSpace& space, std::span<const int> occupations) {
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(space.dimension()));
  psi(static_cast<Eigen::Index>(space.index_of(occupations))) = 1.0;
  return FockState(space, std::move(psi));
}

FockState coherent_state(const FockSpace& space, std::span<const cdouble> alpha) {
  require_coefficients(space, alpha);
  const int levels = space.n_max() + 1;
  std::vector<std::vector<cdouble>> single(space.modes(), std::vector<cdouble>(levels));
  for (int k = 0; k < space.modes(); ++k) {
    // Poissonian amplitudes alpha^n / sqrt(n!); overall normalization applied below.
    single[k][0] = 1.0;
    for (int n = 1; n < levels; ++n) single[k][n] = single[k][n - 1] * alpha[k] / std::sqrt(double(n));
  }
  Eigen::VectorXcd psi(static_cast<Eigen::Index>(space.dimension()));
  for (std::size_t i = 0; i < space.dimension(); ++i) {
    cdouble amp = 1.0;
    for (int m = -space.j(); m <= space.j(); ++m) amp *= single[m + space.j()][space.occupation(i, m)];
    psi(static_cast<Eigen::Index>(i)) = amp;
  }
  return FockState(space, std::move(psi));
}

std::vector<int> coherent_tail_violations(const FockSpace& space, std::span<const cdouble> alpha) {
  require_coefficients(space, alpha);
  std::vector<int> bad;
  for (int m = -space.j(); m <= space.j(); ++m) {
    const double a = std::abs(alpha[m + space.j()]);
    if (a * a + 6.0 * a + 8.0 > space.n_max()) bad.push_back(m);
  }
  return bad;
}

cdouble expectation(const OperatorMatrix& op, const FockState& state) {
  require_same_space(op.space(), state.space());
  const Eigen::VectorXcd applied = op.matrix() * state.amplitudes();
  return state.amplitudes().dot(applied);
}

double variance(const OperatorMatrix& op, const FockState& state) {
  require_same_space(op.space(), state.space());
  if (!op.is_hermitian()) throw InputError("variance requires a Hermitian operator");
  const Eigen::VectorXcd applied = op.matrix() * state.amplitudes();
  const double mean = state.amplitudes().dot(applied).real();
  return applied.squaredNorm() - mean * mean;
}

Eigen::VectorXcd apply_annihilator(const FockSpace& space, std::span<const cdouble> c,
                                   const Eigen::VectorXcd& psi) {
  require_coefficients(space, c);
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(psi.size());
  for (int m = -space.j(); m <= space.j(); ++m) {
    const cdouble coeff = c[m + space.j()];
    if (coeff == 0.0) continue;
    const auto step = space.stride(m);
    for (std::size_t i = 0; i < space.dimension(); ++i) {
      const int n = space.occupation(i, m);
      if (n > 0) out(Eigen::Index(i - step)) += coeff * std::sqrt(double(n)) * psi(Eigen::Index(i));
    }
  }
  return out;
}

Eigen::VectorXcd apply_creator(const FockSpace& space, std::span<const cdouble> c, const Eigen::VectorXcd& psi) {
  require_coefficients(space, c);
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(psi.size());
  for (int m = -space.j(); m <= space.j(); ++m) {
    const cdouble coeff = std::conj(c[m + space.j()]);
    if (coeff == 0.0) continue;
    const auto step = space.stride(m);
    for (std::size_t i = 0; i < space.dimension(); ++i) {
      const int n = space.occupation(i, m);
      if (n < space.n_max()) out(Eigen::Index(i + step)) += coeff * std::sqrt(double(n + 1)) * psi(Eigen::Index(i));
    }
  }
  return out;
}

}  // namespace multipole
