#include "rotquad/fock.hpp"

#include <Eigen/SparseCore>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rotquad {

namespace {
constexpr cplx kI{0.0, 1.0};
using SparseC = Eigen::SparseMatrix<cplx>;
}  // namespace

// ---------------------------------------------------------------------------
// Basis

TruncatedSpace::TruncatedSpace(int n_max, std::size_t dimension_cap) : n_max_(n_max) {
  if (n_max < 1) throw std::invalid_argument("TruncatedSpace: n_max must be >= 1");
  const std::size_t dim = dimension_for(n_max);
  if (dim > dimension_cap)
    throw std::length_error("TruncatedSpace: dimension " + std::to_string(dim) + " exceeds cap " +
                            std::to_string(dimension_cap));
  basis_.reserve(dim);
  for (int total = 0; total <= n_max; ++total)
    for (int n = 0; n <= total; ++n) basis_.push_back({total - n, n});
}

std::size_t TruncatedSpace::dimension_for(int n_max) {
  const auto n = static_cast<std::size_t>(n_max);
  return (n + 1) * (n + 2) / 2;
}

std::size_t TruncatedSpace::manifold_offset(int total) const {
  const auto t = static_cast<std::size_t>(total);
  return t * (t + 1) / 2;
}

std::size_t TruncatedSpace::index_of(int m, int n) const {
  if (m < 0 || n < 0 || m + n > n_max_) throw std::out_of_range("TruncatedSpace: state outside truncation");
  return manifold_offset(m + n) + static_cast<std::size_t>(n);
}

TruncatedSpace basis(int n_max, std::size_t dimension_cap) { return TruncatedSpace(n_max, dimension_cap); }

PhaseFunction PhaseFunction::from_values(std::vector<double> values) {
  return PhaseFunction([v = std::move(values)](int n) {
    if (n < 0 || static_cast<std::size_t>(n) >= v.size())
      throw std::out_of_range("PhaseFunction: no value for n = " + std::to_string(n));
    return v[static_cast<std::size_t>(n)];
  });
}

double PhaseFunction::operator()(int n) const { return f_ ? wrap_angle(f_(n)) : 0.0; }

// ---------------------------------------------------------------------------
// Matrix plumbing

OperatorMatrix OperatorMatrix::adjoint() const {
  OperatorMatrix out;
  out.matrix = matrix.adjoint();
  out.label = label + "^dagger";
  out.declared_hermitian = declared_hermitian;
  out.declared_unitary = declared_unitary;
  return out;
}

double off_manifold_norm(const OperatorMatrix& op, const TruncatedSpace& space) {
  double sum = 0.0;
  const auto& st = space.states();
  for (Eigen::Index c = 0; c < op.matrix.cols(); ++c) {
    const int total = st[static_cast<std::size_t>(c)].m + st[static_cast<std::size_t>(c)].n;
    const auto lo = static_cast<Eigen::Index>(space.manifold_offset(total));
    const auto hi = lo + static_cast<Eigen::Index>(space.manifold_size(total));
    sum += op.matrix.col(c).head(lo).squaredNorm();
    sum += op.matrix.col(c).tail(op.matrix.rows() - hi).squaredNorm();
  }
  return std::sqrt(sum);
}

Eigen::MatrixXcd manifold_block(const OperatorMatrix& op, const TruncatedSpace& space, int total) {
  const auto off = static_cast<Eigen::Index>(space.manifold_offset(total));
  const auto size = static_cast<Eigen::Index>(space.manifold_size(total));
  return op.matrix.block(off, off, size, size);
}

namespace {

void check_dimension(const OperatorMatrix& op, const TruncatedSpace& space) {
  const auto dim = static_cast<Eigen::Index>(space.dimension());
  if (op.matrix.rows() != dim || op.matrix.cols() != dim)
    throw std::invalid_argument("operator '" + op.label + "' does not match the truncated space");
}

Eigen::Index nonzeros(const Eigen::MatrixXcd& m) {
  return (m.array() != cplx{}).count();
}

}  // namespace

void verify(OperatorMatrix& op, const TruncatedSpace& space) {
  check_dimension(op, space);
  if (off_manifold_norm(op, space) == 0.0) {
    double herm = 0.0, unit = 0.0;
    for (int total = 0; total <= space.n_max(); ++total) {
      const Eigen::MatrixXcd b = manifold_block(op, space, total);
      herm += (b - b.adjoint()).squaredNorm();
      unit += (b.adjoint() * b - Eigen::MatrixXcd::Identity(b.rows(), b.cols())).squaredNorm();
    }
    op.hermitian_residual = std::sqrt(herm);
    op.unitary_residual = std::sqrt(unit);
    return;
  }
  const auto& m = op.matrix;
  op.hermitian_residual = (m - m.adjoint()).norm();
  const Eigen::MatrixXcd gram = nonzeros(m) <= 4 * m.rows()
                                    ? Eigen::MatrixXcd(m.adjoint() * m.sparseView())
                                    : Eigen::MatrixXcd(m.adjoint() * m);
  op.unitary_residual = (gram - Eigen::MatrixXcd::Identity(m.rows(), m.cols())).norm();
}

OperatorMatrix multiply(const OperatorMatrix& a, const OperatorMatrix& b, const TruncatedSpace& space) {
  check_dimension(a, space);
  check_dimension(b, space);
  OperatorMatrix out;
  out.label = a.label + "*" + b.label;
  if (off_manifold_norm(a, space) == 0.0 && off_manifold_norm(b, space) == 0.0) {
    out.matrix = Eigen::MatrixXcd::Zero(a.matrix.rows(), a.matrix.cols());
    for (int total = 0; total <= space.n_max(); ++total) {
      const auto off = static_cast<Eigen::Index>(space.manifold_offset(total));
      const auto size = static_cast<Eigen::Index>(space.manifold_size(total));
      out.matrix.block(off, off, size, size) =
          a.matrix.block(off, off, size, size) * b.matrix.block(off, off, size, size);
    }
    return out;
  }
  const Eigen::Index sparse_limit = 4 * a.matrix.rows();
  if (nonzeros(b.matrix) <= sparse_limit)
    out.matrix = a.matrix * b.matrix.sparseView();
  else if (nonzeros(a.matrix) <= sparse_limit)
    out.matrix = a.matrix.sparseView() * b.matrix;
  else
    out.matrix = a.matrix * b.matrix;
  return out;
}

// ---------------------------------------------------------------------------
// Ladder and phase operators

namespace {

SparseC annihilation_sparse(Mode j, const TruncatedSpace& space) {
  std::vector<Eigen::Triplet<cplx>> entries;
  entries.reserve(space.dimension());
  const auto& st = space.states();
  for (std::size_t c = 0; c < st.size(); ++c) {
    const auto [m, n] = st[c];
    if (j == Mode::Plus && m > 0)
      entries.emplace_back(static_cast<int>(space.index_of(m - 1, n)), static_cast<int>(c), std::sqrt(double(m)));
    if (j == Mode::Minus && n > 0)
      entries.emplace_back(static_cast<int>(space.index_of(m, n - 1)), static_cast<int>(c), std::sqrt(double(n)));
  }
  const auto dim = static_cast<Eigen::Index>(space.dimension());
  SparseC a(dim, dim);
  a.setFromTriplets(entries.begin(), entries.end());
  return a;
}

SparseC susskind_glogower_sparse(Mode j, const TruncatedSpace& space) {
  const SparseC a = annihilation_sparse(j, space);
  // (a^dagger a + 1)^{-1/2} is diagonal in the number basis.
  const SparseC number = SparseC(a.adjoint()) * a;
  Eigen::VectorXcd inv_sqrt(number.rows());
  for (Eigen::Index k = 0; k < number.rows(); ++k)
    inv_sqrt(k) = 1.0 / std::sqrt(number.coeff(k, k) + 1.0);
  return inv_sqrt.asDiagonal() * a;
}

}  // namespace

OperatorMatrix annihilation(Mode j, const TruncatedSpace& space) {
  OperatorMatrix op;
  op.matrix = annihilation_sparse(j, space);
  op.label = j == Mode::Plus ? "a_plus" : "a_minus";
  return op;
}

OperatorMatrix creation(Mode j, const TruncatedSpace& space) { return annihilation(j, space).adjoint(); }

OperatorMatrix susskind_glogower(Mode j, const TruncatedSpace& space) {
  OperatorMatrix op;
  op.matrix = susskind_glogower_sparse(j, space);
  op.label = j == Mode::Plus ? "U_plus" : "U_minus";
  return op;
}

OperatorMatrix phase_difference_unitary(const TruncatedSpace& space, const PhaseFunction& phi) {
  const SparseC up = susskind_glogower_sparse(Mode::Plus, space);
  const SparseC um = susskind_glogower_sparse(Mode::Minus, space);
  OperatorMatrix op;
  op.matrix = SparseC(up.adjoint()) * um;
  // Completion |0,n><n,0| e^{i phi(n)} closes each manifold into a cycle.
  for (int n = 0; n <= space.n_max(); ++n) {
    const auto row = static_cast<Eigen::Index>(space.index_of(0, n));
    const auto col = static_cast<Eigen::Index>(space.index_of(n, 0));
    op.matrix(row, col) += std::exp(kI * phi(n));
  }
  op.label = "T";
  op.declared_unitary = true;
  return op;
}

namespace {

// Phase of the wrap entry of a manifold block, after checking that the block
// is the cyclic shift |k><k+1| plus e^{i phi} |last><0|.
double cyclic_block_phase(const Eigen::MatrixXcd& block, int total) {
  const Eigen::Index n = block.rows();
  const cplx wrap = block(n - 1, 0);
  Eigen::MatrixXcd expected = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index k = 0; k + 1 < n; ++k) expected(k, k + 1) = 1.0;
  expected(n - 1, 0) += wrap;
  if ((block - expected).norm() > 1e-12 || std::abs(std::abs(wrap) - 1.0) > 1e-12)
    throw std::runtime_error("orientation_family: manifold " + std::to_string(total) +
                             " block is not a phased cyclic shift");
  return std::arg(wrap);
}

}  // namespace

OrientationFamily orientation_family(const TruncatedSpace& space, const PhaseFunction& phi) {
  OrientationFamily fam;
  fam.phase_difference = phase_difference_unitary(space, phi);
  const auto dim = static_cast<Eigen::Index>(space.dimension());
  fam.exp_orientation.matrix = Eigen::MatrixXcd::Zero(dim, dim);
  fam.orientation.matrix = Eigen::MatrixXcd::Zero(dim, dim);

  constexpr double pi = std::numbers::pi;
  for (int total = 0; total <= space.n_max(); ++total) {
    const Eigen::MatrixXcd block = manifold_block(fam.phase_difference, space, total);
    const double wrap_phase = cyclic_block_phase(block, total);
    const Eigen::Index size = block.rows();
    const double nd = static_cast<double>(size);

    // Eigenpairs: lambda_j = e^{i a_j}, a_j = (wrap_phase + 2 pi j) / size,
    // eigenvector components lambda_j^k / sqrt(size).
    Eigen::MatrixXcd vectors(size, size);
    Eigen::VectorXcd root(size);
    Eigen::VectorXcd half_phase(size);
    for (Eigen::Index j = 0; j < size; ++j) {
      const double a = (wrap_phase + 2.0 * pi * static_cast<double>(j)) / nd;
      for (Eigen::Index k = 0; k < size; ++k) vectors(k, j) = std::polar(1.0 / std::sqrt(nd), a * static_cast<double>(k));
      double phase = std::remainder(a, 2.0 * pi);
      if (phase <= -pi + 1e-12) phase = pi;  // principal branch (-pi, pi]
      half_phase(j) = 0.5 * phase;
      root(j) = std::exp(kI * (0.5 * phase));
    }
    const auto off = static_cast<Eigen::Index>(space.manifold_offset(total));
    fam.exp_orientation.matrix.block(off, off, size, size) = vectors * root.asDiagonal() * vectors.adjoint();
    fam.orientation.matrix.block(off, off, size, size) = vectors * half_phase.asDiagonal() * vectors.adjoint();
  }
  fam.exp_orientation.label = "U";
  fam.exp_orientation.declared_unitary = true;
  fam.orientation.label = "theta";
  fam.orientation.declared_hermitian = true;
  return fam;
}

OperatorMatrix orientation_unitary(const TruncatedSpace& space, const PhaseFunction& phi) {
  return orientation_family(space, phi).exp_orientation;
}

OperatorMatrix orientation_operator(const TruncatedSpace& space, const PhaseFunction& phi) {
  return orientation_family(space, phi).orientation;
}

OperatorMatrix rotating_quadrature_op(const QuadratureParams& q, const TruncatedSpace& space,
                                      const PhaseFunction& phi) {
  return rotating_quadrature_op(q, space, orientation_unitary(space, phi));
}

OperatorMatrix rotating_quadrature_op(const QuadratureParams& q, const TruncatedSpace& space,
                                      const OperatorMatrix& exp_orientation) {
  check_dimension(exp_orientation, space);
  const SparseC ap = annihilation_sparse(Mode::Plus, space);
  const SparseC am = annihilation_sparse(Mode::Minus, space);
  const Eigen::MatrixXcd& u = exp_orientation.matrix;
  // Ordering as written: U to the left of a_{+1}, U^dagger to the left of a_{-1}.
  const Eigen::MatrixXcd inner = u * ap - Eigen::MatrixXcd(u.adjoint()) * am;
  const cplx prefactor = kI / std::numbers::sqrt2 * std::exp(-kI * q.psi_L);
  OperatorMatrix op;
  op.matrix = prefactor * inner;
  op.matrix += Eigen::MatrixXcd(op.matrix.adjoint());
  op.label = "X_rot";
  op.declared_hermitian = true;
  return op;
}

// ---------------------------------------------------------------------------
// States and expectations

double poisson_tail(double mu, int n_max) {
  if (!(mu >= 0.0) || !std::isfinite(mu)) throw std::invalid_argument("poisson_tail: mean must be >= 0");
  if (mu == 0.0) return 0.0;
  double sum = 0.0;
  for (int k = n_max + 1;; ++k) {
    const double term = std::exp(-mu + k * std::log(mu) - std::lgamma(k + 1.0));
    sum += term;
    if (k > mu && (term <= 1e-18 * sum || term < 1e-300)) break;
  }
  return sum;
}

namespace {

std::vector<cplx> coherent_amplitudes(cplx alpha, int n_max) {
  std::vector<cplx> c(static_cast<std::size_t>(n_max) + 1);
  c[0] = std::exp(-0.5 * std::norm(alpha));
  for (int k = 1; k <= n_max; ++k) c[static_cast<std::size_t>(k)] = c[static_cast<std::size_t>(k) - 1] * alpha / std::sqrt(double(k));
  return c;
}

}  // namespace

TwoModeState coherent_state(cplx a_plus, cplx a_minus, const TruncatedSpace& space, double tail_tolerance) {
  const double tail = poisson_tail(std::norm(a_plus) + std::norm(a_minus), space.n_max());
  if (tail > tail_tolerance)
    throw std::invalid_argument("coherent_state: truncation tail " + std::to_string(tail) +
                                " exceeds tolerance; raise n_max");
  const auto cp = coherent_amplitudes(a_plus, space.n_max());
  const auto cm = coherent_amplitudes(a_minus, space.n_max());
  TwoModeState st;
  st.coefficients.resize(static_cast<Eigen::Index>(space.dimension()));
  const auto& states = space.states();
  for (std::size_t k = 0; k < states.size(); ++k)
    st.coefficients(static_cast<Eigen::Index>(k)) =
        cp[static_cast<std::size_t>(states[k].m)] * cm[static_cast<std::size_t>(states[k].n)];
  st.coefficients /= st.coefficients.norm();
  st.norm = st.coefficients.norm();
  st.tail_mass = tail;
  return st;
}

cplx expectation(const OperatorMatrix& a, const TwoModeState& st) {
  if (a.matrix.cols() != st.coefficients.size())
    throw std::invalid_argument("expectation: dimension mismatch");
  return st.coefficients.dot(a.matrix * st.coefficients);
}

cplx commutator_expectation(const OperatorMatrix& a, const OperatorMatrix& b, const TwoModeState& st) {
  const auto dim = st.coefficients.size();
  if (a.matrix.rows() != dim || a.matrix.cols() != dim || b.matrix.rows() != dim || b.matrix.cols() != dim)
    throw std::invalid_argument("commutator_expectation: dimension mismatch");
  const Eigen::VectorXcd& v = st.coefficients;
  // <v|AB|v> - <v|BA|v> = <A^dagger v|B v> - <B^dagger v|A v>
  const Eigen::VectorXcd av = a.matrix * v;
  const Eigen::VectorXcd bv = b.matrix * v;
  const Eigen::VectorXcd adv = a.matrix.adjoint() * v;
  const Eigen::VectorXcd bdv = b.matrix.adjoint() * v;
  return adv.dot(bv) - bdv.dot(av);
}

}  // namespace rotquad
