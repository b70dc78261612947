#pragma once

// Two-mode Fock space truncated by total excitation N = m + n <= n_max.
//
// States are grouped by manifold N; inside a manifold they run
// (N,0), (N-1,1), ..., (0,N). The phase-difference unitary maps each manifold
// onto itself as a cyclic shift, so its square root and logarithm are exact
// blockwise operations.

#include <Eigen/Dense>
#include <complex>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rotquad/classical.hpp"

namespace rotquad {

struct FockBasisIndex {
  int m = 0;  // occupation of mode +1
  int n = 0;  // occupation of mode -1
  bool operator==(const FockBasisIndex&) const = default;
};

class TruncatedSpace {
 public:
  static constexpr std::size_t kDefaultDimensionCap = 5000;

  explicit TruncatedSpace(int n_max, std::size_t dimension_cap = kDefaultDimensionCap);

  int n_max() const { return n_max_; }
  std::size_t dimension() const { return basis_.size(); }
  const std::vector<FockBasisIndex>& states() const { return basis_; }

  static std::size_t dimension_for(int n_max);
  std::size_t index_of(int m, int n) const;
  std::size_t manifold_offset(int total) const;
  std::size_t manifold_size(int total) const { return static_cast<std::size_t>(total) + 1; }

  bool operator==(const TruncatedSpace& o) const { return n_max_ == o.n_max_; }

 private:
  int n_max_;
  std::vector<FockBasisIndex> basis_;
};

TruncatedSpace basis(int n_max, std::size_t dimension_cap = TruncatedSpace::kDefaultDimensionCap);

/// phi(n) on the naturals, values wrapped to (-pi, pi].
class PhaseFunction {
 public:
  PhaseFunction() = default;  // phi == 0
  explicit PhaseFunction(std::function<double(int)> f) : f_(std::move(f)) {}
  static PhaseFunction from_values(std::vector<double> values);

  double operator()(int n) const;

 private:
  std::function<double(int)> f_;
};

struct OperatorMatrix {
  Eigen::MatrixXcd matrix;
  std::string label;
  // Declared by the builder; residuals are filled only by verify().
  bool declared_hermitian = false;
  bool declared_unitary = false;
  std::optional<double> hermitian_residual;
  std::optional<double> unitary_residual;

  Eigen::Index dimension() const { return matrix.rows(); }
  OperatorMatrix adjoint() const;
};

/// Frobenius norms (upper bounds of the operator norm) of A - A^dagger and
/// A^dagger A - I, stored into the metadata. Block-diagonal operators are
/// checked blockwise.
void verify(OperatorMatrix& op, const TruncatedSpace& space);

/// Frobenius norm of all entries coupling different manifolds.
double off_manifold_norm(const OperatorMatrix& op, const TruncatedSpace& space);

/// Manifold-N diagonal block.
Eigen::MatrixXcd manifold_block(const OperatorMatrix& op, const TruncatedSpace& space, int total);

/// A B, blockwise when both factors are manifold block diagonal.
OperatorMatrix multiply(const OperatorMatrix& a, const OperatorMatrix& b, const TruncatedSpace& space);

OperatorMatrix annihilation(Mode j, const TruncatedSpace& space);
OperatorMatrix creation(Mode j, const TruncatedSpace& space);

/// (a_j^dagger a_j + 1)^{-1/2} a_j.
OperatorMatrix susskind_glogower(Mode j, const TruncatedSpace& space);

/// U_{+1}^dagger U_{-1} + sum_n |0,n><n,0| e^{i phi(n)}.
OperatorMatrix phase_difference_unitary(const TruncatedSpace& space, const PhaseFunction& phi = {});

struct OrientationFamily {
  OperatorMatrix phase_difference;  // T
  OperatorMatrix exp_orientation;   // U = T^{1/2}, principal branch
  OperatorMatrix orientation;       // theta = (1/i) ln U
};

/// T, its principal square root and logarithm. Each manifold block of T is a
/// cyclic shift closed by one phase, diagonalized by its Fourier eigenbasis.
OrientationFamily orientation_family(const TruncatedSpace& space, const PhaseFunction& phi = {});

OperatorMatrix orientation_unitary(const TruncatedSpace& space, const PhaseFunction& phi = {});
OperatorMatrix orientation_operator(const TruncatedSpace& space, const PhaseFunction& phi = {});

/// (i/sqrt2) e^{-i psi} (U a_{+1} - U^dagger a_{-1}) + H.c.
OperatorMatrix rotating_quadrature_op(const QuadratureParams& q, const TruncatedSpace& space,
                                      const PhaseFunction& phi = {});
OperatorMatrix rotating_quadrature_op(const QuadratureParams& q, const TruncatedSpace& space,
                                      const OperatorMatrix& exp_orientation);

struct TwoModeState {
  Eigen::VectorXcd coefficients;
  double norm = 1.0;        // after renormalization
  double tail_mass = 0.0;   // probability discarded by truncation
};

/// Poisson mass P(N > n_max) for mean mu.
double poisson_tail(double mu, int n_max);

/// Product coherent state |a_plus> x |a_minus>, truncated and renormalized.
/// Rejects truncations whose discarded probability exceeds tail_tolerance.
TwoModeState coherent_state(cplx a_plus, cplx a_minus, const TruncatedSpace& space,
                            double tail_tolerance = 1e-8);

cplx expectation(const OperatorMatrix& a, const TwoModeState& st);

/// <st| (AB - BA) |st>, evaluated with matrix-vector products only.
cplx commutator_expectation(const OperatorMatrix& a, const OperatorMatrix& b, const TwoModeState& st);

}  // namespace rotquad
