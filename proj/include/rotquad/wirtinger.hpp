#pragma once

// Forward-mode Wirtinger differentiation over the two complex mode
// amplitudes (alpha_{+1}, alpha_{-1}) and the Poisson bracket built on it.
//
// Conjugate amplitudes are independent differentiation slots, so every
// value carries four partials:
//   d/d alpha_{+1}, d/d alpha_{+1}^*, d/d alpha_{-1}, d/d alpha_{-1}^*.
//
// Field functions are expression DAGs over a small primitive set. The same
// DAG can be evaluated on plain complex numbers (used by the finite-difference
// oracle) or on WirtingerDual values (used by the bracket).

#include <array>
#include <complex>
#include <memory>
#include <stdexcept>
#include <string>

namespace rotquad {

using cplx = std::complex<double>;

/// Classical phase-space point: the two normal amplitudes.
struct ModePoint {
  cplx alpha_plus;
  cplx alpha_minus;
};

bool is_finite(const ModePoint& p);

/// Raised when a primitive is evaluated outside its domain (vanishing
/// modulus, branch-cut proximity, division by ~0, non-finite input).
class DomainError : public std::domain_error {
 public:
  DomainError(std::string primitive, const std::string& what)
      : std::domain_error(primitive + ": " + what), primitive_(std::move(primitive)) {}
  const std::string& primitive() const noexcept { return primitive_; }

 private:
  std::string primitive_;
};

/// A complex value with its four Wirtinger partials.
struct WirtingerDual {
  cplx value{};
  cplx d_ap{};
  cplx d_ap_conj{};
  cplx d_am{};
  cplx d_am_conj{};

  static WirtingerDual constant(cplx v) { return {v, {}, {}, {}, {}}; }

  WirtingerDual& operator+=(const WirtingerDual& o);
  WirtingerDual& operator-=(const WirtingerDual& o);
  WirtingerDual& operator*=(const WirtingerDual& o);
  WirtingerDual& operator/=(const WirtingerDual& o);
};

WirtingerDual operator+(WirtingerDual a, const WirtingerDual& b);
WirtingerDual operator-(WirtingerDual a, const WirtingerDual& b);
WirtingerDual operator*(WirtingerDual a, const WirtingerDual& b);
WirtingerDual operator/(WirtingerDual a, const WirtingerDual& b);
WirtingerDual operator-(const WirtingerDual& a);

// Conjugation swaps the roles of the z and z^* partials.
WirtingerDual conj(const WirtingerDual& a);
// Holomorphic primitives (principal branches). No domain checks here;
// those live in FieldFunction evaluation.
WirtingerDual sqrt(const WirtingerDual& a);
WirtingerDual log(const WirtingerDual& a);
WirtingerDual exp(const WirtingerDual& a);
// |z| = sqrt(z z^*), real valued.
WirtingerDual abs(const WirtingerDual& a);

enum class Variable { AlphaPlus, AlphaPlusConj, AlphaMinus, AlphaMinusConj };

/// Seed the four independent slots at p. Slot order follows Variable.
std::array<WirtingerDual, 4> lift_point(const ModePoint& p);

struct EvalOptions {
  // Minimum modulus accepted by abs/sqrt/log/division, and the width of the
  // excluded strip around the negative real axis for sqrt/log.
  double epsilon = 1e-9;
};

/// Composable field function F(alpha_j, alpha_j^*).
class FieldFunction {
 public:
  struct Node;

  FieldFunction();  // constant zero
  FieldFunction(cplx c);  // NOLINT: implicit constant lift keeps formulas readable
  FieldFunction(double c) : FieldFunction(cplx{c, 0.0}) {}  // NOLINT

  static FieldFunction variable(Variable v);
  static FieldFunction alpha_plus() { return variable(Variable::AlphaPlus); }
  static FieldFunction alpha_plus_conj() { return variable(Variable::AlphaPlusConj); }
  static FieldFunction alpha_minus() { return variable(Variable::AlphaMinus); }
  static FieldFunction alpha_minus_conj() { return variable(Variable::AlphaMinusConj); }

  WirtingerDual evaluate(const ModePoint& p, const EvalOptions& opts = {}) const;
  cplx value(const ModePoint& p, const EvalOptions& opts = {}) const;

  friend FieldFunction operator+(const FieldFunction& a, const FieldFunction& b);
  friend FieldFunction operator-(const FieldFunction& a, const FieldFunction& b);
  friend FieldFunction operator*(const FieldFunction& a, const FieldFunction& b);
  friend FieldFunction operator/(const FieldFunction& a, const FieldFunction& b);
  friend FieldFunction operator-(const FieldFunction& a);
  friend FieldFunction conj(const FieldFunction& a);
  friend FieldFunction sqrt(const FieldFunction& a);
  friend FieldFunction log(const FieldFunction& a);
  friend FieldFunction exp(const FieldFunction& a);
  friend FieldFunction abs(const FieldFunction& a);

 private:
  explicit FieldFunction(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// {f, g} = (1/i) sum_j [df/da_j dg/da_j^* - df/da_j^* dg/da_j].
cplx poisson_bracket(const FieldFunction& f, const FieldFunction& g, const ModePoint& p,
                     const EvalOptions& opts = {});
cplx poisson_bracket(const WirtingerDual& f, const WirtingerDual& g);

struct Partials {
  cplx d_ap;
  cplx d_ap_conj;
  cplx d_am;
  cplx d_am_conj;
};

/// Wirtinger partials from central differences in the real and imaginary
/// parts of each amplitude: d/da = (d/dx - i d/dy)/2, d/da^* = (d/dx + i d/dy)/2.
/// With richardson set, combines steps h and h/2 to cancel the O(h^2) term.
Partials finite_difference_partials(const FieldFunction& f, const ModePoint& p, double h = 1e-6,
                                    bool richardson = false, const EvalOptions& opts = {});

/// Bracket assembled from externally obtained partials (e.g. the oracle).
cplx poisson_bracket(const Partials& f, const Partials& g);

}  // namespace rotquad
