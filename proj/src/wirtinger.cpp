#include "rotquad/wirtinger.hpp"

#include <cmath>
#include <limits>

namespace rotquad {

bool is_finite(const ModePoint& p) {
  return std::isfinite(p.alpha_plus.real()) && std::isfinite(p.alpha_plus.imag()) &&
         std::isfinite(p.alpha_minus.real()) && std::isfinite(p.alpha_minus.imag());
}

// ---------------------------------------------------------------------------
// WirtingerDual arithmetic

WirtingerDual& WirtingerDual::operator+=(const WirtingerDual& o) {
  value += o.value;
  d_ap += o.d_ap;
  d_ap_conj += o.d_ap_conj;
  d_am += o.d_am;
  d_am_conj += o.d_am_conj;
  return *this;
}

WirtingerDual& WirtingerDual::operator-=(const WirtingerDual& o) {
  value -= o.value;
  d_ap -= o.d_ap;
  d_ap_conj -= o.d_ap_conj;
  d_am -= o.d_am;
  d_am_conj -= o.d_am_conj;
  return *this;
}

WirtingerDual& WirtingerDual::operator*=(const WirtingerDual& o) {
  const cplx a = value;
  const cplx b = o.value;
  d_ap = d_ap * b + a * o.d_ap;
  d_ap_conj = d_ap_conj * b + a * o.d_ap_conj;
  d_am = d_am * b + a * o.d_am;
  d_am_conj = d_am_conj * b + a * o.d_am_conj;
  value = a * b;
  return *this;
}

WirtingerDual& WirtingerDual::operator/=(const WirtingerDual& o) {
  const cplx inv = 1.0 / o.value;
  const cplx q = value * inv;
  d_ap = (d_ap - q * o.d_ap) * inv;
  d_ap_conj = (d_ap_conj - q * o.d_ap_conj) * inv;
  d_am = (d_am - q * o.d_am) * inv;
  d_am_conj = (d_am_conj - q * o.d_am_conj) * inv;
  value = q;
  return *this;
}

WirtingerDual operator+(WirtingerDual a, const WirtingerDual& b) { return a += b; }
WirtingerDual operator-(WirtingerDual a, const WirtingerDual& b) { return a -= b; }
WirtingerDual operator*(WirtingerDual a, const WirtingerDual& b) { return a *= b; }
WirtingerDual operator/(WirtingerDual a, const WirtingerDual& b) { return a /= b; }

WirtingerDual operator-(const WirtingerDual& a) {
  return {-a.value, -a.d_ap, -a.d_ap_conj, -a.d_am, -a.d_am_conj};
}

WirtingerDual conj(const WirtingerDual& a) {
  // d(F^*)/d alpha = (dF/d alpha^*)^*
  return {std::conj(a.value), std::conj(a.d_ap_conj), std::conj(a.d_ap), std::conj(a.d_am_conj),
          std::conj(a.d_am)};
}

namespace {

// Chain rule for a holomorphic g: every slot scales by g'(value).
WirtingerDual chain(const WirtingerDual& a, cplx g, cplx dg) {
  return {g, dg * a.d_ap, dg * a.d_ap_conj, dg * a.d_am, dg * a.d_am_conj};
}

}  // namespace

WirtingerDual sqrt(const WirtingerDual& a) {
  const cplx s = std::sqrt(a.value);
  return chain(a, s, 0.5 / s);
}

WirtingerDual log(const WirtingerDual& a) { return chain(a, std::log(a.value), 1.0 / a.value); }

WirtingerDual exp(const WirtingerDual& a) {
  const cplx e = std::exp(a.value);
  return chain(a, e, e);
}

WirtingerDual abs(const WirtingerDual& a) {
  // d|z| = (z^* dz + z dz^*) / (2|z|), with d(z^*)/dv = conj(dz/dv^*).
  const double m = std::abs(a.value);
  const cplx zc = std::conj(a.value);
  const cplx z = a.value;
  const double s = 0.5 / m;
  return {cplx{m, 0.0}, s * (zc * a.d_ap + z * std::conj(a.d_ap_conj)),
          s * (zc * a.d_ap_conj + z * std::conj(a.d_ap)),
          s * (zc * a.d_am + z * std::conj(a.d_am_conj)),
          s * (zc * a.d_am_conj + z * std::conj(a.d_am))};
}

std::array<WirtingerDual, 4> lift_point(const ModePoint& p) {
  if (!is_finite(p)) throw DomainError("lift_point", "non-finite mode amplitude");
  std::array<WirtingerDual, 4> slots;
  slots[0] = WirtingerDual::constant(p.alpha_plus);
  slots[0].d_ap = 1.0;
  slots[1] = WirtingerDual::constant(std::conj(p.alpha_plus));
  slots[1].d_ap_conj = 1.0;
  slots[2] = WirtingerDual::constant(p.alpha_minus);
  slots[2].d_am = 1.0;
  slots[3] = WirtingerDual::constant(std::conj(p.alpha_minus));
  slots[3].d_am_conj = 1.0;
  return slots;
}

// ---------------------------------------------------------------------------
// Expression DAG

enum class Op { Constant, Var, Add, Sub, Mul, Div, Neg, Conj, Sqrt, Log, Exp, Abs };

struct FieldFunction::Node {
  Op op = Op::Constant;
  cplx constant{};
  Variable var = Variable::AlphaPlus;
  std::shared_ptr<const Node> lhs;
  std::shared_ptr<const Node> rhs;
};

namespace {

using NodePtr = std::shared_ptr<const FieldFunction::Node>;

NodePtr make_node(Op op, NodePtr lhs, NodePtr rhs = nullptr) {
  auto n = std::make_shared<FieldFunction::Node>();
  n->op = op;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return n;
}

cplx value_of(const cplx& v) { return v; }
cplx value_of(const WirtingerDual& v) { return v.value; }

cplx lift_constant(cplx c, const cplx*) { return c; }
WirtingerDual lift_constant(cplx c, const WirtingerDual*) { return WirtingerDual::constant(c); }

cplx modulus(const cplx& z) { return {std::abs(z), 0.0}; }
WirtingerDual modulus(const WirtingerDual& z) { return abs(z); }

void check_modulus(const char* prim, cplx z, const EvalOptions& o) {
  if (!(std::abs(z) >= o.epsilon)) throw DomainError(prim, "argument modulus below epsilon");
}

void check_branch_cut(const char* prim, cplx z, const EvalOptions& o) {
  check_modulus(prim, z, o);
  if (z.real() < 0.0 && std::abs(z.imag()) < o.epsilon)
    throw DomainError(prim, "argument within epsilon of the negative real axis");
}

template <class T>
T eval_node(const FieldFunction::Node& n, const std::array<T, 4>& vars, const EvalOptions& o) {
  using std::conj;
  using std::exp;
  using std::log;
  using std::sqrt;
  switch (n.op) {
    case Op::Constant:
      return lift_constant(n.constant, static_cast<const T*>(nullptr));
    case Op::Var:
      return vars[static_cast<std::size_t>(n.var)];
    case Op::Add:
      return eval_node(*n.lhs, vars, o) + eval_node(*n.rhs, vars, o);
    case Op::Sub:
      return eval_node(*n.lhs, vars, o) - eval_node(*n.rhs, vars, o);
    case Op::Mul:
      return eval_node(*n.lhs, vars, o) * eval_node(*n.rhs, vars, o);
    case Op::Div: {
      T num = eval_node(*n.lhs, vars, o);
      T den = eval_node(*n.rhs, vars, o);
      check_modulus("div", value_of(den), o);
      return num / den;
    }
    case Op::Neg:
      return -eval_node(*n.lhs, vars, o);
    case Op::Conj:
      return conj(eval_node(*n.lhs, vars, o));
    case Op::Sqrt: {
      T a = eval_node(*n.lhs, vars, o);
      check_branch_cut("sqrt", value_of(a), o);
      return sqrt(a);
    }
    case Op::Log: {
      T a = eval_node(*n.lhs, vars, o);
      check_branch_cut("log", value_of(a), o);
      return log(a);
    }
    case Op::Exp:
      return exp(eval_node(*n.lhs, vars, o));
    case Op::Abs: {
      T a = eval_node(*n.lhs, vars, o);
      check_modulus("abs", value_of(a), o);
      return modulus(a);
    }
  }
  throw std::logic_error("unreachable field-function node");
}

std::array<cplx, 4> plain_slots(const ModePoint& p) {
  if (!is_finite(p)) throw DomainError("evaluate", "non-finite mode amplitude");
  return {p.alpha_plus, std::conj(p.alpha_plus), p.alpha_minus, std::conj(p.alpha_minus)};
}

}  // namespace

FieldFunction::FieldFunction() : FieldFunction(cplx{}) {}

FieldFunction::FieldFunction(cplx c) {
  auto n = std::make_shared<Node>();
  n->op = Op::Constant;
  n->constant = c;
  node_ = std::move(n);
}

FieldFunction FieldFunction::variable(Variable v) {
  auto n = std::make_shared<Node>();
  n->op = Op::Var;
  n->var = v;
  return FieldFunction(NodePtr(std::move(n)));
}

WirtingerDual FieldFunction::evaluate(const ModePoint& p, const EvalOptions& opts) const {
  return eval_node(*node_, lift_point(p), opts);
}

cplx FieldFunction::value(const ModePoint& p, const EvalOptions& opts) const {
  return eval_node(*node_, plain_slots(p), opts);
}

FieldFunction operator+(const FieldFunction& a, const FieldFunction& b) {
  return FieldFunction(make_node(Op::Add, a.node_, b.node_));
}
FieldFunction operator-(const FieldFunction& a, const FieldFunction& b) {
  return FieldFunction(make_node(Op::Sub, a.node_, b.node_));
}
FieldFunction operator*(const FieldFunction& a, const FieldFunction& b) {
  return FieldFunction(make_node(Op::Mul, a.node_, b.node_));
}
FieldFunction operator/(const FieldFunction& a, const FieldFunction& b) {
  return FieldFunction(make_node(Op::Div, a.node_, b.node_));
}
FieldFunction operator-(const FieldFunction& a) { return FieldFunction(make_node(Op::Neg, a.node_)); }
FieldFunction conj(const FieldFunction& a) { return FieldFunction(make_node(Op::Conj, a.node_)); }
FieldFunction sqrt(const FieldFunction& a) { return FieldFunction(make_node(Op::Sqrt, a.node_)); }
FieldFunction log(const FieldFunction& a) { return FieldFunction(make_node(Op::Log, a.node_)); }
FieldFunction exp(const FieldFunction& a) { return FieldFunction(make_node(Op::Exp, a.node_)); }
FieldFunction abs(const FieldFunction& a) { return FieldFunction(make_node(Op::Abs, a.node_)); }

// ---------------------------------------------------------------------------
// Brackets

cplx poisson_bracket(const WirtingerDual& f, const WirtingerDual& g) {
  const cplx sum = f.d_ap * g.d_ap_conj - f.d_ap_conj * g.d_ap + f.d_am * g.d_am_conj -
                   f.d_am_conj * g.d_am;
  return sum / cplx{0.0, 1.0};
}

cplx poisson_bracket(const FieldFunction& f, const FieldFunction& g, const ModePoint& p,
                     const EvalOptions& opts) {
  return poisson_bracket(f.evaluate(p, opts), g.evaluate(p, opts));
}

cplx poisson_bracket(const Partials& f, const Partials& g) {
  const cplx sum = f.d_ap * g.d_ap_conj - f.d_ap_conj * g.d_ap + f.d_am * g.d_am_conj -
                   f.d_am_conj * g.d_am;
  return sum / cplx{0.0, 1.0};
}

namespace {

// Central differences along the real and imaginary axes of one amplitude.
std::pair<cplx, cplx> wirtinger_pair(const FieldFunction& f, const ModePoint& p, bool plus_mode,
                                     double h, const EvalOptions& o) {
  auto shifted = [&](cplx delta) {
    ModePoint q = p;
    (plus_mode ? q.alpha_plus : q.alpha_minus) += delta;
    return f.value(q, o);
  };
  const cplx dx = (shifted({h, 0.0}) - shifted({-h, 0.0})) / (2.0 * h);
  const cplx dy = (shifted({0.0, h}) - shifted({0.0, -h})) / (2.0 * h);
  const cplx i{0.0, 1.0};
  return {0.5 * (dx - i * dy), 0.5 * (dx + i * dy)};
}

Partials central_partials(const FieldFunction& f, const ModePoint& p, double h,
                          const EvalOptions& o) {
  auto [ap, apc] = wirtinger_pair(f, p, true, h, o);
  auto [am, amc] = wirtinger_pair(f, p, false, h, o);
  return {ap, apc, am, amc};
}

}  // namespace

Partials finite_difference_partials(const FieldFunction& f, const ModePoint& p, double h,
                                    bool richardson, const EvalOptions& opts) {
  if (!is_finite(p)) throw DomainError("finite_difference", "non-finite mode amplitude");
  if (!std::isfinite(h) || h <= 0.0) throw std::invalid_argument("finite_difference: step must be positive");
  const double scale = std::max({1.0, std::abs(p.alpha_plus), std::abs(p.alpha_minus)});
  const double eps = std::numeric_limits<double>::epsilon();
  if (h < 64.0 * eps * scale) throw std::invalid_argument("finite_difference: step underflows the point");
  if (h > 1e-2 * scale) throw std::invalid_argument("finite_difference: step too large for the point");

  Partials coarse = central_partials(f, p, h, opts);
  if (!richardson) return coarse;
  Partials fine = central_partials(f, p, 0.5 * h, opts);
  auto extrapolate = [](cplx c, cplx fn) { return (4.0 * fn - c) / 3.0; };
  return {extrapolate(coarse.d_ap, fine.d_ap), extrapolate(coarse.d_ap_conj, fine.d_ap_conj),
          extrapolate(coarse.d_am, fine.d_am), extrapolate(coarse.d_am_conj, fine.d_am_conj)};
}

}  // namespace rotquad
