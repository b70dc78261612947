#include "rotquad/classical.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rotquad {

namespace {
constexpr cplx kI{0.0, 1.0};
}

const char* to_string(OrientationConvention c) {
  return c == OrientationConvention::FullAngle ? "full" : "half";
}

double wrap_angle(double a) {
  constexpr double pi = std::numbers::pi;
  double r = std::remainder(a, 2.0 * pi);  // [-pi, pi]
  if (r <= -pi) r += 2.0 * pi;
  return r;
}

ModePoint steady_state(const SteadyState& s) {
  if (!(s.rho >= 0.0) || !std::isfinite(s.rho) || !std::isfinite(s.theta0))
    throw std::invalid_argument("steady_state: rho must be finite and non-negative");
  const double th = wrap_angle(s.theta0);
  return {std::polar(s.rho, -th), std::polar(s.rho, th)};
}

FieldFunction exp_orientation(OrientationConvention c) {
  const auto ap = FieldFunction::alpha_plus();
  const auto am = FieldFunction::alpha_minus();
  FieldFunction ratio = conj(ap) * am / (abs(ap) * abs(am));
  return c == OrientationConvention::HalfAngle ? sqrt(ratio) : ratio;
}

FieldFunction orientation(OrientationConvention c) {
  return log(exp_orientation(c)) / kI;
}

FieldFunction rotating_quadrature(const QuadratureParams& q, OrientationConvention c) {
  const auto ap = FieldFunction::alpha_plus();
  const auto am = FieldFunction::alpha_minus();
  const FieldFunction e = exp_orientation(c);
  const cplx prefactor = kI / std::numbers::sqrt2 * std::exp(-kI * q.psi_L);
  FieldFunction half = prefactor * (e * ap - conj(e) * am);
  return half + conj(half);
}

std::pair<FieldFunction, FieldFunction> single_mode_quadratures(Mode j) {
  const auto a = j == Mode::Plus ? FieldFunction::alpha_plus() : FieldFunction::alpha_minus();
  const auto ac = j == Mode::Plus ? FieldFunction::alpha_plus_conj() : FieldFunction::alpha_minus_conj();
  return {a + ac, -kI * (a - ac)};
}

namespace {

std::pair<double, double> checked_moduli(const ModePoint& p, double epsilon, const char* who) {
  const double mp = std::abs(p.alpha_plus);
  const double mm = std::abs(p.alpha_minus);
  if (!(mp >= epsilon) || !(mm >= epsilon)) throw DomainError(who, "mode modulus below epsilon");
  return {mp, mm};
}

}  // namespace

double closed_form_quadrature_bracket(const ModePoint& p, double epsilon) {
  const auto [mp, mm] = checked_moduli(p, epsilon, "closed_form_quadrature_bracket");
  return (mm - mp) / (2.0 * mp * mm);
}

double symmetric_orientation_bracket(double rho, double psi_L) {
  return -std::sin(psi_L) / (std::numbers::sqrt2 * rho);
}

OrientationBracketForm closed_form_orientation_bracket(const ModePoint& p, const QuadratureParams& q,
                                                       double epsilon, double symmetric_rtol) {
  const auto [mp, mm] = checked_moduli(p, epsilon, "closed_form_orientation_bracket");
  if (std::abs(mp - mm) <= symmetric_rtol * std::max(mp, mm)) {
    const double rho = 0.5 * (mp + mm);
    return {cplx{symmetric_orientation_bracket(rho, q.psi_L), 0.0}, true, false};
  }
  // Verbatim: both terms of the second factor carry |alpha_{-1}|.
  const cplx second = std::exp(kI * q.psi_L) * mm - std::exp(-kI * q.psi_L) * mm;
  const cplx value = kI * (mp + mm) * second /
                     (4.0 * std::numbers::sqrt2 * std::pow(mp, 1.5) * std::pow(mm, 1.5));
  return {value, false, true};
}

}  // namespace rotquad
