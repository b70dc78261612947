#pragma once

// Classical field functions of the two-mode signal: steady state, the
// orientation angle, the rotating quadrature seen by an orthogonal LO, the
// single-mode quadratures and the closed-form brackets they are checked
// against.

#include <utility>

#include "rotquad/wirtinger.hpp"

namespace rotquad {

/// Classical steady state alpha_{+-1} = rho e^{-+ i theta0}.
struct SteadyState {
  double rho = 1.0;
  double theta0 = 0.0;
};

/// How e^{i theta} is built from the amplitudes.
///  FullAngle: alpha_{+1}^* alpha_{-1} / (|alpha_{+1}| |alpha_{-1}|), i.e. the whole
///             phase difference.
///  HalfAngle: principal square root of the FullAngle ratio (half the phase
///             difference, which is what the quantum orientation operator uses).
enum class OrientationConvention { FullAngle, HalfAngle };

const char* to_string(OrientationConvention c);

struct QuadratureParams {
  double psi_L = 0.0;
};

/// Wrap an angle to (-pi, pi].
double wrap_angle(double a);

ModePoint steady_state(const SteadyState& s);

FieldFunction exp_orientation(OrientationConvention c = OrientationConvention::HalfAngle);
FieldFunction orientation(OrientationConvention c = OrientationConvention::HalfAngle);
FieldFunction rotating_quadrature(const QuadratureParams& q,
                                  OrientationConvention c = OrientationConvention::HalfAngle);

enum class Mode { Plus, Minus };

/// X_j = alpha_j + alpha_j^*,  Y_j = -i (alpha_j - alpha_j^*).
std::pair<FieldFunction, FieldFunction> single_mode_quadratures(Mode j);

/// (|alpha_{-1}| - |alpha_{+1}|) / (2 |alpha_{+1}| |alpha_{-1}|), as printed for
/// {X^psi, X^{psi+pi/2}}. Only the symmetric value (0) is confirmed by the
/// autodiff bracket; at asymmetric points the two differ (see tests).
double closed_form_quadrature_bracket(const ModePoint& p, double epsilon = 1e-9);

struct OrientationBracketForm {
  cplx value;
  bool symmetric;      // |alpha_{+1}| == |alpha_{-1}| within tolerance
  bool typo_suspect;   // value comes from the printed asymmetric formula
};

/// Closed form for {X^psi, theta}. At symmetric points returns the limit
/// -sin(psi)/(sqrt(2) rho). Elsewhere returns the printed asymmetric formula,
/// whose second factor repeats |alpha_{-1}|, flagged typo_suspect.
OrientationBracketForm closed_form_orientation_bracket(const ModePoint& p, const QuadratureParams& q,
                                                       double epsilon = 1e-9,
                                                       double symmetric_rtol = 1e-12);

/// The symmetric-point limit -sin(psi) / (sqrt(2) rho).
double symmetric_orientation_bracket(double rho, double psi_L);

}  // namespace rotquad
