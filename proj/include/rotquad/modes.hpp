#pragma once

// First-order transverse modes: the Laguerre-Gauss pair L_{+-1}, the bright
// Hermite-Gauss mode they superpose into at the steady state, and the
// orthogonal local-oscillator mode. Plus 2-D quadrature on Cartesian grids.

#include <vector>

#include "rotquad/wirtinger.hpp"

namespace rotquad {

/// Square Cartesian sampling of [-extent, extent]^2 with `resolution` points
/// per axis (endpoints included).
struct TransverseGrid {
  double extent = 8.0;
  int resolution = 256;

  double step() const { return 2.0 * extent / (resolution - 1); }
  double coordinate(int i) const { return -extent + i * step(); }
  bool operator==(const TransverseGrid&) const = default;
};

struct TransverseModeParams {
  double w = 1.0;        // the waist radius is sqrt(2) w
  double rho_L = 1.0;    // LO amplitude scale (profiles themselves are unit-normalized)
  double theta0 = 0.0;   // orientation of the bright mode
  TransverseGrid grid{};
};

void validate(const TransverseModeParams& params);

enum class ModeKind { Lplus, Lminus, Bright, LO };

const char* to_string(ModeKind k);

/// Unit-normalized profile at Cartesian (x, y).
cplx mode_profile(ModeKind kind, const TransverseModeParams& params, double x, double y);

/// Slowly varying envelope a_{+1} L_{+1} + a_{-1} L_{-1}.
cplx signal_envelope(const ModePoint& amplitudes, const TransverseModeParams& params, double x,
                     double y);

struct SampledField {
  TransverseGrid grid;
  std::vector<cplx> values;  // row-major, y outer

  cplx at(int ix, int iy) const { return values[static_cast<std::size_t>(iy) * grid.resolution + ix]; }
};

SampledField sample(ModeKind kind, const TransverseModeParams& params);

struct OverlapResult {
  cplx value;
  // |I(h) - I(2h)|: the same quadrature on every second sample.
  double resolution_error;
};

/// Trapezoid quadrature of conj(a) * b over the common grid, accumulated
/// row by row with compensated summation (order fixed, deterministic).
OverlapResult overlap(const SampledField& a, const SampledField& b);

}  // namespace rotquad
