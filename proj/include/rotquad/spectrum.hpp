#pragma once

// Squeezing spectrum of the rotating quadrature, and a synthesize/estimate
// round trip on simulated homodyne photocurrent records.
//
// Normalization: V = 1 is the shot-noise (white) level. A unit-variance white
// record estimates to 1 in every bin.

#include <cstddef>
#include <cstdint>
#include <vector>

namespace rotquad {

struct SpectrumParams {
  double psi_L = 0.0;    // LO phase (rad)
  double gamma_s = 1.0;  // cavity linewidth (rad/s)
  double omega = 0.0;    // noise frequency (rad/s)
};

/// V(omega) = 1 - sin^2(psi_L) / (1 + (omega / 2 gamma_s)^2).
double squeezing_spectrum(const SpectrumParams& p);

struct TimeSeries {
  double dt = 1.0;
  std::vector<double> samples;
  std::uint64_t seed = 0;
  SpectrumParams target;  // omega unused
};

/// Zero-mean stationary Gaussian record whose normalized PSD is V by
/// construction: independent complex Gaussian amplitudes with variance
/// proportional to V at each bin, Hermitian-symmetric, inverse transformed.
/// Requires n a power of two and Nyquist pi/dt >= 10 gamma_s.
TimeSeries synthesize_photocurrent(const SpectrumParams& p, std::size_t n, double dt, std::uint64_t seed);

enum class Window { Rectangular, Hann };

struct EstimatorOptions {
  std::size_t segment_length = 8192;
  double overlap = 0.5;  // fraction of a segment shared with the next
  Window window = Window::Hann;
};

struct SpectrumEstimate {
  std::vector<double> frequencies;  // rad/s, bins 0 .. L/2
  std::vector<double> values;
  std::vector<double> std_error;    // per-bin standard error
  std::size_t segments = 0;
  double variance_factor = 1.0;     // Var(mean) = variance_factor * value^2 / segments
};

/// Segment-averaged windowed periodogram.
SpectrumEstimate estimate_spectrum(const TimeSeries& ts, const EstimatorOptions& opts = {});

}  // namespace rotquad
