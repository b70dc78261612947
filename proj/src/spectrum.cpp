#include "rotquad/spectrum.hpp"

#include <fftw3.h>

#include <cmath>
#include <memory>
#include <numbers>
#include <random>
#include <stdexcept>

namespace rotquad {

double squeezing_spectrum(const SpectrumParams& p) {
  if (!(p.gamma_s > 0.0)) throw std::invalid_argument("squeezing_spectrum: gamma_s must be positive");
  const double s = std::sin(p.psi_L);
  const double x = p.omega / (2.0 * p.gamma_s);
  return 1.0 - s * s / (1.0 + x * x);
}

namespace {

bool is_power_of_two(std::size_t n) { return n >= 2 && (n & (n - 1)) == 0; }

struct FftwFree {
  void operator()(void* p) const { fftw_free(p); }
};
struct PlanDestroy {
  void operator()(fftw_plan p) const { fftw_destroy_plan(p); }
};

template <class T>
std::unique_ptr<T[], FftwFree> fftw_buffer(std::size_t n) {
  auto* p = static_cast<T*>(fftw_malloc(sizeof(T) * n));
  if (!p) throw std::bad_alloc();
  return std::unique_ptr<T[], FftwFree>(p);
}

using Plan = std::unique_ptr<std::remove_pointer_t<fftw_plan>, PlanDestroy>;

// FFTW's planner is not reentrant; plans here are created per call with
// FFTW_ESTIMATE so results do not depend on timing measurements.

}  // namespace

TimeSeries synthesize_photocurrent(const SpectrumParams& p, std::size_t n, double dt, std::uint64_t seed) {
  if (!is_power_of_two(n)) throw std::invalid_argument("synthesize_photocurrent: length must be a power of two");
  if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("synthesize_photocurrent: dt must be positive");
  if (!(p.gamma_s > 0.0)) throw std::invalid_argument("synthesize_photocurrent: gamma_s must be positive");
  if (std::numbers::pi / dt < 10.0 * p.gamma_s)
    throw std::invalid_argument("synthesize_photocurrent: Nyquist frequency below 10 gamma_s");

  const std::size_t half = n / 2;
  auto spec = fftw_buffer<fftw_complex>(half + 1);
  auto out = fftw_buffer<double>(n);

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const double two_pi_over_T = 2.0 * std::numbers::pi / (static_cast<double>(n) * dt);
  const double nd = static_cast<double>(n);
  for (std::size_t k = 0; k <= half; ++k) {
    const double v = squeezing_spectrum({p.psi_L, p.gamma_s, two_pi_over_T * static_cast<double>(k)});
    if (k == 0 || k == half) {
      spec[k][0] = std::sqrt(v * nd) * gauss(rng);
      spec[k][1] = 0.0;
    } else {
      const double s = std::sqrt(0.5 * v * nd);
      spec[k][0] = s * gauss(rng);
      spec[k][1] = s * gauss(rng);
    }
  }

  Plan plan(fftw_plan_dft_c2r_1d(static_cast<int>(n), spec.get(), out.get(), FFTW_ESTIMATE));
  if (!plan) throw std::runtime_error("synthesize_photocurrent: FFTW planning failed");
  fftw_execute(plan.get());

  TimeSeries ts;
  ts.dt = dt;
  ts.seed = seed;
  ts.target = {p.psi_L, p.gamma_s, 0.0};
  ts.samples.resize(n);
  for (std::size_t i = 0; i < n; ++i) ts.samples[i] = out[i] / nd;
  return ts;
}

SpectrumEstimate estimate_spectrum(const TimeSeries& ts, const EstimatorOptions& opts) {
  const std::size_t total = ts.samples.size();
  const std::size_t seg = opts.segment_length;
  if (!is_power_of_two(total)) throw std::invalid_argument("estimate_spectrum: record length must be a power of two");
  if (!is_power_of_two(seg) || seg > total)
    throw std::invalid_argument("estimate_spectrum: segment length must be a power of two <= record length");
  if (!(opts.overlap >= 0.0 && opts.overlap < 1.0))
    throw std::invalid_argument("estimate_spectrum: overlap must be in [0, 1)");
  if (!(ts.dt > 0.0)) throw std::invalid_argument("estimate_spectrum: dt must be positive");
  for (double x : ts.samples)
    if (!std::isfinite(x)) throw std::invalid_argument("estimate_spectrum: non-finite sample");

  const auto hop = seg - static_cast<std::size_t>(std::llround(opts.overlap * static_cast<double>(seg)));
  if (hop == 0) throw std::invalid_argument("estimate_spectrum: overlap leaves no hop");
  const std::size_t segments = 1 + (total - seg) / hop;
  if (segments < 8) throw std::invalid_argument("estimate_spectrum: fewer than 8 segments");

  std::vector<double> window(seg, 1.0);
  if (opts.window == Window::Hann)
    for (std::size_t i = 0; i < seg; ++i)
      window[i] = 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(seg)));
  double wsq = 0.0;
  for (double w : window) wsq += w * w;

  const std::size_t bins = seg / 2 + 1;
  auto in = fftw_buffer<double>(seg);
  auto out = fftw_buffer<fftw_complex>(bins);
  Plan plan(fftw_plan_dft_r2c_1d(static_cast<int>(seg), in.get(), out.get(), FFTW_ESTIMATE));
  if (!plan) throw std::runtime_error("estimate_spectrum: FFTW planning failed");

  SpectrumEstimate est;
  est.values.assign(bins, 0.0);
  for (std::size_t s = 0; s < segments; ++s) {
    const double* x = ts.samples.data() + s * hop;
    for (std::size_t i = 0; i < seg; ++i) in[i] = window[i] * x[i];
    fftw_execute(plan.get());
    for (std::size_t k = 0; k < bins; ++k)
      est.values[k] += (out[k][0] * out[k][0] + out[k][1] * out[k][1]) / wsq;
  }
  const double kseg = static_cast<double>(segments);
  for (double& v : est.values) v /= kseg;

  // Welch: correlation of periodograms from segments j hops apart is
  // (sum_n w_n w_{n + j hop})^2 / (sum w^2)^2.
  double factor = 1.0;
  for (std::size_t j = 1; j < segments && j * hop < seg; ++j) {
    double c = 0.0;
    for (std::size_t i = 0; i + j * hop < seg; ++i) c += window[i] * window[i + j * hop];
    c = (c / wsq) * (c / wsq);
    factor += 2.0 * (1.0 - static_cast<double>(j) / kseg) * c;
  }
  est.variance_factor = factor;
  est.segments = segments;

  est.frequencies.resize(bins);
  est.std_error.resize(bins);
  const double dw = 2.0 * std::numbers::pi / (static_cast<double>(seg) * ts.dt);
  for (std::size_t k = 0; k < bins; ++k) {
    est.frequencies[k] = dw * static_cast<double>(k);
    // DC and Nyquist periodograms are real: chi-square with one degree of freedom.
    const double dof_factor = (k == 0 || k == bins - 1) ? 2.0 : 1.0;
    est.std_error[k] = est.values[k] * std::sqrt(dof_factor * factor / kseg);
  }
  return est;
}

}  // namespace rotquad
