#include "rotquad/modes.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rotquad {

void validate(const TransverseModeParams& params) {
  if (!(params.w > 0.0) || !std::isfinite(params.w)) throw std::invalid_argument("mode params: w must be positive");
  if (!std::isfinite(params.theta0) || !std::isfinite(params.rho_L))
    throw std::invalid_argument("mode params: non-finite theta0 or rho_L");
  if (!(params.grid.extent >= 6.0 * params.w))
    throw std::invalid_argument("mode params: grid extent must be at least 6 w");
  if (params.grid.resolution < 3) throw std::invalid_argument("mode params: grid resolution must be >= 3");
}

const char* to_string(ModeKind k) {
  switch (k) {
    case ModeKind::Lplus: return "Lplus";
    case ModeKind::Lminus: return "Lminus";
    case ModeKind::Bright: return "Bright";
    case ModeKind::LO: return "LO";
  }
  return "?";
}

namespace {

constexpr cplx kI{0.0, 1.0};

// pi^{-1/2} w^{-2} r e^{-r^2/2w^2} e^{+- i phi}, with r e^{+- i phi} = x +- i y.
cplx laguerre_gauss(int l, double w, double x, double y) {
  const double r2 = x * x + y * y;
  const double radial = std::exp(-r2 / (2.0 * w * w)) / (std::sqrt(std::numbers::pi) * w * w);
  return radial * cplx{x, l > 0 ? y : -y};
}

}  // namespace

cplx mode_profile(ModeKind kind, const TransverseModeParams& params, double x, double y) {
  const double w = params.w;
  const cplx lp = laguerre_gauss(+1, w, x, y);
  const cplx lm = laguerre_gauss(-1, w, x, y);
  const cplx rot_p = std::exp(-kI * params.theta0);
  const cplx rot_m = std::exp(kI * params.theta0);
  switch (kind) {
    case ModeKind::Lplus: return lp;
    case ModeKind::Lminus: return lm;
    case ModeKind::Bright: return (rot_p * lp + rot_m * lm) / std::numbers::sqrt2;
    case ModeKind::LO: return (rot_p * lp - rot_m * lm) / (std::numbers::sqrt2 * kI);
  }
  return {};
}

cplx signal_envelope(const ModePoint& amplitudes, const TransverseModeParams& params, double x,
                     double y) {
  return amplitudes.alpha_plus * laguerre_gauss(+1, params.w, x, y) +
         amplitudes.alpha_minus * laguerre_gauss(-1, params.w, x, y);
}

SampledField sample(ModeKind kind, const TransverseModeParams& params) {
  validate(params);
  const auto& g = params.grid;
  SampledField field{g, {}};
  field.values.resize(static_cast<std::size_t>(g.resolution) * g.resolution);
  for (int iy = 0; iy < g.resolution; ++iy)
    for (int ix = 0; ix < g.resolution; ++ix)
      field.values[static_cast<std::size_t>(iy) * g.resolution + ix] =
          mode_profile(kind, params, g.coordinate(ix), g.coordinate(iy));
  return field;
}

namespace {

// Neumaier summation on each component.
class CompensatedSum {
 public:
  void add(cplx v) {
    add_one(re_, cre_, v.real());
    add_one(im_, cim_, v.imag());
  }
  cplx total() const { return {re_ + cre_, im_ + cim_}; }

 private:
  static void add_one(double& s, double& c, double v) {
    const double t = s + v;
    c += std::abs(s) >= std::abs(v) ? (s - t) + v : (v - t) + s;
    s = t;
  }
  double re_ = 0.0, cre_ = 0.0, im_ = 0.0, cim_ = 0.0;
};

// Trapezoid over the index set {0, stride, 2 stride, ...} on both axes.
cplx trapezoid(const SampledField& a, const SampledField& b, int stride) {
  const int n = a.grid.resolution;
  const int last = ((n - 1) / stride) * stride;
  const double h = a.grid.step() * stride;
  auto weight = [&](int i) { return (i == 0 || i == last) ? 0.5 : 1.0; };
  CompensatedSum sum;
  for (int iy = 0; iy <= last; iy += stride) {
    CompensatedSum row;
    for (int ix = 0; ix <= last; ix += stride)
      row.add(weight(ix) * std::conj(a.at(ix, iy)) * b.at(ix, iy));
    sum.add(weight(iy) * row.total());
  }
  return sum.total() * h * h;
}

}  // namespace

OverlapResult overlap(const SampledField& a, const SampledField& b) {
  if (!(a.grid == b.grid)) throw std::invalid_argument("overlap: fields sampled on different grids");
  const std::size_t expected = static_cast<std::size_t>(a.grid.resolution) * a.grid.resolution;
  if (a.values.size() != expected || b.values.size() != expected)
    throw std::invalid_argument("overlap: sample count does not match grid");
  const cplx fine = trapezoid(a, b, 1);
  const cplx coarse = trapezoid(a, b, 2);
  return {fine, std::abs(fine - coarse)};
}

}  // namespace rotquad
