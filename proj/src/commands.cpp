#include "rotquad/commands.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "rotquad/classical.hpp"
#include "rotquad/modes.hpp"

namespace rotquad {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr cplx kI{0.0, 1.0};

using Inputs = std::vector<std::pair<std::string, double>>;

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw std::invalid_argument(std::string(what) + " must be finite");
}

cplx oracle_bracket(const FieldFunction& f, const FieldFunction& g, const ModePoint& p, double h,
                    const EvalOptions& o) {
  return poisson_bracket(finite_difference_partials(f, p, h, false, o),
                         finite_difference_partials(g, p, h, false, o));
}

}  // namespace

// ---------------------------------------------------------------------------
// brackets

std::vector<ResultRecord> cmd_brackets(const BracketsConfig& cfg) {
  const bool explicit_point = cfg.alpha_plus.has_value() || cfg.alpha_minus.has_value();
  if (explicit_point && cfg.rho) throw std::invalid_argument("brackets: give either --rho or the amplitudes, not both");
  if (explicit_point && !(cfg.alpha_plus && cfg.alpha_minus))
    throw std::invalid_argument("brackets: both --alpha-plus and --alpha-minus are required");
  if (cfg.psi.empty()) throw std::invalid_argument("brackets: empty psi grid");
  for (double psi : cfg.psi) require_finite(psi, "psi");
  if (!(cfg.fd_step > 0.0)) throw std::invalid_argument("brackets: finite-difference step must be positive");

  ModePoint p;
  if (explicit_point) {
    p = {*cfg.alpha_plus, *cfg.alpha_minus};
    if (!is_finite(p)) throw std::invalid_argument("brackets: amplitudes must be finite");
  } else {
    p = steady_state({cfg.rho.value_or(1.0), cfg.theta0});
  }

  const EvalOptions opts{cfg.epsilon};
  const Tolerance oracle_tol{cfg.oracle_atol, cfg.oracle_rtol};
  std::vector<ResultRecord> out;
  for (double psi : cfg.psi) {
    const Inputs in = {{"alpha_plus_re", p.alpha_plus.real()},
                       {"alpha_plus_im", p.alpha_plus.imag()},
                       {"alpha_minus_re", p.alpha_minus.real()},
                       {"alpha_minus_im", p.alpha_minus.imag()},
                       {"psi", psi}};
    auto row = [&](std::string q, cplx v, cplx ref, std::string prov, std::optional<Tolerance> tol,
                   std::string note = {}) {
      out.push_back(make_record("brackets", in, std::move(q), v, ref, std::move(prov), tol, std::move(note)));
    };
    try {
      const double quad_ref = closed_form_quadrature_bracket(p, cfg.epsilon);
      const auto orient_ref = closed_form_orientation_bracket(p, {psi}, cfg.epsilon);
      double half_orientation = 0.0;
      double full_orientation = 0.0;
      for (auto conv : {OrientationConvention::HalfAngle, OrientationConvention::FullAngle}) {
        const bool half = conv == OrientationConvention::HalfAngle;
        const std::string suffix = half ? "_half" : "_full";
        const auto x = rotating_quadrature({psi}, conv);
        const auto x_perp = rotating_quadrature({psi + kPi / 2}, conv);
        const auto theta = orientation(conv);

        const cplx quad = poisson_bracket(x, x_perp, p, opts);
        const cplx orient = poisson_bracket(x, theta, p, opts);
        (half ? half_orientation : full_orientation) = orient.real();

        if (half)
          row("quadrature_pair_bracket" + suffix, quad, quad_ref, "closed-form:quadrature-pair",
              Tolerance{cfg.quadrature_atol, 0.0});
        else
          row("quadrature_pair_bracket" + suffix, quad, quad_ref, "closed-form:quadrature-pair", std::nullopt,
              "full-angle convention, informational");
        row("quadrature_pair_bracket" + suffix, quad, oracle_bracket(x, x_perp, p, cfg.fd_step, opts),
            "oracle:finite-difference", oracle_tol);

        if (half && orient_ref.symmetric)
          row("orientation_bracket" + suffix, orient, orient_ref.value, "closed-form:symmetric-limit",
              Tolerance{1e-12, cfg.orientation_rtol});
        else if (half)
          row("orientation_bracket" + suffix, orient, orient_ref.value, "closed-form:printed-asymmetric",
              std::nullopt, "typo-suspect reference, informational");
        else
          row("orientation_bracket" + suffix, orient, orient_ref.value,
              orient_ref.symmetric ? "closed-form:symmetric-limit" : "closed-form:printed-asymmetric",
              std::nullopt, "full-angle convention, informational");
        row("orientation_bracket" + suffix, orient, oracle_bracket(x, theta, p, cfg.fd_step, opts),
            "oracle:finite-difference", oracle_tol);
      }
      if (std::abs(half_orientation) > 1e-12)
        row("orientation_bracket_ratio_full_over_half", full_orientation / half_orientation, 2.0,
            "convention-discriminator", std::nullopt, "informational");
    } catch (const DomainError& e) {
      row("domain_error", kNaN, kNaN, "domain", Tolerance{}, e.what());
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// commutators

std::vector<ResultRecord> cmd_commutators(const CommutatorsConfig& cfg) {
  if (cfg.rho.empty() || cfg.n_max.empty() || cfg.psi.empty())
    throw std::invalid_argument("commutators: empty rho, n_max or psi list");
  for (double psi : cfg.psi) require_finite(psi, "psi");
  for (int n : cfg.n_max) {
    if (n < 1) throw std::invalid_argument("commutators: n_max must be >= 1");
    if (TruncatedSpace::dimension_for(n) > cfg.dimension_cap)
      throw std::length_error("commutators: n_max " + std::to_string(n) + " exceeds the dimension cap " +
                              std::to_string(cfg.dimension_cap));
    for (double rho : cfg.rho) {
      if (!(rho >= 0.0) || !std::isfinite(rho)) throw std::invalid_argument("commutators: rho must be >= 0");
      const double tail = poisson_tail(2.0 * rho * rho, n);
      if (tail > cfg.tail_tolerance)
        throw std::invalid_argument("commutators: rho " + std::to_string(rho) + " needs n_max above " +
                                    std::to_string(n) + " (tail " + std::to_string(tail) + ")");
    }
  }

  std::vector<ResultRecord> out;
  for (int n : cfg.n_max) {
    const TruncatedSpace space(n, cfg.dimension_cap);
    const auto family = orientation_family(space);
    const auto a_plus = annihilation(Mode::Plus, space);
    const auto a_plus_dag = a_plus.adjoint();
    for (double psi : cfg.psi) {
      const auto x = rotating_quadrature_op({psi}, space, family.exp_orientation);
      const auto x_perp = rotating_quadrature_op({psi + kPi / 2}, space, family.exp_orientation);
      std::vector<double> pair_magnitudes;
      for (double rho : cfg.rho) {
        const Inputs in = {{"n_max", double(n)}, {"rho", rho}, {"psi", psi}};
        auto row = [&](std::string q, cplx v, cplx ref, std::string prov, std::optional<Tolerance> tol,
                       std::string note = {}) {
          out.push_back(make_record("commutators", in, std::move(q), v, ref, std::move(prov), tol, std::move(note)));
        };
        const auto st = coherent_state(rho, rho, space, cfg.tail_tolerance);
        row("ladder_commutator_plus", commutator_expectation(a_plus, a_plus_dag, st), 1.0, "canonical:[a,a^dagger]=1",
            Tolerance{cfg.ladder_atol, 0.0});

        const cplx pair = commutator_expectation(x, x_perp, st);
        pair_magnitudes.push_back(std::abs(pair));
        row("quadrature_pair_commutator", pair, 0.0, "correspondence:i*{X,X_perp}", std::nullopt,
            "finite-rho value, convergence reported");

        if (rho > 0.0) {
          const cplx orient = commutator_expectation(x, family.orientation, st);
          const cplx ref = kI * symmetric_orientation_bracket(rho, psi);
          const bool in_band = rho >= cfg.band_min_rho;
          row("orientation_commutator", orient, ref, "correspondence:i*{X,theta}",
              in_band ? std::optional<Tolerance>(Tolerance{1e-12, cfg.orientation_rtol}) : std::nullopt,
              in_band ? "" : "below band_min_rho, informational");
          row("orientation_commutator_real_part", orient.real(), 0.0, "anti-Hermitian commutator",
              Tolerance{cfg.imaginary_atol, 0.0});
        }
      }
      if (cfg.rho.size() > 1) {
        bool decreasing = true;
        for (std::size_t i = 1; i < cfg.rho.size(); ++i)
          decreasing = decreasing && cfg.rho[i] > cfg.rho[i - 1] && pair_magnitudes[i] < pair_magnitudes[i - 1];
        out.push_back(make_record("commutators", {{"n_max", double(n)}, {"rho", kNaN}, {"psi", psi}},
                                  "quadrature_pair_monotone_in_rho", decreasing ? 1.0 : 0.0, 1.0,
                                  "convergence:strictly-decreasing", Tolerance{}));
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// spectrum

std::vector<ResultRecord> cmd_spectrum(const SpectrumConfig& cfg) {
  if (!(cfg.gamma_s > 0.0)) throw std::invalid_argument("spectrum: gamma_s must be positive");
  if (cfg.psi.empty()) throw std::invalid_argument("spectrum: empty psi list");
  for (double psi : cfg.psi) require_finite(psi, "psi");
  std::vector<double> omegas;
  if (cfg.omega) {
    require_finite(*cfg.omega, "omega");
    omegas.push_back(*cfg.omega);
  } else {
    if (cfg.omega_points < 2 || !(cfg.omega_max > 0.0))
      throw std::invalid_argument("spectrum: need omega_points >= 2 and omega_max > 0");
    for (int i = 0; i < cfg.omega_points; ++i) omegas.push_back(cfg.omega_max * i / (cfg.omega_points - 1));
  }

  std::vector<ResultRecord> out;
  for (double psi : cfg.psi) {
    for (double omega : omegas) {
      const double v = squeezing_spectrum({psi, cfg.gamma_s, omega});
      // cos^2 + sin^2 x / (1 + x): the same curve through different algebra.
      const double x = (omega / (2.0 * cfg.gamma_s)) * (omega / (2.0 * cfg.gamma_s));
      const double s2 = std::sin(psi) * std::sin(psi);
      const double alt = std::cos(psi) * std::cos(psi) + s2 * x / (1.0 + x);
      out.push_back(make_record("spectrum", {{"omega_over_gamma", omega / cfg.gamma_s}, {"psi", psi}, {"gamma_s", cfg.gamma_s}},
                                "squeezing_spectrum", v, alt, "closed-form:alternate-algebra",
                                Tolerance{cfg.atol, 0.0}));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// homodyne-sim

std::vector<ResultRecord> cmd_homodyne_sim(const HomodyneConfig& cfg) {
  if (cfg.psi.empty()) throw std::invalid_argument("homodyne-sim: empty psi list");
  for (double psi : cfg.psi) require_finite(psi, "psi");
  if (!(cfg.gamma_s > 0.0)) throw std::invalid_argument("homodyne-sim: gamma_s must be positive");
  if (!(cfg.nyquist_over_gamma >= 10.0)) throw std::invalid_argument("homodyne-sim: Nyquist must be >= 10 gamma_s");
  const double dt = kPi / (cfg.nyquist_over_gamma * cfg.gamma_s);

  std::vector<ResultRecord> out;
  for (std::size_t i = 0; i < cfg.psi.size(); ++i) {
    const double psi = cfg.psi[i];
    const auto ts = synthesize_photocurrent({psi, cfg.gamma_s, 0.0}, cfg.samples, dt, cfg.seed + i);
    const auto est = estimate_spectrum(ts, cfg.estimator);

    std::size_t within = 0;
    double sup_low = 0.0;
    double sup_low_err = 0.0;
    double high_sum = 0.0, high_ref_sum = 0.0;
    std::size_t high_count = 0;
    for (std::size_t k = 0; k < est.values.size(); ++k) {
      const double w = est.frequencies[k] / cfg.gamma_s;
      const double ref = squeezing_spectrum({psi, cfg.gamma_s, est.frequencies[k]});
      const double dev = std::abs(est.values[k] - ref);
      if (dev <= cfg.z_threshold * est.std_error[k]) ++within;
      if (w <= 10.0 && dev > sup_low) {
        sup_low = dev;
        sup_low_err = est.std_error[k];
      }
      if (w > cfg.recovery_from) {
        high_sum += est.values[k];
        high_ref_sum += ref;
        ++high_count;
      }
      if (cfg.per_bin_rows) {
        auto r = make_record("homodyne-sim", {{"psi", psi}, {"omega_over_gamma", w}}, "spectrum_estimate",
                             est.values[k], ref, "closed-form:squeezing-spectrum", std::nullopt);
        r.uncertainty = est.std_error[k];
        out.push_back(std::move(r));
      }
    }
    const Inputs summary = {{"psi", psi}, {"omega_over_gamma", kNaN}};
    const double fraction = double(within) / double(est.values.size());
    out.push_back(make_record("homodyne-sim", summary, "fraction_within_z", fraction, 1.0,
                              "statistical:" + format_number(cfg.z_threshold) + "-stderr",
                              Tolerance{1.0 - cfg.min_fraction, 0.0}));

    const double v0 = squeezing_spectrum({psi, cfg.gamma_s, 0.0});
    auto dip = make_record("homodyne-sim", summary, "spectrum_at_zero", est.values[0], v0,
                           "closed-form:squeezing-spectrum",
                           v0 < cfg.dip_threshold ? std::optional<Tolerance>(Tolerance{cfg.dip_threshold, 0.0}) : std::nullopt,
                           v0 < cfg.dip_threshold ? "" : "no perfect-squeezing dip expected, informational");
    dip.uncertainty = est.std_error[0];
    out.push_back(std::move(dip));

    if (high_count > 0) {
      auto rec = make_record("homodyne-sim", summary, "mean_above_recovery_frequency",
                             high_sum / double(high_count), high_ref_sum / double(high_count),
                             "closed-form:squeezing-spectrum", Tolerance{cfg.recovery_band, 0.0});
      out.push_back(std::move(rec));
    }
    auto sup = make_record("homodyne-sim", summary, "sup_deviation_within_10_gamma", sup_low, 0.0,
                           "closed-form:squeezing-spectrum", std::nullopt, "informational");
    sup.uncertainty = sup_low_err;
    out.push_back(std::move(sup));
  }
  return out;
}

// ---------------------------------------------------------------------------
// modes

std::vector<ResultRecord> cmd_modes(const ModesConfig& cfg) {
  TransverseModeParams params;
  params.w = cfg.w;
  params.theta0 = cfg.theta0;
  params.grid = {cfg.extent, cfg.resolution};
  validate(params);
  if (cfg.map_resolution < 2) throw std::invalid_argument("modes: map resolution must be >= 2");

  std::vector<ResultRecord> out;
  const TransverseGrid map_grid{cfg.extent, cfg.map_resolution};
  const double w = cfg.w;
  const double norm = 1.0 / (std::sqrt(kPi) * w * w);
  for (auto kind : {ModeKind::Lplus, ModeKind::Lminus, ModeKind::Bright, ModeKind::LO}) {
    for (int iy = 0; iy < map_grid.resolution; ++iy) {
      for (int ix = 0; ix < map_grid.resolution; ++ix) {
        const double x = map_grid.coordinate(ix);
        const double y = map_grid.coordinate(iy);
        const double r = std::hypot(x, y);
        const double phi = std::atan2(y, x);
        const double radial = norm * r * std::exp(-r * r / (2.0 * w * w));
        cplx ref;
        switch (kind) {
          case ModeKind::Lplus: ref = radial * std::exp(kI * phi); break;
          case ModeKind::Lminus: ref = radial * std::exp(-kI * phi); break;
          case ModeKind::Bright: ref = std::numbers::sqrt2 * radial * std::cos(phi - cfg.theta0); break;
          case ModeKind::LO: ref = std::numbers::sqrt2 * radial * std::sin(phi - cfg.theta0); break;
        }
        out.push_back(make_record("modes", {{"w", w}, {"theta0", cfg.theta0}, {"x", x}, {"y", y}},
                                  std::string("profile_") + to_string(kind), mode_profile(kind, params, x, y),
                                  ref, "closed-form:polar", Tolerance{cfg.map_atol, 0.0}));
      }
    }
  }

  const auto lp = sample(ModeKind::Lplus, params);
  const auto lm = sample(ModeKind::Lminus, params);
  const auto bright = sample(ModeKind::Bright, params);
  const auto lo = sample(ModeKind::LO, params);
  struct Pair {
    const char* name;
    const SampledField* a;
    const SampledField* b;
    double expected;
  };
  const Pair pairs[] = {{"gram_Bright_Bright", &bright, &bright, 1.0}, {"gram_Bright_LO", &bright, &lo, 0.0},
                        {"gram_LO_Bright", &lo, &bright, 0.0},         {"gram_LO_LO", &lo, &lo, 1.0},
                        {"gram_Lplus_Lplus", &lp, &lp, 1.0},           {"gram_Lplus_Lminus", &lp, &lm, 0.0},
                        {"gram_Lminus_Lminus", &lm, &lm, 1.0}};
  for (const auto& pr : pairs) {
    const auto ov = overlap(*pr.a, *pr.b);
    auto rec = make_record("modes", {{"w", w}, {"theta0", cfg.theta0}, {"x", kNaN}, {"y", kNaN}}, pr.name, ov.value,
                           pr.expected, "orthonormality", Tolerance{cfg.gram_atol, 0.0});
    rec.uncertainty = ov.resolution_error;
    out.push_back(std::move(rec));
  }
  return out;
}

}  // namespace rotquad
