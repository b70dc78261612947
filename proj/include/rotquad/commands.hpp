#pragma once

// Batch drivers behind the rotquad CLI. Each command validates its whole
// configuration first (throwing std::invalid_argument / std::length_error),
// then returns one ResultRecord per computed value, in input order.

#include <cstddef>
#include <cstdint>
#include <numbers>
#include <optional>
#include <vector>

#include "rotquad/fock.hpp"
#include "rotquad/records.hpp"
#include "rotquad/spectrum.hpp"

namespace rotquad {

struct BracketsConfig {
  // Either a steady state (rho, theta0) or explicit amplitudes.
  std::optional<double> rho;
  double theta0 = 0.0;
  std::optional<cplx> alpha_plus;
  std::optional<cplx> alpha_minus;
  std::vector<double> psi{0.0};
  double fd_step = 1e-6;
  double epsilon = 1e-9;
  double quadrature_atol = 1e-10;
  double orientation_rtol = 1e-9;
  double oracle_rtol = 1e-6;
  double oracle_atol = 1e-8;
};

std::vector<ResultRecord> cmd_brackets(const BracketsConfig& cfg);

struct CommutatorsConfig {
  std::vector<double> rho{1.0, 2.0, 3.0};
  std::vector<int> n_max{50};
  std::vector<double> psi{std::numbers::pi / 2};
  std::size_t dimension_cap = TruncatedSpace::kDefaultDimensionCap;
  double tail_tolerance = 1e-8;
  double ladder_atol = 1e-6;
  // Band on Im<[X, theta]> against the classical limit, enforced from this rho up.
  double orientation_rtol = 0.15;
  double band_min_rho = 3.0;
  double imaginary_atol = 1e-8;
};

std::vector<ResultRecord> cmd_commutators(const CommutatorsConfig& cfg);

struct SpectrumConfig {
  std::vector<double> psi{std::numbers::pi / 2};
  double gamma_s = 1.0;
  std::optional<double> omega;  // single frequency (rad/s); otherwise a grid
  double omega_max = 10.0;
  int omega_points = 101;
  double atol = 1e-12;
};

std::vector<ResultRecord> cmd_spectrum(const SpectrumConfig& cfg);

struct HomodyneConfig {
  std::vector<double> psi{std::numbers::pi / 2};
  std::size_t samples = std::size_t{1} << 20;
  std::uint64_t seed = 7;
  double gamma_s = 1.0;
  double nyquist_over_gamma = 40.0;
  EstimatorOptions estimator{};
  bool per_bin_rows = true;
  double z_threshold = 5.0;
  double min_fraction = 0.99;
  double dip_threshold = 0.05;
  double recovery_band = 0.05;
  double recovery_from = 20.0;  // in units of gamma_s
};

std::vector<ResultRecord> cmd_homodyne_sim(const HomodyneConfig& cfg);

struct ModesConfig {
  double w = 1.0;
  double theta0 = 0.0;
  double extent = 8.0;
  int resolution = 256;
  int map_resolution = 33;
  double gram_atol = 1e-8;
  double map_atol = 1e-12;
};

std::vector<ResultRecord> cmd_modes(const ModesConfig& cfg);

}  // namespace rotquad
