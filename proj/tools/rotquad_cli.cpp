// rotquad: batch driver for the bracket, commutator, spectrum, homodyne and
// transverse-mode checks. Exit status 0 when every checked row is within
// tolerance, 1 when any is not, 2 on invalid configuration.

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <regex>
#include <string>

#include "CLI11.hpp"
#include "rotquad/commands.hpp"

namespace {

using rotquad::cplx;

// Accepts "1.5", "2i", "1-0.5i", "1+2j" and "re,im".
cplx parse_complex(const std::string& text) {
  static const std::regex pair_re(R"(^\s*([^,]+),([^,]+)\s*$)");
  static const std::regex alg_re(
      R"(^\s*([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?\s*(?:([+-]?\s*(?:\d+\.?\d*|\.\d+)?(?:[eE][+-]?\d+)?)[ij])?\s*$)");
  std::smatch m;
  if (std::regex_match(text, m, pair_re)) return {std::stod(m[1]), std::stod(m[2])};
  if (std::regex_match(text, m, alg_re) && (m[1].matched || m[2].matched)) {
    double re = m[1].matched ? std::stod(m[1]) : 0.0;
    double im = 0.0;
    if (m[2].matched) {
      std::string s = m[2];
      s.erase(std::remove(s.begin(), s.end(), ' '), s.end());
      if (s.empty() || s == "+") im = 1.0;
      else if (s == "-") im = -1.0;
      else im = std::stod(s);
    }
    return {re, im};
  }
  throw CLI::ValidationError("complex amplitude", "cannot parse '" + text + "'");
}

std::size_t dimension_cap_from_env() {
  if (const char* env = std::getenv("ROTQUAD_MAX_DIM")) {
    try {
      return static_cast<std::size_t>(std::stoull(env));
    } catch (const std::exception&) {
      throw std::invalid_argument("ROTQUAD_MAX_DIM must be a positive integer");
    }
  }
  return rotquad::TruncatedSpace::kDefaultDimensionCap;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Canonical-pair verification: brackets, commutators, squeezing spectrum, modes"};
  app.require_subcommand(1);
  std::string output;
  std::string format = "csv";
  app.add_option("-o,--output", output, "Output file (default: stdout)");
  app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  // brackets
  rotquad::BracketsConfig brackets;
  double rho = 1.0;
  std::string alpha_plus, alpha_minus;
  auto* br = app.add_subcommand("brackets", "Poisson brackets by autodiff vs closed forms and the finite-difference oracle");
  auto* rho_opt = br->add_option("--rho", rho, "Steady-state amplitude");
  br->add_option("--theta0", brackets.theta0, "Steady-state orientation (rad)");
  br->add_option("--alpha-plus", alpha_plus, "Amplitude of mode +1 (e.g. 2, 1+0.5i, 1,0.5)");
  br->add_option("--alpha-minus", alpha_minus, "Amplitude of mode -1");
  br->add_option("--psi", brackets.psi, "LO phases (rad)")->delimiter(',');
  br->add_option("--fd-step", brackets.fd_step, "Finite-difference step");
  br->add_option("--epsilon", brackets.epsilon, "Domain epsilon for vanishing moduli");
  br->add_option("--quadrature-atol", brackets.quadrature_atol, "Absolute tolerance on quadrature-pair rows");
  br->add_option("--orientation-rtol", brackets.orientation_rtol, "Relative tolerance on orientation rows");
  br->add_option("--oracle-rtol", brackets.oracle_rtol, "Relative tolerance against the finite-difference oracle");

  // commutators
  rotquad::CommutatorsConfig comm;
  auto* cm = app.add_subcommand("commutators", "Truncated Fock-space commutator expectations on coherent states");
  cm->add_option("--rho", comm.rho, "Coherent amplitudes (alpha+ = alpha- = rho)")->delimiter(',');
  cm->add_option("--nmax", comm.n_max, "Total-excitation truncations")->delimiter(',');
  cm->add_option("--psi", comm.psi, "LO phases (rad)")->delimiter(',');
  cm->add_option("--tail-tol", comm.tail_tolerance, "Maximum discarded coherent-state probability");
  cm->add_option("--orientation-rtol", comm.orientation_rtol, "Band on Im<[X, theta]> against the classical limit");
  cm->add_option("--band-min-rho", comm.band_min_rho, "Smallest rho at which the band is enforced");

  // spectrum
  rotquad::SpectrumConfig spec;
  double omega = 0.0;
  auto* sp = app.add_subcommand("spectrum", "Tabulate the squeezing spectrum");
  sp->add_option("--psi", spec.psi, "LO phases (rad)")->delimiter(',');
  auto* omega_opt = sp->add_option("--omega", omega, "Single noise frequency (rad/s)");
  sp->add_option("--omega-max", spec.omega_max, "Grid upper end (rad/s)");
  sp->add_option("--omega-points", spec.omega_points, "Grid size");
  sp->add_option("--gamma", spec.gamma_s, "Cavity linewidth (rad/s)");

  // homodyne-sim
  rotquad::HomodyneConfig hom;
  std::string window = "hann";
  bool no_bins = false;
  auto* hs = app.add_subcommand("homodyne-sim", "Synthesize photocurrent records and re-estimate the spectrum");
  hs->add_option("--psi", hom.psi, "LO phases (rad)")->delimiter(',');
  hs->add_option("--samples", hom.samples, "Record length (power of two)");
  hs->add_option("--seed", hom.seed, "RNG seed (case i uses seed + i)");
  hs->add_option("--gamma", hom.gamma_s, "Cavity linewidth (rad/s)");
  hs->add_option("--nyquist", hom.nyquist_over_gamma, "Nyquist frequency in units of gamma_s");
  hs->add_option("--segment", hom.estimator.segment_length, "Segment length (power of two)");
  hs->add_option("--overlap", hom.estimator.overlap, "Segment overlap fraction");
  hs->add_option("--window", window, "Segment window")->check(CLI::IsMember({"hann", "rectangular"}));
  hs->add_flag("--no-bins", no_bins, "Emit only the summary rows");

  // modes
  rotquad::ModesConfig modes;
  auto* md = app.add_subcommand("modes", "Transverse mode maps and Gram matrix");
  md->add_option("--w", modes.w, "Beam width parameter");
  md->add_option("--theta0", modes.theta0, "Bright-mode orientation (rad)");
  md->add_option("--extent", modes.extent, "Grid half-width");
  md->add_option("--resolution", modes.resolution, "Quadrature samples per axis");
  md->add_option("--map-resolution", modes.map_resolution, "Map samples per axis");

  CLI11_PARSE(app, argc, argv);

  std::vector<rotquad::ResultRecord> records;
  try {
    if (br->parsed()) {
      if (*rho_opt) brackets.rho = rho;
      if (!alpha_plus.empty()) brackets.alpha_plus = parse_complex(alpha_plus);
      if (!alpha_minus.empty()) brackets.alpha_minus = parse_complex(alpha_minus);
      records = rotquad::cmd_brackets(brackets);
    } else if (cm->parsed()) {
      comm.dimension_cap = dimension_cap_from_env();
      records = rotquad::cmd_commutators(comm);
    } else if (sp->parsed()) {
      if (*omega_opt) spec.omega = omega;
      records = rotquad::cmd_spectrum(spec);
    } else if (hs->parsed()) {
      hom.estimator.window = window == "hann" ? rotquad::Window::Hann : rotquad::Window::Rectangular;
      hom.per_bin_rows = !no_bins;
      records = rotquad::cmd_homodyne_sim(hom);
    } else if (md->parsed()) {
      records = rotquad::cmd_modes(modes);
    }
  } catch (const std::exception& e) {
    std::cerr << "rotquad: " << e.what() << "\n";
    return 2;
  }

  std::ofstream file;
  if (!output.empty()) {
    file.open(output, std::ios::binary);
    if (!file) {
      std::cerr << "rotquad: cannot open " << output << "\n";
      return 2;
    }
  }
  std::ostream& os = output.empty() ? std::cout : file;
  if (format == "json")
    rotquad::write_json(os, records);
  else
    rotquad::write_csv(os, records);
  return rotquad::all_pass(records) ? 0 : 1;
}
