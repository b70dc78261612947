#include <cmath>
#include <numbers>

#include "doctest.h"
#include "rotquad/classical.hpp"
#include "rotquad/modes.hpp"

using namespace rotquad;

namespace {
TransverseModeParams params(double theta0 = 0.0) {
  TransverseModeParams p;
  p.theta0 = theta0;
  return p;
}
}  // namespace

TEST_SUITE("modes") {
  TEST_CASE("normalization and orthogonality on the default grid") {
    const auto p = params(0.7);
    const auto lp = sample(ModeKind::Lplus, p);
    const auto lm = sample(ModeKind::Lminus, p);
    const auto br = sample(ModeKind::Bright, p);
    const auto lo = sample(ModeKind::LO, p);
    CHECK(std::abs(overlap(lp, lp).value - 1.0) < 1e-8);
    CHECK(std::abs(overlap(lm, lm).value - 1.0) < 1e-8);
    CHECK(std::abs(overlap(lp, lm).value) < 1e-8);
    CHECK(std::abs(overlap(br, br).value - 1.0) < 1e-8);
    CHECK(std::abs(overlap(lo, lo).value - 1.0) < 1e-8);
    CHECK(std::abs(overlap(br, lo).value) < 1e-8);
    CHECK(std::abs(overlap(lo, br).value) < 1e-8);
    CHECK(overlap(lp, lp).resolution_error < 1e-8);
  }

  TEST_CASE("bright mode node and LG core") {
    const auto p = params(0.0);
    for (double r : {0.1, 0.8, 1.5, 3.0}) {
      CHECK(std::abs(mode_profile(ModeKind::Bright, p, 0.0, r)) < 1e-15);
      CHECK(std::abs(mode_profile(ModeKind::Bright, p, 0.0, -r)) < 1e-15);
      CHECK(std::abs(mode_profile(ModeKind::Bright, p, r, 0.0)) > 1e-3);
      // The LO has its node where the bright mode peaks.
      CHECK(std::abs(mode_profile(ModeKind::LO, p, r, 0.0)) < 1e-15);
    }
    CHECK(std::abs(mode_profile(ModeKind::Lplus, p, 0.0, 0.0)) == 0.0);
    // Rotating theta0 rotates the node line.
    const auto q = params(0.4);
    const double phi = 0.4 + std::numbers::pi / 2;
    CHECK(std::abs(mode_profile(ModeKind::Bright, q, std::cos(phi), std::sin(phi))) < 1e-15);
  }

  TEST_CASE("signal envelope at the steady state is the bright mode") {
    for (double th : {0.0, 0.6}) {
      const auto p = params(th);
      const double rho = 1.7;
      const auto amps = steady_state({rho, th});
      for (auto [x, y] : {std::pair{0.3, -0.2}, std::pair{1.1, 0.9}, std::pair{-2.0, 0.5}}) {
        const cplx env = signal_envelope(amps, p, x, y);
        CHECK(std::abs(env - std::numbers::sqrt2 * rho * mode_profile(ModeKind::Bright, p, x, y)) < 1e-14);
      }
    }
  }

  TEST_CASE("validation and grid mismatch") {
    auto p = params();
    p.w = 0.0;
    CHECK_THROWS_AS(validate(p), std::invalid_argument);
    p = params();
    p.grid.extent = 5.0;
    CHECK_THROWS_AS(validate(p), std::invalid_argument);
    p = params();
    p.grid.resolution = 2;
    CHECK_THROWS_AS(validate(p), std::invalid_argument);

    auto coarse = params();
    coarse.grid.resolution = 64;
    CHECK_THROWS_AS(overlap(sample(ModeKind::Lplus, params()), sample(ModeKind::Lplus, coarse)),
                    std::invalid_argument);
  }

  TEST_CASE("coarse grid reports a larger resolution error") {
    auto p = params();
    p.grid.resolution = 17;
    const auto r = overlap(sample(ModeKind::Lplus, p), sample(ModeKind::Lplus, p));
    CHECK(r.resolution_error > 1e-6);
  }
}
