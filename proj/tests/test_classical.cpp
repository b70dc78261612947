#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "rotquad/classical.hpp"
#include "test_support.hpp"

using namespace rotquad;
using F = FieldFunction;
using std::numbers::pi;
using std::numbers::sqrt2;

namespace {
constexpr cplx I{0.0, 1.0};
constexpr auto Half = OrientationConvention::HalfAngle;
constexpr auto Full = OrientationConvention::FullAngle;

cplx quadrature_pair_bracket(const ModePoint& p, double psi, OrientationConvention c) {
  return poisson_bracket(rotating_quadrature({psi}, c), rotating_quadrature({psi + pi / 2}, c), p);
}
}  // namespace

TEST_SUITE("classical") {
  TEST_CASE("steady state") {
    const auto p = steady_state({2.0, pi / 4});
    CHECK(std::abs(p.alpha_plus - std::polar(2.0, -pi / 4)) < 1e-15);
    CHECK(std::abs(p.alpha_minus - std::polar(2.0, pi / 4)) < 1e-15);
    const auto q = steady_state({1.0, 0.0});
    CHECK(q.alpha_plus == cplx(1, 0));
    CHECK(q.alpha_minus == cplx(1, 0));
    std::mt19937_64 rng(3);
    for (int k = 0; k < 20; ++k) {
      const auto s = testing::random_symmetric_point(rng, 1.7);
      CHECK(std::abs(s.alpha_plus) == doctest::Approx(std::abs(s.alpha_minus)).epsilon(1e-15));
    }
    CHECK_THROWS_AS(steady_state({-1.0, 0.0}), std::invalid_argument);
  }

  TEST_CASE("wrap_angle lands in (-pi, pi]") {
    CHECK(wrap_angle(pi) == doctest::Approx(pi));
    CHECK(wrap_angle(-pi) == doctest::Approx(pi));
    CHECK(wrap_angle(3 * pi / 2) == doctest::Approx(-pi / 2));
    CHECK(wrap_angle(0.25) == 0.25);
  }

  TEST_CASE("orientation conventions at a steady state") {
    const auto p = steady_state({1.0, 0.3});
    CHECK(std::abs(exp_orientation(Full).value(p) - std::exp(0.6 * I)) < 1e-14);
    CHECK(std::abs(exp_orientation(Half).value(p) - std::exp(0.3 * I)) < 1e-14);
    CHECK(orientation(Half).value(p).real() == doctest::Approx(0.3).epsilon(1e-14));
    CHECK(orientation(Full).value(p).real() == doctest::Approx(0.6).epsilon(1e-14));

    // Half angle recovers theta0 modulo pi, full angle recovers 2 theta0 modulo 2 pi.
    for (double th : {-1.4, -0.2, 0.9, 1.5, 2.2}) {
      const auto s = steady_state({1.3, th});
      const double half = orientation(Half).value(s).real();
      const double full = orientation(Full).value(s).real();
      CHECK(std::abs(std::sin(half - th)) < 1e-12);
      CHECK(std::abs(wrap_angle(full - 2 * th)) < 1e-12);
    }
  }

  TEST_CASE("orientation is real and exp_orientation unimodular") {
    std::mt19937_64 rng(8);
    for (int k = 0; k < 50; ++k) {
      const auto p = testing::random_point(rng);
      for (auto c : {Half, Full}) {
        CHECK(std::abs(std::abs(exp_orientation(c).value(p)) - 1.0) < 1e-14);
        CHECK(std::abs(orientation(c).value(p).imag()) < 1e-12);
      }
    }
  }

  TEST_CASE("rotating quadrature at the steady state") {
    for (double rho : {0.5, 1.0, 2.0}) {
      for (double th : {0.0, 0.3, -1.1}) {
        const auto p = steady_state({rho, th});
        for (double psi : {0.0, 0.4, pi / 2, 2.5}) {
          CHECK(std::abs(rotating_quadrature({psi}, Half).value(p)) < 1e-12);
          // The full-angle variant does not vanish off theta0 = 0.
          const cplx full = rotating_quadrature({psi}, Full).value(p);
          CHECK(std::abs(full - (-2 * sqrt2 * rho * std::sin(th) * std::cos(psi))) < 1e-12);
        }
      }
    }
  }

  TEST_CASE("rotating quadrature is real and 2 pi periodic") {
    std::mt19937_64 rng(13);
    for (int k = 0; k < 50; ++k) {
      const auto p = testing::random_point(rng);
      for (auto c : {Half, Full}) {
        const cplx v = rotating_quadrature({0.8}, c).value(p);
        CHECK(std::abs(v.imag()) < 1e-12);
        CHECK(std::abs(v - rotating_quadrature({0.8 + 2 * pi}, c).value(p)) < 1e-12);
      }
    }
  }

  TEST_CASE("single-mode quadratures") {
    auto [xp, yp] = single_mode_quadratures(Mode::Plus);
    CHECK(std::abs(xp.value({{1, 0}, {0, 0}}) - 2.0) < 1e-15);
    CHECK(std::abs(yp.value({{0, 1}, {0, 0}}) - 2.0) < 1e-15);
    std::mt19937_64 rng(21);
    for (auto j : {Mode::Plus, Mode::Minus}) {
      auto [x, y] = single_mode_quadratures(j);
      for (int k = 0; k < 10; ++k) CHECK(std::abs(poisson_bracket(x, y, testing::random_point(rng)) - 2.0) < 1e-12);
    }
  }

  TEST_CASE("closed-form quadrature-pair bracket") {
    CHECK(closed_form_quadrature_bracket({{1, 0}, {1, 0}}) == 0.0);
    CHECK(closed_form_quadrature_bracket({{2, 0}, {1, 0}}) == doctest::Approx(-0.25));
    CHECK(closed_form_quadrature_bracket({{1, 0}, {2, 0}}) == doctest::Approx(0.25));
    CHECK_THROWS_AS(closed_form_quadrature_bracket({{0, 0}, {1, 0}}), DomainError);
  }

  TEST_CASE("quadrature-pair bracket off the symmetric manifold") {
    // The bracket depends only on the moduli: -(a - b)^2 / (2 a b).
    std::mt19937_64 rng(31);
    for (int k = 0; k < 30; ++k) {
      const auto p = testing::random_point(rng);
      const double a = std::abs(p.alpha_plus), b = std::abs(p.alpha_minus);
      const cplx measured = quadrature_pair_bracket(p, 0.37 * k, Half);
      CHECK(std::abs(measured - (-(a - b) * (a - b) / (2 * a * b))) < 1e-11);
    }
    // The printed closed form coincides only where |a - b| is 0 or 1.
    CHECK(std::abs(quadrature_pair_bracket({{2, 0}, {1, 0}}, 0.5, Half) - (-0.25)) < 1e-12);
    CHECK(std::abs(quadrature_pair_bracket({{1, 0}, {2, 0}}, 0.5, Half) - (-0.25)) < 1e-12);
    CHECK(std::abs(quadrature_pair_bracket({{3, 0}, {1, 0}}, 0.5, Half) - closed_form_quadrature_bracket({{3, 0}, {1, 0}})) > 0.1);
  }

  TEST_CASE("closed-form orientation bracket") {
    const auto s1 = closed_form_orientation_bracket(steady_state({1.0, 0.0}), {pi / 2});
    CHECK(s1.symmetric);
    CHECK_FALSE(s1.typo_suspect);
    CHECK(s1.value.real() == doctest::Approx(-1 / sqrt2).epsilon(1e-15));
    CHECK(closed_form_orientation_bracket(steady_state({3.0, 0.4}), {0.0}).value == cplx(0.0, 0.0));
    CHECK(closed_form_orientation_bracket(steady_state({2.0, 0.0}), {pi / 6}).value.real() ==
          doctest::Approx(-0.1767766953).epsilon(1e-9));
    const auto asym = closed_form_orientation_bracket({{2, 0}, {1, 0}}, {0.5});
    CHECK_FALSE(asym.symmetric);
    CHECK(asym.typo_suspect);
  }

  TEST_CASE("symmetric brackets, half-angle convention") {
    for (double rho : {0.5, 1.0, 2.0, 5.0}) {
      for (double th : {0.0, 0.3, -1.1}) {
        const auto p = steady_state({rho, th});
        for (int k = 0; k <= 6; ++k) {
          const double psi = k * pi / 6;
          CHECK(std::abs(quadrature_pair_bracket(p, psi, Half)) < 1e-10);
          const cplx b = poisson_bracket(rotating_quadrature({psi}, Half), orientation(Half), p);
          const double ref = symmetric_orientation_bracket(rho, psi);
          CHECK(std::abs(b - ref) <= 1e-9 * std::max(std::abs(ref), 1e-12) + 1e-15);
        }
      }
    }
  }

  TEST_CASE("symmetric brackets, full-angle convention") {
    // Measured behaviour: {X, X_perp} = -2 cos(2 theta0) and the orientation
    // bracket is 2 cos(theta0) times the half-angle value.
    for (double rho : {0.5, 2.0}) {
      for (double th : {0.0, 0.3, -1.1}) {
        const auto p = steady_state({rho, th});
        for (double psi : {pi / 6, pi / 2, 2.0}) {
          CHECK(std::abs(quadrature_pair_bracket(p, psi, Full) - (-2 * std::cos(2 * th))) < 1e-10);
          const cplx full = poisson_bracket(rotating_quadrature({psi}, Full), orientation(Full), p);
          const cplx half = poisson_bracket(rotating_quadrature({psi}, Half), orientation(Half), p);
          CHECK(std::abs(full - 2 * std::cos(th) * half) < 1e-10);
        }
      }
    }
  }
}
