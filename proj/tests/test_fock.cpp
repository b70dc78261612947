#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <unsupported/Eigen/MatrixFunctions>

#include "doctest.h"
#include "rotquad/fock.hpp"

using namespace rotquad;
using std::numbers::pi;

namespace {
constexpr cplx I{0.0, 1.0};

Eigen::VectorXcd ket(const TruncatedSpace& s, int m, int n) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(s.dimension()));
  v(static_cast<Eigen::Index>(s.index_of(m, n))) = 1.0;
  return v;
}

PhaseFunction random_phase(std::uint64_t seed, int n_max) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-pi, pi);
  std::vector<double> v(static_cast<std::size_t>(n_max) + 1);
  for (auto& x : v) x = u(rng);
  return PhaseFunction::from_values(v);
}

double blockwise_exp_residual(const OrientationFamily& fam, const TruncatedSpace& s) {
  double sum = 0.0;
  for (int total = 0; total <= s.n_max(); ++total) {
    const Eigen::MatrixXcd th = manifold_block(fam.orientation, s, total);
    const Eigen::MatrixXcd e = (I * th).exp();
    sum += (e - manifold_block(fam.exp_orientation, s, total)).squaredNorm();
  }
  return std::sqrt(sum);
}
}  // namespace

TEST_SUITE("fock") {
  TEST_CASE("basis ordering and counting") {
    const auto s1 = basis(1);
    REQUIRE(s1.dimension() == 3);
    CHECK(s1.states()[0] == FockBasisIndex{0, 0});
    CHECK(s1.states()[1] == FockBasisIndex{1, 0});
    CHECK(s1.states()[2] == FockBasisIndex{0, 1});
    CHECK(basis(2).dimension() == 6);
    CHECK(basis(60).dimension() == 1891);
    const auto s = basis(7);
    for (std::size_t k = 0; k < s.dimension(); ++k)
      CHECK(s.index_of(s.states()[k].m, s.states()[k].n) == k);
    CHECK_THROWS_AS(basis(0), std::invalid_argument);
    CHECK_THROWS_AS(basis(60, 1000), std::length_error);
    CHECK_THROWS_AS(s.index_of(5, 5), std::out_of_range);
  }

  TEST_CASE("ladder operators") {
    const auto s = basis(6);
    const auto a = annihilation(Mode::Plus, s);
    CHECK((a.matrix * ket(s, 2, 0) - std::sqrt(2.0) * ket(s, 1, 0)).norm() < 1e-15);
    CHECK((a.matrix * ket(s, 0, 3)).norm() == 0.0);
    const auto am = annihilation(Mode::Minus, s);
    CHECK((am.matrix * ket(s, 1, 3) - std::sqrt(3.0) * ket(s, 1, 2)).norm() < 1e-15);
    // [a, a^dagger] = 1 away from the truncation edge.
    for (auto j : {Mode::Plus, Mode::Minus}) {
      const auto aj = annihilation(j, s);
      const Eigen::MatrixXcd comm = aj.matrix * aj.matrix.adjoint() - aj.matrix.adjoint() * aj.matrix;
      for (std::size_t k = 0; k < s.dimension(); ++k) {
        const auto [m, n] = s.states()[k];
        if (m + n < s.n_max()) CHECK(std::abs(comm(Eigen::Index(k), Eigen::Index(k)) - 1.0) < 1e-14);
      }
    }
  }

  TEST_CASE("Susskind-Glogower operators") {
    const auto s = basis(6);
    const auto u = susskind_glogower(Mode::Plus, s);
    CHECK((u.matrix * ket(s, 2, 1) - ket(s, 1, 1)).norm() < 1e-15);
    CHECK((u.matrix * ket(s, 0, 2)).norm() == 0.0);
    const Eigen::MatrixXcd uud = u.matrix * u.matrix.adjoint();
    for (int m = 0; m < 5; ++m) CHECK((uud * ket(s, m, 0) - ket(s, m, 0)).norm() < 1e-14);
  }

  TEST_CASE("phase-difference unitary") {
    const auto s = basis(6);
    auto t = phase_difference_unitary(s);
    CHECK((t.matrix * ket(s, 1, 1) - ket(s, 2, 0)).norm() < 1e-15);
    CHECK((t.matrix * ket(s, 2, 0) - ket(s, 0, 2)).norm() < 1e-15);
    verify(t, s);
    REQUIRE(t.unitary_residual.has_value());
    CHECK(*t.unitary_residual < 1e-13);
    CHECK(off_manifold_norm(t, s) == 0.0);

    const auto phi = PhaseFunction([](int n) { return 0.5 * n; });
    const auto tp = phase_difference_unitary(s, phi);
    CHECK((tp.matrix * ket(s, 3, 0) - std::exp(1.5 * I) * ket(s, 0, 3)).norm() < 1e-15);
  }

  TEST_CASE("orientation unitary and operator, phi = 0") {
    const auto s = basis(12);
    auto fam = orientation_family(s);
    const auto sq = multiply(fam.exp_orientation, fam.exp_orientation, s);
    CHECK((sq.matrix - fam.phase_difference.matrix).norm() < 1e-12);
    verify(fam.exp_orientation, s);
    CHECK(*fam.exp_orientation.unitary_residual < 1e-12);
    verify(fam.orientation, s);
    CHECK(*fam.orientation.hermitian_residual < 1e-12);
    CHECK(blockwise_exp_residual(fam, s) < 1e-10);

    // N = 1: T is the swap, U has eigenvalues {1, i}.
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(manifold_block(fam.exp_orientation, s, 1));
    std::vector<cplx> ev(es.eigenvalues().data(), es.eigenvalues().data() + 2);
    std::sort(ev.begin(), ev.end(), [](cplx a, cplx b) { return a.imag() < b.imag(); });
    CHECK(std::abs(ev[0] - 1.0) < 1e-12);
    CHECK(std::abs(ev[1] - I) < 1e-12);

    for (int total = 0; total <= s.n_max(); ++total) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> h(manifold_block(fam.orientation, s, total));
      CHECK(h.eigenvalues().minCoeff() > -pi / 2);
      CHECK(h.eigenvalues().maxCoeff() <= pi / 2 + 1e-12);
    }
  }

  TEST_CASE("orientation identities with a random phase function") {
    const auto s = basis(15);
    auto fam = orientation_family(s, random_phase(17, 15));
    CHECK((multiply(fam.exp_orientation, fam.exp_orientation, s).matrix - fam.phase_difference.matrix).norm() < 1e-12);
    verify(fam.exp_orientation, s);
    verify(fam.orientation, s);
    CHECK(*fam.exp_orientation.unitary_residual < 1e-12);
    CHECK(*fam.orientation.hermitian_residual < 1e-12);
    CHECK(blockwise_exp_residual(fam, s) < 1e-10);
  }

  TEST_CASE("large manifolds with a random phase function") {
    // Blocks of 37+ states with a generic wrap phase; the root must still
    // square back to T and agree with the matrix exponential.
    const auto s = basis(45);
    auto fam = orientation_family(s, random_phase(29, 45));
    CHECK((multiply(fam.exp_orientation, fam.exp_orientation, s).matrix - fam.phase_difference.matrix).norm() < 1e-10);
    verify(fam.exp_orientation, s);
    CHECK(*fam.exp_orientation.unitary_residual < 1e-10);
    CHECK(blockwise_exp_residual(fam, s) < 1e-10);
  }

  TEST_CASE("rotating quadrature operator") {
    const auto s = basis(10);
    const auto u = orientation_unitary(s);
    for (double psi : {0.0, 0.9, pi / 2}) {
      auto x = rotating_quadrature_op({psi}, s, u);
      CHECK(std::abs(ket(s, 0, 0).dot(x.matrix * ket(s, 0, 0))) < 1e-15);
      verify(x, s);
      CHECK(*x.hermitian_residual < 1e-12);
      CHECK((rotating_quadrature_op({psi + 2 * pi}, s, u).matrix - x.matrix).norm() < 1e-12);
    }
  }

  TEST_CASE("coherent states") {
    const auto s = basis(30);
    const auto vac = coherent_state(0.0, 0.0, s);
    CHECK(std::abs(vac.coefficients(0) - 1.0) < 1e-15);
    CHECK(vac.coefficients.tail(vac.coefficients.size() - 1).norm() == 0.0);

    const cplx ap{0.8, -0.3}, am{-0.5, 0.6};
    const auto st = coherent_state(ap, am, s);
    CHECK(st.norm == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(expectation(annihilation(Mode::Plus, s), st) - ap) < 1e-10);
    CHECK(std::abs(expectation(annihilation(Mode::Minus, s), st) - am) < 1e-10);

    CHECK_THROWS_AS(coherent_state(3.0, 3.0, basis(30)), std::invalid_argument);
    CHECK(poisson_tail(18.0, 30) > 1e-8);
    CHECK(poisson_tail(18.0, 50) < 1e-8);
  }

  TEST_CASE("commutator expectations") {
    const auto s = basis(30);
    const auto st = coherent_state(1.0, 1.0, s);
    const auto a = annihilation(Mode::Plus, s);
    CHECK(std::abs(commutator_expectation(a, creation(Mode::Plus, s), st) - 1.0) < 1e-6);
    CHECK_THROWS_AS(commutator_expectation(a, annihilation(Mode::Plus, basis(5)), st), std::invalid_argument);

    // Expectation from matvecs equals the dense commutator.
    const auto x = rotating_quadrature_op({0.4}, s);
    const auto th = orientation_operator(s);
    const Eigen::MatrixXcd c = x.matrix * th.matrix - th.matrix * x.matrix;
    CHECK(std::abs(commutator_expectation(x, th, st) - st.coefficients.dot(c * st.coefficients)) < 1e-12);
  }

  TEST_CASE("verify fills metadata only on request") {
    const auto s = basis(4);
    auto t = phase_difference_unitary(s);
    CHECK(t.declared_unitary);
    CHECK_FALSE(t.unitary_residual.has_value());
    verify(t, s);
    CHECK(t.unitary_residual.has_value());
    CHECK(t.hermitian_residual.has_value());
    auto wrong = annihilation(Mode::Plus, basis(3));
    CHECK_THROWS_AS(verify(wrong, s), std::invalid_argument);
  }
}
