#include <doctest.h>

#include <cmath>

#include "qfib/broadcast.hpp"
#include "qfib/fisher.hpp"
#include "qfib/random_states.hpp"
#include "test_support.hpp"

using namespace qfib;
using namespace qtest;

namespace {

// projective measurement along the equatorial axis phi
POVM equatorial_axis_measurement(double phi) {
  cvec plus(2), minus(2);
  plus << 1.0, std::exp(cxd(0, phi));
  minus << 1.0, -std::exp(cxd(0, phi));
  plus /= std::sqrt(2.0);
  minus /= std::sqrt(2.0);
  return POVM({plus * plus.adjoint(), minus * minus.adjoint()});
}

POVM computational_basis(int d) {
  std::vector<cmat> effects;
  for (int j = 0; j < d; ++j) {
    cmat p = cmat::Zero(d, d);
    p(j, j) = 1.0;
    effects.push_back(p);
  }
  return POVM(std::move(effects));
}

ParametricFamily diag_half_angle_family() { return builtin_classical_diagonal(); }

}  // namespace

TEST_CASE("derivative: constant family vanishes") {
  Rng rng(3);
  const ParametricFamily f = constant_family(random_density(3, rng), {0.0, 1.0});
  CHECK(f.derivative(0.5).norm() <= 1e-12);
}

TEST_CASE("derivative: analytic and central difference agree on the equatorial family") {
  const ParametricFamily eq = builtin_equatorial();
  const ParametricFamily eq_fd = ParametricFamily::central_difference(
      eq.domain(), [eq](double t) { return eq.state_at(t); }, 1e-5);
  for (double theta : {0.2, 1.0, 2.4, 5.3}) {
    CHECK((eq.derivative(theta) - eq_fd.derivative(theta)).norm() <= 1e-8);
  }
  // one-sided stencils at the domain ends
  CHECK((eq.derivative(0.0) - eq_fd.derivative(0.0)).norm() <= 1e-7);
}

TEST_CASE("derivative: diag(cos^2, sin^2) at pi/2 gives diag(-1/2, 1/2)") {
  const ParametricFamily f = diag_half_angle_family();
  const cmat d = f.derivative(kPi / 2.0);
  CHECK(d(0, 0).real() == doctest::Approx(-0.5).epsilon(1e-10));
  CHECK(d(1, 1).real() == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("derivative: out-of-domain and fd-vs-analytic property") {
  const ParametricFamily eq = builtin_equatorial();
  CHECK_THROWS_AS((void)eq.derivative(-1.0), OutOfDomain);
  CHECK_THROWS_AS((void)eq.state_at(9.0), OutOfDomain);

  // |analytic - central difference| <= 10 h^2 on smooth random families
  const double h = 1e-4;
  for (std::uint64_t seed : {5ull, 6ull, 7ull}) {
    const ParametricFamily f = random_family({2}, seed);
    const ParametricFamily fd = ParametricFamily::central_difference(
        f.domain(), [f](double t) { return f.state_at(t); }, h);
    for (double theta : {0.5, 1.7, 3.1}) {
      CHECK((f.derivative(theta) - fd.derivative(theta)).norm() <= 10 * h * h);
    }
  }
}

TEST_CASE("sld: equatorial family has unit QFI and satisfies its invariants") {
  const ParametricFamily eq = builtin_equatorial();
  for (double theta : {0.3, 1.0, 2.2, 4.8}) {
    const DensityMatrix rho = eq.state_at(theta);
    const cmat drho = eq.derivative(theta);
    const SldResult r = sld(rho, drho);
    CHECK(r.qfi == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(!r.degenerate);
    CHECK(r.support_rank == 1);
    CHECK(sld_equation_residual(rho, drho, r.sld) <= 1e-8);
    // qfi = tr(rho L^2) within 1e-9 relative
    const double tr_form = (rho.mat() * r.sld * r.sld).trace().real();
    CHECK(std::abs(r.qfi - tr_form) <= 1e-9 * std::max(1.0, r.qfi));
  }
}

TEST_CASE("sld: pure-state QFI formula on random pure families") {
  // qfi = 4 (<dpsi|dpsi> - |<psi|dpsi>|^2), derived by projecting the
  // rank-one drho into the eigenpair sum
  for (std::uint64_t seed : {11ull, 12ull, 13ull, 14ull}) {
    for (const std::vector<int>& dims : {std::vector<int>{2}, std::vector<int>{3}}) {
      const ParametricFamily f = random_family(dims, seed, FamilyKind::PureOrbit);
      const double theta = 0.9;
      const SldResult r = sld_at(f, theta);

      const double h = 1e-6;
      const cvec psi_p = eig_hermitian(f.state_at(theta + h).mat()).eigenvectors.rightCols(1);
      const cvec psi_m = eig_hermitian(f.state_at(theta - h).mat()).eigenvectors.rightCols(1);
      // align phases before differencing
      const cxd ov = psi_m.dot(psi_p);
      const cvec psi_p_aligned = psi_p * std::conj(ov / std::abs(ov));
      const cvec dpsi = (psi_p_aligned - psi_m) / (2.0 * h);
      const cvec psi = eig_hermitian(f.state_at(theta).mat()).eigenvectors.rightCols(1);
      const double expect =
          4.0 * (dpsi.squaredNorm() - std::norm(psi.dot(dpsi)));
      CHECK(r.qfi == doctest::Approx(expect).epsilon(1e-4));
    }
  }
}

TEST_CASE("sld: maximally mixed constant family has L = 0 and QFI 0") {
  const DensityMatrix rho(cmat(0.5 * cmat::Identity(2, 2)), {2});
  const SldResult r = sld(rho, cmat::Zero(2, 2));
  CHECK(r.sld.norm() <= 1e-12);
  CHECK(r.qfi == doctest::Approx(0.0));
  CHECK(!r.degenerate);
}

TEST_CASE("sld: defining-equation residual holds on random mixed families") {
  for (std::uint64_t seed : {101ull, 102ull, 103ull}) {
    for (int dim : {2, 3, 4}) {
      const ParametricFamily f = random_family({dim}, seed);
      for (double theta : {0.5, 1.6, 2.9}) {
        const DensityMatrix rho = f.state_at(theta);
        const cmat drho = f.derivative(theta);
        const SldResult r = sld(rho, drho);
        CHECK(sld_equation_residual(rho, drho, r.sld) <= 1e-8);
        const double tr_form = (rho.mat() * r.sld * r.sld).trace().real();
        CHECK(std::abs(r.qfi - tr_form) <= 1e-9 * std::max(1.0, r.qfi));
      }
    }
  }
}

TEST_CASE("POVM: invariant violations are rejected") {
  // effects must be PSD and sum to the identity
  CHECK_THROWS_AS(POVM({cmat(pauli_z()), cmat(cmat::Identity(2, 2) - pauli_z())}), NotPSD);
  CHECK_THROWS_AS(POVM({cmat(0.5 * cmat::Identity(2, 2))}), Error);
  cmat half = 0.5 * cmat::Identity(2, 2);
  CHECK_THROWS_AS(POVM({half, half}, {"only-one-label"}), ArityMismatch);
}

TEST_CASE("sld: rejects non-Hermitian derivative") {
  const DensityMatrix rho(cmat(0.5 * cmat::Identity(2, 2)), {2});
  cmat bad(2, 2);
  bad << 0, 1, 0, 0;
  CHECK_THROWS_AS((void)sld(rho, bad), NotHermitian);
}

TEST_CASE("qfi: named values") {
  CHECK(qfi(builtin_equatorial(), 1.0) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(qfi(builtin_piecewise_xyz(), 0.3) == doctest::Approx(4.0).epsilon(1e-10));
  Rng rng(5);
  const ParametricFamily c = constant_family(random_density(2, rng), {0.0, 1.0});
  CHECK(qfi(c, 0.5) == doctest::Approx(0.0));
}

TEST_CASE("classical_fisher: equatorial family against fixed axes") {
  const ParametricFamily eq = builtin_equatorial();
  for (double theta : {0.4, 1.3, 2.9}) {
    // axis measurement: F = 1 wherever sin(theta - phi) != 0
    CHECK(classical_fisher(eq, theta, equatorial_axis_measurement(0.05)) ==
          doctest::Approx(1.0).epsilon(1e-9));
  }
  // computational basis probabilities are theta-independent
  CHECK(classical_fisher(eq, 1.1, computational_basis(2)) == doctest::Approx(0.0));
}

TEST_CASE("classical_fisher: SLD eigenbasis reproduces QFI on random qubit families") {
  for (std::uint64_t seed : {21ull, 22ull, 23ull, 24ull, 25ull}) {
    const ParametricFamily f = random_family({2}, seed);
    for (double theta : {0.7, 1.9}) {
      const DensityMatrix rho = f.state_at(theta);
      const cmat drho = f.derivative(theta);
      const SldResult r = sld(rho, drho);
      const POVM m = optimal_measurement(rho, drho);
      CHECK(classical_fisher(rho, drho, m) == doctest::Approx(r.qfi).epsilon(1e-9));
    }
  }
}

TEST_CASE("classical_fisher: divergence and dimension errors") {
  cmat rho_m = cmat::Zero(2, 2);
  rho_m(0, 0) = 1.0;
  const DensityMatrix rho(rho_m, {2});
  cmat drho(2, 2);
  drho << -1, 0, 0, 1;  // rank-changing direction
  CHECK_THROWS_AS((void)classical_fisher(rho, drho, computational_basis(2)),
                  DivergentFisher);
  CHECK_THROWS_AS((void)classical_fisher(rho, cmat::Zero(2, 2), computational_basis(3)),
                  DimensionMismatch);
}

TEST_CASE("optimal_measurement: equatorial eigenvectors (|0> +- i e^{i theta}|1>)/sqrt(2)") {
  const ParametricFamily eq = builtin_equatorial();
  for (double theta : {0.6, 2.1}) {
    const POVM m = optimal_measurement(eq.state_at(theta), eq.derivative(theta));
    cvec target_p(2), target_m(2);
    target_p << 1.0, cxd(0, 1) * std::exp(cxd(0, theta));
    target_m << 1.0, cxd(0, -1) * std::exp(cxd(0, theta));
    target_p /= std::sqrt(2.0);
    target_m /= std::sqrt(2.0);
    // both target projectors appear, up to phase
    int hits = 0;
    for (const cmat& e : m.effects()) {
      if (std::abs((target_p.adjoint() * e * target_p)(0, 0).real() - 1.0) < 1e-9) ++hits;
      if (std::abs((target_m.adjoint() * e * target_m)(0, 0).real() - 1.0) < 1e-9) ++hits;
    }
    CHECK(hits == 2);
  }
}

TEST_CASE("optimal_measurement: diagonal family gives the computational basis") {
  const ParametricFamily f = diag_half_angle_family();
  const POVM m = optimal_measurement(f.state_at(1.0), f.derivative(1.0));
  for (const cmat& e : m.effects()) {
    CHECK(std::abs(e(0, 1)) <= 1e-10);
  }
}

TEST_CASE("optimality properties on random qubit and qutrit families") {
  // optimal measurement beats 200 random POVMs and meets the QFI; every
  // classical value stays below the quantum one
  Rng rng(77);
  int samples = 0;
  for (std::uint64_t seed : {31ull, 32ull}) {
    for (int dim : {2, 3}) {
      const ParametricFamily f = random_family({dim}, seed);
      for (int i = 0; i < 13 && samples < 50; ++i, ++samples) {
        const double theta = 0.2 + 0.23 * i;
        const DensityMatrix rho = f.state_at(theta);
        const cmat drho = f.derivative(theta);
        const SldResult r = sld(rho, drho);
        if (r.degenerate) continue;
        const double best = classical_fisher(rho, drho, optimal_measurement(rho, drho));
        CHECK(best == doctest::Approx(r.qfi).epsilon(1e-8));
        for (int k = 0; k < 200; ++k) {
          const POVM m = random_povm(dim, 2 + static_cast<int>(rng.next_u64() % 3), rng);
          const double cf = classical_fisher(rho, drho, m);
          CHECK(cf <= r.qfi + 1e-8);
          CHECK(best >= cf - 1e-9);
        }
      }
    }
  }
}

TEST_CASE("check_optimality_condition: positive and negative cases") {
  for (std::uint64_t seed : {41ull, 42ull}) {
    const ParametricFamily f = random_family({2}, seed);
    const DensityMatrix rho = f.state_at(1.1);
    const cmat drho = f.derivative(1.1);
    const SldResult r = sld(rho, drho);
    const POVM m = optimal_measurement(rho, drho);
    const OptimalityCheck chk = check_optimality_condition(rho, r.sld, m);
    CHECK(chk.optimal);
    CHECK(chk.max_residual <= 1e-8);
  }

  const ParametricFamily eq = builtin_equatorial();
  const DensityMatrix rho = eq.state_at(0.8);
  const SldResult r = sld(rho, eq.derivative(0.8));
  const OptimalityCheck chk = check_optimality_condition(rho, r.sld, computational_basis(2));
  CHECK(!chk.optimal);
  CHECK(chk.max_residual > 0.1);

  // constant family: L = 0, all u_j = 0, trivially optimal
  Rng rng(9);
  const DensityMatrix c = random_density(2, rng);
  const OptimalityCheck triv =
      check_optimality_condition(c, cmat::Zero(2, 2), random_povm(2, 3, rng));
  CHECK(triv.optimal);
}

TEST_CASE("statistical_distance: limits") {
  const DensityMatrix r0 = pure2(ket(0, 2), {2});
  const DensityMatrix r1 = pure2(ket(1, 2), {2});
  CHECK(statistical_distance(r0, r0) == doctest::Approx(0.0).epsilon(1e-7));
  CHECK(statistical_distance(r0, r1) == doctest::Approx(kPi / 2.0).epsilon(1e-10));
}

TEST_CASE("crb: arithmetic and errors") {
  CHECK(crb(1.0, 1) == doctest::Approx(1.0));
  CHECK(crb(4.0, 100) == doctest::Approx(0.0025));
  CHECK(crb(1.0, 10000) == doctest::Approx(1e-4));  // equatorial at n = 10^4
  CHECK_THROWS_AS((void)crb(0.0, 10), ZeroInformation);
}

TEST_CASE("simulate_estimation: CRB saturation band on the equatorial family") {
  const ParametricFamily eq = builtin_equatorial();
  const POVM m = optimal_measurement(eq.state_at(1.0), eq.derivative(1.0));
  const EstimationReport rep = simulate_estimation(eq, m, 1.0, 1000, 500, 20240901ull);
  CHECK(rep.crb == doctest::Approx(1e-3).epsilon(1e-9));
  CHECK(rep.estimator_variance >= 0.8e-3);
  CHECK(rep.estimator_variance <= 1.3e-3);

  // deterministic given the seed
  const EstimationReport rep2 = simulate_estimation(eq, m, 1.0, 1000, 500, 20240901ull);
  CHECK(rep.estimator_variance == rep2.estimator_variance);
}

TEST_CASE("simulate_estimation: flat likelihood raises NonIdentifiable") {
  const ParametricFamily eq = builtin_equatorial();
  CHECK_THROWS_AS(
      (void)simulate_estimation(eq, computational_basis(2), 1.0, 100, 10, 7ull),
      NonIdentifiable);
}

TEST_CASE("simulate_estimation: classical family respects the CRB") {
  const ParametricFamily f = diag_half_angle_family();
  const EstimationReport rep =
      simulate_estimation(f, computational_basis(2), 1.0, 1000, 300, 99ull);
  CHECK(rep.estimator_variance >= 0.8 * crb(1.0, 1000));
}
