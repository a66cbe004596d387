#include <doctest.h>

#include <vector>

#include "qfib/broadcast.hpp"
#include "qfib/channels.hpp"
#include "qfib/parallel.hpp"

using namespace qfib;

// The OpenMP kernels must reproduce the serial reference loops exactly:
// every iteration writes only its own slot, so thread count cannot change
// any bit of the result.

TEST_CASE("parallel_for: matches serial_for on plain slots") {
  std::vector<double> a(1000), b(1000);
  serial_for(a.size(), [&](std::size_t i) { a[i] = 1.0 / (1.0 + static_cast<double>(i)); });
  parallel_for(b.size(), 4, [&](std::size_t i) { b[i] = 1.0 / (1.0 + static_cast<double>(i)); });
  CHECK(a == b);
}

TEST_CASE("qfi_brute_force_qubit: serial and parallel paths are bit-identical") {
  const ParametricFamily eq = builtin_equatorial();
  const ToleranceConfig tol;
  for (double theta : {0.5, 1.7}) {
    const double s = qfi_brute_force_qubit(eq, theta, 48, tol, 1);
    const double p = qfi_brute_force_qubit(eq, theta, 48, tol, 4);
    CHECK(s == p);
  }
}

TEST_CASE("simulate_estimation: trial seeds make jobs irrelevant") {
  const ParametricFamily eq = builtin_equatorial();
  const POVM m = optimal_measurement(eq.state_at(1.0), eq.derivative(1.0));
  EstimationOptions serial_opts, parallel_opts;
  serial_opts.jobs = 1;
  parallel_opts.jobs = 4;
  const EstimationReport a =
      simulate_estimation(eq, m, 1.0, 400, 60, 5ull, {}, serial_opts);
  const EstimationReport b =
      simulate_estimation(eq, m, 1.0, 400, 60, 5ull, {}, parallel_opts);
  CHECK(a.estimator_variance == b.estimator_variance);
}

TEST_CASE("is_qfi_broadcast: grid evaluation is order-deterministic") {
  const ParametricFamily out =
      through_channel(hadamard_cnot_broadcaster(), builtin_equatorial());
  std::vector<double> grid;
  for (int i = 0; i < 25; ++i) grid.push_back(0.15 + 0.1 * i);
  const BroadcastReport s = is_qfi_broadcast(out, grid, {}, 1);
  const BroadcastReport p = is_qfi_broadcast(out, grid, {}, 4);
  CHECK(s.joint_qfi == p.joint_qfi);
  CHECK(s.party_qfi == p.party_qfi);
  CHECK(s.max_deficit == p.max_deficit);
}

TEST_CASE("check_uniform: ratio table identical under parallel evaluation") {
  const ParametricFamily pw = builtin_piecewise_xyz();
  std::vector<double> grid{-1.2, -0.9, -0.4, 0.2, 0.6, 1.0, 1.3};
  const UniformnessReport s = check_uniform(pw, grid, {}, {}, 1);
  const UniformnessReport p = check_uniform(pw, grid, {}, {}, 4);
  CHECK(s.verdict == p.verdict);
  CHECK(s.per_theta_ratio == p.per_theta_ratio);
  CHECK(s.certificate_ratio == p.certificate_ratio);
}
