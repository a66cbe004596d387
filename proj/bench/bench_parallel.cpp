// Wall-time comparison of the serial reference loops against the OpenMP
// kernels: Bloch-grid brute force, Monte Carlo estimation trials, and the
// theta-grid broadcast checker.

#include <chrono>
#include <cstdio>
#include <vector>

#include <omp.h>

#include "qfib/broadcast.hpp"
#include "qfib/channels.hpp"
#include "qfib/fisher.hpp"

namespace {

template <typename Fn>
double time_ms(Fn&& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  fn();
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

void report(const char* name, double serial_ms, double parallel_ms, int jobs) {
  std::printf("%-28s serial %9.2f ms   jobs=%d %9.2f ms   speedup %.2fx\n", name,
              serial_ms, jobs, parallel_ms, serial_ms / parallel_ms);
}

}  // namespace

int main(int argc, char** argv) {
  int jobs = omp_get_max_threads();
  if (argc > 1) jobs = std::atoi(argv[1]);
  if (jobs < 2) jobs = 2;

  const qfib::ToleranceConfig tol;
  const qfib::ParametricFamily eq = qfib::builtin_equatorial();

  {
    volatile double sink = 0.0;
    const auto serial = [&] { sink = qfi_brute_force_qubit(eq, 1.3, 256, tol, 1); };
    const auto par = [&] { sink = qfi_brute_force_qubit(eq, 1.3, 256, tol, jobs); };
    par();  // warm the thread pool
    report("qfi_brute_force 256x256", time_ms(serial), time_ms(par), jobs);
  }

  {
    qfib::EstimationOptions opts;
    const qfib::POVM m = qfib::optimal_measurement(eq.state_at(1.0), eq.derivative(1.0), tol);
    const auto serial = [&] {
      opts.jobs = 1;
      (void)qfib::simulate_estimation(eq, m, 1.0, 2000, 400, 17, tol, opts);
    };
    const auto par = [&] {
      opts.jobs = jobs;
      (void)qfib::simulate_estimation(eq, m, 1.0, 2000, 400, 17, tol, opts);
    };
    report("simulate_estimation 400x2k", time_ms(serial), time_ms(par), jobs);
  }

  {
    const qfib::ParametricFamily out =
        qfib::through_channel(qfib::hadamard_cnot_broadcaster(), eq, tol);
    std::vector<double> grid;
    for (int i = 0; i < 400; ++i) grid.push_back(0.1 + 2.9 * i / 399.0);
    const auto serial = [&] { (void)qfib::is_qfi_broadcast(out, grid, tol, 1); };
    const auto par = [&] { (void)qfib::is_qfi_broadcast(out, grid, tol, jobs); };
    report("is_qfi_broadcast 400 pts", time_ms(serial), time_ms(par), jobs);
  }

  return 0;
}
