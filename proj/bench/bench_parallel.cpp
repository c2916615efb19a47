// Times the serial reference path against the OpenMP path for the
// Monte-Carlo kernels and checks that both produce the same report.
// Usage: bench_parallel [samples]

#include <chrono>
#include <cstdio>
#include <cstdlib>

#include "conedyn/experiments.hpp"
#include "conedyn/positivity.hpp"
#include "conedyn/report.hpp"
#include "conedyn/systems.hpp"

using namespace conedyn;

namespace {

template <class F>
double time_it(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  const int n = argc > 1 ? std::atoi(argv[1]) : 200;
  const auto s = systems::coop2d();
  const auto field = systems::default_field(s);
  std::printf("threads cap: %d (CONEDYN_THREADS, 0 = OpenMP default)\n", thread_cap());

  bool identical = true;
  for (Execution ex : {Execution::kSerial, Execution::kParallel}) {
    const char* label = ex == Execution::kSerial ? "serial  " : "parallel";
    experiments::Options opts;
    opts.execution = ex;
    opts.box = geometry::Box::cube(2, -3, 3);
    experiments::ConvergenceReport conv;
    const double t_conv = time_it([&] { conv = experiments::generic_convergence(s, field, n, 100.0, 0, opts); });
    positivity::DpOptions dp_opts;
    dp_opts.execution = ex;
    positivity::DpVerdict dp;
    const double t_dp = time_it([&] { dp = positivity::check_dp(s, field, 4 * n, 8, {0.1, 1.0, 5.0}, 0, dp_opts); });
    std::printf("%s  generic_convergence N=%d: %7.3fs   check_dp %d points: %7.3fs\n", label, n,
                t_conv, 4 * n, t_dp);
    static std::string reference;
    const std::string dump = report::convergence_report(conv, nullptr, {}).dump() +
                             report::dp_report(dp, {}).dump();
    if (ex == Execution::kSerial) {
      reference = dump;
    } else {
      identical = dump == reference;
    }
  }
  std::printf("serial and parallel reports %s\n", identical ? "identical" : "DIFFER");
  return identical ? 0 : 1;
}
