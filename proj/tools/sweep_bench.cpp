// Times the sweep kernel serially and with the OpenMP worker pool on a
// representative workload (deep SVC transmission curve) and checks the two
// paths produce identical rows.

#include <chrono>
#include <cstdio>

#include "spp/analysis.hpp"

using namespace spp;

namespace {

double time_sweep(const SweepSystem& sys, const SweepGrid& grid, int threads,
                  std::vector<SweepRow>& rows) {
  auto t0 = std::chrono::steady_clock::now();
  rows = sweep(sys, grid, threads);
  auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(t1 - t0).count();
}

}  // namespace

int main() {
  FractalSpec svc{FractalKind::svc, 10, 10.0, 10.0};
  SweepGrid grid{SweepAxis::k, 0.1, 15.0, 20000};

  std::vector<SweepRow> serial_rows, parallel_rows;
  double ts = time_sweep(svc, grid, 1, serial_rows);
  double tp = time_sweep(svc, grid, 0, parallel_rows);

  bool identical = serial_rows.size() == parallel_rows.size();
  for (std::size_t i = 0; identical && i < serial_rows.size(); ++i)
    identical = serial_rows[i].T == parallel_rows[i].T &&
                serial_rows[i].log10_T == parallel_rows[i].log10_T;

  std::printf("sweep %d points, SVC stage %d\n", grid.points, svc.stage);
  std::printf("  serial:   %8.3f s\n", ts);
  std::printf("  parallel: %8.3f s   speedup %.2fx\n", tp, ts / tp);
  std::printf("  outputs identical: %s\n", identical ? "yes" : "NO");
  return identical ? 0 : 1;
}
