// Wall-clock comparison of the OpenMP kernels against their serial
// reference implementations. Build and run:
//   cmake --build build --target bench_kernels && ./build/benchmarks/bench_kernels
#include <chrono>
#include <cstdio>

#include <omp.h>

#include "hyperchord/empirical.hpp"
#include "hyperchord/sampling.hpp"
#include "hyperchord/uniformity.hpp"

namespace hc = hyperchord;

namespace {

template <typename F>
double timed(F&& f) {
  const auto start = std::chrono::steady_clock::now();
  f();
  const auto stop = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(stop - start).count();
}

void report(const char* name, double serial, double parallel) {
  std::printf("%-28s serial %8.3f s   parallel %8.3f s   speedup %5.2fx\n", name, serial,
              parallel, serial / parallel);
}

}  // namespace

int main() {
  std::printf("threads available: %d\n", omp_get_max_threads());

  {
    const hc::PointSet set = hc::sample_sphere_uniform(3, 1.0, 6000, {42, 0});
    hc::EmpiricalDistanceDistribution serial_out, parallel_out;
    const double ts = timed([&] {
      serial_out = hc::distance_distribution_serial(set, hc::DistanceMode::all_pairs(), 200);
    });
    const double tp = timed([&] {
      parallel_out = hc::distance_distribution(set, hc::DistanceMode::all_pairs(), 200);
    });
    report("all-pairs histogram", ts, tp);
    if (serial_out.bin_mass != parallel_out.bin_mass) {
      std::printf("MISMATCH: parallel histogram differs from serial\n");
      return 1;
    }
  }

  {
    const hc::PointSet set = hc::sample_embedded_uniform(2, 6, 1.0, 1000, 2000, hc::Geometry::sphere, {42, 1});
    std::vector<double> serial_out, parallel_out;
    const double ts = timed([&] { serial_out = hc::per_point_l1_serial(set, 2, 64); });
    const double tp = timed([&] { parallel_out = hc::per_point_l1(set, 2, 64); });
    report("per-point detection", ts, tp);
    if (serial_out != parallel_out) {
      std::printf("MISMATCH: parallel detection differs from serial\n");
      return 1;
    }
  }

  {
    const hc::PointSet set = hc::sample_cap_mixture(6, 1.0, 2500, 0.05, 0.2, {42, 2});
    const std::size_t rounds = 20;
    const std::size_t keep = 1500;
    std::vector<std::uint64_t> serial_votes(set.size(), 0), parallel_votes(set.size(), 0);
    const double ts = timed([&] {
      for (std::size_t rd = 0; rd < rounds; ++rd) {
        const hc::PointSet probes =
            hc::sample_sphere_uniform(set.dimension, set.radius, keep, hc::RandomSeed{7, 0}.derive(rd));
        hc::accumulate_votes(set, probes, serial_votes);
      }
    });
    const double tp = timed([&] {
#pragma omp parallel
      {
        std::vector<std::uint64_t> local(set.size(), 0);
#pragma omp for schedule(dynamic)
        for (std::ptrdiff_t rd = 0; rd < static_cast<std::ptrdiff_t>(rounds); ++rd) {
          const hc::PointSet probes = hc::sample_sphere_uniform(
              set.dimension, set.radius, keep,
              hc::RandomSeed{7, 0}.derive(static_cast<std::uint64_t>(rd)));
          hc::accumulate_votes(set, probes, local);
        }
#pragma omp critical
        for (std::size_t i = 0; i < local.size(); ++i) parallel_votes[i] += local[i];
      }
    });
    report("nearest-neighbour voting", ts, tp);
    if (serial_votes != parallel_votes) {
      std::printf("MISMATCH: parallel votes differ from serial\n");
      return 1;
    }
  }

  std::printf("all parallel kernels match their serial references\n");
  return 0;
}
