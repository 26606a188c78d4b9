// Serial vs OpenMP timings of the transport and elimination kernels.

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>

#include "kzknot/kernels.hpp"

using namespace kzknot;

namespace {

double seconds_per_call(const std::function<void()>& f, int reps) {
  f();
  const auto t0 = std::chrono::steady_clock::now();
  for (int i = 0; i < reps; ++i) f();
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(t1 - t0).count() / reps;
}

void report(const char* name, double serial, double omp) {
  std::printf("%-34s %12.3e %12.3e %8.2fx\n", name, serial, omp, serial / omp);
}

ComplexVector random_complex(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  ComplexVector v(n);
  for (Complex& c : v) c = {g(rng), g(rng)};
  return v;
}

}  // namespace

int main() {
  std::mt19937_64 rng(7);
  std::printf("threads: %d\n", omp_get_max_threads());
  std::printf("%-34s %12s %12s %9s\n", "kernel", "serial [s]", "omp [s]", "speedup");

  for (auto [pairs, degree] : {std::pair{3, 3}, {6, 4}, {10, 4}, {10, 5}}) {
    const kernels::WordLayout layout(pairs, degree);
    const ComplexVector w = random_complex(layout.size(), rng);
    const ComplexVector coeff = random_complex(static_cast<std::size_t>(pairs), rng);
    ComplexVector out(layout.size());
    const int reps = layout.size() < 10000 ? 2000 : 50;
    char name[64];
    std::snprintf(name, sizeof name, "apply_connection P=%d N=%d (%zu)", pairs, degree, layout.size());
    report(name, seconds_per_call([&] { kernels::apply_connection_serial(layout, w, coeff, out); }, reps),
           seconds_per_call([&] { kernels::apply_connection_omp(layout, w, coeff, out); }, reps));

    std::vector<ComplexVector> stages;
    for (int s = 0; s < 7; ++s) stages.push_back(random_complex(layout.size(), rng));
    const std::vector<double> weights = {0.1, 0.0, 0.3, 0.2, -0.4, 0.5, 0.25};
    std::snprintf(name, sizeof name, "combine_stages P=%d N=%d", pairs, degree);
    report(name,
           seconds_per_call([&] { kernels::combine_stages_serial(w, 0.01, weights, stages, out); }, reps),
           seconds_per_call([&] { kernels::combine_stages_omp(w, 0.01, weights, stages, out); }, reps));
  }

  std::uniform_int_distribution<int> small(-5, 5);
  for (std::size_t rows : {64, 256, 1024}) {
    const std::size_t cols = 256;
    std::vector<RationalVector> base(rows, RationalVector(cols));
    for (auto& r : base)
      for (auto& x : r) x = Rational(small(rng), 1 + std::abs(small(rng)));
    RationalVector pivot(cols);
    for (auto& x : pivot) x = small(rng);
    pivot[0] = 1;
    char name[64];
    std::snprintf(name, sizeof name, "eliminate_column %zux%zu", rows, cols);
    auto run = [&](auto kernel) {
      return seconds_per_call(
          [&] {
            std::vector<RationalVector> m = base;
            kernel(std::span<RationalVector>(m), pivot, 0);
          },
          5);
    };
    report(name, run(kernels::eliminate_column_serial), run(kernels::eliminate_column_omp));
  }
}
