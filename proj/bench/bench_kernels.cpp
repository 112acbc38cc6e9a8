// Times the OpenMP kernels against their serial reference implementations.
//
//   ./dirsum_bench [x]
//
// x scales the sieve-bound workloads (default 1e7).

#include <chrono>
#include <cstdio>
#include <cstdlib>

#include "dirsum/charsums.hpp"
#include "dirsum/pi2.hpp"
#include "dirsum/sieve.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace dirsum;

namespace {

double time_ms(const std::function<void()>& fn) {
  auto start = std::chrono::steady_clock::now();
  fn();
  auto d = std::chrono::steady_clock::now() - start;
  return std::chrono::duration<double, std::milli>(d).count();
}

void report(const char* name, double serial_ms, double parallel_ms) {
  std::printf("%-34s %10.1f ms %10.1f ms %8.2fx\n", name, serial_ms, parallel_ms,
              serial_ms / parallel_ms);
}

}  // namespace

int main(int argc, char** argv) {
  std::uint64_t x = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 10000000ull;
#ifdef _OPENMP
  std::printf("threads: %d, x = %llu\n", omp_get_max_threads(), static_cast<unsigned long long>(x));
#else
  std::printf("built without OpenMP, x = %llu\n", static_cast<unsigned long long>(x));
#endif
  std::printf("%-34s %13s %13s %9s\n", "kernel", "serial", "parallel", "speedup");

  {
    volatile std::uint64_t sink = 0;
    double serial = time_ms([&] { sink = simple_primes_up_to(x).size(); });
    double parallel = time_ms([&] { sink = count_primes(x); });
    report("prime counting", serial, parallel);
  }

  {
    ResidueCountTable t1, t2;
    double serial = time_ms([&] { t1 = residue_counts_serial(x, 101); });
    double parallel = time_ms([&] { t2 = residue_counts(x, 101); });
    if (t1.counts != t2.counts) std::printf("MISMATCH in residue counts!\n");
    report("residue counts mod 101", serial, parallel);
  }

  {
    CharacterGroup group{Modulus(101)};
    CharSumPlan plan(group);
    std::uint64_t xs = x / 10;
    std::vector<MaxOverPrefix> a, b;
    double serial = time_ms([&] { a = prefix_max_all_serial(plan, xs, Kernel::kVonMangoldt); });
    double parallel = time_ms([&] { b = prefix_max_all(plan, xs, Kernel::kVonMangoldt); });
    for (std::size_t c = 0; c < a.size(); ++c)
      if (a[c].argmax_y != b[c].argmax_y) std::printf("MISMATCH in prefix maxima!\n");
    report("psi prefix maxima, 100 chars", serial, parallel);
  }

  {
    CharacterGroup group{Modulus(101)};
    CharSumPlan plan(group);
    double serial = 0.0, parallel = 0.0;
    std::vector<SumAccumulator> sums;
#ifdef _OPENMP
    int saved = omp_get_max_threads();
    omp_set_num_threads(1);
    serial = time_ms([&] { sums = char_sums_over_primes(plan, x, 1, SumMode::kComplexDouble); });
    omp_set_num_threads(saved);
#else
    serial = time_ms([&] { sums = char_sums_over_primes(plan, x, 1, SumMode::kComplexDouble); });
#endif
    parallel = time_ms([&] { sums = char_sums_over_primes(plan, x, 1, SumMode::kComplexDouble); });
    report("shifted char sums, 100 chars", serial, parallel);
  }

  return 0;
}
