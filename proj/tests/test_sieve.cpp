#include "dirsum/sieve.hpp"

#include <cmath>
#include <cstdio>
#include <numeric>
#include <random>

#include "doctest.h"
#include "dirsum/ntcore.hpp"

using namespace dirsum;

TEST_CASE("primes_up_to small cases") {
  CHECK(primes_up_to(1).empty());
  CHECK(primes_up_to(10) == std::vector<std::uint64_t>{2, 3, 5, 7});
  CHECK(primes_up_to(2) == std::vector<std::uint64_t>{2});
}

TEST_CASE("pi(1e6) = 78498 against the plain bit-sieve oracle") {
  auto seg = primes_up_to(1000000);
  auto ref = simple_primes_up_to(1000000);
  CHECK(seg.size() == 78498);
  CHECK(seg == ref);
  CHECK(count_primes(1000000) == 78498);
}

TEST_CASE("segmented sieve agrees with small segment sizes") {
  auto ref = simple_primes_up_to(100000);
  for (std::uint64_t seg : {1ull << 8, 1ull << 12, 1ull << 20}) {
    CHECK(primes_up_to(100000, seg) == ref);
  }
}

TEST_CASE("random segments pass independent primality spot checks") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 8; ++trial) {
    std::uint64_t lo = 2 + rng() % 4000000000ull;
    std::uint64_t hi = lo + 10000;
    std::vector<std::uint64_t> emitted;
    for_each_prime(SieveRange(lo, hi), [&](std::uint64_t p) { emitted.push_back(p); });
    std::size_t idx = 0;
    for (std::uint64_t n = lo; n <= hi; ++n) {
      bool in_list = idx < emitted.size() && emitted[idx] == n;
      if (in_list) ++idx;
      CHECK(in_list == is_prime(n));
    }
    CHECK(idx == emitted.size());
  }
}

TEST_CASE("von Mangoldt stream: y=10 hand enumeration") {
  auto entries = von_mangoldt_list(10);
  std::vector<std::uint64_t> ns;
  double sum = 0;
  for (const auto& e : entries) {
    ns.push_back(e.n);
    sum += e.log_p;
  }
  CHECK(ns == std::vector<std::uint64_t>{2, 3, 4, 5, 7, 8, 9});
  CHECK(sum == doctest::Approx(std::log(2520.0)).epsilon(1e-12));  // psi(10) = ln 2520
}

TEST_CASE("von Mangoldt stream: y=2 single pair, ascending order, correct weights") {
  auto only = von_mangoldt_list(2);
  REQUIRE(only.size() == 1);
  CHECK(only[0].n == 2);
  CHECK(only[0].log_p == doctest::Approx(std::log(2.0)));

  auto entries = von_mangoldt_list(10000);
  std::uint64_t prev = 0;
  for (const auto& e : entries) {
    CHECK(e.n > prev);
    prev = e.n;
    // weight is ln of the prime base
    std::uint64_t n = e.n, p = 0;
    for (std::uint64_t c = 2; c * c <= n; ++c)
      if (n % c == 0) {
        p = c;
        break;
      }
    if (p == 0) p = n;
    while (n % p == 0) n /= p;
    CHECK(n == 1);  // prime power
    CHECK(e.log_p == doctest::Approx(std::log(static_cast<double>(p))).epsilon(1e-12));
  }
}

TEST_CASE("residue_counts x=100 q=4 hand check") {
  ResidueCountTable t = residue_counts(100, 4);
  CHECK(t.counts[1] == 11);
  CHECK(t.counts[3] == 13);
  CHECK(t.counts[2] == 1);
  CHECK(t.counts[0] == 0);
  CHECK(t.total() == 25);
}

TEST_CASE("residue_counts q=1 single class and row sums") {
  ResidueCountTable t1 = residue_counts(5000, 1);
  CHECK(t1.counts[0] == static_cast<std::int64_t>(count_primes(5000)));

  ResidueCountTable t = residue_counts(100000, 7);
  CHECK(t.total() == static_cast<std::int64_t>(count_primes(100000)));
}

TEST_CASE("residue_counts: classes sharing a factor with q hold only primes dividing q") {
  ResidueCountTable t = residue_counts(100000, 30);
  for (std::uint64_t r = 0; r < 30; ++r) {
    if (std::gcd(r == 0 ? 30ull : r, 30ull) == 1) continue;
    std::int64_t expected = (r == 2 || r == 3 || r == 5) ? 1 : 0;
    CHECK(t.counts[r] == expected);
  }
}

TEST_CASE("parallel residue_counts equals serial reference") {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 10; ++i) {
    std::uint64_t x = 1000 + rng() % 99000;
    std::uint64_t q = 1 + rng() % 200;
    ResidueCountTable par = residue_counts(x, q);
    ResidueCountTable ser = residue_counts_serial(x, q);
    CHECK(par.counts == ser.counts);
  }
}

TEST_CASE("prime_count_progression examples") {
  CHECK(prime_count_progression(100, 3, 1) == 11);
  CHECK(prime_count_progression(5000, 1, 0) == static_cast<std::int64_t>(count_primes(5000)));
  CHECK(prime_count_progression(10, 5, 0) == 1);  // only p = 5
}

TEST_CASE("sieve cache round-trip produces identical primes") {
  std::string path = "sieve_cache_test.bin";
  SieveRange range(1000, 50000, 1 << 12);
  write_sieve_cache(path, range);
  std::vector<std::uint64_t> direct, cached;
  for_each_prime(range, [&](std::uint64_t p) { direct.push_back(p); });
  for_each_prime_cached(path, range, [&](std::uint64_t p) { cached.push_back(p); });
  CHECK(direct == cached);

  SieveRange other(1000, 50001, 1 << 12);
  CHECK_THROWS_AS(for_each_prime_cached(path, other, [](std::uint64_t) {}), std::runtime_error);
  std::remove(path.c_str());
}

TEST_CASE("SieveRange validates its invariants") {
  CHECK_THROWS_AS(SieveRange(1, 10), std::invalid_argument);
  CHECK_THROWS_AS(SieveRange(10, 5), std::invalid_argument);
  CHECK_THROWS_AS(SieveRange(2, 10, 1000), std::invalid_argument);  // not a power of two
}
