#include "dirsum/ntcore.hpp"

#include <cmath>
#include <numeric>
#include <random>

#include "doctest.h"
#include "dirsum/sieve.hpp"

using namespace dirsum;

namespace {

// Independent oracle: trial division, no shortcuts.
std::vector<std::pair<std::uint64_t, int>> trial_factor(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, int>> out;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e) out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

// Series oracle for Li, independent of the quadrature path:
// Li(x) = ln ln x - ln ln 2 + sum_k ((ln x)^k - (ln 2)^k) / (k * k!)
double li_series(double x) {
  auto li_part = [](double lx) {
    double total = std::log(lx);
    double term = 1.0;
    for (int k = 1; k < 200; ++k) {
      term *= lx / k;
      double add = term / k;
      total += add;
      if (std::abs(add) < 1e-16 * std::abs(total) && k > 5) break;
    }
    return total;
  };
  return li_part(std::log(x)) - li_part(std::log(2.0));
}

}  // namespace

TEST_CASE("factorize basic examples") {
  CHECK(factorize(1).factors.empty());
  auto f12 = factorize(12);
  REQUIRE(f12.factors.size() == 2);
  CHECK(f12.factors[0].prime == 2);
  CHECK(f12.factors[0].exponent == 2);
  CHECK(f12.factors[1].prime == 3);
  CHECK(f12.factors[1].exponent == 1);
  auto f101 = factorize(101);
  REQUIRE(f101.factors.size() == 1);
  CHECK(f101.factors[0].prime == 101);
  CHECK(f101.factors[0].exponent == 1);
}

TEST_CASE("factorize matches trial division oracle and recomposes") {
  for (std::uint64_t n = 1; n <= 5000; ++n) {
    auto f = factorize(n);
    auto oracle = trial_factor(n);
    REQUIRE(f.factors.size() == oracle.size());
    for (std::size_t i = 0; i < oracle.size(); ++i) {
      CHECK(f.factors[i].prime == oracle[i].first);
      CHECK(f.factors[i].exponent == oracle[i].second);
    }
    CHECK(f.value() == n);
  }
}

TEST_CASE("factorize round-trips across [1, 1e6] and random 63-bit values") {
  for (std::uint64_t n = 1; n <= 1000000; ++n) {
    auto f = factorize(n);
    CHECK(f.value() == n);
    std::uint64_t prev = 1;
    for (const auto& [p, e] : f.factors) {
      CHECK(p > prev);
      CHECK(e >= 1);
      CHECK(is_prime(p));
      prev = p;
    }
  }
  std::mt19937_64 rng(42);
  for (int i = 0; i < 10000; ++i) {
    std::uint64_t n = (rng() >> 1) | 1;  // odd 63-bit
    CHECK(factorize(n).value() == n);
  }
}

TEST_CASE("factorize rejects out-of-domain input") {
  CHECK_THROWS_AS(factorize(0), std::invalid_argument);
  CHECK_THROWS_AS(factorize(1ull << 63), std::invalid_argument);
}

TEST_CASE("euler_phi examples and gcd-count oracle") {
  CHECK(euler_phi(1) == 1);
  CHECK(euler_phi(101) == 100);
  std::uint64_t direct = 0;
  for (std::uint64_t k = 1; k <= 12; ++k)
    if (std::gcd(k, 12ull) == 1) ++direct;
  CHECK(euler_phi(12) == direct);
  CHECK(euler_phi(12) == 4);
}

TEST_CASE("moebius examples") {
  CHECK(moebius(1) == 1);
  CHECK(moebius(12) == 0);
  CHECK(moebius(6) == 1);
  CHECK(moebius(30) == -1);
}

TEST_CASE("divisors examples") {
  CHECK(divisors(1) == std::vector<std::uint64_t>{1});
  CHECK(divisors(12) == std::vector<std::uint64_t>{1, 2, 3, 4, 6, 12});
  CHECK(divisors(97) == std::vector<std::uint64_t>{1, 97});
}

TEST_CASE("divisor count equals product of (e_i + 1)") {
  for (std::uint64_t n = 1; n <= 2000; ++n) {
    std::uint64_t expected = 1;
    for (const auto& [p, e] : factorize(n).factors) expected *= static_cast<std::uint64_t>(e) + 1;
    CHECK(divisors(n).size() == expected);
  }
}

TEST_CASE("Mobius-divisor and phi-divisor identities up to 1e5") {
  for (std::uint64_t n = 1; n <= 100000; ++n) {
    std::int64_t mu_sum = 0;
    std::uint64_t phi_sum = 0;
    for (std::uint64_t d : divisors(n)) {
      mu_sum += moebius(d);
      phi_sum += euler_phi(d);
    }
    CHECK(mu_sum == (n == 1 ? 1 : 0));
    CHECK(phi_sum == n);
  }
}

TEST_CASE("Modulus caches structure") {
  Modulus m12(12);
  CHECK(m12.phi == 4);
  CHECK(m12.cube_free);
  CHECK(m12.theta == Rational(1, 2));
  Modulus m8(8);
  CHECK_FALSE(m8.cube_free);
  CHECK(m8.theta == Rational(5, 6));
  Modulus m1(1);
  CHECK(m1.phi == 1);
  CHECK(m1.cube_free);
}

TEST_CASE("theta_kappa exact values") {
  auto [t12, k12] = theta_kappa(Modulus(12), Rational(0));
  CHECK(t12 == Rational(1, 2));
  CHECK(k12 == Rational(1, 3));
  auto [t8, k8] = theta_kappa(Modulus(8), Rational(1, 6));
  CHECK(t8 == Rational(5, 6));
  CHECK(k8 == Rational(2, 7));
  auto [t1, k1] = theta_kappa(Modulus(1), Rational(0));
  CHECK(t1 == Rational(1, 2));
  CHECK(k1 == Rational(1, 3));
}

TEST_CASE("kappa0 never exceeds 1/3") {
  for (std::uint64_t q : {1ull, 2ull, 8ull, 27ull, 12ull, 100ull, 101ull}) {
    for (const Rational& eps : {Rational(0), Rational(1, 10), Rational(3, 2)}) {
      auto tk = theta_kappa(Modulus(q), eps);
      CHECK(tk.kappa0 <= Rational(1, 3));
    }
  }
}

TEST_CASE("alpha_window arithmetic") {
  // ln q / ln x = 0.3 with theta=1/2, eps=0.05
  Modulus m(8);  // theta 5/6; construct windows through explicit x choices below
  Modulus m5(5);
  double x = std::exp(std::log(5.0) / 0.3);
  AlphaWindow w = alpha_window(m5, x, Rational(1, 20));
  CHECK(w.lo == doctest::Approx(0.165).epsilon(1e-9));
  CHECK(w.hi == doctest::Approx(0.25).epsilon(1e-9));
  CHECK_FALSE(w.empty);

  // degenerate-nonempty equality case: ln q/ln x = 1/3, theta 1/2, eps 0
  double x2 = std::exp(std::log(5.0) * 3.0);
  AlphaWindow w2 = alpha_window(m5, x2, Rational(0));
  CHECK(w2.lo == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
  CHECK(w2.hi == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
  CHECK_FALSE(w2.empty);

  // empty window: ln q / ln x = 0.4 with theta = 5/6
  double x3 = std::exp(std::log(8.0) / 0.4);
  AlphaWindow w3 = alpha_window(m, x3, Rational(0));
  CHECK(w3.lo == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
  CHECK(w3.hi == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(w3.empty);

  CHECK_THROWS_AS(alpha_window(m5, 4.0, Rational(0)), std::invalid_argument);
}

TEST_CASE("log_integral at the lower limit and against the sieve") {
  CHECK(log_integral(2.0) == 0.0);
  CHECK_THROWS_AS(log_integral(1.5), std::invalid_argument);
  double li6 = log_integral(1e6);
  double pi6 = 78498.0;
  CHECK(std::abs(li6 - pi6) / pi6 < 0.002);
}

TEST_CASE("log_integral is monotone and matches the series oracle") {
  double prev = 0.0;
  for (double x : {2.5, 10.0, 100.0, 1e4, 1e6, 1e8, 1e10}) {
    double li = log_integral(x);
    CHECK(li > prev);
    prev = li;
    CHECK(li == doctest::Approx(li_series(x)).epsilon(1e-9));
  }
}

TEST_CASE("parse_rational handles fractions, decimals, integers") {
  CHECK(parse_rational("1/6") == Rational(1, 6));
  CHECK(parse_rational("0.05") == Rational(1, 20));
  CHECK(parse_rational("3") == Rational(3));
  CHECK(parse_rational("-1/2") == Rational(-1, 2));
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
  CHECK(to_string(Rational(5, 6)) == "5/6");
  CHECK(to_string(Rational(2)) == "2");
}

TEST_CASE("checked_mul detects overflow") {
  CHECK(checked_mul(1ll << 31, 1ll << 31) == (1ll << 62));
  CHECK_THROWS_AS(checked_mul(1ll << 32, 1ll << 32), std::overflow_error);
}

TEST_CASE("deterministic primality test against sieve") {
  auto primes = simple_primes_up_to(20000);
  std::size_t idx = 0;
  for (std::uint64_t n = 0; n <= 20000; ++n) {
    bool expected = idx < primes.size() && primes[idx] == n;
    if (expected) ++idx;
    CHECK(is_prime(n) == expected);
  }
  CHECK(is_prime(18446744073709551557ull));  // largest 64-bit prime
  CHECK_FALSE(is_prime(18446744073709551555ull));
}
