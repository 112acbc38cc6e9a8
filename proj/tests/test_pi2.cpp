#include "dirsum/pi2.hpp"

#include <cmath>
#include <numeric>

#include "doctest.h"
#include "dirsum/verify.hpp"

using namespace dirsum;

TEST_CASE("pi2: q=1 counts all prime pairs") {
  Pi2Instance inst(Modulus(1), 100, 50, 1, 0);
  std::int64_t pi100 = static_cast<std::int64_t>(count_primes(100));
  std::int64_t pi50 = static_cast<std::int64_t>(count_primes(50));
  CHECK(pi2_exact(inst) == pi100 * pi50);
  CHECK(pi2_bruteforce(inst) == pi100 * pi50);
}

TEST_CASE("pi2: empty below x=2") {
  Pi2Instance inst(Modulus(3), 1, 10, 1, 1);
  CHECK(pi2_exact(inst) == 0);
}

TEST_CASE("pi2: q=3 hand instance matches brute force") {
  Pi2Instance inst(Modulus(3), 10, 10, 1, 1);
  CHECK(pi2_exact(inst) == pi2_bruteforce(inst));
}

TEST_CASE("pi2: parity forces p2=2 when q=2, l=1, a=1") {
  for (std::uint64_t x1 : {2ull, 3ull, 50ull, 1000ull}) {
    for (std::uint64_t x2 : {2ull, 30ull}) {
      Pi2Instance inst(Modulus(2), x1, x2, 1, 1);
      std::int64_t expected = (static_cast<std::int64_t>(count_primes(x1)) - 1);
      if (expected < 0) expected = 0;
      CHECK(pi2_exact(inst) == expected);
      CHECK(pi2_exact(inst) == pi2_bruteforce(inst));
    }
  }
}

TEST_CASE("pi2 oracle equivalence on 200 random instances") {
  auto instances = random_pi2_instances(200, 50, 2000, 12345);
  for (const auto& inst : instances) {
    CHECK(pi2_exact(inst) == pi2_bruteforce(inst));
  }
}

TEST_CASE("pi2_bruteforce guard raises instead of truncating") {
  Pi2Instance inst(Modulus(3), 40000, 40000, 1, 1);
  CHECK_THROWS_AS(pi2_bruteforce(inst), GuardError);
}

TEST_CASE("Pi2Instance validates coprimality") {
  CHECK_THROWS_AS(Pi2Instance(Modulus(6), 10, 10, 2, 1), std::invalid_argument);
  CHECK_THROWS_AS(Pi2Instance(Modulus(6), 10, 10, 1, 3), std::invalid_argument);
  CHECK_THROWS_AS(Pi2Instance(Modulus(6), 10, 10, 1, 7), std::invalid_argument);
}

TEST_CASE("main_term closed forms") {
  double li100 = log_integral(100);
  double li50 = log_integral(50);

  Pi2Instance q1(Modulus(1), 100, 50, 1, 0);
  CHECK(main_term(q1).value == doctest::Approx(li100 * li50).epsilon(1e-12));
  CHECK_FALSE(main_term(q1).vanishes);

  Pi2Instance q3(Modulus(3), 100, 50, 1, 1);
  CHECK(main_term(q3).value == doctest::Approx(li100 * li50 / 4.0).epsilon(1e-12));

  Pi2Instance q15(Modulus(15), 100, 50, 1, 1);
  // phi(15)=8, factors 1-1/2=1/2 (p=3) and 1-1/4=3/4 (p=5)
  CHECK(main_term(q15).value == doctest::Approx(li100 * li50 / 8.0 * 0.5 * 0.75).epsilon(1e-12));

  Pi2Instance q2(Modulus(2), 100, 50, 1, 1);
  MainTerm mt = main_term(q2);
  CHECK(mt.value == 0.0);
  CHECK(mt.vanishes);
}

TEST_CASE("char decomposition: q=1 has no remainder") {
  Pi2Instance inst(Modulus(1), 500, 300, 1, 0);
  Decomposition d = char_decomposition(inst);
  CHECK(d.R2 == std::complex<double>{0.0, 0.0});
  CHECK(d.M2 == doctest::Approx(static_cast<double>(count_primes(500) * count_primes(300))));
}

TEST_CASE("char decomposition identity on random instances, both modes") {
  auto instances = random_pi2_instances(60, 50, 2000, 777);
  for (const auto& inst : instances) {
    std::int64_t exact = pi2_exact(inst);
    Decomposition d = char_decomposition(inst, SumMode::kComplexDouble);
    CHECK(std::abs(d.M2 + d.R2.real() - static_cast<double>(exact)) < 1e-6);
    CHECK(std::abs(d.R2.imag()) < 1e-6);
    CHECK(decomposition_identity_exact(inst));
  }
}

TEST_CASE("t1_chi0_check: q=1 counts all primes; q=6 hand case; exact equality sweep") {
  Modulus m1(1);
  T1Check c1 = t1_chi0_check(500, 1, m1);
  CHECK(c1.direct == static_cast<std::int64_t>(count_primes(500)));
  CHECK(c1.direct == c1.incl_excl);

  Modulus m6(6);
  T1Check c6 = t1_chi0_check(100, 1, m6);
  // gcd(p+1, 6) = 1 never happens: p+1 is even for odd p, and 2+1 = 3 shares 3
  CHECK(c6.direct == 0);
  CHECK(c6.direct == c6.incl_excl);

  for (std::uint64_t q = 1; q <= 40; ++q) {
    Modulus m(q);
    for (std::uint64_t a = 1; a <= std::min<std::uint64_t>(q, 6); ++a) {
      if (q > 1 && std::gcd(a % q == 0 ? q : a % q, q) != 1) continue;
      T1Check c = t1_chi0_check(2000, static_cast<std::int64_t>(a), m);
      CHECK(c.direct == c.incl_excl);
    }
  }
}

TEST_CASE("remainder diagnostics recompute the stated formulas") {
  Pi2Instance inst(Modulus(101), 100000, 10000, 1, 3);
  double A = 1.5;
  RemainderDiagnostics d = remainder_diagnostics(inst, A);
  double lx1 = std::log(1e5), lx2 = std::log(1e4), L = std::log(101.0);
  CHECK(d.abs_err == doctest::Approx(std::abs(static_cast<double>(pi2_exact(inst)) - main_term(inst).value)));
  CHECK(d.target == doctest::Approx(1e5 * 1e4 / (100.0 * lx1 * lx2 * std::pow(L, A))).epsilon(1e-12));
  CHECK(d.ratio == doctest::Approx(d.abs_err / d.target).epsilon(1e-12));
  CHECK(d.delta_budget ==
        doctest::Approx(std::pow(lx1 + L, 33.0) * lx1 * lx2 * std::exp(-0.6 * std::sqrt(L))).epsilon(1e-12));
  CHECK(d.ratio > 0.0);
  CHECK(std::isfinite(d.ratio));
}

TEST_CASE("Brun-Titchmarsh: (100,3,1) and the q=x boundary") {
  BrunTitchmarsh bt = brun_titchmarsh_check(100, Modulus(3), 1);
  CHECK(bt.lhs == 11);
  CHECK(bt.rhs == doctest::Approx(200.0 / (2.0 * std::log(200.0 / 3.0))).epsilon(1e-12));
  CHECK(bt.holds);

  BrunTitchmarsh edge = brun_titchmarsh_check(97, Modulus(97), 1);
  CHECK(edge.rhs == doctest::Approx(2.0 * 97.0 / (96.0 * std::log(2.0))).epsilon(1e-12));
  CHECK(edge.holds);

  CHECK_THROWS_AS(brun_titchmarsh_check(10, Modulus(11), 1), std::invalid_argument);
  CHECK_THROWS_AS(brun_titchmarsh_check(100, Modulus(6), 2), std::invalid_argument);
}

TEST_CASE("Brun-Titchmarsh sweep: q <= 60, x in {1e3, 1e4}") {
  for (std::uint64_t x : {1000ull, 10000ull}) {
    for (std::uint64_t q = 1; q <= 60; ++q) {
      Modulus m(q);
      ResidueCountTable table = residue_counts(x, q);
      for (std::uint64_t a = 0; a < q || (q == 1 && a == 0); ++a) {
        if (q > 1 && std::gcd(a == 0 ? q : a, q) != 1) continue;
        CHECK(brun_titchmarsh_check(table, m, a).holds);
        if (q == 1) break;
      }
    }
  }
}

TEST_CASE("least Goldbach examples") {
  GoldbachResult g1 = least_goldbach(Modulus(1), 0);
  CHECK(g1.found());
  CHECK(g1.n == 6);

  GoldbachResult g3 = least_goldbach(Modulus(3), 0);
  CHECK(g3.found());
  CHECK(g3.n == 6);

  GoldbachResult g5 = least_goldbach(Modulus(5), 2);
  CHECK(g5.found());
  CHECK(g5.n == 12);
  CHECK(g5.p + g5.pp == 12);

  GoldbachResult odd_class = least_goldbach(Modulus(2), 1);
  CHECK(odd_class.status == GoldbachStatus::kNoEvenCandidates);
}

TEST_CASE("least Goldbach decompositions verify: congruence, parity, primality") {
  for (std::uint64_t q = 1; q <= 61; q += 2) {
    Modulus m(q);
    for (std::uint64_t l = 0; l < q; ++l) {
      if (q > 1 && std::gcd(l == 0 ? q : l, q) != 1) continue;
      GoldbachResult g = least_goldbach(m, l);
      REQUIRE(g.found());
      CHECK(g.n % q == l % q);
      CHECK(g.n % 2 == 0);
      CHECK(g.n >= 6);
      CHECK(g.p + g.pp == g.n);
      CHECK(g.p % 2 == 1);
      CHECK(g.pp % 2 == 1);
      CHECK(is_prime(g.p));
      CHECK(is_prime(g.pp));
    }
  }
}

TEST_CASE("jutila scan: q=3 fixture, skips, ordering") {
  auto rows = jutila_ratio_scan({9, 3, 7, 2});
  REQUIRE(rows.size() == 4);
  CHECK(rows[0].q == 2);
  CHECK_FALSE(rows[0].odd_prime);
  CHECK(rows[0].note.find("skipped") != std::string::npos);
  CHECK(rows[1].q == 3);
  CHECK(rows[1].odd_prime);
  // G(3,1) = 10 = 3+7, G(3,2) = 8 = 3+5
  CHECK(rows[1].max_ratio == doctest::Approx(10.0 / std::pow(3.0, 11.0 / 8.0)).epsilon(1e-12));
  CHECK(rows[1].argmax_l == 1);
  CHECK(rows[2].q == 7);
  CHECK(rows[2].max_ratio > 0.0);
  CHECK(rows[3].q == 9);
  CHECK_FALSE(rows[3].odd_prime);
}

TEST_CASE("pi2 report: window check and JSON shape") {
  // q=5, x = x1*x2 = 5^8 -> alpha = ln(x2)/ln(x) = 1/2, window [0.0625.., 0.6875]
  Pi2Instance inst(Modulus(5), 390625, 390625, 1, 1);  // 5^8 each
  Pi2Report rep = pi2_report(inst, 1.0, Rational(0));
  CHECK(rep.window_ok);  // alpha = 1/2 in [theta/16..], q <= x^(1/3)
  CHECK(rep.exact > 0);
  CHECK(rep.ratio > 0.0);

  std::string json = pi2_report_json(inst, rep);
  CHECK(json.find("\"quantity\": \"pi2\"") != std::string::npos);
  CHECK(json.find("\"exact\": ") != std::string::npos);
  CHECK(json.find("\"main_term\": ") != std::string::npos);
  CHECK(json.find("\"R2_re\": ") != std::string::npos);
  CHECK(json.find("\"R2_im\": ") != std::string::npos);
  CHECK(json.find("\"window_ok\": true") != std::string::npos);
  CHECK(json.find("\"theta\": \"1/2\"") != std::string::npos);
  CHECK(json.find("\"delta_budget\": ") != std::string::npos);
  // field order is pinned
  CHECK(json.find("\"exact\"") < json.find("\"main_term\""));
  CHECK(json.find("\"main_term\"") < json.find("\"M2\""));
  CHECK(json.find("\"ratio\"") < json.find("\"window_ok\""));

  // deterministic
  CHECK(json == pi2_report_json(inst, pi2_report(inst, 1.0, Rational(0))));
}

TEST_CASE("pi2 report flags out-of-window instances") {
  // x too small relative to q: q > x^kappa0
  Pi2Instance inst(Modulus(97), 200, 200, 1, 1);
  Pi2Report rep = pi2_report(inst, 1.0, Rational(0));
  CHECK_FALSE(rep.window_ok);
}
