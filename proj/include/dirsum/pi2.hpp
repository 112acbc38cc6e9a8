#ifndef DIRSUM_PI2_HPP
#define DIRSUM_PI2_HPP

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "dirsum/charsums.hpp"
#include "dirsum/ntcore.hpp"
#include "dirsum/sieve.hpp"

namespace dirsum {

// One (x1, x2, a, l, q) problem instance: pairs of primes p1 <= x1, p2 <= x2
// with p1 (p2 + a) = l (mod q).  Requires gcd(a,q) = gcd(l,q) = 1.
struct Pi2Instance {
  Modulus m;
  std::uint64_t x1 = 2;
  std::uint64_t x2 = 2;
  std::int64_t a = 1;
  std::uint64_t l = 0;

  Pi2Instance(Modulus m_, std::uint64_t x1_, std::uint64_t x2_, std::int64_t a_, std::uint64_t l_);

  std::uint64_t shift_mod_q() const;  // a reduced into [0, q)
};

// Exact count via residue-class convolution of two sieve tables,
// O(x1 + x2 + q) instead of O(x1 * x2).
std::int64_t pi2_exact(const Pi2Instance& inst);

// Same convolution over precomputed tables; lets an l-sweep reuse one sieve
// pass.  t1/t2 must be residue_counts(x1, q) and residue_counts(x2, q).
std::int64_t pi2_exact_from_tables(const ResidueCountTable& t1, const ResidueCountTable& t2,
                                   const Modulus& m, std::int64_t a, std::uint64_t l);

// Literal double loop over prime pairs; testing oracle.
// Guarded by x1 * x2 <= 1e9.
std::int64_t pi2_bruteforce(const Pi2Instance& inst);

struct MainTerm {
  double value = 0.0;
  bool vanishes = false;  // 2 | q makes the singular product zero
};

// (1/phi(q)) prod_{p|q} (1 - 1/(p-1)) Li(x1) Li(x2)
MainTerm main_term(const Pi2Instance& inst);

struct Decomposition {
  double M2 = 0.0;
  std::complex<double> R2{0.0, 0.0};
};

// M2 = (1/phi) T1(x2,chi0) sum_{p<=x1} chi0(p),
// R2 = (1/phi) sum_{chi != chi0} T1(x2,chi) conj(chi(l)) sum_{p<=x1} chi(p),
// with T1(x,chi) = sum_{p<=x} chi(p+a).
Decomposition char_decomposition(const Pi2Instance& inst, SumMode mode = SumMode::kComplexDouble);

// Integer-exact verification of phi * pi2 = sum over all chi of
// T1(x2,chi) conj(chi(l)) P(x1,chi), carried out entirely in root-of-unity
// histogram arithmetic and settled by cyclotomic reduction.
bool decomposition_identity_exact(const Pi2Instance& inst);

struct T1Check {
  std::int64_t direct = 0;     // #{p <= x2 : gcd(p+a, q) = 1}
  std::int64_t incl_excl = 0;  // sum_{d|q} mu(d) pi(x2; d, -a)
};

T1Check t1_chi0_check(std::uint64_t x2, std::int64_t a, const Modulus& m);

struct RemainderDiagnostics {
  double abs_err = 0.0;       // |exact - main_term|
  double target = 0.0;        // x1 x2 / (phi ln x1 ln x2 L^A)
  double ratio = 0.0;         // abs_err / target
  double delta_budget = 0.0;  // (ln x1 q)^33 ln x1 ln x2 exp(-0.6 sqrt(L))
};

RemainderDiagnostics remainder_diagnostics(const Pi2Instance& inst, double A);

struct BrunTitchmarsh {
  std::int64_t lhs = 0;
  double rhs = 0.0;
  bool holds = false;
};

// pi(x;q,a) <= 2x / (phi(q) ln(2x/q)); requires gcd(a,q)=1 and q <= x.
BrunTitchmarsh brun_titchmarsh_check(std::uint64_t x, const Modulus& m, std::uint64_t a);
BrunTitchmarsh brun_titchmarsh_check(const ResidueCountTable& table, const Modulus& m, std::uint64_t a);

enum class GoldbachStatus {
  kFound,
  kCapExhausted,      // search cap reached; existence stays undecided
  kNoEvenCandidates,  // q even, l odd: the class holds no even numbers at all
};

struct GoldbachResult {
  GoldbachStatus status = GoldbachStatus::kCapExhausted;
  std::uint64_t n = 0;  // least n = l (mod q) with n = p + p', both odd primes
  std::uint64_t p = 0;
  std::uint64_t pp = 0;
  std::uint64_t cap = 0;

  bool found() const { return status == GoldbachStatus::kFound; }
};

GoldbachResult least_goldbach(const Modulus& m, std::uint64_t l);

struct JutilaRow {
  std::uint64_t q = 0;
  bool odd_prime = false;
  double max_ratio = 0.0;  // max over units l of G(q,l) / q^(11/8)
  std::uint64_t argmax_l = 0;
  std::string note;
};

std::vector<JutilaRow> jutila_ratio_scan(std::vector<std::uint64_t> qs);

// -----------------------------------------------------------------------
// Full per-instance report (library side of the CLI's pi2 subcommand)
// -----------------------------------------------------------------------
struct Pi2Report {
  std::int64_t exact = 0;
  MainTerm main{};
  Decomposition decomp{};
  double ratio = 0.0;  // exact / main_term
  bool window_ok = false;
  Rational theta{1, 2};
  double delta_budget = 0.0;
};

// window_ok takes x = x1*x2 and alpha = ln x2 / ln x, then checks
// q <= x^kappa0 and alpha inside [(theta+eps) ln q/ln x, 1 - 2.5 ln q/ln x].
Pi2Report pi2_report(const Pi2Instance& inst, double A = 1.0, const Rational& eps = Rational(1, 100),
                     SumMode mode = SumMode::kComplexDouble);

// Deterministic JSON record with fixed field order:
// q, x1, x2, a, l, exact, main_term, M2, R2_re, R2_im, ratio, window_ok,
// theta, delta_budget.
std::string pi2_report_json(const Pi2Instance& inst, const Pi2Report& report);

}  // namespace dirsum

#endif  // DIRSUM_PI2_HPP
