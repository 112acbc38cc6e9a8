#ifndef DIRSUM_CHARSUMS_HPP
#define DIRSUM_CHARSUMS_HPP

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "dirsum/characters.hpp"
#include "dirsum/cyclotomic.hpp"
#include "dirsum/ntcore.hpp"

namespace dirsum {

enum class SumMode { kExactHistogram, kComplexDouble };
enum class Kernel { kVonMangoldt, kPrimeIndicator };

// Accumulates sum of w * e^(2 pi i t / order) in one of two modes: an exact
// per-exponent-class histogram (phases carry no rounding; integer counts when
// every weight is 1), or compensated complex-double summation.
class SumAccumulator {
 public:
  SumAccumulator() = default;
  SumAccumulator(SumMode mode, std::uint32_t order);

  void add_unit(std::uint32_t t, const std::complex<double>& root);
  void add_weighted(std::uint32_t t, double w, const std::complex<double>& root);
  void merge(const SumAccumulator& other);  // associative; fold in fixed order

  SumMode mode() const { return mode_; }
  std::uint32_t order() const { return order_; }
  std::int64_t terms() const { return terms_; }
  bool unit_weights() const { return unit_weights_; }

  std::complex<double> value() const;

  // Exact mode with unit weights only.
  RootHistogram histogram() const;
  std::int64_t count_at(std::uint32_t t) const { return counts_[t]; }

 private:
  SumMode mode_ = SumMode::kComplexDouble;
  std::uint32_t order_ = 1;
  bool unit_weights_ = true;
  std::vector<std::int64_t> counts_;
  std::vector<double> weights_;
  std::complex<double> sum_{0.0, 0.0};
  std::complex<double> comp_{0.0, 0.0};
  std::int64_t terms_ = 0;
};

// Dense per-modulus evaluation data: discrete logs of every unit and the
// per-character generator weights, so chi(n) resolves to a root-of-unity
// exponent with a few multiply-adds in the inner loops.
class CharSumPlan {
 public:
  explicit CharSumPlan(const CharacterGroup& group);

  const CharacterGroup& group() const { return *group_; }
  std::uint64_t q() const { return q_; }
  std::size_t num_chars() const { return nchars_; }
  std::uint32_t order() const { return order_; }
  std::int32_t unit_index(std::uint64_t r) const { return unit_index_[r]; }
  const std::complex<double>& root(std::uint32_t t) const { return roots_[t]; }

  std::uint32_t exponent(std::size_t chi, std::int32_t u) const {
    const std::uint64_t* dl = &dlogs_[static_cast<std::size_t>(u) * ngens_];
    const std::uint64_t* w = &weights_[chi * ngens_];
    std::uint64_t t = 0;
    for (std::size_t i = 0; i < ngens_; ++i) t += dl[i] * w[i] % order_;
    return static_cast<std::uint32_t>(t % order_);
  }

 private:
  const CharacterGroup* group_;
  std::uint64_t q_;
  std::size_t nchars_, ngens_;
  std::uint32_t order_;
  std::vector<std::int32_t> unit_index_;
  std::vector<std::uint64_t> dlogs_;    // [unit * ngens + i]
  std::vector<std::uint64_t> weights_;  // [chi * ngens + i], exps_i * (order/ord_i) mod order
  std::vector<std::complex<double>> roots_;
};

// sum over primes p <= x of chi(p + shift), for every character of the plan's
// group at once (single sieve pass, n-major loop).
std::vector<SumAccumulator> char_sums_over_primes(const CharSumPlan& plan, std::uint64_t x,
                                                  std::int64_t shift, SumMode mode);

// sum over prime powers n <= y of Lambda(n) chi(n).
std::vector<SumAccumulator> char_sums_von_mangoldt(const CharSumPlan& plan, std::uint64_t y, SumMode mode);

// Single-character conveniences.
std::complex<double> psi_chi(std::uint64_t y, const DirichletCharacter& chi,
                             SumMode mode = SumMode::kComplexDouble);
std::complex<double> prime_char_sum(std::uint64_t y, const DirichletCharacter& chi,
                                    SumMode mode = SumMode::kComplexDouble);
// T(chi, x) = sum over p <= x of chi(p + a); requires gcd(a, q) = 1.
std::complex<double> shifted_char_sum(const DirichletCharacter& chi, std::uint64_t x, std::int64_t a,
                                      SumMode mode = SumMode::kComplexDouble);

// max over y <= x of |partial sum at y|; the maximum of a prefix of a
// discrete sum is attained at a jump point, so only summand indices are
// scanned.
struct MaxOverPrefix {
  std::uint64_t x = 0;
  std::uint64_t argmax_y = 0;
  double max_abs = 0.0;
};

// Segmented two-phase prefix-maximum scan for all characters: per-segment
// partial sums first, then an exact left-to-right offset fold, then per
// segment a rescan against its offset.  Parallel over segments; results are
// independent of thread count because segment boundaries and the fold order
// are fixed.
std::vector<MaxOverPrefix> prefix_max_all(const CharSumPlan& plan, std::uint64_t x, Kernel kernel);

// Plain one-pass reference implementation kept for testing and benchmarks.
std::vector<MaxOverPrefix> prefix_max_all_serial(const CharSumPlan& plan, std::uint64_t x, Kernel kernel);

// t(x;q) = sum over chi mod q of max_{y<=x} |per-chi prefix sum|.
double t_sum(std::uint64_t x, const Modulus& m, Kernel kernel);

// T(x;Q) = sum_{q<=Q} q/phi(q) * sum over primitive chi mod q of
// max_{y<=x} |psi(y,chi)|.  The modulus q = 1 is included (its unique
// character counts as primitive).
double T_sum(std::uint64_t x, std::uint64_t Q);

struct NontrivialityRow {
  double exponent = 0.0;
  std::uint64_t x = 0;
  bool below_range = false;
  double max_ratio = 0.0;      // max over non-principal chi of |T(chi,x)| / x
  std::string argmax_chi;
  Rational theta{1, 2};        // theta of the argmax character's conductor
  bool above_theta = false;    // exponent clears the conductor theta threshold
};

std::vector<NontrivialityRow> nontriviality_report(const Modulus& m, std::int64_t a,
                                                   const std::vector<double>& exponents);

// sum_{q <= qcap} max_{y <= x} max_{(l,q)=1} |pi(y;q,l) - Li(y)/phi(q)|,
// scanned at prime jump points (both sides) and at x.
double bv_error_sum(std::uint64_t x, std::uint64_t qcap);

// The Bombieri-Vinogradov modulus threshold sqrt(x) (ln x)^(-A-3.5).
double bv_threshold(double x, double A);

}  // namespace dirsum

#endif  // DIRSUM_CHARSUMS_HPP
