#ifndef DIRSUM_CYCLOTOMIC_HPP
#define DIRSUM_CYCLOTOMIC_HPP

#include <complex>
#include <cstdint>
#include <vector>

namespace dirsum {

// Coefficients of the M-th cyclotomic polynomial, ascending degree.
std::vector<std::int64_t> cyclotomic_poly(std::uint32_t m);

// An exact sum of roots of unity: sum_t counts[t] * e^(2 pi i t / order).
// Counts are integers, so accumulation carries no rounding; the only
// inexact operation is the final complex projection.
struct RootHistogram {
  std::uint32_t order = 1;
  std::vector<std::int64_t> counts;

  explicit RootHistogram(std::uint32_t order_ = 1) : order(order_), counts(order_, 0) {}

  void add(std::uint32_t t, std::int64_t w = 1) { counts[t % order] += w; }
  void clear() { std::fill(counts.begin(), counts.end(), 0); }
  std::int64_t terms() const;

  std::complex<double> value() const;

  // Exact test of sum == n, by reducing the count polynomial minus n modulo
  // the order-th cyclotomic polynomial over the integers.
  bool equals_integer(std::int64_t n) const;
};

// Exact zero test for the special histograms produced by character
// orthogonality: the nonzero classes must form a full coset j*(order/n),
// j = 0..n-1, with one common count and n > 1.  Such a sum vanishes by the
// geometric series identity.  Returns false for anything else, so it never
// accepts a sum it cannot prove zero.
bool balanced_cycle_is_zero(const std::vector<std::int64_t>& counts, std::uint32_t order);

}  // namespace dirsum

#endif  // DIRSUM_CYCLOTOMIC_HPP
