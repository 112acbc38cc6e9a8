#include "dirsum/cyclotomic.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include "dirsum/ntcore.hpp"

namespace dirsum {

namespace {

// Exact division of polynomials over Z; remainder must be zero.
std::vector<std::int64_t> poly_divide_exact(const std::vector<std::int64_t>& num,
                                            const std::vector<std::int64_t>& den) {
  std::vector<std::int64_t> rem = num;
  std::vector<std::int64_t> quot(num.size() - den.size() + 1, 0);
  for (std::size_t shift = quot.size(); shift-- > 0;) {
    std::int64_t lead = rem[shift + den.size() - 1];
    if (lead == 0) continue;
    if (lead % den.back() != 0) throw std::logic_error("non-exact polynomial division");
    std::int64_t c = lead / den.back();
    quot[shift] = c;
    for (std::size_t j = 0; j < den.size(); ++j) rem[shift + j] -= checked_mul(c, den[j]);
  }
  for (std::int64_t r : rem)
    if (r != 0) throw std::logic_error("non-exact polynomial division (remainder)");
  return quot;
}

std::map<std::uint32_t, std::vector<std::int64_t>> g_cyclo_cache;
std::mutex g_cyclo_mutex;

std::vector<std::int64_t> cyclotomic_poly_uncached(std::uint32_t m) {
  // x^m - 1 divided by the product of Phi_d over proper divisors d of m.
  std::vector<std::int64_t> num(m + 1, 0);
  num[0] = -1;
  num[m] = 1;
  for (std::uint64_t d = 1; d < m; ++d) {
    if (m % d == 0) num = poly_divide_exact(num, cyclotomic_poly(static_cast<std::uint32_t>(d)));
  }
  return num;
}

}  // namespace

std::vector<std::int64_t> cyclotomic_poly(std::uint32_t m) {
  if (m == 0) throw std::invalid_argument("cyclotomic_poly: order must be >= 1");
  {
    std::lock_guard<std::mutex> lock(g_cyclo_mutex);
    auto it = g_cyclo_cache.find(m);
    if (it != g_cyclo_cache.end()) return it->second;
  }
  auto poly = cyclotomic_poly_uncached(m);
  std::lock_guard<std::mutex> lock(g_cyclo_mutex);
  g_cyclo_cache.emplace(m, poly);
  return poly;
}

std::int64_t RootHistogram::terms() const {
  std::int64_t t = 0;
  for (std::int64_t c : counts) t += std::abs(c);
  return t;
}

std::complex<double> RootHistogram::value() const {
  // Conjugate classes are paired so symmetric histograms project to exactly
  // real values.
  double re = static_cast<double>(counts[0]);
  double im = 0.0;
  if (order % 2 == 0) re -= static_cast<double>(counts[order / 2]);
  for (std::uint32_t t = 1; 2 * t < order; ++t) {
    double a = static_cast<double>(counts[t]);
    double b = static_cast<double>(counts[order - t]);
    if (a == 0.0 && b == 0.0) continue;
    double angle = 2.0 * std::numbers::pi * t / order;
    re += (a + b) * std::cos(angle);
    im += (a - b) * std::sin(angle);
  }
  return {re, im};
}

bool RootHistogram::equals_integer(std::int64_t n) const {
  std::vector<std::int64_t> poly = counts;
  poly[0] -= n;
  auto phi = cyclotomic_poly(order);
  // Reduce modulo the monic Phi_order, then require the zero polynomial.
  if (poly.size() >= phi.size()) {
    for (std::size_t shift = poly.size() - phi.size() + 1; shift-- > 0;) {
      std::int64_t lead = poly[shift + phi.size() - 1];
      if (lead == 0) continue;
      for (std::size_t j = 0; j < phi.size(); ++j) poly[shift + j] -= checked_mul(lead, phi[j]);
    }
  }
  for (std::int64_t c : poly)
    if (c != 0) return false;
  return true;
}

bool balanced_cycle_is_zero(const std::vector<std::int64_t>& counts, std::uint32_t order) {
  std::uint32_t nonzero = 0;
  std::int64_t common = 0;
  for (std::uint32_t t = 0; t < order; ++t) {
    if (counts[t] == 0) continue;
    if (nonzero == 0) common = counts[t];
    else if (counts[t] != common) return false;
    ++nonzero;
  }
  if (nonzero <= 1) return false;
  if (order % nonzero != 0) return false;
  std::uint32_t step = order / nonzero;
  for (std::uint32_t t = 0; t < order; ++t) {
    bool expected = (t % step) == 0;
    if ((counts[t] != 0) != expected) return false;
  }
  return true;
}

}  // namespace dirsum
