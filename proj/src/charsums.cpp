#include "dirsum/charsums.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "dirsum/sieve.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace dirsum {

namespace {

constexpr std::uint32_t kExactOrderGuard = 65536;

void kahan_add(std::complex<double>& sum, std::complex<double>& comp, const std::complex<double>& v) {
  std::complex<double> y = v - comp;
  std::complex<double> t = sum + y;
  comp = (t - sum) - y;
  sum = t;
}

std::vector<std::uint64_t> sqrt_base_primes(std::uint64_t x) {
  std::uint64_t root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(x))) + 2;
  while (root * root > x + 1 && root > 0) --root;
  while ((root + 1) * (root + 1) <= x) ++root;
  return simple_primes_up_to(root);
}

struct PowerEntry {
  std::uint64_t n;
  double log_p;
};

std::vector<PowerEntry> higher_prime_powers(std::uint64_t y) {
  std::vector<PowerEntry> powers;
  for (std::uint64_t p : simple_primes_up_to(static_cast<std::uint64_t>(std::sqrt(static_cast<double>(y))) + 1)) {
    if (p * p > y) break;
    double lp = std::log(static_cast<double>(p));
    for (std::uint64_t n = p * p; n <= y; n *= p) {
      powers.push_back({n, lp});
      if (n > y / p) break;
    }
  }
  std::sort(powers.begin(), powers.end(), [](const PowerEntry& a, const PowerEntry& b) { return a.n < b.n; });
  return powers;
}

// Ascending jump points of one segment: primes for the prime-indicator
// kernel, prime powers with Lambda weights for the von Mangoldt kernel.
template <class F>
void for_terms_in_segment(std::uint64_t lo, std::uint64_t hi, Kernel kernel,
                          const std::vector<std::uint64_t>& base, const std::vector<PowerEntry>& powers,
                          F&& fn) {
  SievedSegment seg = sieve_segment(lo, hi, base);
  std::size_t next = 0;
  if (kernel == Kernel::kVonMangoldt) {
    next = static_cast<std::size_t>(
        std::lower_bound(powers.begin(), powers.end(), lo,
                         [](const PowerEntry& e, std::uint64_t v) { return e.n < v; }) -
        powers.begin());
  }
  for (std::uint64_t n = lo; n <= hi; ++n) {
    if (!seg.test(n)) continue;
    if (kernel == Kernel::kVonMangoldt) {
      while (next < powers.size() && powers[next].n < n) {
        fn(powers[next].n, powers[next].log_p);
        ++next;
      }
      fn(n, std::log(static_cast<double>(n)));
    } else {
      fn(n, 1.0);
    }
  }
  while (kernel == Kernel::kVonMangoldt && next < powers.size() && powers[next].n <= hi) {
    fn(powers[next].n, powers[next].log_p);
    ++next;
  }
}

std::uint64_t segment_count(std::uint64_t x) { return (x - 2) / kDefaultSegmentSize + 1; }

}  // namespace

SumAccumulator::SumAccumulator(SumMode mode, std::uint32_t order) : mode_(mode), order_(order) {
  if (order_ == 0) throw std::invalid_argument("SumAccumulator: order must be >= 1");
  if (mode_ == SumMode::kExactHistogram) {
    if (order_ > kExactOrderGuard)
      throw GuardError("exact-histogram guard: root-of-unity order " + std::to_string(order_) +
                       " exceeds " + std::to_string(kExactOrderGuard));
    counts_.assign(order_, 0);
  }
}

void SumAccumulator::add_unit(std::uint32_t t, const std::complex<double>& root) {
  ++terms_;
  if (mode_ == SumMode::kExactHistogram) {
    ++counts_[t];
  } else {
    kahan_add(sum_, comp_, root);
  }
}

void SumAccumulator::add_weighted(std::uint32_t t, double w, const std::complex<double>& root) {
  ++terms_;
  if (mode_ == SumMode::kExactHistogram) {
    if (unit_weights_) {
      weights_.assign(order_, 0.0);
      for (std::uint32_t i = 0; i < order_; ++i) weights_[i] = static_cast<double>(counts_[i]);
      unit_weights_ = false;
    }
    weights_[t] += w;
  } else {
    kahan_add(sum_, comp_, w * root);
  }
}

void SumAccumulator::merge(const SumAccumulator& other) {
  if (mode_ != other.mode_ || order_ != other.order_)
    throw std::invalid_argument("SumAccumulator::merge: mode/order mismatch");
  terms_ += other.terms_;
  if (mode_ == SumMode::kExactHistogram) {
    if (!other.unit_weights_ && unit_weights_) {
      weights_.assign(order_, 0.0);
      for (std::uint32_t i = 0; i < order_; ++i) weights_[i] = static_cast<double>(counts_[i]);
      unit_weights_ = false;
    }
    if (other.unit_weights_) {
      if (unit_weights_) {
        for (std::uint32_t i = 0; i < order_; ++i) counts_[i] += other.counts_[i];
      } else {
        for (std::uint32_t i = 0; i < order_; ++i) weights_[i] += static_cast<double>(other.counts_[i]);
      }
    } else {
      for (std::uint32_t i = 0; i < order_; ++i) weights_[i] += other.weights_[i];
    }
  } else {
    sum_ += other.sum_;
  }
}

std::complex<double> SumAccumulator::value() const {
  if (mode_ == SumMode::kComplexDouble) return sum_;
  auto weight = [&](std::uint32_t t) {
    return unit_weights_ ? static_cast<double>(counts_[t]) : weights_[t];
  };
  // Pair conjugate classes: symmetric histograms (real characters) project
  // to exactly real values.
  double re = weight(0);
  double im = 0.0;
  if (order_ % 2 == 0) re -= weight(order_ / 2);
  for (std::uint32_t t = 1; 2 * t < order_; ++t) {
    double a = weight(t), b = weight(order_ - t);
    if (a == 0.0 && b == 0.0) continue;
    double angle = 2.0 * std::numbers::pi * t / order_;
    re += (a + b) * std::cos(angle);
    im += (a - b) * std::sin(angle);
  }
  return {re, im};
}

RootHistogram SumAccumulator::histogram() const {
  if (mode_ != SumMode::kExactHistogram || !unit_weights_)
    throw std::logic_error("SumAccumulator::histogram: requires exact mode with unit weights");
  RootHistogram h(order_);
  h.counts = counts_;
  return h;
}

CharSumPlan::CharSumPlan(const CharacterGroup& group) : group_(&group), q_(group.q()) {
  const UnitGroupBasis& basis = *group.basis();
  const auto& gens = basis.generators();
  const auto& chars = group.characters();
  nchars_ = chars.size();
  ngens_ = gens.size();
  order_ = static_cast<std::uint32_t>(basis.group_exponent());

  unit_index_.assign(q_, -1);
  std::vector<std::uint64_t> units;
  units.reserve(group.phi());
  for (std::uint64_t r = 0; r < q_; ++r) {
    if (q_ == 1 || std::gcd(r == 0 ? q_ : r, q_) == 1) {
      unit_index_[r] = static_cast<std::int32_t>(units.size());
      units.push_back(r);
    }
  }

  dlogs_.assign(units.size() * ngens_, 0);
  for (std::size_t u = 0; u < units.size(); ++u) {
    auto dl = basis.dlog(units[u]);
    for (std::size_t i = 0; i < ngens_; ++i) dlogs_[u * ngens_ + i] = dl[i];
  }

  weights_.assign(nchars_ * ngens_, 0);
  for (std::size_t c = 0; c < nchars_; ++c) {
    const auto& exps = chars[c].exponents();
    for (std::size_t i = 0; i < ngens_; ++i)
      weights_[c * ngens_ + i] = mul_mod(exps[i], order_ / gens[i].order, order_);
  }

  roots_.resize(order_);
  for (std::uint32_t t = 0; t < order_; ++t) {
    double angle = 2.0 * std::numbers::pi * t / order_;
    roots_[t] = {std::cos(angle), std::sin(angle)};
  }
}

std::vector<SumAccumulator> char_sums_over_primes(const CharSumPlan& plan, std::uint64_t x,
                                                  std::int64_t shift, SumMode mode) {
  std::size_t nchi = plan.num_chars();
  std::uint64_t q = plan.q();
  std::uint64_t sh = static_cast<std::uint64_t>(((shift % static_cast<std::int64_t>(q)) + static_cast<std::int64_t>(q))) % q;
  std::vector<SumAccumulator> out(nchi, SumAccumulator(mode, plan.order()));
  if (x < 2) return out;

  auto base = sqrt_base_primes(x);
  std::uint64_t nseg = segment_count(x);
  std::vector<std::vector<SumAccumulator>> per_seg(nseg);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (std::int64_t s = 0; s < static_cast<std::int64_t>(nseg); ++s) {
    std::uint64_t lo = 2 + static_cast<std::uint64_t>(s) * kDefaultSegmentSize;
    std::uint64_t hi = std::min(lo + kDefaultSegmentSize - 1, x);
    std::vector<SumAccumulator> local(nchi, SumAccumulator(mode, plan.order()));
    for_terms_in_segment(lo, hi, Kernel::kPrimeIndicator, base, {}, [&](std::uint64_t p, double) {
      std::int32_t u = plan.unit_index((p % q + sh) % q);
      if (u < 0) return;
      for (std::size_t c = 0; c < nchi; ++c) {
        std::uint32_t t = plan.exponent(c, u);
        local[c].add_unit(t, plan.root(t));
      }
    });
    per_seg[s] = std::move(local);
  }
  for (std::uint64_t s = 0; s < nseg; ++s)
    for (std::size_t c = 0; c < nchi; ++c) out[c].merge(per_seg[s][c]);
  return out;
}

std::vector<SumAccumulator> char_sums_von_mangoldt(const CharSumPlan& plan, std::uint64_t y, SumMode mode) {
  std::size_t nchi = plan.num_chars();
  std::uint64_t q = plan.q();
  std::vector<SumAccumulator> out(nchi, SumAccumulator(mode, plan.order()));
  if (y < 2) return out;

  auto base = sqrt_base_primes(y);
  auto powers = higher_prime_powers(y);
  std::uint64_t nseg = segment_count(y);
  std::vector<std::vector<SumAccumulator>> per_seg(nseg);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (std::int64_t s = 0; s < static_cast<std::int64_t>(nseg); ++s) {
    std::uint64_t lo = 2 + static_cast<std::uint64_t>(s) * kDefaultSegmentSize;
    std::uint64_t hi = std::min(lo + kDefaultSegmentSize - 1, y);
    std::vector<SumAccumulator> local(nchi, SumAccumulator(mode, plan.order()));
    for_terms_in_segment(lo, hi, Kernel::kVonMangoldt, base, powers, [&](std::uint64_t n, double w) {
      std::int32_t u = plan.unit_index(n % q);
      if (u < 0) return;
      for (std::size_t c = 0; c < nchi; ++c) {
        std::uint32_t t = plan.exponent(c, u);
        local[c].add_weighted(t, w, plan.root(t));
      }
    });
    per_seg[s] = std::move(local);
  }
  for (std::uint64_t s = 0; s < nseg; ++s)
    for (std::size_t c = 0; c < nchi; ++c) out[c].merge(per_seg[s][c]);
  return out;
}

namespace {

std::complex<double> single_char_sum(const DirichletCharacter& chi, std::uint64_t limit, std::int64_t shift,
                                     Kernel kernel, SumMode mode) {
  std::uint64_t q = chi.q();
  std::uint64_t M = chi.basis().group_exponent();
  SumAccumulator acc(mode, static_cast<std::uint32_t>(M));
  if (limit < 2) return acc.value();
  std::uint64_t sh =
      static_cast<std::uint64_t>(((shift % static_cast<std::int64_t>(q)) + static_cast<std::int64_t>(q))) % q;

  std::vector<std::complex<double>> roots;
  if (M <= kExactOrderGuard) {
    roots.resize(M);
    for (std::uint64_t t = 0; t < M; ++t) {
      double angle = 2.0 * std::numbers::pi * static_cast<double>(t) / static_cast<double>(M);
      roots[t] = {std::cos(angle), std::sin(angle)};
    }
  }
  auto root_of = [&](std::uint64_t t) -> std::complex<double> {
    if (!roots.empty()) return roots[t];
    double angle = 2.0 * std::numbers::pi * static_cast<double>(t) / static_cast<double>(M);
    return {std::cos(angle), std::sin(angle)};
  };

  auto add_term = [&](std::uint64_t n, double w) {
    auto t = chi.eval_exponent(n + sh);
    if (!t) return;
    if (kernel == Kernel::kVonMangoldt)
      acc.add_weighted(static_cast<std::uint32_t>(*t), w, root_of(*t));
    else
      acc.add_unit(static_cast<std::uint32_t>(*t), root_of(*t));
  };

  if (kernel == Kernel::kVonMangoldt)
    for_each_prime_power(limit, add_term);
  else
    for_each_prime(SieveRange(2, limit), [&](std::uint64_t p) { add_term(p, 1.0); });
  return acc.value();
}

}  // namespace

std::complex<double> psi_chi(std::uint64_t y, const DirichletCharacter& chi, SumMode mode) {
  if (y < 2) throw std::invalid_argument("psi_chi: requires y >= 2");
  return single_char_sum(chi, y, 0, Kernel::kVonMangoldt, mode);
}

std::complex<double> prime_char_sum(std::uint64_t y, const DirichletCharacter& chi, SumMode mode) {
  if (y < 2) throw std::invalid_argument("prime_char_sum: requires y >= 2");
  return single_char_sum(chi, y, 0, Kernel::kPrimeIndicator, mode);
}

std::complex<double> shifted_char_sum(const DirichletCharacter& chi, std::uint64_t x, std::int64_t a,
                                      SumMode mode) {
  if (x < 2) throw std::invalid_argument("shifted_char_sum: requires x >= 2");
  std::uint64_t q = chi.q();
  std::uint64_t an = static_cast<std::uint64_t>(((a % static_cast<std::int64_t>(q)) + static_cast<std::int64_t>(q))) % q;
  if (q > 1 && std::gcd(an == 0 ? q : an, q) != 1)
    throw std::invalid_argument("shifted_char_sum: requires gcd(a, q) = 1");
  return single_char_sum(chi, x, a, Kernel::kPrimeIndicator, mode);
}

namespace {

struct PrefixCandidate {
  double max_sq = -1.0;
  std::uint64_t argmax_y = 0;
};

}  // namespace

std::vector<MaxOverPrefix> prefix_max_all(const CharSumPlan& plan, std::uint64_t x, Kernel kernel) {
  std::size_t nchi = plan.num_chars();
  std::uint64_t q = plan.q();
  std::vector<MaxOverPrefix> out(nchi);
  for (auto& m : out) m.x = x;
  if (x < 2) return out;

  auto base = sqrt_base_primes(x);
  auto powers = kernel == Kernel::kVonMangoldt ? higher_prime_powers(x) : std::vector<PowerEntry>{};
  std::uint64_t nseg = segment_count(x);

  // Phase 1: per-segment partial sums.
  std::vector<std::vector<std::complex<double>>> seg_sum(nseg);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (std::int64_t s = 0; s < static_cast<std::int64_t>(nseg); ++s) {
    std::uint64_t lo = 2 + static_cast<std::uint64_t>(s) * kDefaultSegmentSize;
    std::uint64_t hi = std::min(lo + kDefaultSegmentSize - 1, x);
    std::vector<std::complex<double>> sum(nchi, {0.0, 0.0}), comp(nchi, {0.0, 0.0});
    for_terms_in_segment(lo, hi, kernel, base, powers, [&](std::uint64_t n, double w) {
      std::int32_t u = plan.unit_index(n % q);
      if (u < 0) return;
      for (std::size_t c = 0; c < nchi; ++c) {
        std::uint32_t t = plan.exponent(c, u);
        kahan_add(sum[c], comp[c], w * plan.root(t));
      }
    });
    seg_sum[s] = std::move(sum);
  }

  // Exact left-to-right fold gives each segment its starting offset.
  std::vector<std::vector<std::complex<double>>> offset(nseg, std::vector<std::complex<double>>(nchi, {0.0, 0.0}));
  for (std::uint64_t s = 1; s < nseg; ++s)
    for (std::size_t c = 0; c < nchi; ++c) offset[s][c] = offset[s - 1][c] + seg_sum[s - 1][c];

  // Phase 2: rescan each segment against its offset, tracking prefix maxima.
  std::vector<std::vector<PrefixCandidate>> cand(nseg, std::vector<PrefixCandidate>(nchi));
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (std::int64_t s = 0; s < static_cast<std::int64_t>(nseg); ++s) {
    std::uint64_t lo = 2 + static_cast<std::uint64_t>(s) * kDefaultSegmentSize;
    std::uint64_t hi = std::min(lo + kDefaultSegmentSize - 1, x);
    std::vector<std::complex<double>> sum = offset[s];
    std::vector<std::complex<double>> comp(nchi, {0.0, 0.0});
    auto& local = cand[s];
    for_terms_in_segment(lo, hi, kernel, base, powers, [&](std::uint64_t n, double w) {
      std::int32_t u = plan.unit_index(n % q);
      if (u < 0) return;
      for (std::size_t c = 0; c < nchi; ++c) {
        std::uint32_t t = plan.exponent(c, u);
        kahan_add(sum[c], comp[c], w * plan.root(t));
        double nsq = std::norm(sum[c]);
        if (nsq > local[c].max_sq) {
          local[c].max_sq = nsq;
          local[c].argmax_y = n;
        }
      }
    });
  }

  std::vector<PrefixCandidate> best(nchi);  // empty prefix: |0| at y = 0
  for (auto& b : best) b.max_sq = 0.0;
  for (std::uint64_t s = 0; s < nseg; ++s)
    for (std::size_t c = 0; c < nchi; ++c)
      if (cand[s][c].max_sq > best[c].max_sq) best[c] = cand[s][c];
  for (std::size_t c = 0; c < nchi; ++c) {
    out[c].max_abs = std::sqrt(std::max(0.0, best[c].max_sq));
    out[c].argmax_y = best[c].argmax_y;
  }
  return out;
}

std::vector<MaxOverPrefix> prefix_max_all_serial(const CharSumPlan& plan, std::uint64_t x, Kernel kernel) {
  std::size_t nchi = plan.num_chars();
  std::uint64_t q = plan.q();
  std::vector<MaxOverPrefix> out(nchi);
  for (auto& m : out) m.x = x;
  if (x < 2) return out;
  auto base = sqrt_base_primes(x);
  auto powers = kernel == Kernel::kVonMangoldt ? higher_prime_powers(x) : std::vector<PowerEntry>{};
  std::vector<std::complex<double>> sum(nchi, {0.0, 0.0}), comp(nchi, {0.0, 0.0});
  std::vector<PrefixCandidate> best(nchi);
  for (auto& b : best) b.max_sq = 0.0;
  for (std::uint64_t lo = 2; lo <= x; lo += kDefaultSegmentSize) {
    std::uint64_t hi = std::min(lo + kDefaultSegmentSize - 1, x);
    for_terms_in_segment(lo, hi, kernel, base, powers, [&](std::uint64_t n, double w) {
      std::int32_t u = plan.unit_index(n % q);
      if (u < 0) return;
      for (std::size_t c = 0; c < nchi; ++c) {
        std::uint32_t t = plan.exponent(c, u);
        kahan_add(sum[c], comp[c], w * plan.root(t));
        double nsq = std::norm(sum[c]);
        if (nsq > best[c].max_sq) {
          best[c].max_sq = nsq;
          best[c].argmax_y = n;
        }
      }
    });
    if (hi == x) break;
  }
  for (std::size_t c = 0; c < nchi; ++c) {
    out[c].max_abs = std::sqrt(best[c].max_sq);
    out[c].argmax_y = best[c].argmax_y;
  }
  return out;
}

double t_sum(std::uint64_t x, const Modulus& m, Kernel kernel) {
  if (x < 2) throw std::invalid_argument("t_sum: requires x >= 2");
  CharacterGroup group(m);
  CharSumPlan plan(group);
  auto maxima = prefix_max_all(plan, x, kernel);
  double total = 0.0;
  for (const auto& mx : maxima) total += mx.max_abs;
  return total;
}

double T_sum(std::uint64_t x, std::uint64_t Q) {
  if (x < 2 || Q < 1) throw std::invalid_argument("T_sum: requires x >= 2, Q >= 1");
  std::uint64_t phi_total = 0;
  for (std::uint64_t q = 1; q <= Q; ++q) phi_total += euler_phi(q);
  if (phi_total > CharacterGroup::kPhiGuard)
    throw GuardError("T_sum guard: sum of phi(q) for q <= " + std::to_string(Q) + " is " +
                     std::to_string(phi_total) + ", exceeds " + std::to_string(CharacterGroup::kPhiGuard));
  double total = 0.0;
  for (std::uint64_t q = 1; q <= Q; ++q) {
    Modulus m(q);
    CharacterGroup group(m);
    CharSumPlan plan(group);
    auto maxima = prefix_max_all(plan, x, Kernel::kVonMangoldt);
    double inner = 0.0;
    const auto& chars = group.characters();
    for (std::size_t c = 0; c < chars.size(); ++c)
      if (is_primitive(chars[c])) inner += maxima[c].max_abs;
    total += static_cast<double>(q) / static_cast<double>(m.phi) * inner;
  }
  return total;
}

std::vector<NontrivialityRow> nontriviality_report(const Modulus& m, std::int64_t a,
                                                   const std::vector<double>& exponents) {
  std::uint64_t q = m.q;
  std::uint64_t an = static_cast<std::uint64_t>(((a % static_cast<std::int64_t>(q)) + static_cast<std::int64_t>(q))) % q;
  if (q > 1 && std::gcd(an == 0 ? q : an, q) != 1)
    throw std::invalid_argument("nontriviality_report: requires gcd(a, q) = 1");
  CharacterGroup group(m);
  CharSumPlan plan(group);
  std::vector<NontrivialityRow> rows;
  rows.reserve(exponents.size());
  for (double e : exponents) {
    NontrivialityRow row;
    row.exponent = e;
    double xd = std::pow(static_cast<double>(q), e);
    if (!(xd >= 2.0) || xd > 9e15) {
      row.below_range = true;
      if (xd > 9e15) throw GuardError("nontriviality_report: q^e too large");
      rows.push_back(row);
      continue;
    }
    std::uint64_t x = static_cast<std::uint64_t>(std::ceil(xd));
    row.x = x;
    auto sums = char_sums_over_primes(plan, x, a, SumMode::kComplexDouble);
    const auto& chars = group.characters();
    std::size_t argmax = 0;
    double best = -1.0;
    for (std::size_t c = 1; c < chars.size(); ++c) {
      double ratio = std::abs(sums[c].value()) / static_cast<double>(x);
      if (ratio > best) {
        best = ratio;
        argmax = c;
      }
    }
    if (best >= 0.0) {
      row.max_ratio = best;
      row.argmax_chi = chars[argmax].serialize();
      row.theta = theta_for_character(chars[argmax]);
      row.above_theta = e > boost::rational_cast<double>(row.theta);
    }
    rows.push_back(row);
  }
  return rows;
}

double bv_threshold(double x, double A) { return std::sqrt(x) * std::pow(std::log(x), -A - 3.5); }

double bv_error_sum(std::uint64_t x, std::uint64_t qcap) {
  if (x < 10 || qcap < 1) throw std::invalid_argument("bv_error_sum: requires x >= 10, qcap >= 1");
  auto primes = primes_up_to(x);
  // Li at every jump point, accumulated gap by gap with the same adaptive
  // quadrature Li itself uses.
  std::vector<double> li_at(primes.size());
  double li = 0.0, prev = 2.0;
  for (std::size_t i = 0; i < primes.size(); ++i) {
    double p = static_cast<double>(primes[i]);
    if (p > prev) li += log_integral_between(prev, p);
    li_at[i] = li;
    prev = p;
  }
  double li_x = li + log_integral_between(prev, static_cast<double>(x));

  std::vector<double> per_q(qcap + 1, 0.0);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (std::int64_t q = 1; q <= static_cast<std::int64_t>(qcap); ++q) {
    std::uint64_t uq = static_cast<std::uint64_t>(q);
    std::vector<std::uint64_t> units;
    for (std::uint64_t l = 0; l < uq; ++l)
      if (uq == 1 || std::gcd(l == 0 ? uq : l, uq) == 1) units.push_back(l);
    double inv_phi = 1.0 / static_cast<double>(units.size());
    std::vector<std::int64_t> counts(uq, 0);
    double max_err = 0.0;
    auto scan = [&](double li_y) {
      for (std::uint64_t l : units) {
        double err = std::abs(static_cast<double>(counts[l]) - li_y * inv_phi);
        if (err > max_err) max_err = err;
      }
    };
    for (std::size_t i = 0; i < primes.size(); ++i) {
      scan(li_at[i]);  // y -> p from below: old counts against Li(p)
      ++counts[primes[i] % uq];
      scan(li_at[i]);  // y = p
    }
    scan(li_x);
    per_q[q] = max_err;
  }
  double total = 0.0;
  for (std::uint64_t q = 1; q <= qcap; ++q) total += per_q[q];
  return total;
}

}  // namespace dirsum
