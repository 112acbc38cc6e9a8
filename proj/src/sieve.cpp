#include "dirsum/sieve.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace dirsum {

SieveRange::SieveRange(std::uint64_t lo_, std::uint64_t hi_, std::uint64_t seg)
    : lo(lo_), hi(hi_), segment_size(seg) {
  if (lo < 2) throw std::invalid_argument("SieveRange: lo must be >= 2");
  if (lo > hi) throw std::invalid_argument("SieveRange: lo must be <= hi");
  if (seg == 0 || (seg & (seg - 1)) != 0) throw std::invalid_argument("SieveRange: segment_size must be a power of two");
}

std::vector<std::uint64_t> simple_primes_up_to(std::uint64_t x) {
  std::vector<std::uint64_t> primes;
  if (x < 2) return primes;
  std::vector<std::uint8_t> composite(x + 1, 0);
  for (std::uint64_t i = 2; i * i <= x; ++i)
    if (!composite[i])
      for (std::uint64_t j = i * i; j <= x; j += i) composite[j] = 1;
  for (std::uint64_t i = 2; i <= x; ++i)
    if (!composite[i]) primes.push_back(i);
  return primes;
}

namespace {

std::vector<std::uint64_t> base_primes_for(std::uint64_t hi) {
  std::uint64_t root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(hi))) + 2;
  while (root * root > hi + 1) --root;
  while ((root + 1) * (root + 1) <= hi) ++root;
  return simple_primes_up_to(root);
}

}  // namespace

SievedSegment sieve_segment(std::uint64_t lo, std::uint64_t hi, const std::vector<std::uint64_t>& base) {
  SievedSegment seg;
  seg.lo = lo;
  seg.hi = hi;
  std::uint64_t len = hi - lo + 1;
  std::vector<std::uint8_t> is_comp(len, 0);
  for (std::uint64_t p : base) {
    if (p * p > hi) break;
    std::uint64_t start = std::max(p * p, (lo + p - 1) / p * p);
    for (std::uint64_t j = start; j <= hi; j += p) is_comp[j - lo] = 1;
  }
  seg.bits.assign((len + 7) / 8, 0);
  for (std::uint64_t i = 0; i < len; ++i) {
    std::uint64_t n = lo + i;
    if (n >= 2 && !is_comp[i]) seg.bits[i >> 3] |= static_cast<std::uint8_t>(1u << (i & 7));
  }
  return seg;
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t x, std::uint64_t segment_size) {
  std::vector<std::uint64_t> primes;
  if (x < 2) return primes;
  primes.reserve(x > 16 ? static_cast<std::size_t>(1.2 * x / std::log(static_cast<double>(x))) + 16 : 8);
  auto base = base_primes_for(x);
  for (std::uint64_t lo = 2; lo <= x; lo += segment_size) {
    std::uint64_t hi = std::min(lo + segment_size - 1, x);
    SievedSegment seg = sieve_segment(lo, hi, base);
    for (std::uint64_t n = lo; n <= hi; ++n)
      if (seg.test(n)) primes.push_back(n);
  }
  return primes;
}

void for_each_prime(const SieveRange& range, const std::function<void(std::uint64_t)>& fn) {
  auto base = base_primes_for(range.hi);
  for (std::uint64_t lo = range.lo; lo <= range.hi; lo += range.segment_size) {
    std::uint64_t hi = std::min(lo + range.segment_size - 1, range.hi);
    SievedSegment seg = sieve_segment(lo, hi, base);
    for (std::uint64_t n = lo; n <= hi; ++n)
      if (seg.test(n)) fn(n);
    if (hi == range.hi) break;
  }
}

std::uint64_t count_primes(std::uint64_t x) {
  if (x < 2) return 0;
  auto base = base_primes_for(x);
  std::uint64_t nseg = (x - 2) / kDefaultSegmentSize + 1;
  std::vector<std::uint64_t> per_segment(nseg, 0);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (std::int64_t s = 0; s < static_cast<std::int64_t>(nseg); ++s) {
    std::uint64_t lo = 2 + static_cast<std::uint64_t>(s) * kDefaultSegmentSize;
    std::uint64_t hi = std::min(lo + kDefaultSegmentSize - 1, x);
    SievedSegment seg = sieve_segment(lo, hi, base);
    std::uint64_t c = 0;
    for (std::uint64_t n = lo; n <= hi; ++n)
      if (seg.test(n)) ++c;
    per_segment[s] = c;
  }
  std::uint64_t total = 0;
  for (std::uint64_t c : per_segment) total += c;
  return total;
}

void for_each_prime_power(std::uint64_t y, const std::function<void(std::uint64_t, double)>& fn) {
  if (y < 2) return;
  // Higher powers p^k (k >= 2) are O(sqrt y) many; collect and merge with the
  // ascending prime stream.
  std::vector<LambdaEntry> powers;
  for (std::uint64_t p : primes_up_to(static_cast<std::uint64_t>(std::sqrt(static_cast<double>(y))) + 1)) {
    if (p * p > y) break;
    double lp = std::log(static_cast<double>(p));
    for (std::uint64_t n = p * p; n <= y; n *= p) {
      powers.push_back({n, lp});
      if (n > y / p) break;
    }
  }
  std::sort(powers.begin(), powers.end(), [](const LambdaEntry& a, const LambdaEntry& b) { return a.n < b.n; });
  std::size_t next = 0;
  for_each_prime(SieveRange(2, y), [&](std::uint64_t p) {
    while (next < powers.size() && powers[next].n < p) {
      fn(powers[next].n, powers[next].log_p);
      ++next;
    }
    fn(p, std::log(static_cast<double>(p)));
  });
  while (next < powers.size()) {
    fn(powers[next].n, powers[next].log_p);
    ++next;
  }
}

std::vector<LambdaEntry> von_mangoldt_list(std::uint64_t y) {
  if (y < 2) throw std::invalid_argument("von_mangoldt_list: requires y >= 2");
  std::vector<LambdaEntry> out;
  for_each_prime_power(y, [&](std::uint64_t n, double lp) { out.push_back({n, lp}); });
  return out;
}

std::int64_t ResidueCountTable::total() const {
  std::int64_t t = 0;
  for (std::int64_t c : counts) t += c;
  return t;
}

ResidueCountTable residue_counts_serial(std::uint64_t x, std::uint64_t q) {
  if (x < 2 || q < 1) throw std::invalid_argument("residue_counts: requires x >= 2, q >= 1");
  ResidueCountTable t;
  t.q = q;
  t.x = x;
  t.counts.assign(q, 0);
  for_each_prime(SieveRange(2, x), [&](std::uint64_t p) { ++t.counts[p % q]; });
  return t;
}

ResidueCountTable residue_counts(std::uint64_t x, std::uint64_t q) {
  if (x < 2 || q < 1) throw std::invalid_argument("residue_counts: requires x >= 2, q >= 1");
  ResidueCountTable t;
  t.q = q;
  t.x = x;
  t.counts.assign(q, 0);
  auto base = base_primes_for(x);
  std::uint64_t nseg = (x - 2) / kDefaultSegmentSize + 1;
#ifdef _OPENMP
#pragma omp parallel
#endif
  {
    std::vector<std::int64_t> local(q, 0);
#ifdef _OPENMP
#pragma omp for schedule(dynamic)
#endif
    for (std::int64_t s = 0; s < static_cast<std::int64_t>(nseg); ++s) {
      std::uint64_t lo = 2 + static_cast<std::uint64_t>(s) * kDefaultSegmentSize;
      std::uint64_t hi = std::min(lo + kDefaultSegmentSize - 1, x);
      SievedSegment seg = sieve_segment(lo, hi, base);
      for (std::uint64_t n = lo; n <= hi; ++n)
        if (seg.test(n)) ++local[n % q];
    }
#ifdef _OPENMP
#pragma omp critical
#endif
    for (std::uint64_t r = 0; r < q; ++r) t.counts[r] += local[r];
  }
  return t;
}

std::int64_t prime_count_progression(std::uint64_t x, std::uint64_t q, std::uint64_t l) {
  if (l >= q) throw std::invalid_argument("prime_count_progression: requires 0 <= l < q");
  return residue_counts(x, q).counts[l];
}

namespace {

void put_u64_le(std::ofstream& out, std::uint64_t v) {
  std::uint8_t b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<std::uint8_t>(v >> (8 * i));
  out.write(reinterpret_cast<const char*>(b), 8);
}

std::uint64_t get_u64_le(std::ifstream& in) {
  std::uint8_t b[8];
  in.read(reinterpret_cast<char*>(b), 8);
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  return v;
}

constexpr char kCacheMagic[5] = {'S', 'P', 'S', 'V', '1'};

}  // namespace

void write_sieve_cache(const std::string& path, const SieveRange& range) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open cache file for writing: " + path);
  out.write(kCacheMagic, 5);
  put_u64_le(out, range.lo);
  put_u64_le(out, range.hi);
  put_u64_le(out, range.segment_size);
  auto base = base_primes_for(range.hi);
  for (std::uint64_t lo = range.lo; lo <= range.hi; lo += range.segment_size) {
    std::uint64_t hi = std::min(lo + range.segment_size - 1, range.hi);
    SievedSegment seg = sieve_segment(lo, hi, base);
    out.write(reinterpret_cast<const char*>(seg.bits.data()),
              static_cast<std::streamsize>(seg.bits.size()));
    if (hi == range.hi) break;
  }
  if (!out) throw std::runtime_error("short write to cache file: " + path);
}

void for_each_prime_cached(const std::string& path, const SieveRange& range,
                           const std::function<void(std::uint64_t)>& fn) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open cache file: " + path);
  char magic[5];
  in.read(magic, 5);
  if (!in || std::memcmp(magic, kCacheMagic, 5) != 0)
    throw std::runtime_error("bad cache magic in " + path);
  std::uint64_t lo = get_u64_le(in), hi = get_u64_le(in), seg_size = get_u64_le(in);
  if (lo != range.lo || hi != range.hi || seg_size != range.segment_size)
    throw std::runtime_error("cache header does not match requested range: " + path);
  for (std::uint64_t slo = lo; slo <= hi; slo += seg_size) {
    std::uint64_t shi = std::min(slo + seg_size - 1, hi);
    std::uint64_t len = shi - slo + 1;
    std::vector<std::uint8_t> bits((len + 7) / 8);
    in.read(reinterpret_cast<char*>(bits.data()), static_cast<std::streamsize>(bits.size()));
    if (!in) throw std::runtime_error("truncated cache file: " + path);
    for (std::uint64_t i = 0; i < len; ++i)
      if ((bits[i >> 3] >> (i & 7)) & 1) fn(slo + i);
    if (shi == hi) break;
  }
}

}  // namespace dirsum
