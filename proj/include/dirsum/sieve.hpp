#ifndef DIRSUM_SIEVE_HPP
#define DIRSUM_SIEVE_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "dirsum/ntcore.hpp"

namespace dirsum {

inline constexpr std::uint64_t kDefaultSegmentSize = 1ull << 20;

// A segmented sieving window.  segment_size must be a power of two.
struct SieveRange {
  std::uint64_t lo = 2;
  std::uint64_t hi = 2;
  std::uint64_t segment_size = kDefaultSegmentSize;

  SieveRange(std::uint64_t lo_, std::uint64_t hi_, std::uint64_t seg = kDefaultSegmentSize);
};

// One sieved segment: bits[i] <=> (lo + i) is prime, for lo+i in [lo, hi].
struct SievedSegment {
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;
  std::vector<std::uint8_t> bits;  // packed LSB-first

  bool test(std::uint64_t n) const { return (bits[(n - lo) >> 3] >> ((n - lo) & 7)) & 1; }
};

// Sieves [lo, hi] given base primes covering sqrt(hi).
SievedSegment sieve_segment(std::uint64_t lo, std::uint64_t hi, const std::vector<std::uint64_t>& base);

// Classic non-segmented sieve.  Serial reference implementation, also the
// independent oracle the segmented path is tested against.
std::vector<std::uint64_t> simple_primes_up_to(std::uint64_t x);

// Segmented generation of the primes in [2, x], ascending.
std::vector<std::uint64_t> primes_up_to(std::uint64_t x, std::uint64_t segment_size = kDefaultSegmentSize);

// Calls fn(p) for every prime in [lo, hi], ascending.
void for_each_prime(const SieveRange& range, const std::function<void(std::uint64_t)>& fn);

std::uint64_t count_primes(std::uint64_t x);  // pi(x), parallel over segments

// (n, ln p) for prime powers n = p^k <= y, ascending in n.
struct LambdaEntry {
  std::uint64_t n;
  double log_p;
};

void for_each_prime_power(std::uint64_t y, const std::function<void(std::uint64_t, double)>& fn);
std::vector<LambdaEntry> von_mangoldt_list(std::uint64_t y);

// counts[r] = #{p <= x prime : p = r mod q}
struct ResidueCountTable {
  std::uint64_t q = 1;
  std::uint64_t x = 2;
  std::vector<std::int64_t> counts;

  std::int64_t total() const;
};

ResidueCountTable residue_counts(std::uint64_t x, std::uint64_t q);         // parallel over segments
ResidueCountTable residue_counts_serial(std::uint64_t x, std::uint64_t q);  // reference

std::int64_t prime_count_progression(std::uint64_t x, std::uint64_t q, std::uint64_t l);

// -----------------------------------------------------------------------
// Binary segment cache: "SPSV1" magic, then lo, hi, segment_size as
// little-endian u64, then the primality bitmap for [lo, hi], LSB-first.
// -----------------------------------------------------------------------
void write_sieve_cache(const std::string& path, const SieveRange& range);

// Loads a cache and streams primes from it; header must match the requested
// range exactly, otherwise throws.
void for_each_prime_cached(const std::string& path, const SieveRange& range,
                           const std::function<void(std::uint64_t)>& fn);

}  // namespace dirsum

#endif  // DIRSUM_SIEVE_HPP
