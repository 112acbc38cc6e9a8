#ifndef DIRSUM_VERIFY_HPP
#define DIRSUM_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "dirsum/pi2.hpp"

namespace dirsum {

struct PropertyResult {
  std::string name;
  bool pass = false;
  std::string counterexample;  // first failure, fully spelled out
};

// Random valid (q, x1, x2, a, l) instances with q <= max_q, x <= max_x.
std::vector<Pi2Instance> random_pi2_instances(std::size_t count, std::uint64_t max_q, std::uint64_t max_x,
                                              std::uint64_t seed);

// Exact identities: orthogonality, the character decomposition of pi2, and
// the chi0 inclusion-exclusion equality.
std::vector<PropertyResult> verify_identities(std::uint64_t seed);

// Implementation-vs-oracle equivalences: pi2 against the brute-force double
// loop, segmented against plain sieving, histogram against complex
// accumulation.
std::vector<PropertyResult> verify_oracles(std::uint64_t seed);

// Inequalities: Brun-Titchmarsh sweep, |T(chi,x)| <= pi(x), kappa0 <= 1/3,
// Goldbach decompositions re-verified by primality.
std::vector<PropertyResult> verify_inequalities(std::uint64_t seed);

std::vector<PropertyResult> verify_all(std::uint64_t seed);

}  // namespace dirsum

#endif  // DIRSUM_VERIFY_HPP
