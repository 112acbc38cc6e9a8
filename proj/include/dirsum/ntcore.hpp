#ifndef DIRSUM_NTCORE_HPP
#define DIRSUM_NTCORE_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/rational.hpp>

namespace dirsum {

using Rational = boost::rational<std::int64_t>;

// Thrown when a desk-scale guard (phi(q) caps, brute-force size caps, ...)
// is exceeded.  The CLI maps this to exit code 3.
class GuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Parses "1/6", "0.05", "3" into an exact fraction.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& r);

// ---------------------------------------------------------------------------
// 64-bit modular arithmetic helpers
// ---------------------------------------------------------------------------

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);
std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b);

// Inverse of a mod m, for gcd(a,m)=1.  inverse_mod(x,1) = 0.
std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t m);

// Deterministic Miller-Rabin, exact for all 64-bit inputs.
bool is_prime(std::uint64_t n);

// a*b with overflow check against the signed 64-bit range.
std::int64_t checked_mul(std::int64_t a, std::int64_t b);

// ---------------------------------------------------------------------------
// Factorization and Modulus
// ---------------------------------------------------------------------------

struct FactorPair {
  std::uint64_t prime;
  int exponent;
};

struct Factorization {
  std::vector<FactorPair> factors;  // ascending by prime

  // Recomposes prod p^e with overflow checking.
  std::uint64_t value() const;
  bool empty() const { return factors.empty(); }
};

// Trial division to 1e6, deterministic primality test, Pollard-Brent rho
// fallback for larger cofactors.  Accepts 1 <= n < 2^63.
Factorization factorize(std::uint64_t n);

std::uint64_t euler_phi(std::uint64_t n);
int moebius(std::uint64_t n);
std::vector<std::uint64_t> divisors(std::uint64_t n);  // ascending

// A modulus with its cached multiplicative structure.
// theta = 1/2 when q is cube-free, 5/6 otherwise.
struct Modulus {
  std::uint64_t q = 1;
  Factorization fac;
  std::uint64_t phi = 1;
  bool cube_free = true;
  Rational theta{1, 2};

  Modulus() = default;
  explicit Modulus(std::uint64_t q_);
};

struct ThetaKappa {
  Rational theta;
  Rational kappa0;  // 1/(2.5 + theta + eps), exact
};

ThetaKappa theta_kappa(const Modulus& m, const Rational& eps);

struct AlphaWindow {
  double lo = 0;
  double hi = 0;
  bool empty = false;
};

// [ (theta+eps) ln q / ln x, 1 - 2.5 ln q / ln x ].  Requires x > q >= 2.
AlphaWindow alpha_window(const Modulus& m, double x, const Rational& eps);

// Li(x) = integral from 2 to x of dt/ln t, adaptive quadrature,
// relative error <= 1e-10.  Throws for x < 2.
double log_integral(double x);

// integral from a to b of dt/ln t for 2 <= a <= b, same quadrature.
double log_integral_between(double a, double b);

}  // namespace dirsum

#endif  // DIRSUM_NTCORE_HPP
