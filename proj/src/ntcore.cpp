#include "dirsum/ntcore.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace dirsum {

Rational parse_rational(std::string_view text) {
  auto fail = [&](const char* why) {
    throw std::invalid_argument("bad rational '" + std::string(text) + "': " + why);
  };
  if (text.empty()) fail("empty");
  bool neg = false;
  std::size_t i = 0;
  if (text[0] == '+' || text[0] == '-') {
    neg = text[0] == '-';
    i = 1;
  }
  std::int64_t num = 0, den = 1;
  bool any_digit = false, seen_point = false, seen_slash = false;
  for (; i < text.size(); ++i) {
    char c = text[i];
    if (c >= '0' && c <= '9') {
      num = checked_mul(num, 10) + (c - '0');
      if (seen_point) den = checked_mul(den, 10);
      any_digit = true;
    } else if (c == '.' && !seen_point && !seen_slash) {
      seen_point = true;
    } else if (c == '/' && !seen_slash && !seen_point && any_digit) {
      seen_slash = true;
      std::int64_t d = 0;
      bool dd = false;
      for (++i; i < text.size(); ++i) {
        if (text[i] < '0' || text[i] > '9') fail("junk after '/'");
        d = checked_mul(d, 10) + (text[i] - '0');
        dd = true;
      }
      if (!dd || d == 0) fail("bad denominator");
      den = d;
      break;
    } else {
      fail("unexpected character");
    }
  }
  if (!any_digit) fail("no digits");
  if (neg) num = -num;
  return Rational(num, den);
}

std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<__uint128_t>(a) * b) % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  if (m == 1) return 0;
  std::uint64_t r = 1;
  base %= m;
  while (exp) {
    if (exp & 1) r = mul_mod(r, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return r;
}

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) { return std::gcd(a, b); }

std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t m) {
  if (m == 1) return 0;
  a %= m;
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = static_cast<std::int64_t>(m), new_r = static_cast<std::int64_t>(a);
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    std::int64_t tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (r != 1) throw std::invalid_argument("inverse_mod: arguments not coprime");
  if (t < 0) t += static_cast<std::int64_t>(m);
  return static_cast<std::uint64_t>(t);
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // Sinclair's deterministic base set for 64-bit integers.
  for (std::uint64_t a : {2ull, 325ull, 9375ull, 28178ull, 450775ull, 9780504ull, 1795265022ull}) {
    std::uint64_t x = pow_mod(a % n, d, n);
    if (x == 0 || x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) throw std::overflow_error("64-bit overflow in multiply");
  return out;
}

std::uint64_t Factorization::value() const {
  std::uint64_t v = 1;
  for (const auto& [p, e] : factors) {
    for (int i = 0; i < e; ++i) {
      std::uint64_t out = 0;
      if (__builtin_mul_overflow(v, p, &out)) throw std::overflow_error("factorization recompose overflow");
      v = out;
    }
  }
  return v;
}

namespace {

// Pollard-Brent rho; n must be composite, odd, not a prime power of a tiny prime.
std::uint64_t pollard_brent(std::uint64_t n) {
  if ((n & 1) == 0) return 2;
  std::uint64_t c = 1;
  while (true) {
    std::uint64_t x = 2, y = 2, d = 1;
    std::uint64_t q = 1;
    int lam = 1;
    // Brent cycle detection with batched gcds.
    while (d == 1) {
      x = y;
      for (int i = 0; i < lam; ++i) y = (mul_mod(y, y, n) + c) % n;
      int k = 0;
      while (k < lam && d == 1) {
        std::uint64_t ys = y;
        int lim = std::min(128, lam - k);
        for (int i = 0; i < lim; ++i) {
          y = (mul_mod(y, y, n) + c) % n;
          q = mul_mod(q, x > y ? x - y : y - x, n);
        }
        d = gcd_u64(q, n);
        k += lim;
        if (d == n) {
          // Backtrack one step at a time.
          d = 1;
          do {
            ys = (mul_mod(ys, ys, n) + c) % n;
            d = gcd_u64(x > ys ? x - ys : ys - x, n);
          } while (d == 1);
          break;
        }
      }
      lam *= 2;
    }
    if (d != n) return d;
    ++c;  // rare: retry with a different polynomial
  }
}

void factor_rec(std::uint64_t n, std::vector<std::uint64_t>& primes) {
  if (n == 1) return;
  if (is_prime(n)) {
    primes.push_back(n);
    return;
  }
  std::uint64_t d = pollard_brent(n);
  factor_rec(d, primes);
  factor_rec(n / d, primes);
}

}  // namespace

Factorization factorize(std::uint64_t n) {
  if (n == 0 || n > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max()))
    throw std::invalid_argument("factorize: input must be in [1, 2^63-1]");
  Factorization f;
  std::uint64_t m = n;
  for (std::uint64_t p = 2; p <= 1000000ull && p * p <= m; p += (p == 2 ? 1 : 2)) {
    if (m % p == 0) {
      int e = 0;
      while (m % p == 0) {
        m /= p;
        ++e;
      }
      f.factors.push_back({p, e});
    }
  }
  if (m > 1) {
    std::vector<std::uint64_t> rest;
    factor_rec(m, rest);
    std::sort(rest.begin(), rest.end());
    for (std::size_t i = 0; i < rest.size();) {
      std::size_t j = i;
      while (j < rest.size() && rest[j] == rest[i]) ++j;
      f.factors.push_back({rest[i], static_cast<int>(j - i)});
      i = j;
    }
  }
  return f;
}

std::uint64_t euler_phi(std::uint64_t n) {
  Factorization f = factorize(n);
  std::uint64_t phi = 1;
  for (const auto& [p, e] : f.factors) {
    phi *= p - 1;
    for (int i = 1; i < e; ++i) phi *= p;
  }
  return phi;
}

int moebius(std::uint64_t n) {
  Factorization f = factorize(n);
  for (const auto& [p, e] : f.factors)
    if (e > 1) return 0;
  return (f.factors.size() % 2 == 0) ? 1 : -1;
}

std::vector<std::uint64_t> divisors(std::uint64_t n) {
  Factorization f = factorize(n);
  std::vector<std::uint64_t> divs{1};
  for (const auto& [p, e] : f.factors) {
    std::size_t old = divs.size();
    std::uint64_t pe = 1;
    for (int i = 0; i < e; ++i) {
      pe *= p;
      for (std::size_t j = 0; j < old; ++j) divs.push_back(divs[j] * pe);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

Modulus::Modulus(std::uint64_t q_) : q(q_) {
  if (q == 0) throw std::invalid_argument("Modulus: q must be >= 1");
  fac = factorize(q);
  phi = 1;
  cube_free = true;
  for (const auto& [p, e] : fac.factors) {
    phi *= p - 1;
    for (int i = 1; i < e; ++i) phi *= p;
    if (e > 2) cube_free = false;
  }
  theta = cube_free ? Rational(1, 2) : Rational(5, 6);
}

ThetaKappa theta_kappa(const Modulus& m, const Rational& eps) {
  if (eps < Rational(0)) throw std::invalid_argument("theta_kappa: eps must be >= 0");
  Rational denom = Rational(5, 2) + m.theta + eps;
  return {m.theta, Rational(denom.denominator(), denom.numerator())};
}

AlphaWindow alpha_window(const Modulus& m, double x, const Rational& eps) {
  if (!(x > static_cast<double>(m.q)) || m.q < 2)
    throw std::invalid_argument("alpha_window: requires x > q >= 2");
  double ratio = std::log(static_cast<double>(m.q)) / std::log(x);
  AlphaWindow w;
  w.lo = boost::rational_cast<double>(m.theta + eps) * ratio;
  w.hi = 1.0 - 2.5 * ratio;
  // degenerate lo == hi counts as nonempty; tolerate last-ulp noise
  w.empty = w.lo > w.hi + 1e-12 * (std::abs(w.lo) + std::abs(w.hi) + 1.0);
  return w;
}

namespace {

double simpson(double a, double fa, double fm, double b, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double li_adaptive(double a, double fa, double m, double fm, double b, double fb, double whole,
                   double tol, int depth) {
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = 1.0 / std::log(lm), frm = 1.0 / std::log(rm);
  double left = simpson(a, fa, flm, m, fm);
  double right = simpson(m, fm, frm, b, fb);
  double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return li_adaptive(a, fa, lm, flm, m, fm, left, 0.5 * tol, depth - 1) +
         li_adaptive(m, fm, rm, frm, b, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double log_integral_between(double a, double b) {
  if (a < 2.0 || b < a) throw std::invalid_argument("log_integral_between: requires 2 <= a <= b");
  if (a == b) return 0.0;
  // The integrand is smooth on [a, b]; split at powers of 4 so each panel
  // sees bounded variation before adaptive refinement.
  double total = 0.0;
  double lo = a;
  while (lo < b) {
    double hi = std::min(lo * 4.0, b);
    double m = 0.5 * (lo + hi);
    double fa = 1.0 / std::log(lo), fm = 1.0 / std::log(m), fb = 1.0 / std::log(hi);
    double whole = simpson(lo, fa, fm, hi, fb);
    total += li_adaptive(lo, fa, m, fm, hi, fb, whole, 1e-12 * std::max(std::abs(whole), 1.0), 48);
    lo = hi;
  }
  return total;
}

double log_integral(double x) {
  if (x < 2.0) throw std::invalid_argument("log_integral: requires x >= 2");
  return log_integral_between(2.0, x);
}

}  // namespace dirsum
