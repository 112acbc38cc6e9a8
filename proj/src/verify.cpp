#include "dirsum/verify.hpp"

#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

namespace dirsum {

std::vector<Pi2Instance> random_pi2_instances(std::size_t count, std::uint64_t max_q, std::uint64_t max_x,
                                              std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Pi2Instance> out;
  out.reserve(count);
  while (out.size() < count) {
    std::uint64_t q = 1 + rng() % max_q;
    std::vector<std::uint64_t> units;
    for (std::uint64_t r = 0; r < q; ++r)
      if (q == 1 || std::gcd(r == 0 ? q : r, q) == 1) units.push_back(r);
    std::uint64_t a = units[rng() % units.size()];
    std::uint64_t l = units[rng() % units.size()];
    std::uint64_t x1 = 2 + rng() % (max_x - 1);
    std::uint64_t x2 = 2 + rng() % (max_x - 1);
    out.emplace_back(Modulus(q), x1, x2, static_cast<std::int64_t>(a == 0 && q == 1 ? 1 : a), l);
  }
  return out;
}

namespace {

std::string describe(const Pi2Instance& inst) {
  std::ostringstream os;
  os << "q=" << inst.m.q << " x1=" << inst.x1 << " x2=" << inst.x2 << " a=" << inst.a << " l=" << inst.l;
  return os.str();
}

}  // namespace

std::vector<PropertyResult> verify_identities(std::uint64_t seed) {
  std::vector<PropertyResult> results;

  {
    PropertyResult r{"orthogonality: sum_chi chi(m) conj(chi(l)) = phi(q) [m=l], exact, q <= 150", true, ""};
    for (std::uint64_t q = 1; q <= 150 && r.pass; ++q) {
      CharacterGroup group{Modulus(q)};
      if (auto fail = check_orthogonality(group)) {
        r.pass = false;
        std::ostringstream os;
        os << "q=" << fail->q << " m=" << fail->m << " l=" << fail->l;
        r.counterexample = os.str();
      }
    }
    results.push_back(std::move(r));
  }

  {
    PropertyResult r{"decomposition: phi*pi2 = sum_chi T1(x2,chi) conj(chi(l)) P(x1,chi), exact histogram", true, ""};
    auto instances = random_pi2_instances(60, 50, 2000, seed ^ 0x5eed1);
    for (const auto& inst : instances) {
      if (!decomposition_identity_exact(inst)) {
        r.pass = false;
        r.counterexample = describe(inst);
        break;
      }
    }
    results.push_back(std::move(r));
  }

  {
    PropertyResult r{"decomposition (fast mode): |M2 + Re(R2) - pi2| <= 1e-6", true, ""};
    auto instances = random_pi2_instances(60, 50, 2000, seed ^ 0x5eed2);
    for (const auto& inst : instances) {
      Decomposition d = char_decomposition(inst, SumMode::kComplexDouble);
      double lhs = d.M2 + d.R2.real();
      std::int64_t exact = pi2_exact(inst);
      if (std::abs(lhs - static_cast<double>(exact)) > 1e-6 || std::abs(d.R2.imag()) > 1e-6) {
        r.pass = false;
        std::ostringstream os;
        os << describe(inst) << " M2+Re(R2)=" << lhs << " exact=" << exact << " Im(R2)=" << d.R2.imag();
        r.counterexample = os.str();
        break;
      }
    }
    results.push_back(std::move(r));
  }

  {
    PropertyResult r{"inclusion-exclusion: T1(x2,chi0) direct = sum_{d|q} mu(d) pi(x2;d,-a), q <= 60", true, ""};
    for (std::uint64_t q = 1; q <= 60 && r.pass; ++q) {
      Modulus m(q);
      for (std::uint64_t a = 1; a <= q && r.pass; ++a) {
        if (q > 1 && std::gcd(a, q) != 1) continue;
        T1Check c = t1_chi0_check(5000, static_cast<std::int64_t>(a % q), m);
        if (c.direct != c.incl_excl) {
          r.pass = false;
          std::ostringstream os;
          os << "q=" << q << " a=" << a % q << " x2=5000 direct=" << c.direct << " incl_excl=" << c.incl_excl;
          r.counterexample = os.str();
        }
      }
    }
    results.push_back(std::move(r));
  }

  return results;
}

std::vector<PropertyResult> verify_oracles(std::uint64_t seed) {
  std::vector<PropertyResult> results;

  {
    PropertyResult r{"pi2_exact = pi2_bruteforce on 100 random instances (q <= 50, x <= 2000)", true, ""};
    auto instances = random_pi2_instances(100, 50, 2000, seed);
    for (const auto& inst : instances) {
      std::int64_t fast = pi2_exact(inst);
      std::int64_t slow = pi2_bruteforce(inst);
      if (fast != slow) {
        r.pass = false;
        std::ostringstream os;
        os << describe(inst) << " exact=" << fast << " bruteforce=" << slow;
        r.counterexample = os.str();
        break;
      }
    }
    results.push_back(std::move(r));
  }

  {
    PropertyResult r{"segmented sieve = plain sieve on [2, 1e6]", true, ""};
    auto seg = primes_up_to(1000000);
    auto ref = simple_primes_up_to(1000000);
    if (seg != ref) {
      r.pass = false;
      r.counterexample = "prime lists differ (sizes " + std::to_string(seg.size()) + " vs " +
                         std::to_string(ref.size()) + ")";
    }
    results.push_back(std::move(r));
  }

  {
    PropertyResult r{"residue_counts marginal = pi(x) for 50 random (x <= 1e5, q <= 200)", true, ""};
    std::mt19937_64 rng(seed ^ 0xabcdef);
    for (int i = 0; i < 50 && r.pass; ++i) {
      std::uint64_t x = 100 + rng() % 99900;
      std::uint64_t q = 1 + rng() % 200;
      ResidueCountTable t = residue_counts(x, q);
      std::uint64_t pi_x = count_primes(x);
      if (t.total() != static_cast<std::int64_t>(pi_x)) {
        r.pass = false;
        std::ostringstream os;
        os << "x=" << x << " q=" << q << " marginal=" << t.total() << " pi(x)=" << pi_x;
        r.counterexample = os.str();
      }
    }
    results.push_back(std::move(r));
  }

  {
    PropertyResult r{"exact-histogram vs complex-double accumulators agree within 1e-9 * terms", true, ""};
    std::mt19937_64 rng(seed ^ 0x77);
    for (int i = 0; i < 20 && r.pass; ++i) {
      std::uint64_t q = 3 + rng() % 98;
      std::uint64_t x = 500 + rng() % 9500;
      CharacterGroup group{Modulus(q)};
      CharSumPlan plan(group);
      auto exact = char_sums_over_primes(plan, x, 0, SumMode::kExactHistogram);
      auto fast = char_sums_over_primes(plan, x, 0, SumMode::kComplexDouble);
      for (std::size_t c = 0; c < exact.size(); ++c) {
        double diff = std::abs(exact[c].value() - fast[c].value());
        if (diff > 1e-9 * std::max<std::int64_t>(1, exact[c].terms())) {
          r.pass = false;
          std::ostringstream os;
          os << "q=" << q << " x=" << x << " chi#" << c << " diff=" << diff;
          r.counterexample = os.str();
          break;
        }
      }
    }
    results.push_back(std::move(r));
  }

  return results;
}

std::vector<PropertyResult> verify_inequalities(std::uint64_t seed) {
  std::vector<PropertyResult> results;

  {
    PropertyResult r{"Brun-Titchmarsh: pi(x;q,a) <= 2x/(phi(q) ln(2x/q)), q <= 100, x in {1e3,1e4,1e5}", true, ""};
    for (std::uint64_t x : {1000ull, 10000ull, 100000ull}) {
      if (!r.pass) break;
      for (std::uint64_t q = 1; q <= 100 && r.pass; ++q) {
        Modulus m(q);
        ResidueCountTable table = residue_counts(x, q);
        for (std::uint64_t a = 0; a < q || (q == 1 && a == 0); ++a) {
          if (q > 1 && std::gcd(a == 0 ? q : a, q) != 1) continue;
          BrunTitchmarsh bt = brun_titchmarsh_check(table, m, a);
          if (!bt.holds) {
            r.pass = false;
            std::ostringstream os;
            os << "x=" << x << " q=" << q << " a=" << a << " lhs=" << bt.lhs << " rhs=" << bt.rhs;
            r.counterexample = os.str();
            break;
          }
          if (q == 1) break;
        }
      }
    }
    results.push_back(std::move(r));
  }

  {
    PropertyResult r{"|T(chi,x)| <= pi(x) for sampled characters", true, ""};
    std::mt19937_64 rng(seed ^ 0x1234);
    for (int i = 0; i < 20 && r.pass; ++i) {
      std::uint64_t q = 3 + rng() % 198;
      std::uint64_t x = 100 + rng() % 9900;
      std::uint64_t a = 1;
      while (std::gcd(a, q) != 1) ++a;
      CharacterGroup group{Modulus(q)};
      double pix = static_cast<double>(count_primes(x));
      for (const auto& chi : group.characters()) {
        double mag = std::abs(shifted_char_sum(chi, x, static_cast<std::int64_t>(a)));
        if (mag > pix + 1e-9) {
          r.pass = false;
          std::ostringstream os;
          os << "q=" << q << " x=" << x << " chi=" << chi.serialize() << " |T|=" << mag << " pi=" << pix;
          r.counterexample = os.str();
          break;
        }
      }
    }
    results.push_back(std::move(r));
  }

  {
    PropertyResult r{"kappa0 = 1/(2.5+theta+eps) <= 1/3, equality only at theta=1/2, eps=0", true, ""};
    for (std::uint64_t q = 1; q <= 500 && r.pass; ++q) {
      Modulus m(q);
      for (const Rational& eps : {Rational(0), Rational(1, 100), Rational(1, 6), Rational(2)}) {
        ThetaKappa tk = theta_kappa(m, eps);
        bool at_max = tk.kappa0 == Rational(1, 3);
        bool should = m.theta == Rational(1, 2) && eps == Rational(0);
        if (tk.kappa0 > Rational(1, 3) || at_max != should) {
          r.pass = false;
          std::ostringstream os;
          os << "q=" << q << " eps=" << to_string(eps) << " kappa0=" << to_string(tk.kappa0);
          r.counterexample = os.str();
          break;
        }
      }
    }
    results.push_back(std::move(r));
  }

  {
    PropertyResult r{"Goldbach: G(q,l) = l (mod q), even, >= 6, parts re-verified prime, odd q <= 99", true, ""};
    for (std::uint64_t q = 1; q <= 99 && r.pass; q += 2) {
      Modulus m(q);
      for (std::uint64_t l = 0; l < q; ++l) {
        if (q > 1 && std::gcd(l == 0 ? q : l, q) != 1) continue;
        GoldbachResult g = least_goldbach(m, l);
        bool ok = g.found() && g.n % q == l % q && g.n % 2 == 0 && g.n >= 6 && g.p + g.pp == g.n &&
                  g.p % 2 == 1 && g.pp % 2 == 1 && is_prime(g.p) && is_prime(g.pp);
        if (!ok) {
          r.pass = false;
          std::ostringstream os;
          os << "q=" << q << " l=" << l << " n=" << g.n << " p=" << g.p << " p'=" << g.pp
             << (g.found() ? "" : " (not found)");
          r.counterexample = os.str();
          break;
        }
      }
    }
    results.push_back(std::move(r));
  }

  return results;
}

std::vector<PropertyResult> verify_all(std::uint64_t seed) {
  std::vector<PropertyResult> all;
  for (auto&& batch : {verify_identities(seed), verify_oracles(seed), verify_inequalities(seed)})
    for (auto&& r : batch) all.push_back(std::move(r));
  return all;
}

}  // namespace dirsum
