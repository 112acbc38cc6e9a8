#include "dirsum/pi2.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "dirsum/cyclotomic.hpp"
#include "dirsum/format.hpp"

namespace dirsum {

Pi2Instance::Pi2Instance(Modulus m_, std::uint64_t x1_, std::uint64_t x2_, std::int64_t a_, std::uint64_t l_)
    : m(std::move(m_)), x1(x1_), x2(x2_), a(a_), l(l_) {
  std::uint64_t q = m.q;
  if (l >= q) throw std::invalid_argument("Pi2Instance: requires 0 <= l < q");
  std::uint64_t an = shift_mod_q();
  if (q > 1 && std::gcd(an == 0 ? q : an, q) != 1)
    throw std::invalid_argument("Pi2Instance: requires gcd(a, q) = 1");
  if (q > 1 && std::gcd(l == 0 ? q : l, q) != 1)
    throw std::invalid_argument("Pi2Instance: requires gcd(l, q) = 1");
}

std::uint64_t Pi2Instance::shift_mod_q() const {
  std::int64_t q = static_cast<std::int64_t>(m.q);
  return static_cast<std::uint64_t>(((a % q) + q) % q);
}

std::int64_t pi2_exact_from_tables(const ResidueCountTable& t1, const ResidueCountTable& t2,
                                   const Modulus& m, std::int64_t a, std::uint64_t l) {
  std::uint64_t q = m.q;
  std::uint64_t an = static_cast<std::uint64_t>(((a % static_cast<std::int64_t>(q)) + static_cast<std::int64_t>(q))) % q;
  std::int64_t total = 0;
  for (std::uint64_t r1 = 0; r1 < q; ++r1) {
    if (q > 1 && std::gcd(r1 == 0 ? q : r1, q) != 1) continue;
    if (t1.counts[r1] == 0) continue;
    // p2 + a = l * r1^{-1} (mod q)
    std::uint64_t s = (mul_mod(l, inverse_mod(r1, q), q) + q - an) % q;
    total += checked_mul(t1.counts[r1], t2.counts[s]);
  }
  return total;
}

std::int64_t pi2_exact(const Pi2Instance& inst) {
  if (inst.x1 < 2 || inst.x2 < 2) return 0;
  ResidueCountTable t1 = residue_counts(inst.x1, inst.m.q);
  ResidueCountTable t2 = residue_counts(inst.x2, inst.m.q);
  return pi2_exact_from_tables(t1, t2, inst.m, inst.a, inst.l);
}

std::int64_t pi2_bruteforce(const Pi2Instance& inst) {
  if (inst.x1 < 2 || inst.x2 < 2) return 0;
  if (static_cast<__uint128_t>(inst.x1) * inst.x2 > 1000000000ull)
    throw GuardError("pi2_bruteforce guard: x1*x2 exceeds 1e9");
  std::uint64_t q = inst.m.q;
  std::uint64_t an = inst.shift_mod_q();
  auto p1s = primes_up_to(inst.x1);
  auto p2s = primes_up_to(inst.x2);
  std::int64_t count = 0;
  for (std::uint64_t p1 : p1s) {
    std::uint64_t r1 = p1 % q;
    for (std::uint64_t p2 : p2s) {
      std::uint64_t s = (p2 % q + an) % q;
      if (mul_mod(r1, s, q) == inst.l % q) ++count;
    }
  }
  return count;
}

MainTerm main_term(const Pi2Instance& inst) {
  MainTerm out;
  for (const auto& [p, e] : inst.m.fac.factors)
    if (p == 2) out.vanishes = true;
  if (inst.x1 < 2 || inst.x2 < 2) return out;
  double product = 1.0;
  for (const auto& [p, e] : inst.m.fac.factors)
    product *= 1.0 - 1.0 / (static_cast<double>(p) - 1.0);
  out.value = product / static_cast<double>(inst.m.phi) * log_integral(static_cast<double>(inst.x1)) *
              log_integral(static_cast<double>(inst.x2));
  return out;
}

Decomposition char_decomposition(const Pi2Instance& inst, SumMode mode) {
  CharacterGroup group(inst.m);
  CharSumPlan plan(group);
  auto P = char_sums_over_primes(plan, inst.x1, 0, mode);
  auto T1 = char_sums_over_primes(plan, inst.x2, inst.a, mode);
  std::uint32_t M = plan.order();
  std::int32_t ul = plan.unit_index(inst.l % inst.m.q);

  Decomposition d;
  double inv_phi = 1.0 / static_cast<double>(inst.m.phi);
  d.M2 = inv_phi * T1[0].value().real() * P[0].value().real();
  std::complex<double> r2{0.0, 0.0};
  for (std::size_t c = 1; c < plan.num_chars(); ++c) {
    std::uint32_t s = (M - plan.exponent(c, ul)) % M;
    r2 += T1[c].value() * plan.root(s) * P[c].value();
  }
  d.R2 = inv_phi * r2;
  return d;
}

bool decomposition_identity_exact(const Pi2Instance& inst) {
  CharacterGroup group(inst.m);
  CharSumPlan plan(group);
  auto P = char_sums_over_primes(plan, inst.x1, 0, SumMode::kExactHistogram);
  auto T1 = char_sums_over_primes(plan, inst.x2, inst.a, SumMode::kExactHistogram);
  std::uint32_t M = plan.order();
  std::int32_t ul = plan.unit_index(inst.l % inst.m.q);

  RootHistogram total(M);
  for (std::size_t c = 0; c < plan.num_chars(); ++c) {
    std::uint32_t s = (M - plan.exponent(c, ul)) % M;
    for (std::uint32_t t1 = 0; t1 < M; ++t1) {
      std::int64_t w1 = T1[c].count_at(t1);
      if (w1 == 0) continue;
      for (std::uint32_t t2 = 0; t2 < M; ++t2) {
        std::int64_t w2 = P[c].count_at(t2);
        if (w2 == 0) continue;
        total.add((t1 + t2 + s) % M, checked_mul(w1, w2));
      }
    }
  }
  std::int64_t expected = checked_mul(static_cast<std::int64_t>(inst.m.phi), pi2_exact(inst));
  return total.equals_integer(expected);
}

T1Check t1_chi0_check(std::uint64_t x2, std::int64_t a, const Modulus& m) {
  std::uint64_t q = m.q;
  std::int64_t an = ((a % static_cast<std::int64_t>(q)) + static_cast<std::int64_t>(q)) % static_cast<std::int64_t>(q);
  if (q > 1 && std::gcd(an == 0 ? q : static_cast<std::uint64_t>(an), q) != 1)
    throw std::invalid_argument("t1_chi0_check: requires gcd(a, q) = 1");
  T1Check out;
  if (x2 < 2) return out;

  ResidueCountTable table = residue_counts(x2, q);
  for (std::uint64_t r = 0; r < q; ++r) {
    std::uint64_t s = (r + static_cast<std::uint64_t>(an)) % q;
    if (q == 1 || std::gcd(s == 0 ? q : s, q) == 1) out.direct += table.counts[r];
  }

  for (std::uint64_t d : divisors(q)) {
    int mu = moebius(d);
    if (mu == 0) continue;
    // -a mod d, kept canonical in [0, d)
    std::uint64_t ad = static_cast<std::uint64_t>(an) % d;
    std::uint64_t target = (d - ad) % d;
    std::int64_t cnt = 0;
    for (std::uint64_t r = target; r < q; r += d) cnt += table.counts[r];
    out.incl_excl += mu * cnt;
  }
  return out;
}

RemainderDiagnostics remainder_diagnostics(const Pi2Instance& inst, double A) {
  RemainderDiagnostics out;
  std::int64_t exact = pi2_exact(inst);
  MainTerm mt = main_term(inst);
  out.abs_err = std::abs(static_cast<double>(exact) - mt.value);
  double lx1 = std::log(static_cast<double>(inst.x1));
  double lx2 = std::log(static_cast<double>(inst.x2));
  double L = std::log(static_cast<double>(inst.m.q));
  out.target = static_cast<double>(inst.x1) * static_cast<double>(inst.x2) /
               (static_cast<double>(inst.m.phi) * lx1 * lx2 * std::pow(L, A));
  out.ratio = out.abs_err / out.target;
  double lx1q = lx1 + L;
  out.delta_budget = std::pow(lx1q, 33.0) * lx1 * lx2 * std::exp(-0.6 * std::sqrt(L));
  return out;
}

BrunTitchmarsh brun_titchmarsh_check(const ResidueCountTable& table, const Modulus& m, std::uint64_t a) {
  std::uint64_t q = m.q;
  if (q > 1 && std::gcd(a == 0 ? q : a, q) != 1)
    throw std::invalid_argument("brun_titchmarsh_check: requires gcd(a, q) = 1");
  if (q > table.x) throw std::invalid_argument("brun_titchmarsh_check: requires q <= x");
  BrunTitchmarsh out;
  out.lhs = table.counts[a % q];
  double x = static_cast<double>(table.x);
  out.rhs = 2.0 * x / (static_cast<double>(m.phi) * std::log(2.0 * x / static_cast<double>(q)));
  out.holds = static_cast<double>(out.lhs) <= out.rhs;
  return out;
}

BrunTitchmarsh brun_titchmarsh_check(std::uint64_t x, const Modulus& m, std::uint64_t a) {
  if (m.q > x) throw std::invalid_argument("brun_titchmarsh_check: requires q <= x");
  ResidueCountTable table = residue_counts(x, m.q);
  return brun_titchmarsh_check(table, m, a);
}

GoldbachResult least_goldbach(const Modulus& m, std::uint64_t l) {
  std::uint64_t q = m.q;
  if (l >= q) throw std::invalid_argument("least_goldbach: requires 0 <= l < q");
  GoldbachResult out;
  out.cap = checked_mul(checked_mul(static_cast<std::int64_t>(q), static_cast<std::int64_t>(q)), 64);
  if (q % 2 == 0 && l % 2 != 0) {
    out.status = GoldbachStatus::kNoEvenCandidates;
    return out;
  }

  // First even candidate >= 6 congruent to l mod q; step q (even q) or 2q.
  std::uint64_t n = l == 0 ? q : l;
  std::uint64_t step = q % 2 == 0 ? q : 2 * q;
  while (n < 6 || n % 2 != 0) n += q;

  std::vector<std::uint64_t> small_primes = simple_primes_up_to(4096);
  for (; n <= out.cap; n += step) {
    for (std::size_t i = 1; i < small_primes.size() && small_primes[i] + 3 <= n; ++i) {
      std::uint64_t p = small_primes[i];  // odd primes only (skip 2)
      std::uint64_t rest = n - p;
      if (rest >= 3 && rest % 2 == 1 && is_prime(rest)) {
        out.status = GoldbachStatus::kFound;
        out.n = n;
        out.p = p;
        out.pp = rest;
        return out;
      }
    }
  }
  out.status = GoldbachStatus::kCapExhausted;
  return out;
}

std::vector<JutilaRow> jutila_ratio_scan(std::vector<std::uint64_t> qs) {
  std::sort(qs.begin(), qs.end());
  std::vector<JutilaRow> rows;
  for (std::uint64_t q : qs) {
    JutilaRow row;
    row.q = q;
    row.odd_prime = q > 2 && is_prime(q);
    if (!row.odd_prime) {
      row.note = "skipped: not an odd prime";
      rows.push_back(row);
      continue;
    }
    Modulus m(q);
    double scale = std::pow(static_cast<double>(q), 11.0 / 8.0);
    for (std::uint64_t l = 1; l < q; ++l) {
      GoldbachResult g = least_goldbach(m, l);
      if (!g.found()) {
        row.note = "cap exhausted at l=" + std::to_string(l);
        continue;
      }
      double ratio = static_cast<double>(g.n) / scale;
      if (ratio > row.max_ratio) {
        row.max_ratio = ratio;
        row.argmax_l = l;
      }
    }
    rows.push_back(row);
  }
  return rows;
}

Pi2Report pi2_report(const Pi2Instance& inst, double A, const Rational& eps, SumMode mode) {
  Pi2Report rep;
  rep.exact = pi2_exact(inst);
  rep.main = main_term(inst);
  rep.decomp = char_decomposition(inst, mode);
  rep.ratio = static_cast<double>(rep.exact) / rep.main.value;
  rep.theta = inst.m.theta;

  double x = static_cast<double>(inst.x1) * static_cast<double>(inst.x2);
  double lnx = std::log(x);
  double lnq = std::log(static_cast<double>(inst.m.q));
  double alpha = std::log(static_cast<double>(inst.x2)) / lnx;
  Rational kappa0 = theta_kappa(inst.m, eps).kappa0;
  bool q_ok = lnq <= boost::rational_cast<double>(kappa0) * lnx;
  double lo = boost::rational_cast<double>(inst.m.theta + eps) * lnq / lnx;
  double hi = 1.0 - 2.5 * lnq / lnx;
  rep.window_ok = q_ok && alpha >= lo && alpha <= hi;
  rep.delta_budget = remainder_diagnostics(inst, A).delta_budget;
  return rep;
}

std::string pi2_report_json(const Pi2Instance& inst, const Pi2Report& rep) {
  std::string s = "{";
  auto field = [&s](const std::string& k, const std::string& v, bool last = false) {
    s += "\"" + k + "\": " + v + (last ? "" : ", ");
  };
  field("quantity", "\"pi2\"");
  field("q", std::to_string(inst.m.q));
  field("x1", std::to_string(inst.x1));
  field("x2", std::to_string(inst.x2));
  field("a", std::to_string(inst.a));
  field("l", std::to_string(inst.l));
  field("exact", std::to_string(rep.exact));
  field("main_term", format_real(rep.main.value));
  field("M2", format_real(rep.decomp.M2));
  field("R2_re", format_real(rep.decomp.R2.real()));
  field("R2_im", format_real(rep.decomp.R2.imag()));
  field("ratio", format_real(rep.ratio));
  field("window_ok", rep.window_ok ? "true" : "false");
  field("theta", "\"" + to_string(rep.theta) + "\"");
  field("delta_budget", format_real(rep.delta_budget), true);
  s += "}";
  return s;
}

}  // namespace dirsum
