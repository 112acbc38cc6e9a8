#include "dirsum/characters.hpp"

#include "dirsum/cyclotomic.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numbers>
#include <numeric>
#include <unordered_map>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace dirsum {

CharValue CharValue::root(std::uint64_t k_, std::uint64_t m_) {
  if (m_ == 0) throw std::invalid_argument("CharValue: zero order");
  k_ %= m_;
  std::uint64_t g = std::gcd(k_, m_);
  return {false, k_ / g, m_ / g};
}

std::complex<double> CharValue::to_complex() const {
  if (zero) return {0.0, 0.0};
  double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(m);
  return {std::cos(angle), std::sin(angle)};
}

CharValue operator*(const CharValue& a, const CharValue& b) {
  if (a.zero || b.zero) return CharValue::Zero();
  std::uint64_t g = std::gcd(a.m, b.m);
  std::uint64_t m = a.m / g * b.m;
  std::uint64_t k = (static_cast<__uint128_t>(a.k) * (b.m / g) + static_cast<__uint128_t>(b.k) * (a.m / g)) % m;
  return CharValue::root(k, m);
}

namespace {

std::uint64_t find_primitive_root(std::uint64_t p) {
  Factorization f = factorize(p - 1);
  for (std::uint64_t g = 2;; ++g) {
    bool ok = true;
    for (const auto& [r, e] : f.factors) {
      if (pow_mod(g, (p - 1) / r, p) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
}

// Baby-step giant-step in the cyclic subgroup of order n generated by base.
std::uint64_t bsgs(std::uint64_t target, std::uint64_t base, std::uint64_t n, std::uint64_t mod) {
  std::uint64_t m = static_cast<std::uint64_t>(std::ceil(std::sqrt(static_cast<double>(n))));
  std::unordered_map<std::uint64_t, std::uint64_t> baby;
  baby.reserve(m * 2);
  std::uint64_t cur = 1;
  for (std::uint64_t j = 0; j < m; ++j) {
    baby.emplace(cur, j);
    cur = mul_mod(cur, base, mod);
  }
  std::uint64_t giant = inverse_mod(pow_mod(base, m, mod), mod);
  cur = target;
  for (std::uint64_t i = 0; i <= m; ++i) {
    auto it = baby.find(cur);
    if (it != baby.end()) return i * m + it->second;
    cur = mul_mod(cur, giant, mod);
  }
  throw std::logic_error("bsgs: target not in subgroup");
}

// Pohlig-Hellman discrete log in the cyclic group <g> of order n mod `mod`.
std::uint64_t dlog_cyclic(std::uint64_t target, std::uint64_t g, std::uint64_t n, std::uint64_t mod) {
  Factorization nf = factorize(n);
  std::uint64_t x = 0, crt_mod = 1;
  std::uint64_t g_inv = inverse_mod(g, mod);
  for (const auto& [r, k] : nf.factors) {
    std::uint64_t rk = 1;
    for (int i = 0; i < k; ++i) rk *= r;
    std::uint64_t base = pow_mod(g, n / r, mod);  // order r
    std::uint64_t x_rk = 0, rj = 1;
    std::uint64_t cur = target;
    for (int j = 0; j < k; ++j) {
      std::uint64_t t = pow_mod(cur, n / (rj * r), mod);
      std::uint64_t digit = bsgs(t, base, r, mod);
      x_rk += digit * rj;
      cur = mul_mod(cur, pow_mod(g_inv, digit * rj, mod), mod);
      rj *= r;
    }
    // CRT combine x = x_rk (mod rk) into x (mod crt_mod).
    std::uint64_t inv = inverse_mod(crt_mod % rk, rk);
    std::uint64_t diff = (x_rk + rk - x % rk) % rk;
    x += crt_mod * mul_mod(diff, inv, rk);
    crt_mod *= rk;
  }
  return x;
}

// Discrete log of v in <5> mod 2^e (v = 1 mod 4), by 2-adic bit lifting.
std::uint64_t dlog_two_power(std::uint64_t v, int e, std::uint64_t pe) {
  std::uint64_t j = 0;
  std::uint64_t cur = v;
  std::uint64_t pw_inv = inverse_mod(5, pe);  // inverse of 5^(2^k), starting k=0
  for (int k = 0; k + 3 <= e; ++k) {
    if (((cur - 1) >> (k + 2)) & 1) {
      j |= 1ull << k;
      cur = mul_mod(cur, pw_inv, pe);
    }
    pw_inv = mul_mod(pw_inv, pw_inv, pe);
  }
  return j;
}

}  // namespace

UnitGroupBasis::UnitGroupBasis(Modulus m, std::uint64_t table_limit)
    : m_(std::move(m)), table_limit_(table_limit) {
  for (const auto& [p, e] : m_.fac.factors) {
    Component c;
    c.p = p;
    c.e = e;
    c.pe = 1;
    for (int i = 0; i < e; ++i) c.pe *= p;
    if (p == 2) {
      if (e == 1) continue;  // trivial unit group
      if (e == 2) {
        c.gen_local = 3;
        c.order = 2;
      } else {
        c.two_pair = true;
        c.order = c.pe / 4;  // order of <5>; the sign part has order 2
      }
    } else {
      std::uint64_t g = find_primitive_root(p);
      if (e > 1 && pow_mod(g, p - 1, p * p) == 1) g += p;
      c.gen_local = g % c.pe;
      c.order = c.pe / p * (p - 1);
    }
    if (!c.two_pair && c.pe <= table_limit_) {
      c.table.assign(c.pe, UINT32_MAX);
      std::uint64_t cur = 1;
      for (std::uint64_t i = 0; i < c.order; ++i) {
        c.table[cur] = static_cast<std::uint32_t>(i);
        cur = mul_mod(cur, c.gen_local, c.pe);
      }
    }
    comps_.push_back(std::move(c));
  }

  auto lift = [&](std::uint64_t g_local, std::uint64_t pe) -> std::uint64_t {
    if (m_.q == pe) return g_local % m_.q;
    // x = g_local (mod pe), x = 1 (mod q/pe)
    std::uint64_t rest = m_.q / pe;
    std::uint64_t k = mul_mod((g_local + pe - 1) % pe, inverse_mod(rest % pe, pe), pe);
    return (1 + rest * k) % m_.q;
  };

  for (std::size_t ci = 0; ci < comps_.size(); ++ci) {
    const Component& c = comps_[ci];
    if (c.two_pair) {
      gens_.push_back({lift(c.pe - 1, c.pe), 2, c.pe});
      comp_of_gen_.push_back(static_cast<int>(ci));
      gen_is_sign_.push_back(true);
      gens_.push_back({lift(5, c.pe), c.order, c.pe});
      comp_of_gen_.push_back(static_cast<int>(ci));
      gen_is_sign_.push_back(false);
    } else {
      gens_.push_back({lift(c.gen_local, c.pe), c.order, c.pe});
      comp_of_gen_.push_back(static_cast<int>(ci));
      gen_is_sign_.push_back(false);
    }
  }
  exponent_ = 1;
  for (const auto& g : gens_) exponent_ = std::lcm(exponent_, g.order);
}

std::uint64_t UnitGroupBasis::dlog_component(const Component& c, std::uint64_t r, bool sign_coord) const {
  if (c.two_pair) {
    bool neg = (r & 3) == 3;
    if (sign_coord) return neg ? 1 : 0;
    std::uint64_t v = neg ? c.pe - r : r;
    return dlog_two_power(v, static_cast<int>(c.e), c.pe);
  }
  if (!c.table.empty()) {
    std::uint32_t t = c.table[r];
    if (t == UINT32_MAX) throw std::invalid_argument("dlog: argument not a unit");
    return t;
  }
  return dlog_cyclic(r, c.gen_local, c.order, c.pe);
}

std::vector<std::uint64_t> UnitGroupBasis::dlog(std::uint64_t n) const {
  std::uint64_t r = n % m_.q;
  if (std::gcd(r == 0 ? m_.q : r, m_.q) != 1) throw std::invalid_argument("dlog: argument not a unit");
  std::vector<std::uint64_t> out(gens_.size());
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    const Component& c = comps_[comp_of_gen_[i]];
    out[i] = dlog_component(c, r % c.pe, gen_is_sign_[i]);
  }
  return out;
}

DirichletCharacter::DirichletCharacter(std::shared_ptr<const UnitGroupBasis> basis,
                                       std::vector<std::uint64_t> exps)
    : basis_(std::move(basis)), exps_(std::move(exps)) {
  if (exps_.size() != basis_->generators().size())
    throw std::invalid_argument("DirichletCharacter: exponent vector length mismatch");
  for (std::size_t i = 0; i < exps_.size(); ++i)
    if (exps_[i] >= basis_->generators()[i].order)
      throw std::invalid_argument("DirichletCharacter: exponent out of range");
}

bool DirichletCharacter::is_principal() const {
  return std::all_of(exps_.begin(), exps_.end(), [](std::uint64_t e) { return e == 0; });
}

std::uint64_t DirichletCharacter::order() const {
  std::uint64_t ord = 1;
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    std::uint64_t gi = basis_->generators()[i].order;
    ord = std::lcm(ord, gi / std::gcd(gi, exps_[i]));
  }
  return ord;
}

DirichletCharacter DirichletCharacter::conj() const {
  std::vector<std::uint64_t> e(exps_.size());
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    std::uint64_t gi = basis_->generators()[i].order;
    e[i] = exps_[i] == 0 ? 0 : gi - exps_[i];
  }
  return DirichletCharacter(basis_, std::move(e));
}

std::optional<std::uint64_t> DirichletCharacter::eval_exponent(std::uint64_t n) const {
  std::uint64_t q = basis_->q();
  std::uint64_t r = n % q;
  if (q > 1 && std::gcd(r == 0 ? q : r, q) != 1) return std::nullopt;
  std::uint64_t M = basis_->group_exponent();
  auto dl = basis_->dlog(r);
  std::uint64_t t = 0;
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    std::uint64_t w = M / basis_->generators()[i].order;
    t = (t + mul_mod(mul_mod(exps_[i], dl[i], M), w, M)) % M;
  }
  return t;
}

CharValue DirichletCharacter::eval(std::uint64_t n) const {
  auto t = eval_exponent(n);
  if (!t) return CharValue::Zero();
  return CharValue::root(*t, basis_->group_exponent());
}

std::string DirichletCharacter::serialize() const {
  std::string s = std::to_string(q()) + ":exps=[";
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(exps_[i]);
  }
  return s + "]";
}

DirichletCharacter parse_character(std::string_view text) {
  auto fail = [&](std::size_t pos, const std::string& why) {
    throw std::invalid_argument("character parse error at position " + std::to_string(pos) + ": " + why);
  };
  std::size_t i = 0;
  auto read_uint = [&]() -> std::uint64_t {
    if (i >= text.size() || text[i] < '0' || text[i] > '9') fail(i, "expected digit");
    std::uint64_t v = 0;
    while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
      if (v > (UINT64_MAX - 9) / 10) fail(i, "number too large");
      v = v * 10 + static_cast<std::uint64_t>(text[i] - '0');
      ++i;
    }
    return v;
  };
  std::uint64_t q = read_uint();
  if (q == 0) fail(0, "modulus must be >= 1");
  constexpr std::string_view kSep = ":exps=[";
  if (text.substr(i, kSep.size()) != kSep) fail(i, "expected ':exps=['");
  i += kSep.size();
  std::vector<std::uint64_t> exps;
  if (i < text.size() && text[i] != ']') {
    while (true) {
      exps.push_back(read_uint());
      if (i < text.size() && text[i] == ',') {
        ++i;
        continue;
      }
      break;
    }
  }
  if (i >= text.size() || text[i] != ']') fail(i, "expected ']'");
  if (i + 1 != text.size()) fail(i + 1, "trailing characters");
  auto basis = std::make_shared<UnitGroupBasis>(Modulus(q));
  if (exps.size() != basis->generators().size())
    fail(text.find('[') + 1, "expected " + std::to_string(basis->generators().size()) +
                                 " exponents for q=" + std::to_string(q));
  for (std::size_t g = 0; g < exps.size(); ++g)
    if (exps[g] >= basis->generators()[g].order)
      fail(text.find('[') + 1, "exponent " + std::to_string(exps[g]) + " out of range for generator " +
                                   std::to_string(g) + " (order " +
                                   std::to_string(basis->generators()[g].order) + ")");
  return DirichletCharacter(std::move(basis), std::move(exps));
}

CharacterGroup::CharacterGroup(const Modulus& m) {
  if (m.phi > kPhiGuard)
    throw GuardError("character group guard: phi(" + std::to_string(m.q) + ") = " + std::to_string(m.phi) +
                     " exceeds " + std::to_string(kPhiGuard));
  basis_ = std::make_shared<UnitGroupBasis>(m);
  const auto& gens = basis_->generators();
  chars_.reserve(m.phi);
  std::vector<std::uint64_t> exps(gens.size(), 0);
  while (true) {
    chars_.emplace_back(basis_, exps);
    bool wrapped = true;
    for (std::size_t i = gens.size(); i-- > 0;) {
      if (++exps[i] < gens[i].order) {
        wrapped = false;
        break;
      }
      exps[i] = 0;
    }
    if (wrapped) break;
  }
  assert(chars_.size() == m.phi);
}

std::vector<DirichletCharacter> all_characters(const Modulus& m) {
  return CharacterGroup(m).characters();
}

Conductor conductor(const DirichletCharacter& chi) {
  const UnitGroupBasis& basis = chi.basis();
  const auto& gens = basis.generators();
  const auto& exps = chi.exponents();
  std::uint64_t d = 1;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    std::uint64_t pe = gens[i].prime_power;
    Factorization pf = factorize(pe);
    std::uint64_t p = pf.factors[0].prime;
    int e = pf.factors[0].exponent;
    std::uint64_t a = exps[i];
    if (p == 2 && gens[i].order == 2 && (pe == 4 || gens[i].g % pe == pe - 1)) {
      // sign coordinate of 2^e (or the single generator of 2^2)
      if (a == 1 && d % 4 != 0) d *= 4;
      continue;
    }
    if (a == 0) continue;
    if (p == 2) {
      // <5> coordinate: level 2^(e - v2(a)), at least 8
      int v = 0;
      std::uint64_t t = a;
      while ((t & 1) == 0) {
        t >>= 1;
        ++v;
      }
      int f = e - v;
      std::uint64_t lvl = 1ull << f;
      // may supersede a sign-only level of 4
      if (d % 4 == 0) d /= 4;
      d *= lvl;
    } else {
      int v = 0;
      std::uint64_t t = a;
      while (t % p == 0 && v < e - 1) {
        t /= p;
        ++v;
      }
      int f = e - v;
      for (int j = 0; j < f; ++j) d *= p;
    }
  }

  Conductor result;
  result.d = d;
  if (d == 1) return result;
  UnitGroupBasis dbasis{Modulus(d)};
  const auto& dgens = dbasis.generators();
  result.primitive_exps.resize(dgens.size());
  std::uint64_t q = basis.q();
  for (std::size_t j = 0; j < dgens.size(); ++j) {
    // Lift the mod-d generator to a unit mod q; the induced character's value
    // on it is chi of any such lift.
    std::uint64_t n = dgens[j].g;
    while (std::gcd(n, q) != 1) n += d;
    CharValue v = chi.eval(n);
    assert(!v.zero);
    std::uint64_t ord = dgens[j].order;
    if (ord % v.m != 0) throw std::logic_error("conductor: value order does not divide generator order");
    result.primitive_exps[j] = mul_mod(v.k, ord / v.m, ord);
  }
  return result;
}

bool is_primitive(const DirichletCharacter& chi) { return conductor(chi).d == chi.q(); }

DirichletCharacter induced_primitive(const DirichletCharacter& chi) {
  Conductor c = conductor(chi);
  auto basis = std::make_shared<UnitGroupBasis>(Modulus(c.d));
  return DirichletCharacter(std::move(basis), std::move(c.primitive_exps));
}

Rational theta_for_character(const DirichletCharacter& chi) {
  Modulus d(conductor(chi).d);
  return d.cube_free ? Rational(1, 2) : Rational(5, 6);
}

CharTable::CharTable(const CharacterGroup& group) : q_(group.q()) {
  const auto& chars = group.characters();
  nchars_ = chars.size();
  nunits_ = group.phi();
  if (nunits_ > 4096)
    throw GuardError("CharTable guard: phi(" + std::to_string(q_) + ") = " + std::to_string(nunits_) +
                     " exceeds dense-table limit 4096");
  order_ = static_cast<std::uint32_t>(group.basis()->group_exponent());

  unit_index_.assign(q_, -1);
  std::vector<std::uint64_t> units;
  units.reserve(nunits_);
  for (std::uint64_t r = 0; r < q_; ++r) {
    std::uint64_t g = std::gcd(r == 0 ? q_ : r, q_);
    if (q_ == 1 || g == 1) {
      unit_index_[r] = static_cast<std::int32_t>(units.size());
      units.push_back(r);
    }
  }

  const UnitGroupBasis& basis = *group.basis();
  const auto& gens = basis.generators();
  std::vector<std::vector<std::uint64_t>> dlogs(nunits_);
  for (std::size_t u = 0; u < nunits_; ++u) dlogs[u] = basis.dlog(units[u]);

  exp_.assign(nchars_ * nunits_, 0);
  for (std::size_t c = 0; c < nchars_; ++c) {
    const auto& exps = chars[c].exponents();
    std::vector<std::uint64_t> w(gens.size());
    for (std::size_t i = 0; i < gens.size(); ++i)
      w[i] = mul_mod(exps[i], order_ / gens[i].order, order_);
    for (std::size_t u = 0; u < nunits_; ++u) {
      std::uint64_t t = 0;
      for (std::size_t i = 0; i < gens.size(); ++i) t = (t + w[i] * dlogs[u][i]) % order_;
      exp_[c * nunits_ + u] = static_cast<std::uint32_t>(t);
    }
  }

  roots_.resize(order_);
  for (std::uint32_t t = 0; t < order_; ++t) {
    double angle = 2.0 * std::numbers::pi * t / order_;
    roots_[t] = {std::cos(angle), std::sin(angle)};
  }
}

std::optional<OrthogonalityFailure> check_orthogonality(const CharacterGroup& group) {
  CharTable table(group);
  std::uint64_t q = group.q();
  std::size_t nu = table.num_units();
  std::uint32_t M = table.order();
  std::int64_t phi = static_cast<std::int64_t>(group.phi());

  std::vector<std::uint64_t> unit_of_index(nu);
  for (std::uint64_t r = 0; r < q; ++r)
    if (table.unit_index(r) >= 0) unit_of_index[table.unit_index(r)] = r;

  bool failed = false;
  OrthogonalityFailure first{};
#ifdef _OPENMP
#pragma omp parallel
#endif
  {
    std::vector<std::int64_t> hist(M, 0);
#ifdef _OPENMP
#pragma omp for schedule(dynamic)
#endif
    for (std::int64_t um = 0; um < static_cast<std::int64_t>(nu); ++um) {
      if (failed) continue;
      for (std::size_t ul = 0; ul < nu; ++ul) {
        std::fill(hist.begin(), hist.end(), 0);
        for (std::size_t c = 0; c < table.num_chars(); ++c) {
          std::uint32_t t = table.exponent(c, static_cast<std::int32_t>(um));
          std::uint32_t s = table.exponent(c, static_cast<std::int32_t>(ul));
          ++hist[(t + M - s) % M];
        }
        bool ok;
        if (static_cast<std::size_t>(um) == ul) {
          ok = hist[0] == phi;
          for (std::uint32_t t = 1; ok && t < M; ++t) ok = hist[t] == 0;
        } else {
          ok = balanced_cycle_is_zero(hist, M);
        }
        if (!ok) {
#ifdef _OPENMP
#pragma omp critical
#endif
          {
            if (!failed) {
              failed = true;
              first = {q, unit_of_index[um], unit_of_index[ul]};
            }
          }
          break;
        }
      }
    }
  }
  if (failed) return first;
  return std::nullopt;
}

}  // namespace dirsum
