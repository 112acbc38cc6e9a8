#ifndef DIRSUM_CHARACTERS_HPP
#define DIRSUM_CHARACTERS_HPP

#include <complex>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dirsum/ntcore.hpp"

namespace dirsum {

// Exactly Zero or the root of unity e^(2 pi i k/m), stored in lowest terms.
struct CharValue {
  bool zero = false;
  std::uint64_t k = 0;
  std::uint64_t m = 1;

  static CharValue Zero() { return {true, 0, 1}; }
  static CharValue root(std::uint64_t k_, std::uint64_t m_);  // reduces k/m
  static CharValue one() { return {false, 0, 1}; }

  bool is_one() const { return !zero && k == 0; }
  CharValue conj() const { return zero ? *this : root(m - k, m); }
  std::complex<double> to_complex() const;

  friend CharValue operator*(const CharValue& a, const CharValue& b);
  friend bool operator==(const CharValue& a, const CharValue& b) = default;
};

// Generator of one cyclic factor of (Z/q)*: g is a unit mod q acting only in
// its own CRT component.
struct GenEntry {
  std::uint64_t g;            // CRT-lifted generator, a unit mod q
  std::uint64_t order;        // order of the cyclic factor
  std::uint64_t prime_power;  // the p^e component this generator lives in
};

// Structure of the unit group via CRT: one generator per odd prime-power
// factor, and the <-1> x <5> pair for 2^e with e >= 3.  Discrete logs use
// per-factor lookup tables up to table_limit, Pohlig-Hellman/BSGS beyond.
class UnitGroupBasis {
 public:
  explicit UnitGroupBasis(Modulus m, std::uint64_t table_limit = 10000000);

  const Modulus& modulus() const { return m_; }
  std::uint64_t q() const { return m_.q; }
  const std::vector<GenEntry>& generators() const { return gens_; }
  std::uint64_t group_exponent() const { return exponent_; }  // lcm of orders

  // Exponent vector of the unit n with respect to the generators.
  // Throws if gcd(n, q) != 1.
  std::vector<std::uint64_t> dlog(std::uint64_t n) const;

 private:
  struct Component {
    std::uint64_t p, e, pe;
    std::uint64_t gen_local = 0;        // primitive root mod p^e (odd p)
    std::uint64_t order = 1;
    bool two_pair = false;              // 2^e, e >= 3: coords (sign, log_5)
    std::vector<std::uint32_t> table;   // dlog table when pe <= table_limit
  };

  std::uint64_t dlog_component(const Component& c, std::uint64_t r, bool second_coord) const;

  Modulus m_;
  std::uint64_t table_limit_;
  std::vector<Component> comps_;
  std::vector<int> comp_of_gen_;   // generator index -> component index
  std::vector<bool> gen_is_sign_;  // generator index -> sign coordinate of 2^e
  std::vector<GenEntry> gens_;
  std::uint64_t exponent_ = 1;
};

class DirichletCharacter {
 public:
  DirichletCharacter() = default;
  DirichletCharacter(std::shared_ptr<const UnitGroupBasis> basis, std::vector<std::uint64_t> exps);

  const UnitGroupBasis& basis() const { return *basis_; }
  std::shared_ptr<const UnitGroupBasis> basis_ptr() const { return basis_; }
  std::uint64_t q() const { return basis_->q(); }
  const std::vector<std::uint64_t>& exponents() const { return exps_; }

  bool is_principal() const;
  std::uint64_t order() const;
  DirichletCharacter conj() const;

  CharValue eval(std::uint64_t n) const;

  // Exponent t with eval(n) = e^(2 pi i t / group_exponent), or nullopt when
  // gcd(n, q) > 1.  This is what the sum kernels consume.
  std::optional<std::uint64_t> eval_exponent(std::uint64_t n) const;

  // "q:exps=[e1,e2,...]"
  std::string serialize() const;

 private:
  std::shared_ptr<const UnitGroupBasis> basis_;
  std::vector<std::uint64_t> exps_;
};

DirichletCharacter parse_character(std::string_view text);

// The full character group mod q, principal character first.
class CharacterGroup {
 public:
  static constexpr std::uint64_t kPhiGuard = 1000000;

  explicit CharacterGroup(const Modulus& m);

  const Modulus& modulus() const { return basis_->modulus(); }
  std::uint64_t q() const { return basis_->q(); }
  std::uint64_t phi() const { return basis_->modulus().phi; }
  std::shared_ptr<const UnitGroupBasis> basis() const { return basis_; }
  const std::vector<DirichletCharacter>& characters() const { return chars_; }
  const DirichletCharacter& principal() const { return chars_.front(); }

 private:
  std::shared_ptr<const UnitGroupBasis> basis_;
  std::vector<DirichletCharacter> chars_;
};

std::vector<DirichletCharacter> all_characters(const Modulus& m);

// -----------------------------------------------------------------------
// Conductor and primitivity
// -----------------------------------------------------------------------

struct Conductor {
  std::uint64_t d = 1;
  std::vector<std::uint64_t> primitive_exps;  // w.r.t. UnitGroupBasis(Modulus(d))
};

Conductor conductor(const DirichletCharacter& chi);
bool is_primitive(const DirichletCharacter& chi);
DirichletCharacter induced_primitive(const DirichletCharacter& chi);

// 1/2 when the conductor is cube-free, 5/6 otherwise.
Rational theta_for_character(const DirichletCharacter& chi);

// -----------------------------------------------------------------------
// Dense evaluation tables: exponent of chi(unit) for every character and
// every unit, plus the complex roots of unity of the group exponent.
// These feed every inner sum loop.
// -----------------------------------------------------------------------
class CharTable {
 public:
  explicit CharTable(const CharacterGroup& group);

  std::uint64_t q() const { return q_; }
  std::uint32_t order() const { return order_; }
  std::size_t num_chars() const { return nchars_; }
  std::size_t num_units() const { return nunits_; }

  // -1 when gcd(r, q) > 1.
  std::int32_t unit_index(std::uint64_t r) const { return unit_index_[r]; }
  std::uint32_t exponent(std::size_t chi, std::int32_t unit) const {
    return exp_[chi * nunits_ + static_cast<std::size_t>(unit)];
  }
  const std::complex<double>& root(std::uint32_t t) const { return roots_[t]; }

 private:
  std::uint64_t q_;
  std::uint32_t order_;
  std::size_t nchars_, nunits_;
  std::vector<std::int32_t> unit_index_;
  std::vector<std::uint32_t> exp_;
  std::vector<std::complex<double>> roots_;
};

// Exact orthogonality sweep: sum over chi of chi(m) conj(chi(l)) must equal
// phi(q)[m == l] for every unit pair, verified in integer histogram
// arithmetic.  Returns the first failing pair, or nullopt when all pass.
struct OrthogonalityFailure {
  std::uint64_t q, m, l;
};
std::optional<OrthogonalityFailure> check_orthogonality(const CharacterGroup& group);

}  // namespace dirsum

#endif  // DIRSUM_CHARACTERS_HPP
