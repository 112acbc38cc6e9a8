#include "dirsum/characters.hpp"

#include <numeric>
#include <random>

#include "doctest.h"
#include "dirsum/cyclotomic.hpp"

using namespace dirsum;

TEST_CASE("CharValue arithmetic stays in lowest terms and Zero absorbs") {
  CharValue a = CharValue::root(2, 8);  // -> 1/4
  CHECK(a.k == 1);
  CHECK(a.m == 4);
  CharValue b = CharValue::root(1, 4);
  CharValue c = a * b;  // 1/4 + 1/4 = 1/2
  CHECK(c.k == 1);
  CHECK(c.m == 2);
  CHECK((a * CharValue::Zero()).zero);
  CHECK(a.conj().k == 3);
  CHECK(a.conj().m == 4);
  CHECK(CharValue::one().conj() == CharValue::one());
  CHECK((CharValue::root(1, 3) * CharValue::root(2, 3)).is_one());
}

TEST_CASE("basis structure: q=1, q=5, q=8") {
  UnitGroupBasis b1{Modulus(1)};
  CHECK(b1.generators().empty());
  CHECK(b1.group_exponent() == 1);

  UnitGroupBasis b5{Modulus(5)};
  REQUIRE(b5.generators().size() == 1);
  CHECK(b5.generators()[0].order == 4);
  std::uint64_t g = b5.generators()[0].g;
  // brute-force order check
  std::uint64_t cur = g % 5, ord = 1;
  while (cur != 1) {
    cur = cur * g % 5;
    ++ord;
  }
  CHECK(ord == 4);

  UnitGroupBasis b8{Modulus(8)};
  REQUIRE(b8.generators().size() == 2);
  CHECK(b8.generators()[0].order == 2);
  CHECK(b8.generators()[1].order == 2);
}

TEST_CASE("generators generate: dlog round-trips every unit") {
  for (std::uint64_t q : {5ull, 8ull, 12ull, 16ull, 45ull, 90ull, 101ull, 128ull, 225ull}) {
    UnitGroupBasis basis{Modulus(q)};
    const auto& gens = basis.generators();
    for (std::uint64_t n = 1; n < q; ++n) {
      if (std::gcd(n, q) != 1) continue;
      auto dl = basis.dlog(n);
      std::uint64_t rebuilt = 1 % q;
      for (std::size_t i = 0; i < gens.size(); ++i)
        rebuilt = mul_mod(rebuilt, pow_mod(gens[i].g, dl[i], q), q);
      CHECK(rebuilt == n);
    }
  }
}

TEST_CASE("all_characters counts and principal first") {
  CHECK(all_characters(Modulus(1)).size() == 1);
  CHECK(all_characters(Modulus(5)).size() == 4);
  auto chars12 = all_characters(Modulus(12));
  CHECK(chars12.size() == 4);
  CHECK(chars12[0].is_principal());
  for (const auto& chi : chars12) {
    CHECK(chi.order() <= 2);  // (Z/12)* = C2 x C2: every character real
    for (std::uint64_t n = 0; n < 24; ++n) {
      CharValue v = chi.eval(n);
      if (!v.zero) CHECK(v.m <= 2);
    }
  }
}

TEST_CASE("eval: principal character, quadratic character mod 5, zero at shared factors") {
  auto chars5 = all_characters(Modulus(5));
  const auto& chi0 = chars5[0];
  for (std::uint64_t n = 1; n <= 20; ++n) {
    if (std::gcd(n, 5ull) != 1) continue;
    CHECK(chi0.eval(n).is_one());
  }
  // the quadratic character: order 2; squares {1,4} -> +1, non-squares {2,3} -> -1
  const DirichletCharacter* quad = nullptr;
  for (const auto& chi : chars5)
    if (!chi.is_principal() && chi.order() == 2) quad = &chi;
  REQUIRE(quad != nullptr);
  CHECK(quad->eval(1).is_one());
  CHECK(quad->eval(4).is_one());
  CHECK(quad->eval(2) == CharValue::root(1, 2));
  CHECK(quad->eval(3) == CharValue::root(1, 2));
  CHECK(quad->eval(5).zero);
  CHECK(quad->eval(0).zero);
}

TEST_CASE("complete multiplicativity on random triples") {
  std::mt19937_64 rng(5);
  std::vector<std::uint64_t> moduli{5, 8, 12, 36, 101, 99, 128, 243};
  for (int i = 0; i < 10000; ++i) {
    std::uint64_t q = moduli[rng() % moduli.size()];
    CharacterGroup group{Modulus(q)};
    const auto& chi = group.characters()[rng() % group.characters().size()];
    std::uint64_t m = rng() % (4 * q);
    std::uint64_t n = rng() % (4 * q);
    CHECK(chi.eval(m * n) == chi.eval(m) * chi.eval(n));
  }
}

TEST_CASE("periodicity and conjugation") {
  for (std::uint64_t q : {7ull, 9ull, 24ull, 40ull}) {
    CharacterGroup group{Modulus(q)};
    for (const auto& chi : group.characters()) {
      for (std::uint64_t n = 0; n < q; ++n) {
        CHECK(chi.eval(n) == chi.eval(n + q));
        CHECK(chi.conj().conj().eval(n) == chi.eval(n));
        CharValue prod = chi.eval(n) * chi.conj().eval(n);
        if (std::gcd(n == 0 ? q : n, q) == 1) {
          CHECK(prod.is_one());  // chi * conj(chi) = chi0 on units
        } else {
          CHECK(prod.zero);
        }
      }
    }
  }
}

TEST_CASE("orthogonality, exact, q <= 100") {
  for (std::uint64_t q = 1; q <= 100; ++q) {
    CharacterGroup group{Modulus(q)};
    auto failure = check_orthogonality(group);
    CHECK_FALSE(failure.has_value());
  }
}

TEST_CASE("orthogonality histograms cross-validated by cyclotomic reduction, q <= 40") {
  for (std::uint64_t q = 1; q <= 40; ++q) {
    CharacterGroup group{Modulus(q)};
    CharTable table(group);
    std::uint32_t M = table.order();
    std::vector<std::uint64_t> units;
    for (std::uint64_t r = 0; r < q; ++r)
      if (table.unit_index(r) >= 0) units.push_back(r);
    for (std::uint64_t m : units) {
      for (std::uint64_t l : units) {
        RootHistogram h(M);
        for (std::size_t c = 0; c < table.num_chars(); ++c) {
          std::uint32_t t = table.exponent(c, table.unit_index(m));
          std::uint32_t s = table.exponent(c, table.unit_index(l));
          h.add((t + M - s) % M);
        }
        std::int64_t expected = m == l ? static_cast<std::int64_t>(group.phi()) : 0;
        CHECK(h.equals_integer(expected));
      }
    }
  }
}

TEST_CASE("conductor examples") {
  auto chars12 = all_characters(Modulus(12));
  CHECK(conductor(chars12[0]).d == 1);  // principal

  // the mod-9 lift of the nontrivial character mod 3 has conductor 3
  CharacterGroup g9{Modulus(9)};
  bool found_lift = false;
  for (const auto& chi : g9.characters()) {
    if (chi.is_principal()) continue;
    if (chi.order() == 2) {  // unique character of order 2 mod 9 = lift of the mod-3 one
      CHECK(conductor(chi).d == 3);
      found_lift = true;
    }
  }
  CHECK(found_lift);

  // prime modulus: every non-principal character is primitive
  CharacterGroup g101{Modulus(101)};
  for (const auto& chi : g101.characters()) {
    if (chi.is_principal()) {
      CHECK(conductor(chi).d == 1);
    } else {
      CHECK(conductor(chi).d == 101);
      CHECK(is_primitive(chi));
    }
  }
}

TEST_CASE("number of primitive characters mod 12 is 1") {
  auto chars = all_characters(Modulus(12));
  int primitive = 0;
  for (const auto& chi : chars)
    if (is_primitive(chi)) ++primitive;
  CHECK(primitive == 1);
}

TEST_CASE("induced primitive character agrees on every unit, q <= 300") {
  for (std::uint64_t q = 1; q <= 300; ++q) {
    CharacterGroup group{Modulus(q)};
    for (const auto& chi : group.characters()) {
      DirichletCharacter prim = induced_primitive(chi);
      CHECK(conductor(prim).d == prim.q());  // the induced character is itself primitive
      for (std::uint64_t n = 1; n <= q; ++n) {
        if (std::gcd(n, q) != 1) continue;
        CHECK(chi.eval(n) == prim.eval(n));
      }
    }
  }
}

TEST_CASE("theta_for_character classifies by conductor, not by modulus") {
  for (const auto& chi : all_characters(Modulus(12))) CHECK(theta_for_character(chi) == Rational(1, 2));

  CharacterGroup g27{Modulus(27)};
  bool saw_primitive = false;
  for (const auto& chi : g27.characters()) {
    if (is_primitive(chi)) {
      CHECK(theta_for_character(chi) == Rational(5, 6));
      saw_primitive = true;
    }
  }
  CHECK(saw_primitive);

  // mod 54 = 2 * 27: the character of conductor 3 gets theta = 1/2 even though 27 | q
  CharacterGroup g54{Modulus(54)};
  bool saw_small_conductor = false;
  for (const auto& chi : g54.characters()) {
    std::uint64_t d = conductor(chi).d;
    if (d == 3) {
      CHECK(theta_for_character(chi) == Rational(1, 2));
      saw_small_conductor = true;
    }
    if (d == 27) CHECK(theta_for_character(chi) == Rational(5, 6));
  }
  CHECK(saw_small_conductor);
}

TEST_CASE("serialization round-trip and parse errors carry positions") {
  for (std::uint64_t q : {1ull, 5ull, 12ull, 101ull}) {
    for (const auto& chi : all_characters(Modulus(q))) {
      DirichletCharacter parsed = parse_character(chi.serialize());
      CHECK(parsed.q() == q);
      CHECK(parsed.exponents() == chi.exponents());
    }
  }
  CHECK_THROWS_WITH_AS(parse_character("x"), doctest::Contains("position 0"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(parse_character("12exps"), doctest::Contains("position 2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_character("12:exps=[9,9]"), std::invalid_argument);
  CHECK_THROWS_AS(parse_character("12:exps=[1,0] "), std::invalid_argument);
}

TEST_CASE("Pohlig-Hellman path matches table path") {
  for (std::uint64_t q : {10201ull /*101^2*/, 32768ull /*2^15*/, 94249ull /*307^2*/, 9973ull}) {
    Modulus m(q);
    UnitGroupBasis table_basis{m};
    UnitGroupBasis bsgs_basis{m, /*table_limit=*/1};
    std::mt19937_64 rng(q);
    for (int i = 0; i < 200; ++i) {
      std::uint64_t n = 1 + rng() % (q - 1);
      if (std::gcd(n, q) != 1) continue;
      CHECK(table_basis.dlog(n) == bsgs_basis.dlog(n));
    }
  }
}

TEST_CASE("character group guard trips on oversized phi") {
  CHECK_THROWS_AS(CharacterGroup{Modulus(2000003ull)}, GuardError);
}

TEST_CASE("character order divides phi(q)") {
  for (std::uint64_t q : {8ull, 20ull, 45ull, 101ull, 240ull}) {
    Modulus m(q);
    for (const auto& chi : all_characters(m)) CHECK(m.phi % chi.order() == 0);
  }
}
