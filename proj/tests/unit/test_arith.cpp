#include "doctest.h"

#include "../support/oracles.hpp"
#include "pcswave/cyclotomic.hpp"
#include "pcswave/error.hpp"
#include "pcswave/multi_index.hpp"
#include "pcswave/rational.hpp"

#include <random>

using namespace pcs;

TEST_CASE("rational arithmetic stays in lowest terms") {
  const Rational a(6, -8);
  CHECK(a.str() == "-3/4");
  CHECK((a + Rational(3, 4)).is_zero());
  CHECK((Rational(1, 3) * Rational(3)).str() == "1");
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(pow(Rational(2, 3), 3) == Rational(8, 27));
  CHECK(Rational::parse("-30/81") == Rational(-10, 27));
  CHECK(Rational::parse("7") == Rational(7));
}

TEST_CASE("rational errors") {
  CHECK_THROWS_AS(Rational(1) / Rational(0), Error);
  CHECK_THROWS_AS(Rational::parse("1/0"), Error);
  CHECK_THROWS_AS(Rational::parse("abc"), Error);
  CHECK_THROWS_AS(Rational::parse(""), Error);
  try {
    Rational::parse("x/2");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ParseError);
  }
}

TEST_CASE("multi-index helpers") {
  const MultiIndex a{3, -6};
  CHECK(a.divisible_by(3));
  CHECK(a.divided_by(3) == MultiIndex{1, -2});
  CHECK(!MultiIndex{1, 3}.divisible_by(3));
  CHECK((2 * a) == MultiIndex{6, -12});
  CHECK(a.dot(MultiIndex{1, 1}) == -3);
  CHECK(mod_floor(-1, 3) == 2);
  CHECK(a.str() == "(3,-6)");
}

TEST_CASE("primality") {
  CHECK(is_prime(2));
  CHECK(is_prime(3));
  CHECK(is_prime(97));
  CHECK(!is_prime(1));
  CHECK(!is_prime(4));
  CHECK(!is_prime(91));
  CHECK_THROWS_AS(Cyclotomic(4), Error);
  CHECK_THROWS_AS(cyc_root(6, 1), Error);
}

TEST_CASE("roots of unity") {
  for (std::int64_t p : {2, 3, 5, 7}) {
    CAPTURE(p);
    const Cyclotomic one = Cyclotomic::constant(p, Rational(1));
    Cyclotomic sum(p);
    Cyclotomic prod = one;
    for (std::int64_t e = 0; e < p; ++e) {
      Cyclotomic r = cyc_root(p, e);
      Cyclotomic pw = one;
      for (std::int64_t j = 0; j < p; ++j) pw = pw * r;
      CHECK(pw == one);
      sum += r;
      prod = prod * r;
    }
    CHECK(sum.is_zero());
    CHECK(prod == Cyclotomic::constant(p, Rational(p == 2 ? -1 : 1)));
    CHECK(cyc_root(p, -1) == cyc_root(p, p - 1));
  }
}

TEST_CASE("cyclotomic field axioms on random elements") {
  std::mt19937 rng(7);
  for (std::int64_t p : {2, 3, 5, 7}) {
    auto rnd = [&] {
      std::vector<Rational> c;
      for (std::int64_t j = 0; j < p; ++j) c.push_back(oracle::random_rational(rng));
      return Cyclotomic(p, c);
    };
    for (int trial = 0; trial < 20; ++trial) {
      const auto a = rnd(), b = rnd(), c = rnd();
      CHECK(a * b == b * a);
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK((a - a).is_zero());
      CHECK(cyc_mul(a, Cyclotomic::constant(p, Rational(1))) == a);
      // numeric embedding agrees
      const auto z = oracle::to_complex(a * b);
      const auto w = oracle::to_complex(a) * oracle::to_complex(b);
      CHECK(std::abs(z - w) < 1e-9);
    }
  }
}

TEST_CASE("canonical form makes equality structural") {
  // 1 + zeta + zeta^2 = 0 for p = 3
  Cyclotomic a(3, {Rational(1), Rational(1), Rational(1)});
  CHECK(a.is_zero());
  Cyclotomic b(3, {Rational(2), Rational(1), Rational(0)});
  Cyclotomic c(3, {Rational(3), Rational(2), Rational(1)});
  CHECK(b == c);
  CHECK(c.coeffs().back().is_zero());
}
