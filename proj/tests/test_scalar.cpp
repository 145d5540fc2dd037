#include <doctest.h>

#include <random>
#include <vector>

#include "courant/scalar.hpp"

using namespace courant;

namespace {

Scalar P(const char* text, int n = 3) { return parse_scalar(text, n); }

Scalar random_fraction(std::uint64_t seed, int n = 3) {
  Polynomial num = random_polynomial(n, 2, seed);
  Polynomial den = random_polynomial(n, 1, seed * 7 + 3);
  return Scalar::fraction(num, den);
}

std::vector<Rational> random_point(std::mt19937_64& rng, int n) {
  std::vector<Rational> p;
  for (int i = 0; i < n; ++i) {
    p.emplace_back(static_cast<long>(rng() % 11) - 5,
                   static_cast<unsigned long>(rng() % 4) + 1);
    p.back().canonicalize();
  }
  return p;
}

}  // namespace

TEST_CASE("monomial order is graded lex") {
  Monomial x1 = Monomial::variable(0);
  Monomial x2 = Monomial::variable(1);
  CHECK(x1 > x2);
  CHECK(x2 * x2 > x1);
  CHECK(x1 * x2 > x2 * x2);
  CHECK((x1 * x2 * x2).exponent(1) == 2);
  CHECK((x1 * x2 * x2).degree() == 3);
  CHECK(monomials_up_to(2, 2).size() == 6);
  CHECK(monomials_up_to(3, 3).size() == 20);
  CHECK(monomials_up_to(0, 4).size() == 1);
}

TEST_CASE("canonical form cancels common factors") {
  CHECK(P("(x1^2 - 1)/(x1 - 1)") == P("x1 + 1"));
  CHECK(P("(x1^2 - 1)/(x1 - 1)").is_polynomial());
  Scalar s = P("(x1*x2 + x2)/(2*x1^2 + 4*x1 + 2)");
  CHECK(s.numerator() == P("x2/2").numerator());
  CHECK(s.denominator() == P("x1 + 1").numerator());
  CHECK(s.denominator().leading().coeff == 1);
  CHECK(P("x1/x1") == Scalar(1));
  CHECK(P("(x1 - x2)/(x2 - x1)") == Scalar(-1));
  CHECK(P("0/(x1 + 1)").is_zero());
}

TEST_CASE("multivariate gcd") {
  Polynomial a = P("(x1 + x2)^2*(x1 - 3)").numerator();
  Polynomial b = P("(x1 + x2)*(x2^2 + 1)*x3").numerator();
  CHECK(gcd(a, b) == P("x1 + x2").numerator());
  Polynomial c = P("(x1*x3 - x2^2)*(x3 + 1)^2").numerator();
  Polynomial d = P("(x1*x3 - x2^2)^2*(x3 - 1)").numerator();
  CHECK(gcd(c, d) == P("x1*x3 - x2^2").numerator());
  CHECK(gcd(P("x1^2*x2").numerator(), P("x1*x2^3 + x1^2").numerator()) ==
        P("x1").numerator());
  CHECK(gcd(P("3*x1 + 6").numerator(), Polynomial()) == P("x1 + 2").numerator());
}

TEST_CASE("derivatives match hand computations") {
  CHECK(P("x1^3*x2 + 5*x2").derivative(0) == P("3*x1^2*x2"));
  CHECK(P("1/(x1^2 + 1)").derivative(0) == P("-2*x1/(x1^2 + 1)^2"));
  CHECK(P("x2/x1").derivative(1) == P("1/x1"));
  CHECK(P("7").derivative(2).is_zero());
}

TEST_CASE("evaluation") {
  std::vector<Rational> pt{Rational(1, 2), Rational(3), Rational(-1)};
  CHECK(P("x1*x2 + x3").evaluate(pt) == Rational(1, 2));
  CHECK(P("1/(x2 - 3)").derivative(0).evaluate(pt) == 0);
  CHECK_THROWS_AS(P("1/(x2 - 3)").evaluate(pt), DomainError);
  std::vector<Rational> short_pt{Rational(1)};
  CHECK_THROWS_AS(P("x2").evaluate(short_pt), DomainError);
}

TEST_CASE("parser") {
  CHECK(P("x1 + x2 - 1/3") == Scalar(Polynomial::variable(0)) +
                                   Scalar::variable(1) - Scalar(Rational(1, 3)));
  CHECK(P("-x1^2") == -(Scalar::variable(0) * Scalar::variable(0)));
  CHECK(P("2^3") == Scalar(8));
  CHECK(P("x1^-1") == Scalar(1) / Scalar::variable(0));
  CHECK_THROWS_AS(parse_scalar("x3", 2), ParseError);
  CHECK_THROWS_AS(parse_scalar("x0", 2), ParseError);
  CHECK_THROWS_AS(parse_scalar("y", 2), ParseError);
  CHECK_THROWS_AS(parse_scalar("(x1", 2), ParseError);
  CHECK_THROWS_AS(parse_scalar("x1/0", 2), ParseError);
  CHECK_THROWS_AS(parse_scalar("", 2), ParseError);
}

TEST_CASE("random polynomials are seeded and bounded") {
  CHECK(random_polynomial(3, 2, 11) == random_polynomial(3, 2, 11));
  CHECK(random_polynomial(3, 0, 5).is_constant());
  for (std::uint64_t s = 0; s < 50; ++s) {
    Polynomial p = random_polynomial(2, 3, s);
    CHECK_FALSE(p.is_zero());
    CHECK(p.total_degree() <= 3);
  }
}

TEST_CASE("property: field laws, canonical uniqueness") {
  for (std::uint64_t s = 1; s <= 40; ++s) {
    Scalar a = random_fraction(s);
    Scalar b = random_fraction(s + 1000);
    Scalar c = random_fraction(s + 2000);
    CHECK((a + b) - b == a);
    CHECK(a * (b + c) == a * b + a * c);
    if (!b.is_zero()) {
      CHECK((a * b) / b == a);
      CHECK((a / b) * b == a);
    }
    // Equality by cross multiplication is independent of the gcd.
    Scalar q = a / b;
    CHECK(q.numerator() * b.numerator() * a.denominator() ==
          a.numerator() * q.denominator() * b.denominator());
    if (!q.is_polynomial()) CHECK(q.denominator().leading().coeff == 1);
  }
}

TEST_CASE("property: gcd divides both and absorbs a common factor") {
  for (std::uint64_t s = 1; s <= 30; ++s) {
    Polynomial a = random_polynomial(3, 2, s);
    Polynomial b = random_polynomial(3, 2, s + 500);
    Polynomial c = random_polynomial(3, 1, s + 900);
    Polynomial g = gcd(a * c, b * c);
    Polynomial q;
    CHECK(try_divide(a * c, g, q));
    CHECK(try_divide(b * c, g, q));
    CHECK(try_divide(g, c.scaled(1 / c.leading().coeff), q));
  }
}

TEST_CASE("property: derivative rules and evaluation homomorphism") {
  std::mt19937_64 rng(99);
  for (std::uint64_t s = 1; s <= 25; ++s) {
    Scalar a = random_fraction(s);
    Scalar b = random_fraction(s + 300);
    for (int v = 0; v < 3; ++v) {
      CHECK((a * b).derivative(v) == a.derivative(v) * b + a * b.derivative(v));
      CHECK(a.derivative(v).derivative((v + 1) % 3) ==
            a.derivative((v + 1) % 3).derivative(v));
    }
    auto pt = random_point(rng, 3);
    try {
      Rational ea = a.evaluate(pt);
      Rational eb = b.evaluate(pt);
      CHECK((a * b).evaluate(pt) == ea * eb);
      CHECK((a + b).evaluate(pt) == ea + eb);
    } catch (const DomainError&) {
    }
  }
}

TEST_CASE("property: printing round trips through the parser") {
  for (std::uint64_t s = 1; s <= 40; ++s) {
    Scalar a = random_fraction(s);
    CHECK(parse_scalar(a.to_string(), 3) == a);
  }
}
