#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace courant {

using Rational = mpq_class;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Input violates a documented precondition (bad shapes, poles, caps).
struct DomainError : Error {
  using Error::Error;
};

struct ParseError : Error {
  using Error::Error;
};

inline constexpr int kMaxVariables = 7;

// Exponent vector packed into 64 bits: total degree in the top byte, then
// one byte per variable, x1 first.  Integer order on the key is graded-lex.
class Monomial {
 public:
  constexpr Monomial() = default;
  static Monomial variable(int index, int power = 1);
  static constexpr Monomial from_key(std::uint64_t key) { return Monomial(key); }

  int exponent(int index) const {
    return static_cast<int>((key_ >> shift(index)) & 0xFFu);
  }
  int degree() const { return static_cast<int>(key_ >> 56); }
  std::uint64_t key() const { return key_; }
  bool is_one() const { return key_ == 0; }

  bool divides(Monomial other) const;
  Monomial operator*(Monomial other) const;
  Monomial operator/(Monomial other) const;  // requires divides
  Monomial without(int index) const;
  static Monomial gcd(Monomial a, Monomial b);

  friend bool operator==(Monomial a, Monomial b) = default;
  friend auto operator<=>(Monomial a, Monomial b) = default;

 private:
  constexpr explicit Monomial(std::uint64_t key) : key_(key) {}
  static constexpr int shift(int index) { return 48 - 8 * index; }
  std::uint64_t key_ = 0;
};

class Polynomial {
 public:
  struct Term {
    Monomial mono;
    Rational coeff;
  };

  Polynomial() = default;
  Polynomial(const Rational& c);  // NOLINT(google-explicit-constructor)
  Polynomial(long c) : Polynomial(Rational(c)) {}  // NOLINT
  static Polynomial variable(int index);
  static Polynomial monomial(Monomial m, const Rational& c = 1);
  // Terms may be unsorted and repeated; they are combined.
  static Polynomial from_terms(std::vector<Term> terms);

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_value() const;  // requires is_constant
  const Term& leading() const { return terms_.front(); }
  int total_degree() const;
  int degree_in(int var) const;
  int max_variable() const;  // -1 when constant

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  Polynomial scaled(const Rational& c) const;
  Polynomial times(Monomial m) const;

  Polynomial derivative(int var) const;
  Rational evaluate(std::span<const Rational> point) const;

  // Coefficient of var^e, with var removed.
  Polynomial coefficient_in(int var, int e) const;

  friend bool operator==(const Polynomial& a, const Polynomial& b);

  std::string to_string() const;

 private:
  std::vector<Term> terms_;  // strictly descending, nonzero coefficients
};

// Returns the quotient when b divides a exactly, otherwise throws.
Polynomial divide_exact(const Polynomial& a, const Polynomial& b);
bool try_divide(const Polynomial& a, const Polynomial& b, Polynomial& quotient);
// Monic (graded-lex leading coefficient 1) greatest common divisor.
Polynomial gcd(const Polynomial& a, const Polynomial& b);

// Element of Q(x1..xn) in lowest terms with monic denominator.
class Scalar {
 public:
  Scalar() : den_(1) {}
  Scalar(const Rational& c) : num_(c), den_(1) {}  // NOLINT
  Scalar(long c) : Scalar(Rational(c)) {}  // NOLINT
  Scalar(Polynomial p) : num_(std::move(p)), den_(1) {}  // NOLINT
  static Scalar fraction(Polynomial num, Polynomial den);
  static Scalar variable(int index) { return Scalar(Polynomial::variable(index)); }

  const Polynomial& numerator() const { return num_; }
  const Polynomial& denominator() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_constant(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  bool is_one() const;
  Rational constant_value() const;  // requires is_constant

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);
  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  Scalar derivative(int var) const;
  // Throws DomainError at a pole.
  Rational evaluate(std::span<const Rational> point) const;
  // Highest variable index used plus one.
  int variables_used() const;

  std::string to_string() const;

 private:
  void canonicalize();
  Polynomial num_;
  Polynomial den_;
};

std::size_t hash_value(const Polynomial& p);
std::size_t hash_value(const Scalar& s);

// Grammar: sums, products, quotients, integer powers, parentheses,
// integer literals and variables x1..xn.
Scalar parse_scalar(std::string_view text, int num_variables);

// Seeded polynomial with total degree <= degree in num_variables variables.
// Never zero.
Polynomial random_polynomial(int num_variables, int degree, std::uint64_t seed);

// All monomials of total degree <= degree, in increasing graded-lex order.
std::vector<Monomial> monomials_up_to(int num_variables, int degree);

}  // namespace courant
