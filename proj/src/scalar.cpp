#include "courant/scalar.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <random>

namespace courant {

namespace {

constexpr std::uint64_t kByte = 0xFF;

void check_index(int index) {
  if (index < 0 || index >= kMaxVariables) {
    throw DomainError("variable index " + std::to_string(index + 1) +
                      " outside supported range 1.." +
                      std::to_string(kMaxVariables));
  }
}

}  // namespace

Monomial Monomial::variable(int index, int power) {
  check_index(index);
  if (power < 0 || power > 255) throw DomainError("exponent out of range");
  auto p = static_cast<std::uint64_t>(power);
  return Monomial((p << 56) | (p << shift(index)));
}

bool Monomial::divides(Monomial other) const {
  for (int i = 0; i < kMaxVariables; ++i) {
    if (exponent(i) > other.exponent(i)) return false;
  }
  return true;
}

Monomial Monomial::operator*(Monomial other) const {
  if (degree() + other.degree() > 255) {
    throw DomainError("monomial degree exceeds 255");
  }
  return Monomial(key_ + other.key_);
}

Monomial Monomial::operator/(Monomial other) const {
  return Monomial(key_ - other.key_);
}

Monomial Monomial::without(int index) const {
  auto e = static_cast<std::uint64_t>(exponent(index));
  return Monomial(key_ - (e << 56) - (e << shift(index)));
}

Monomial Monomial::gcd(Monomial a, Monomial b) {
  std::uint64_t key = 0;
  std::uint64_t deg = 0;
  for (int i = 0; i < kMaxVariables; ++i) {
    auto e = static_cast<std::uint64_t>(std::min(a.exponent(i), b.exponent(i)));
    deg += e;
    key |= (e & kByte) << shift(i);
  }
  return Monomial(key | (deg << 56));
}

// ---------------------------------------------------------------- Polynomial

Polynomial::Polynomial(const Rational& c) {
  if (c != 0) terms_.push_back({Monomial(), c});
}

Polynomial Polynomial::variable(int index) {
  return monomial(Monomial::variable(index));
}

Polynomial Polynomial::monomial(Monomial m, const Rational& c) {
  Polynomial p;
  if (c != 0) p.terms_.push_back({m, c});
  return p;
}

Polynomial Polynomial::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return a.mono > b.mono; });
  Polynomial p;
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
      p.terms_.back().coeff += t.coeff;
    } else {
      if (!p.terms_.empty() && p.terms_.back().coeff == 0) p.terms_.pop_back();
      p.terms_.push_back(std::move(t));
    }
  }
  if (!p.terms_.empty() && p.terms_.back().coeff == 0) p.terms_.pop_back();
  return p;
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one());
}

Rational Polynomial::constant_value() const {
  return terms_.empty() ? Rational(0) : terms_[0].coeff;
}

int Polynomial::total_degree() const {
  return terms_.empty() ? -1 : terms_[0].mono.degree();
}

int Polynomial::degree_in(int var) const {
  int d = 0;
  for (const auto& t : terms_) d = std::max(d, t.mono.exponent(var));
  return d;
}

int Polynomial::max_variable() const {
  int v = -1;
  for (const auto& t : terms_) {
    for (int i = kMaxVariables - 1; i > v; --i) {
      if (t.mono.exponent(i) > 0) {
        v = i;
        break;
      }
    }
  }
  return v;
}

Polynomial Polynomial::operator-() const {
  Polynomial p = *this;
  for (auto& t : p.terms_) t.coeff = -t.coeff;
  return p;
}

namespace {

template <bool Subtract>
std::vector<Polynomial::Term> merge(const std::vector<Polynomial::Term>& a,
                                    const std::vector<Polynomial::Term>& b) {
  std::vector<Polynomial::Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].mono > b[j].mono)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].mono > a[i].mono) {
      out.push_back({b[j].mono, Subtract ? Rational(-b[j].coeff) : b[j].coeff});
      ++j;
    } else {
      Rational c = Subtract ? Rational(a[i].coeff - b[j].coeff)
                            : Rational(a[i].coeff + b[j].coeff);
      if (c != 0) out.push_back({a[i].mono, std::move(c)});
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (o.terms_.empty()) return *this;
  if (terms_.empty()) return *this = o;
  terms_ = merge<false>(terms_, o.terms_);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (o.terms_.empty()) return *this;
  terms_ = merge<true>(terms_, o.terms_);
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.terms_.empty() || b.terms_.empty()) return {};
  if (a.terms_.size() == 1) {
    return b.times(a.terms_[0].mono).scaled(a.terms_[0].coeff);
  }
  if (b.terms_.size() == 1) {
    return a.times(b.terms_[0].mono).scaled(b.terms_[0].coeff);
  }
  std::vector<Polynomial::Term> prod;
  prod.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& s : a.terms_) {
    for (const auto& t : b.terms_) {
      prod.push_back({s.mono * t.mono, s.coeff * t.coeff});
    }
  }
  return Polynomial::from_terms(std::move(prod));
}

Polynomial Polynomial::scaled(const Rational& c) const {
  if (c == 0) return {};
  Polynomial p = *this;
  if (c == 1) return p;
  for (auto& t : p.terms_) t.coeff *= c;
  return p;
}

Polynomial Polynomial::times(Monomial m) const {
  Polynomial p = *this;
  if (m.is_one()) return p;
  for (auto& t : p.terms_) t.mono = t.mono * m;
  return p;
}

Polynomial Polynomial::derivative(int var) const {
  check_index(var);
  std::vector<Term> out;
  Monomial x = Monomial::variable(var);
  for (const auto& t : terms_) {
    int e = t.mono.exponent(var);
    if (e == 0) continue;
    out.push_back({t.mono / x, t.coeff * e});
  }
  // Dividing by a single variable keeps graded-lex order among survivors.
  Polynomial p;
  p.terms_ = std::move(out);
  return p;
}

Rational Polynomial::evaluate(std::span<const Rational> point) const {
  int v = max_variable();
  if (v >= static_cast<int>(point.size())) {
    throw DomainError("evaluation point has " + std::to_string(point.size()) +
                      " coordinates but x" + std::to_string(v + 1) +
                      " is used");
  }
  Rational sum = 0;
  for (const auto& t : terms_) {
    Rational term = t.coeff;
    for (int i = 0; i <= v; ++i) {
      int e = t.mono.exponent(i);
      if (e == 0) continue;
      mpq_class pw;
      mpz_pow_ui(pw.get_num_mpz_t(), point[i].get_num_mpz_t(), e);
      mpz_pow_ui(pw.get_den_mpz_t(), point[i].get_den_mpz_t(), e);
      term *= pw;
    }
    sum += term;
  }
  return sum;
}

Polynomial Polynomial::coefficient_in(int var, int e) const {
  std::vector<Term> out;
  for (const auto& t : terms_) {
    if (t.mono.exponent(var) == e) out.push_back({t.mono.without(var), t.coeff});
  }
  return from_terms(std::move(out));
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    if (a.terms_[i].mono != b.terms_[i].mono ||
        a.terms_[i].coeff != b.terms_[i].coeff) {
      return false;
    }
  }
  return true;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : terms_) {
    Rational c = t.coeff;
    if (first) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    first = false;
    c = abs(c);
    std::string mono;
    for (int i = 0; i < kMaxVariables; ++i) {
      int e = t.mono.exponent(i);
      if (e == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += "x" + std::to_string(i + 1);
      if (e > 1) mono += "^" + std::to_string(e);
    }
    if (mono.empty()) {
      out += c.get_str();
    } else if (c == 1) {
      out += mono;
    } else {
      out += c.get_str() + "*" + mono;
    }
  }
  return out;
}

bool try_divide(const Polynomial& a, const Polynomial& b, Polynomial& quotient) {
  if (b.is_zero()) throw DomainError("division by zero polynomial");
  if (b.is_constant()) {
    quotient = a.scaled(1 / b.constant_value());
    return true;
  }
  std::vector<Polynomial::Term> q;
  Polynomial rem = a;
  const auto& lb = b.leading();
  while (!rem.is_zero()) {
    const auto& lr = rem.leading();
    if (!lb.mono.divides(lr.mono)) return false;
    Polynomial::Term t{lr.mono / lb.mono, lr.coeff / lb.coeff};
    rem -= b.times(t.mono).scaled(t.coeff);
    q.push_back(std::move(t));
  }
  quotient = Polynomial::from_terms(std::move(q));
  return true;
}

Polynomial divide_exact(const Polynomial& a, const Polynomial& b) {
  Polynomial q;
  if (!try_divide(a, b, q)) throw Error("inexact polynomial division");
  return q;
}

namespace {

Polynomial monic(const Polynomial& p) {
  if (p.is_zero()) return p;
  return p.scaled(1 / p.leading().coeff);
}

Polynomial content_in(const Polynomial& p, int var) {
  int d = p.degree_in(var);
  Polynomial g;
  for (int e = d; e >= 0; --e) {
    Polynomial c = p.coefficient_in(var, e);
    if (c.is_zero()) continue;
    g = gcd(g, c);
    if (g.is_constant()) return Polynomial(1);
  }
  return g;
}

// Scales p to integer coefficients with gcd 1.
Polynomial integer_primitive(const Polynomial& p) {
  if (p.is_zero()) return p;
  mpz_class l = 1;
  mpz_class g = 0;
  for (const auto& t : p.terms()) l = lcm(l, t.coeff.get_den());
  for (const auto& t : p.terms()) {
    g = gcd(g, mpz_class(t.coeff.get_num() * (l / t.coeff.get_den())));
  }
  return p.scaled(Rational(l) / Rational(g));
}

Polynomial primitive_in(const Polynomial& p, int var) {
  return integer_primitive(divide_exact(p, content_in(p, var)));
}

Polynomial pseudo_remainder(Polynomial a, const Polynomial& b, int var) {
  int db = b.degree_in(var);
  Polynomial lb = b.coefficient_in(var, db);
  while (!a.is_zero()) {
    int da = a.degree_in(var);
    if (da < db) break;
    Polynomial la = a.coefficient_in(var, da);
    a = lb * a - (la * b).times(Monomial::variable(var, da - db));
  }
  return a;
}

}  // namespace

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero()) return monic(b);
  if (b.is_zero()) return monic(a);
  if (a.is_constant() || b.is_constant()) return Polynomial(1);
  if (a.terms().size() == 1 || b.terms().size() == 1) {
    Monomial m = a.terms().size() == 1 ? a.leading().mono : b.leading().mono;
    for (const auto& t : a.terms()) m = Monomial::gcd(m, t.mono);
    for (const auto& t : b.terms()) m = Monomial::gcd(m, t.mono);
    return Polynomial::monomial(m);
  }
  int v = std::max(a.max_variable(), b.max_variable());
  int da = a.degree_in(v);
  int db = b.degree_in(v);
  if (da == 0) return gcd(a, content_in(b, v));
  if (db == 0) return gcd(content_in(a, v), b);
  Polynomial ca = content_in(a, v);
  Polynomial cb = content_in(b, v);
  Polynomial pa = integer_primitive(divide_exact(a, ca));
  Polynomial pb = integer_primitive(divide_exact(b, cb));
  Polynomial c = gcd(ca, cb);
  if (da < db) std::swap(pa, pb);
  while (true) {
    Polynomial r = pseudo_remainder(pa, pb, v);
    if (r.is_zero()) break;
    if (r.degree_in(v) == 0) {
      pb = Polynomial(1);
      break;
    }
    pa = std::move(pb);
    pb = primitive_in(r, v);
  }
  if (!pb.is_constant()) pb = primitive_in(pb, v);
  return monic(c * pb);
}

// -------------------------------------------------------------------- Scalar

Scalar Scalar::fraction(Polynomial num, Polynomial den) {
  if (den.is_zero()) throw DomainError("division by zero");
  Scalar s;
  s.num_ = std::move(num);
  s.den_ = std::move(den);
  s.canonicalize();
  return s;
}

void Scalar::canonicalize() {
  if (num_.is_zero()) {
    den_ = Polynomial(1);
    return;
  }
  if (!den_.is_constant()) {
    if (num_.is_constant()) {
      Rational lc = den_.leading().coeff;
      if (lc != 1) {
        num_ = num_.scaled(1 / lc);
        den_ = den_.scaled(1 / lc);
      }
      return;
    }
    Polynomial g = gcd(num_, den_);
    if (!g.is_constant()) {
      num_ = divide_exact(num_, g);
      den_ = divide_exact(den_, g);
    }
    if (!den_.is_constant()) {
      Rational lc = den_.leading().coeff;
      if (lc != 1) {
        num_ = num_.scaled(1 / lc);
        den_ = den_.scaled(1 / lc);
      }
      return;
    }
  }
  Rational c = den_.constant_value();
  if (c != 1) num_ = num_.scaled(1 / c);
  den_ = Polynomial(1);
}

bool Scalar::is_one() const {
  return den_.is_constant() && num_.is_constant() && !num_.is_zero() &&
         num_.constant_value() == 1;
}

Rational Scalar::constant_value() const { return num_.constant_value(); }

Scalar Scalar::operator-() const {
  Scalar s = *this;
  s.num_ = -s.num_;
  return s;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  if (o.is_zero()) return *this;
  if (den_ == o.den_) {
    num_ += o.num_;
    if (!den_.is_constant()) canonicalize();
    else if (num_.is_zero()) den_ = Polynomial(1);
    return *this;
  }
  num_ = num_ * o.den_ + o.num_ * den_;
  den_ = den_ * o.den_;
  canonicalize();
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) { return *this += -o; }

Scalar& Scalar::operator*=(const Scalar& o) {
  if (is_zero()) return *this;
  if (o.is_zero()) return *this = Scalar();
  if (is_polynomial() && o.is_polynomial()) {
    num_ = num_ * o.num_;
    return *this;
  }
  num_ = num_ * o.num_;
  den_ = den_ * o.den_;
  canonicalize();
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  if (o.is_zero()) throw DomainError("division by zero");
  Polynomial n = num_ * o.den_;
  Polynomial d = den_ * o.num_;
  num_ = std::move(n);
  den_ = std::move(d);
  canonicalize();
  return *this;
}

Scalar Scalar::derivative(int var) const {
  if (is_polynomial()) return Scalar(num_.derivative(var));
  Polynomial n = num_.derivative(var) * den_ - num_ * den_.derivative(var);
  return fraction(std::move(n), den_ * den_);
}

Rational Scalar::evaluate(std::span<const Rational> point) const {
  Rational d = den_.evaluate(point);
  if (d == 0) throw DomainError("evaluation at a pole of " + to_string());
  return num_.evaluate(point) / d;
}

namespace {

void mix(std::size_t& h, std::size_t v) { h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); }

std::size_t hash_mpz(mpz_srcptr z) {
  std::size_t h = static_cast<std::size_t>(mpz_sgn(z) + 1);
  if (mpz_size(z) > 0) mix(h, static_cast<std::size_t>(mpz_getlimbn(z, 0)));
  mix(h, mpz_size(z));
  return h;
}

}  // namespace

std::size_t hash_value(const Polynomial& p) {
  std::size_t h = p.terms().size();
  for (const auto& t : p.terms()) {
    mix(h, std::hash<std::uint64_t>{}(t.mono.key()));
    mix(h, hash_mpz(t.coeff.get_num_mpz_t()));
    mix(h, hash_mpz(t.coeff.get_den_mpz_t()));
  }
  return h;
}

std::size_t hash_value(const Scalar& s) {
  std::size_t h = hash_value(s.numerator());
  mix(h, hash_value(s.denominator()));
  return h;
}

int Scalar::variables_used() const {
  return std::max(num_.max_variable(), den_.max_variable()) + 1;
}

std::string Scalar::to_string() const {
  if (is_polynomial()) return num_.to_string();
  return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

// -------------------------------------------------------------------- parser

namespace {

class Parser {
 public:
  Parser(std::string_view text, int n) : text_(text), n_(n) {}

  Scalar parse() {
    Scalar s = expr();
    skip();
    if (pos_ != text_.size()) fail("unexpected character");
    return s;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " at offset " + std::to_string(pos_) + " in '" +
                     std::string(text_) + "'");
  }

  void skip() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  bool eat(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  std::string digits() {
    skip();
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
    if (start == pos_) fail("expected digits");
    return std::string(text_.substr(start, pos_ - start));
  }

  Scalar expr() {
    Scalar s = term();
    while (true) {
      if (eat('+')) {
        s += term();
      } else if (eat('-')) {
        s -= term();
      } else {
        return s;
      }
    }
  }

  Scalar term() {
    Scalar s = unary();
    while (true) {
      if (eat('*')) {
        s *= unary();
      } else if (eat('/')) {
        Scalar d = unary();
        if (d.is_zero()) fail("division by zero");
        s /= d;
      } else {
        return s;
      }
    }
  }

  Scalar unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }

  Scalar power() {
    Scalar base = atom();
    if (!eat('^')) return base;
    bool negative = eat('-');
    std::string e = digits();
    if (e.size() > 3) fail("exponent too large");
    int k = std::stoi(e);
    Scalar out(1);
    for (int i = 0; i < k; ++i) out *= base;
    if (negative) {
      if (out.is_zero()) fail("negative power of zero");
      out = Scalar(1) / out;
    }
    return out;
  }

  Scalar atom() {
    skip();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Scalar s = expr();
      if (!eat(')')) fail("expected ')'");
      return s;
    }
    if (c == 'x') {
      ++pos_;
      std::string d = digits();
      if (d.size() > 3) fail("unknown variable x" + d);
      int index = std::stoi(d);
      if (index < 1 || index > n_) fail("unknown variable x" + d);
      return Scalar::variable(index - 1);
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      return Scalar(Rational(mpz_class(digits())));
    }
    fail("unexpected character");
  }

  std::string_view text_;
  int n_;
  std::size_t pos_ = 0;
};

}  // namespace

Scalar parse_scalar(std::string_view text, int num_variables) {
  return Parser(text, num_variables).parse();
}

std::vector<Monomial> monomials_up_to(int num_variables, int degree) {
  std::vector<Monomial> out{Monomial()};
  std::vector<Monomial> frontier{Monomial()};
  for (int d = 1; d <= degree; ++d) {
    std::vector<Monomial> next;
    for (auto m : frontier) {
      for (int i = 0; i < num_variables; ++i) {
        next.push_back(m * Monomial::variable(i));
      }
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    out.insert(out.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  return out;
}

Polynomial random_polynomial(int num_variables, int degree, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Polynomial::Term> terms;
  for (auto m : monomials_up_to(num_variables, degree)) {
    if ((rng() & 1u) == 0) continue;
    long num = static_cast<long>(rng() % 7) - 3;
    long den = static_cast<long>(rng() % 3) + 1;
    if (num == 0) continue;
    terms.push_back({m, Rational(num, den)});
  }
  for (auto& t : terms) t.coeff.canonicalize();
  Polynomial p = Polynomial::from_terms(std::move(terms));
  if (p.is_zero()) p = Polynomial(static_cast<long>(rng() % 3) + 1);
  return p;
}

}  // namespace courant
