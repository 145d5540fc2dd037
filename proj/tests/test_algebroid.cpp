#include <doctest.h>

#include "courant/algebroid.hpp"

using namespace courant;

namespace {

Scalar P(const char* s, int n = 3) { return parse_scalar(s, n); }

Section sec(std::initializer_list<const char*> comps, int n = 3) {
  std::vector<Scalar> c;
  for (auto s : comps) c.push_back(P(s, n));
  return Section(c);
}

}  // namespace

TEST_CASE("standard algebroid matches vector field and Lie derivative formulas") {
  auto e = build_standard(2);
  Section X = sec({"x1", "0", "0", "0"});
  Section Y = sec({"x2^2", "1", "0", "0"});
  // [X,Y] = X(Y) - Y(X) = (0 - x2^2*1) d1 = -x2^2 d1
  CHECK(e->bracket(X, Y) == sec({"-x2^2", "0", "0", "0"}));
  // L_X eta for X = x1 d1, eta = x1 dx1: X(x1) dx1 + x1 d(x1) = 2 x1 dx1.
  CHECK(e->bracket(X, sec({"0", "0", "x1", "0"})) == sec({"0", "0", "2*x1", "0"}));
  // -i_Y d zeta with zeta = x1 dx2, Y = d1: d zeta = dx1^dx2, i_Y = dx2.
  CHECK(e->bracket(sec({"0", "0", "0", "x1"}), sec({"1", "0", "0", "0"})) ==
        sec({"0", "0", "0", "-1"}));
  CHECK(e->d(P("x1^2*x2")) == sec({"0", "0", "2*x1*x2", "x1^2"}));
  CHECK(e->pairing(sec({"1", "2", "3", "4"}), sec({"x1", "x2", "5", "7"})) ==
        P("5 + 14 + 3*x1 + 4*x2"));
  CHECK(e->anchor_apply(sec({"x2", "1", "9", "9"}), P("x1*x2")) == P("x2^2 + x1"));
}

TEST_CASE("axioms hold for the standard algebroids") {
  for (int n = 1; n <= 2; ++n) {
    auto e = build_standard(n);
    Battery b(n, e->rank(), BatteryConfig{});
    Report r = verify_axioms(*e, b);
    CHECK(r.passed());
    CHECK(r.checks.size() == 9);
    for (const auto& c : r.checks) CHECK(c.evaluations > 0);
  }
}

TEST_CASE("quadratic Lie algebras") {
  auto good = su2();
  Battery b(0, 3, BatteryConfig{});
  CHECK(verify_axioms(*good, b).passed());
  CHECK(check_quadratic_lie(*good).passed());
  CHECK(verify_axioms(*su2_plus_line(), Battery(0, 4, BatteryConfig{})).passed());

  auto bad = su2({1, 1, 2});
  Report r = verify_axioms(*bad, b);
  CHECK(r.failures() == std::vector<std::string>{"compatibility"});
  const Check* c = r.find("compatibility");
  REQUIRE(c->witness);
  CHECK(c->witness->arguments == "e1, e2, e3");
  CHECK(c->witness->residual == std::vector<Scalar>{Scalar(1)});
  CHECK_FALSE(check_quadratic_lie(*bad).find("ad_invariance")->passed());
  CHECK(check_quadratic_lie(*bad).find("lie_jacobi")->passed());

  BracketTable sym(2, std::vector<Section>(2, Section(2)));
  sym[0][1][0] = 1;
  sym[1][0][0] = 1;
  CHECK_THROWS_AS(build_quadratic_lie_algebra(Matrix::identity(2), sym), DomainError);
}

TEST_CASE("structure data validation") {
  BracketTable zero(2, std::vector<Section>(2, Section(2)));
  Matrix rho(1, 2);
  rho(0, 0) = 1;
  Matrix nonsym(2, 2);
  nonsym(0, 1) = 1;
  nonsym(1, 0) = 2;
  CHECK_THROWS_AS(CourantAlgebroid(1, nonsym, rho, zero), DomainError);
  Matrix varying(2, 2);
  varying(0, 1) = P("x1", 1);
  varying(1, 0) = P("x1", 1);
  CHECK_THROWS_AS(CourantAlgebroid(1, varying, rho, zero), DomainError);
  Matrix ok(2, 2);
  ok(0, 1) = 1;
  ok(1, 0) = 1;
  CHECK_THROWS_AS(CourantAlgebroid(1, ok, Matrix(2, 2), zero), DomainError);
  CHECK_NOTHROW(CourantAlgebroid(1, ok, rho, zero));
  // Constant determinant with non-constant entries is accepted.
  Matrix unimodular(2, 2);
  unimodular(0, 0) = P("x1", 1);
  unimodular(0, 1) = 1;
  unimodular(1, 0) = 1;
  CHECK_NOTHROW(CourantAlgebroid(1, unimodular, rho, zero));
}

TEST_CASE("port-Hamiltonian algebroid") {
  Christoffel flat{{{P("x1", 1)}}};
  auto e = build_port_hamiltonian(1, 1, flat);
  CHECK(e->rank() == 4);
  Battery b(1, 4, BatteryConfig{});
  CHECK(verify_axioms(*e, b).passed());
  // [lambda_out, lambda_in] lands in T*M: <v^1, Delta_d1 v_1> dx1 = x1 dx1.
  CHECK(e->bracket(e->frame(2), e->frame(3)) == sec({"0", "x1", "0", "0"}, 1));
  Christoffel curved{{{P("x2", 2)}}, {{P("0", 2)}}};
  CHECK_THROWS_AS(build_port_hamiltonian(2, 1, curved), DomainError);
}

TEST_CASE("battery is deterministic and starts with lexicographic frame tuples") {
  Battery a(2, 4, BatteryConfig{});
  Battery b(2, 4, BatteryConfig{});
  auto ta = a.tuples(3, 1);
  auto tb = b.tuples(3, 1);
  REQUIRE(ta.size() == tb.size());
  for (std::size_t i = 0; i < ta.size(); ++i) {
    CHECK(ta[i].vectors == tb[i].vectors);
    CHECK(ta[i].functions == tb[i].functions);
  }
  CHECK(ta[0].vectors == std::vector<int>{0, 0, 0});
  CHECK(a.vectors().size() == 4 + 5 * 4 + 3);
  CHECK(a.functions().size() == 10 + 3);
  Battery other(2, 4, BatteryConfig{2, 3, 7, 48});
  CHECK_FALSE(other.vectors().back().components == a.vectors().back().components);
}
