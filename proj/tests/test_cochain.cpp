#include <doctest.h>

#include "courant/cochain.hpp"

using namespace courant;

namespace {

Scalar P(const char* s, int n = 2) { return parse_scalar(s, n); }

Section sec(std::initializer_list<const char*> comps, int n = 2) {
  std::vector<Scalar> c;
  for (auto s : comps) c.push_back(P(s, n));
  return Section(c);
}

Rational sign(int p, int q) { return (p * q) % 2 ? -1 : 1; }

}  // namespace

TEST_CASE("low degree cochains evaluate by hand") {
  auto e = build_standard(2);
  auto f = Cochain::scalar(e, P("x1^2*x2"));
  CHECK(f.evaluate(0, {}, {}) == P("x1^2*x2"));
  Section d1 = sec({"1", "0", "0", "0"});
  Section d2 = sec({"0", "1", "0", "0"});
  std::vector<Section> args{d1};
  CHECK(d(f).evaluate(0, args, {}) == P("2*x1*x2"));

  // x1 dx2 has differential dx1^dx2.
  auto s = Cochain::section(e, sec({"0", "0", "0", "x1"}));
  std::vector<Section> pair{d1, d2};
  CHECK(d(s).evaluate(0, pair, {}) == Scalar(1));
  std::vector<Section> rev{d2, d1};
  CHECK(d(s).evaluate(0, rev, {}) == Scalar(-1));
  std::vector<Scalar> fn{P("x2^3")};
  CHECK(d(s).evaluate(1, {}, fn) == Scalar());
  auto v = Cochain::section(e, sec({"0", "x1", "0", "0"}));
  CHECK(d(v).evaluate(1, {}, fn) == P("3*x1*x2^2"));

  auto a = Cochain::section(e, sec({"0", "0", "1", "0"}));
  auto b = Cochain::section(e, sec({"0", "0", "0", "x1"}));
  std::vector<Section> xy{sec({"x2", "1", "0", "0"}), sec({"1", "x2", "0", "0"})};
  // dx1(X) x1 dx2(Y) - dx1(Y) x1 dx2(X) = x2*x1*x2 - 1*x1*1
  CHECK(mul(a, b).evaluate(0, xy, {}) == P("x1*x2^2 - x1"));
  CHECK(interior_e(d1, mul(a, b)).evaluate(0, std::vector<Section>{d2}, {}) == P("x1"));
}

TEST_CASE("cochain arity and degree cap are enforced") {
  auto e = build_standard(1);
  auto s = Cochain::section(e, e->frame(0));
  CHECK_THROWS_AS(s.evaluate(0, {}, {}), DomainError);
  CHECK_THROWS_AS(s.evaluate(1, {}, {}), DomainError);
  auto w = s;
  for (int i = 1; i < kMaxCochainDegree; ++i) w = mul(w, s);
  CHECK(w.degree() == kMaxCochainDegree);
  CHECK_THROWS_AS(d(w), DomainError);
  CHECK_THROWS_AS(mul(w, s), DomainError);
  CHECK(interior_f(P("x1", 1), Cochain::scalar(e, 1)).degree() == -2);
  CHECK(interior_f(P("x1", 1), Cochain::scalar(e, 1)).evaluate(0, {}, {}) == Scalar());
}

TEST_CASE("differential squares to zero") {
  for (auto e : {build_standard(1), build_standard(2), su2()}) {
    Battery b(e->base_dim(), e->rank(), BatteryConfig{});
    for (const auto& w : sample_cochains(e, b, 3)) {
      INFO(w.describe());
      CHECK(check_d_squared(w, b).passed());
    }
  }
}

TEST_CASE("product is graded commutative, associative and satisfies Leibniz") {
  auto e = build_standard(2);
  Battery b(2, 4, BatteryConfig{});
  auto pool = sample_cochains(e, b, 2);
  REQUIRE(pool.size() >= 6);
  for (std::size_t i = 0; i < pool.size(); i += 2) {
    for (std::size_t j = 1; j < pool.size(); j += 3) {
      const auto& x = pool[i];
      const auto& y = pool[j];
      int p = x.degree();
      int q = y.degree();
      INFO(x.describe(), " ; ", y.describe());
      CHECK(equal(mul(x, y), sign(p, q) * mul(y, x), b).passed());
      if (p + q + 1 <= 4) {
        CHECK(equal(d(mul(x, y)), mul(d(x), y) + sign(p, 1) * mul(x, d(y)), b).passed());
      }
      Section v = b.vector<Section>(5);
      CHECK(equal(interior_e(v, mul(x, y)),
                  mul(interior_e(v, x), y) + sign(p, 1) * mul(x, interior_e(v, y)), b)
                .passed());
    }
  }
  const auto& x = pool[1];
  const auto& y = pool[3];
  const auto& z = pool[4];
  CHECK(equal(mul(mul(x, y), z), mul(x, mul(y, z)), b).passed());

  Report laws = algebra_laws(b, pool, 12, 4);
  REQUIRE(laws.checks.size() == 5);
  for (const auto& c : laws.checks) {
    INFO(c.name, " ", c.detail);
    CHECK(c.passed());
    CHECK(c.evaluations > 0);
  }
}

TEST_CASE("sample cochains satisfy the symmetry condition and their order bound") {
  for (auto e : {build_standard(1), build_standard(2)}) {
    Battery b(e->base_dim(), e->rank(), BatteryConfig{});
    auto pool = sample_cochains(e, b, 4);
    CHECK(pool.size() >= 20);
    for (const auto& w : pool) {
      INFO(w.describe());
      CHECK(check_symmetry(w, b).passed());
      CHECK(check_order(w, b).passed());
    }
  }
}

TEST_CASE("symmetry failure is detected") {
  auto e = build_standard(1);
  Battery b(1, 2, BatteryConfig{});
  auto s = Cochain::section(e, e->frame(0));
  // Hand-assembled node: differential of the constant 1 placed in degree 2.
  // Its k=0 part is the constant -1 and its k=1 part is 1.
  auto node = std::make_shared<Cochain::Node>(d(s).node());
  node->children = {Cochain::scalar(e, 1)};
  Cochain bad(node);
  CHECK(bad.evaluate(0, std::vector<Section>{e->frame(0), e->frame(0)}, {}) == Scalar(-1));
  Check c = check_symmetry(bad, b);
  CHECK_FALSE(c.passed());
  REQUIRE(c.witness);
  CHECK(c.witness->residual == std::vector<Scalar>{Scalar(-1)});
}

TEST_CASE("order is tracked and undershooting is caught") {
  auto e = build_standard(1);
  Battery b(1, 2, BatteryConfig{});
  auto s = Cochain::section(e, e->frame(0));
  auto dds = d(mul(s, d(s)));
  CHECK(d(s).order() == 2);
  CHECK(check_order(d(s), b).passed());
  auto node = std::make_shared<Cochain::Node>(d(s).node());
  // Claiming tensoriality hides the first order symbol in slot 1.
  node->order = 0;
  CHECK_FALSE(check_order(Cochain(node), b).passed());
  CHECK(dds.order() == 3);
}

TEST_CASE("Cartan calculus on small algebroids") {
  for (auto e : {build_standard(1), su2()}) {
    Battery b(e->base_dim(), e->rank(), BatteryConfig{});
    auto pool = sample_cochains(e, b, 3);
    Report r = cartan_suite(e, b, pool);
    CHECK(r.checks.size() == 11);
    for (const auto& c : r.checks) {
      INFO(c.name, " ", c.detail);
      CHECK(c.passed());
    }
  }
}
