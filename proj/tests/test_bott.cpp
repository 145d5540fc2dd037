#include <doctest.h>

#include "courant/bott.hpp"

using namespace courant;

namespace {

Scalar P(const char* s) { return parse_scalar(s, 2); }

Section sec(std::initializer_list<const char*> comps) {
  std::vector<Scalar> c;
  for (auto s : comps) c.push_back(P(s));
  return Section(c);
}

void require_pass(const Report& r) {
  for (const auto& c : r.checks) {
    INFO(c.name, " ", c.witness ? c.witness->arguments + " -> " + c.witness->residual_text() : "");
    CHECK(c.passed());
  }
}

}  // namespace

TEST_CASE("tangent Lagrangian: the connection is the Lie derivative on forms") {
  auto e = build_standard(2);
  BottConnection bott(e, {sec({"1", "0", "0", "0"}), sec({"0", "1", "0", "0"})});
  REQUIRE(bott.complement().size() == 2);
  CHECK(bott.complement()[0] == e->frame(2));
  CHECK(bott.complement()[1] == e->frame(3));
  // L_{x2 d1}(x1 dx2) = d(0) + i_{x2 d1}(dx1 ^ dx2) = x2 dx2.
  LSection x({P("x2"), P("0")});
  BSection eta({P("0"), P("x1")});
  CHECK(bott.apply(x, eta) == BSection({P("0"), P("x2")}));
  // L_{d1}(x2^2 dx1 + x1 dx2) = dx2.
  CHECK(bott.apply(LSection({P("1"), P("0")}), BSection({P("x2^2"), P("x1")})) ==
        BSection({P("0"), P("1")}));
  require_pass(bott_report(bott, BatteryConfig{}));
}

TEST_CASE("graph of a constant closed 2-form") {
  auto e = build_standard(2);
  // omega = 3 dx1 ^ dx2: d1 + 3 dx2 and d2 - 3 dx1.
  BottConnection bott(e, {sec({"1", "0", "0", "3"}), sec({"0", "1", "-3", "0"})});
  Report r = bott_report(bott, BatteryConfig{});
  require_pass(r);
  CHECK(r.find("flat_r0")->evaluations > 0);
  // The class map kills L and is the identity on the complement.
  CHECK(bott.class_of(bott.lagrangian()[1]).is_zero());
  CHECK(bott.class_of(bott.complement()[0]) == BSection({P("1"), P("0")}));
}

TEST_CASE("non-Dirac inputs are rejected with a witness") {
  auto e = build_standard(2);
  try {
    BottConnection bad(e, {sec({"1", "0", "0", "0"}), sec({"0", "0", "1", "0"})});
    FAIL("isotropy violation accepted");
  } catch (const DomainError& err) {
    CHECK(std::string(err.what()) == "L is not isotropic: <l1, l2> = 1");
  }
  CHECK_THROWS_AS(BottConnection(e, {sec({"1", "0", "0", "0"})}), DomainError);
  CHECK_THROWS_AS(BottConnection(e, {sec({"1", "0", "0", "0"}), sec({"x1", "0", "0", "0"})}),
                  DomainError);
  // span{d1 + x2 dx2, d2} pairs to x2.
  CHECK_THROWS_AS(BottConnection(e, {sec({"1", "0", "0", "x2"}), sec({"0", "1", "0", "0"})}),
                  DomainError);
  // Graph of x1 dx2 ^ dx3, which is not closed.
  auto e3 = build_standard(3);
  auto s3 = [](std::initializer_list<const char*> c) {
    std::vector<Scalar> v;
    for (auto x : c) v.push_back(parse_scalar(x, 3));
    return Section(v);
  };
  try {
    BottConnection bad(e3, {s3({"1", "0", "0", "0", "0", "0"}), s3({"0", "1", "0", "0", "0", "x1"}),
                            s3({"0", "0", "1", "0", "-x1", "0"})});
    FAIL("non-involutive L accepted");
  } catch (const DomainError& err) {
    CHECK(std::string(err.what()).find("not involutive") != std::string::npos);
  }
}
