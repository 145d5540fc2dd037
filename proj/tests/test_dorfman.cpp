#include <doctest.h>

#include "courant/dorfman.hpp"
#include "courant/valued.hpp"

using namespace courant;

namespace {

Scalar P(const char* s, int n = 2) { return parse_scalar(s, n); }

Matrix mat(int rows, int cols, std::initializer_list<const char*> entries, int n) {
  Matrix m(rows, cols);
  int k = 0;
  for (auto s : entries) {
    m(k / cols, k % cols) = P(s, n);
    ++k;
  }
  return m;
}

Christoffel sample_christoffel() {
  const char* text[2][2][2] = {{{"x2", "1"}, {"0", "x1^2"}}, {{"-3", "x1*x2"}, {"2*x2", "0"}}};
  Christoffel delta(2, std::vector<std::vector<Scalar>>(2, std::vector<Scalar>(2)));
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      for (int c = 0; c < 2; ++c) delta[a][b][c] = P(text[a][b][c]);
    }
  }
  return delta;
}

Christoffel zero_christoffel(int n) {
  return Christoffel(n, std::vector<std::vector<Scalar>>(n, std::vector<Scalar>(n)));
}

// standard(1) with a frame of B that depends on x1 through u = 1 + x1^2.
PredualPtr stretched_predual() {
  auto e = build_standard(1);
  Matrix p = mat(2, 2, {"1", "1", "0", "-1 - x1^2"}, 1);
  Matrix a = mat(2, 1, {"1", "1/(1 + x1^2)"}, 1);
  return std::make_shared<const PredualBundle>(e, p, a);
}

void require_pass(const Report& r) {
  for (const auto& c : r.checks) {
    INFO(c.name, " ", c.witness ? c.witness->arguments + " -> " + c.witness->residual_text() : "");
    CHECK(c.passed());
  }
}

}  // namespace

TEST_CASE("predual validation and diagnosis") {
  auto e = build_standard(2);
  auto self = predual_self(e);
  auto dg = diagnose(*self);
  CHECK(dg.classification == "B = E");
  CHECK(dg.rank_k == 0);
  CHECK(dg.rank_f == 0);
  CHECK(self->d(P("x1*x2")) == BSection(e->d(P("x1*x2")).components()));

  auto ph = build_port_hamiltonian(1, 1, {{{P("x1", 1)}}});
  auto b = port_hamiltonian_predual(ph, 1, 1, false);
  dg = diagnose(*b);
  CHECK(dg.classification == "E = B + F");
  CHECK(dg.rank_f == 2);
  // <<v^1, v_1>> = 1 for the V side, and <<v_1, v^1>> = 1 on the dual side.
  CHECK(b->pairing(ph->frame(3), b->frame(1)) == Scalar(1));
  CHECK(port_hamiltonian_predual(ph, 1, 1, true)->pairing(ph->frame(2), b->frame(1)) ==
        Scalar(1));

  auto s1 = build_standard(1);
  Matrix pk = mat(3, 2, {"0", "1", "1", "0", "0", "0"}, 1);
  Matrix ak = mat(3, 1, {"0", "1", "0"}, 1);
  CHECK(diagnose(PredualBundle(s1, pk, ak)).classification == "B = E + K");
  CHECK(diagnose(PredualBundle(s1, pk, ak)).rank_k == 1);
  Matrix pn = mat(2, 2, {"1", "0", "0", "0"}, 1);
  Matrix an = mat(2, 1, {"1", "7"}, 1);
  CHECK(diagnose(PredualBundle(s1, pn, an)).classification == "neither");

  Matrix bad = mat(2, 1, {"1", "0"}, 1);
  CHECK_THROWS_AS(PredualBundle(s1, s1->pairing_matrix(), bad), DomainError);
  CHECK_THROWS_AS(PredualBundle(s1, Matrix(2, 3), bad), DomainError);
}

TEST_CASE("embedding inverts the pairing and maps d_B to d_E") {
  auto b = stretched_predual();
  const auto& e = b->algebroid();
  BSection v({P("x1", 1), P("3 - x1", 1)});
  for (int j = 0; j < 2; ++j) {
    CHECK(e.pairing(b->embed(v), e.frame(j)) == b->pairing(e.frame(j), v));
  }
  Scalar f = P("x1^3 + x1", 1);
  CHECK(b->embed(b->d(f)) == e.d(f));
}

TEST_CASE("connection extension obeys the hand formula") {
  auto e = build_standard(2);
  auto nabla = build_christoffel_connection(e, zero_christoffel(2));
  // nabla_{d_E f} Y = sum_a Y^a d_B(d_a f).
  Scalar f = P("x1^3*x2 + x2^2");
  BSection y({P("x2"), P("1 + x1"), P("0"), P("0")});
  BSection expected = y[0] * nabla->predual().d(f.derivative(0)) +
                      y[1] * nabla->predual().d(f.derivative(1));
  CHECK(nabla->curvature1(f, y) == expected);
  CHECK(expected == BSection({P("0"), P("0"), P("6*x1*x2^2 + 3*x1^2 + 3*x1^3"),
                              P("3*x1^2*x2 + 2 + 2*x1")}));

  auto nabla_c = build_christoffel_connection(e, sample_christoffel());
  // Delta_{d1} d1 = x2 d1 + d2 on the vector part.
  CHECK(nabla_c->apply(e->frame(0), nabla_c->predual().frame(0)) ==
        BSection({P("x2"), P("1"), P("0"), P("0")}));
  // nabla_{dx1} d2 = -delta[c][1][0] dx^c = -2 x2 dx2.
  CHECK(nabla_c->apply(e->frame(2), nabla_c->predual().frame(1)) ==
        BSection({P("0"), P("0"), P("0"), P("-2*x2")}));
  CHECK(nabla_c->apply(e->frame(1), nabla_c->predual().frame(2)).is_zero());
}

TEST_CASE("connection axioms hold for the built examples") {
  BatteryConfig cfg;
  for (int n = 1; n <= 3; ++n) {
    auto nabla = build_connection(predual_self(build_standard(n)));
    require_pass(verify_connection(*nabla, cfg));
  }
  auto e = build_standard(2);
  require_pass(verify_connection(*build_christoffel_connection(e, sample_christoffel()), cfg));

  Christoffel omega{{{P("x1", 1)}}};
  auto ph = build_port_hamiltonian(1, 1, omega);
  auto [a, b] = build_port_hamiltonian_connections(ph, 1, 1, omega);
  require_pass(verify_connection(*a, cfg));
  require_pass(verify_connection(*b, cfg));
  require_pass(verify_connection(*build_connection(a->predual_ptr()), cfg));
  require_pass(verify_connection(*build_connection(b->predual_ptr()), cfg));
}

TEST_CASE("the correction term matches the defect of the trivial connection") {
  auto b = stretched_predual();
  for (int k = 0; k < 2; ++k) {
    CHECK(correction_rhs(*b, k) == correction_rhs_from_defect(*b, k));
  }
  CHECK_FALSE(correction_rhs(*b, 1).is_zero());
  DorfmanConnection trivial(b, trivial_connection_table(*b));
  Report r = verify_connection(trivial, BatteryConfig{});
  CHECK(r.find("axiom_anchor_slot")->passed());
  CHECK_FALSE(r.find("axiom_exact")->passed());
  require_pass(verify_connection(*build_connection(b), BatteryConfig{}));
}

TEST_CASE("affine combinations and differences of connections") {
  auto e = build_standard(2);
  auto a = build_christoffel_connection(e, sample_christoffel());
  auto b = build_connection(a->predual_ptr());
  auto c = affine_combine(*a, *b, P("x1"));
  BatteryConfig cfg;
  require_pass(verify_connection(*c, cfg));
  require_pass(difference_check(*a, *b, cfg));
  require_pass(difference_check(*a, *c, cfg));
  auto other = build_connection(predual_self(e));
  CHECK_THROWS_AS(affine_combine(*a, *other, P("x1")), DomainError);
}

TEST_CASE("induced connection") {
  BatteryConfig cfg;
  auto e = build_standard(2);
  auto a = build_christoffel_connection(e, sample_christoffel());
  REQUIRE(detect_adapted_frame(a->predual()) == AdaptedFrame::K);
  require_pass(verify_induced(InducedConnection(a, AdaptedFrame::K), cfg));

  Christoffel omega{{{P("x1", 1)}}};
  auto ph = build_port_hamiltonian(1, 1, omega);
  auto [n1, n2] = build_port_hamiltonian_connections(ph, 1, 1, omega);
  CHECK_FALSE(detect_adapted_frame(n1->predual()));
  require_pass(verify_induced(InducedConnection(n1), cfg));
  require_pass(verify_induced(InducedConnection(n2), cfg));
  CHECK_THROWS_AS(InducedConnection(n1, AdaptedFrame::F), DomainError);

  auto s1 = build_standard(1);
  Matrix pk = mat(3, 2, {"0", "1", "1", "0", "0", "0"}, 1);
  Matrix ak = mat(3, 1, {"0", "1", "0"}, 1);
  auto bk = std::make_shared<const PredualBundle>(s1, pk, ak);
  CHECK(detect_adapted_frame(*bk) == AdaptedFrame::K);
  require_pass(verify_induced(InducedConnection(build_connection(bk), AdaptedFrame::K), cfg));
  // standard(1) with the frame order (dx, d/dx), so B = span{dx} comes first.
  auto flipped = std::make_shared<const CourantAlgebroid>(
      1, s1->pairing_matrix(), mat(1, 2, {"0", "1"}, 1),
      BracketTable(2, std::vector<Section>(2, Section(2))));
  Matrix pf = mat(1, 2, {"0", "1"}, 1);
  Matrix af = mat(1, 1, {"1"}, 1);
  auto bf = std::make_shared<const PredualBundle>(flipped, pf, af);
  CHECK(detect_adapted_frame(*bf) == AdaptedFrame::F);
  require_pass(verify_induced(InducedConnection(build_connection(bf), AdaptedFrame::F), cfg));
}

TEST_CASE("dual connection") {
  BatteryConfig cfg;
  auto e = build_standard(2);
  auto a = build_christoffel_connection(e, sample_christoffel());
  DualConnection dual(a);
  require_pass(verify_dual(dual, *a, cfg));
  // Gamma*_{i j l} = -Gamma_{i l j}.
  CHECK(dual.gamma()[0][1][0] == -a->gamma()[0][0][1]);
  auto b = build_connection(stretched_predual());
  require_pass(verify_dual(DualConnection(b), *b, cfg));
}

TEST_CASE("curvature of the coordinate connection") {
  auto e = build_standard(2);
  auto flat_frame = build_christoffel_connection(e, zero_christoffel(2));
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      CHECK(flat_frame->curvature0_matrix(e->frame(i), e->frame(j)).is_zero());
    }
  }
  // [[x1^2 d1, dx1]] = 2 x1 dx1 and nabla_{2 x1 dx1} d1 = d_B(2 x1), while both
  // iterated terms vanish: R_0(x1^2 d1, dx1) d1 = -2 dx1.
  Section x1sq_d1 = P("x1^2") * e->frame(0);
  CHECK(flat_frame->curvature0(x1sq_d1, e->frame(2), flat_frame->predual().frame(0)) ==
        BSection({P("0"), P("0"), P("-2"), P("0")}));
}

TEST_CASE("curvature laws, endomorphisms and Bianchi") {
  BatteryConfig cfg;
  auto e = build_standard(2);
  Christoffel omega{{{P("x1", 1)}}};
  auto ph = build_port_hamiltonian(1, 1, omega);
  auto [n1, n2] = build_port_hamiltonian_connections(ph, 1, 1, omega);
  std::vector<ConnectionPtr> all{build_christoffel_connection(e, zero_christoffel(2)),
                                 build_christoffel_connection(e, sample_christoffel()),
                                 build_connection(stretched_predual()), n1, n2};
  for (const auto& nabla : all) {
    require_pass(curvature_laws(nabla, cfg));
    require_pass(flatness(nabla, cfg));
    require_pass(endo_checks(nabla, cfg));
    require_pass(bianchi_check(nabla, cfg));
  }
  Report f = flatness(all[0], cfg);
  CHECK(f.find("r0_vanishes")->status == Status::Info);
  CHECK(f.find("r1_vanishes")->detail == "does not vanish");
}

TEST_CASE("valued cochains evaluate by hand") {
  auto e = build_standard(2);
  auto nabla = build_christoffel_connection(e, sample_christoffel());
  BSection v({P("x1"), P("0"), P("1"), P("x2")});
  auto leaf = BCochain::leaf(nabla, v);
  ValuedEvaluator<BSection> ev(nabla);
  Section x({P("x2"), P("1"), P("0"), P("x1")});
  int id = ev.scalars().intern(x);
  CHECK(ev(covariant(leaf), 0, {id}, {}) == nabla->apply(x, v));
  CHECK(ev(nabla_e(x, leaf), 0, {}, {}) == nabla->apply(x, v));
  auto w = Cochain::section(e, e->frame(2));
  // <dx1, x> = x2.
  CHECK(ev(tensor(w, v, nabla), 0, {id}, {}) == P("x2") * v);
  CHECK(ev(interior_e(x, tensor(w, v, nabla)), 0, {}, {}) == P("x2") * v);
  CHECK_THROWS_AS(ev(leaf, 0, {id}, {}), DomainError);

  auto r = curvature_cochain(nabla);
  ValuedEvaluator<Matrix> mev(nabla);
  int a = mev.scalars().intern(e->frame(0));
  int b = mev.scalars().intern(e->frame(1));
  int f = mev.scalars().intern(OneForm::exact(P("x1*x2")));
  CHECK(mev(r, 0, {a, b}, {}) == nabla->curvature0_matrix(e->frame(0), e->frame(1)));
  CHECK(mev(r, 1, {}, {f}) == nabla->curvature1_matrix(e->d(P("x1*x2"))));
}

TEST_CASE("dual of the Christoffel connection on the cotangent component") {
  auto e = build_standard(2);
  Christoffel delta = sample_christoffel();
  auto nabla = build_christoffel_connection(e, delta);
  DualConnection dual(nabla);
  std::vector<Scalar> xv{P("x2"), P("1")};
  std::vector<Scalar> zeta{P("x1"), P("x2^2")};
  std::vector<Scalar> eta{P("1"), P("x1*x2")};
  std::vector<Scalar> yv{P("x2"), P("x1")};
  // (Delta*_X eta)_c = X(eta_c) - sum_a X^a eta_k delta[a][c][k].
  auto delta_star = [&](const std::vector<Scalar>& x, const std::vector<Scalar>& form, int c) {
    Scalar out;
    for (int a = 0; a < 2; ++a) {
      out += x[a] * form[c].derivative(a);
      for (int k = 0; k < 2; ++k) out -= x[a] * form[k] * delta[a][c][k];
    }
    return out;
  };
  Section x({xv[0], xv[1], zeta[0], zeta[1]});
  DualBSection beta({eta[0], eta[1], yv[0], yv[1]});
  DualBSection got = dual.apply(x, beta);
  for (int c = 0; c < 2; ++c) {
    CHECK(got[c] == delta_star(xv, eta, c) - delta_star(yv, zeta, c));
  }
}
