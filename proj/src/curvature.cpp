#include "courant/dorfman.hpp"
#include "courant/valued.hpp"

namespace courant {

namespace {

Section sec(const Battery& b, int i) { return b.vector<Section>(i); }
BSection bsec(const Battery& b, int i) { return b.vector<BSection>(i); }
DualBSection dsec(const Battery& b, int i) { return b.vector<DualBSection>(i); }

std::vector<Scalar> flat(const BSection& v) { return v.components(); }
std::vector<Scalar> flat(const Matrix& m) {
  std::vector<Scalar> out;
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) out.push_back(m(i, j));
  }
  return out;
}

Matrix scaled(const Scalar& f, Matrix m) {
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) {
      if (!m(i, j).is_zero()) m(i, j) *= f;
    }
  }
  return m;
}

Scalar dual_pairing(const DualBSection& a, const BSection& b) {
  Scalar out;
  for (int i = 0; i < b.size(); ++i) {
    if (!a[i].is_zero() && !b[i].is_zero()) out += a[i] * b[i];
  }
  return out;
}

// Endomorphisms of B indexed like battery vectors, for check_mixed style loops.
Check check_endo(std::string name, std::string identity, const Batteries& bt,
                 const std::vector<Matrix>& endos, int ne, int nf,
                 const std::function<std::vector<Scalar>(const Battery::Tuple&, const Matrix&,
                                                         const Matrix&)>& residual) {
  Check c;
  c.name = std::move(name);
  c.identity = std::move(identity);
  for (const auto& t : bt.e.tuples(ne, nf)) {
    for (std::size_t i = 0; i < endos.size(); ++i) {
      const Matrix& tau = endos[i];
      const Matrix& sigma = endos[(i + 1) % endos.size()];
      ++c.evaluations;
      std::vector<Scalar> r = residual(t, tau, sigma);
      for (const auto& s : r) {
        if (!s.is_zero()) {
          c.status = Status::Fail;
          c.witness = Witness{bt.e.describe(t) + " | tau" + std::to_string(i + 1), std::move(r)};
          return c;
        }
      }
    }
  }
  return c;
}

// Sample B-valued cochains of degree <= 2: scalar cochains tensored with
// battery sections of B, and the covariant differential of one of them.
std::vector<BCochain> sample_valued(const ConnectionPtr& nabla, const Batteries& bt) {
  auto pool = sample_cochains(nabla->predual().algebroid_ptr(), bt.e, 2);
  int nb = static_cast<int>(bt.b.vectors().size());
  std::vector<BCochain> out;
  for (std::size_t i = 0; i < pool.size() && out.size() < 6; i += 2) {
    int j = static_cast<int>((3 * i + 1) % nb);
    out.push_back(tensor(pool[i], bsec(bt.b, j), nabla));
  }
  out.push_back(covariant(BCochain::leaf(nabla, bsec(bt.b, nb - 1))));
  return out;
}

Check relation(std::string name, std::string identity, const std::vector<BCochain>& pool,
               const Battery& battery,
               const std::function<std::pair<BCochain, BCochain>(const BCochain&)>& sides) {
  Check c;
  c.name = name;
  c.identity = std::move(identity);
  for (const auto& h : pool) {
    if (h.degree() + 2 > kMaxCochainDegree) continue;
    auto [lhs, rhs] = sides(h);
    Check one = equal(lhs, rhs, battery, name);
    c.evaluations += one.evaluations;
    if (!one.passed()) {
      c.status = Status::Fail;
      c.witness = one.witness;
      c.detail = one.detail;
      return c;
    }
  }
  return c;
}

Check info_vanishing(std::string name, std::string identity, Check probe) {
  probe.name = std::move(name);
  probe.identity = std::move(identity);
  probe.detail = probe.passed() ? "vanishes" : "does not vanish";
  probe.status = Status::Info;
  return probe;
}

}  // namespace

Report curvature_laws(const ConnectionPtr& nabla, const BatteryConfig& config) {
  const PredualBundle& b = nabla->predual();
  const CourantAlgebroid& alg = b.algebroid();
  Batteries bt(b, config);
  InducedConnection induced(nabla);
  Report report;

  report.checks.push_back(check_mixed(
      "curvature0_linear_in_b", "R_0(e1, e2)(f b) = f R_0(e1, e2) b", bt, 2, 1, 1,
      [&](const Battery::Tuple& x, const Battery::Tuple& y) {
        Section e1 = sec(bt.e, x.vectors[0]);
        Section e2 = sec(bt.e, x.vectors[1]);
        BSection v = bsec(bt.b, y.vectors[0]);
        const Scalar& f = bt.e.function(x.functions[0]);
        return flat(nabla->curvature0(e1, e2, f * v) - f * nabla->curvature0(e1, e2, v));
      }));
  report.checks.push_back(check_mixed(
      "curvature1_linear_in_b", "R_1(g)(f b) = f R_1(g) b", bt, 0, 1, 2,
      [&](const Battery::Tuple& x, const Battery::Tuple& y) {
        BSection v = bsec(bt.b, y.vectors[0]);
        const Scalar& g = bt.e.function(x.functions[0]);
        const Scalar& f = bt.e.function(x.functions[1]);
        return flat(nabla->curvature1(g, f * v) - f * nabla->curvature1(g, v));
      }));
  report.checks.push_back(check_identity(
      "curvature_kills_image_of_d", "R_0(e1, e2) d_B f = 0 and R_1(g) d_B f = 0", bt.e, 2, 2,
      [&](const Battery::Tuple& t) {
        Section e1 = sec(bt.e, t.vectors[0]);
        Section e2 = sec(bt.e, t.vectors[1]);
        BSection df = b.d(bt.e.function(t.functions[0]));
        const Scalar& g = bt.e.function(t.functions[1]);
        auto r = flat(nabla->curvature0(e1, e2, df));
        auto r1 = flat(nabla->curvature1(g, df));
        r.insert(r.end(), r1.begin(), r1.end());
        return r;
      }));

  ValuedEvaluator<BSection> ev(nabla);
  report.checks.push_back(check_mixed(
      "covariant_square_components",
      "(d^nabla)^2 b = R_0(e1, e2) b on sections and i_f (d^nabla)^2 b = nabla_{d_E f} b", bt, 2,
      1, 1, [&](const Battery::Tuple& x, const Battery::Tuple& y) {
        Section e1 = sec(bt.e, x.vectors[0]);
        Section e2 = sec(bt.e, x.vectors[1]);
        BSection v = bsec(bt.b, y.vectors[0]);
        const Scalar& f = bt.e.function(x.functions[0]);
        auto sq = covariant(covariant(BCochain::leaf(nabla, v)));
        Evaluator::Ids es{ev.scalars().intern(e1), ev.scalars().intern(e2)};
        Evaluator::Ids fs{ev.scalars().intern(OneForm::exact(f))};
        auto r = flat(ev(sq, 0, es, {}) - nabla->curvature0(e1, e2, v));
        auto r1 = flat(ev(sq, 1, {}, fs) - nabla->curvature1(f, v));
        r.insert(r.end(), r1.begin(), r1.end());
        return r;
      }));
  report.checks.push_back(check_mixed(
      "curvature_symbol_first_slot",
      "R_0(f e1, e2) b - f R_0(e1, e2) b = (<<e1, nabla_e2 b>> - rho(e2)<<e1, b>> - "
      "<<[[e1, e2]], b>>) d_B f - nabla_{<e1, e2> d_E f} b",
      bt, 2, 1, 1, [&](const Battery::Tuple& x, const Battery::Tuple& y) {
        Section e1 = sec(bt.e, x.vectors[0]);
        Section e2 = sec(bt.e, x.vectors[1]);
        BSection v = bsec(bt.b, y.vectors[0]);
        const Scalar& f = bt.e.function(x.functions[0]);
        Scalar coef = b.pairing(e1, nabla->apply(e2, v)) -
                      alg.anchor_apply(e2, b.pairing(e1, v)) -
                      b.pairing(alg.bracket(e1, e2), v);
        BSection expected =
            coef * b.d(f) - nabla->apply(alg.pairing(e1, e2) * alg.d(f), v);
        return flat(nabla->curvature0(f * e1, e2, v) - f * nabla->curvature0(e1, e2, v) -
                    expected);
      }));
  report.checks.push_back(check_mixed(
      "curvature_symbol_second_slot", "R_0(e1, f e2) b - f R_0(e1, e2) b = -<D_b e1, e2> d_B f",
      bt, 2, 1, 1, [&](const Battery::Tuple& x, const Battery::Tuple& y) {
        Section e1 = sec(bt.e, x.vectors[0]);
        Section e2 = sec(bt.e, x.vectors[1]);
        BSection v = bsec(bt.b, y.vectors[0]);
        const Scalar& f = bt.e.function(x.functions[0]);
        BSection expected = -alg.pairing(induced.apply(v, e1), e2) * b.d(f);
        return flat(nabla->curvature0(e1, f * e2, v) - f * nabla->curvature0(e1, e2, v) -
                    expected);
      }));

  auto pool = sample_valued(nabla, bt);
  auto sign = [](int p) { return Rational(p % 2 ? -1 : 1); };
  auto scalars = sample_cochains(b.algebroid_ptr(), bt.e, 1);
  const Cochain& w1 = scalars.back();
  Section x = sec(bt.e, static_cast<int>(bt.e.vectors().size()) - 1);
  Section y = sec(bt.e, 1 % alg.rank());
  report.checks.push_back(relation(
      "covariant_leibniz", "d^nabla(w h) = (d w) h + (-1)^|w| w d^nabla h", pool, bt.e,
      [&](const BCochain& h) {
        return std::pair{covariant(product(w1, h)),
                         linear_combination<BSection>({{Rational(1), product(d(w1), h)},
                                                       {sign(w1.degree()), product(w1, covariant(h))}})};
      }));
  report.checks.push_back(relation(
      "interior_leibniz", "i_e(w h) = (i_e w) h + (-1)^|w| w i_e h", pool, bt.e,
      [&](const BCochain& h) {
        return std::pair{interior_e(x, product(w1, h)),
                         linear_combination<BSection>(
                             {{Rational(1), product(interior_e(x, w1), h)},
                              {sign(w1.degree()), product(w1, interior_e(x, h))}})};
      }));
  report.checks.push_back(relation(
      "nabla_interior", "[nabla_e1, i_e2] = i_[[e1, e2]]", pool, bt.e, [&](const BCochain& h) {
        return std::pair{
            linear_combination<BSection>(
                {{Rational(1), nabla_e(x, interior_e(y, h))},
                 {Rational(-1), interior_e(y, nabla_e(x, h))}}),
            interior_e(alg.bracket(x, y), h)};
      }));
  report.checks.push_back(relation(
      "nabla_tensor", "nabla_e(w b) = (L_e w) b + w nabla_e b", pool, bt.e,
      [&](const BCochain&) {
        BSection v = bsec(bt.b, 2 % b.rank());
        return std::pair{nabla_e(x, tensor(w1, v, nabla)),
                         linear_combination<BSection>(
                             {{Rational(1), tensor(lie_e(x, w1), v, nabla)},
                              {Rational(1), tensor(w1, nabla->apply(x, v), nabla)}})};
      }));
  report.checks.push_back(relation(
      "nabla_function_interior", "[nabla_e, i_f] = i_{rho(e) f}", pool, bt.e,
      [&](const BCochain& h) {
        const Scalar& f = bt.e.function(1);
        return std::pair{
            linear_combination<BSection>({{Rational(1), nabla_e(x, interior_f(f, h))},
                                          {Rational(-1), interior_f(f, nabla_e(x, h))}}),
            interior_f(alg.anchor_apply(x, f), h)};
      }));
  return report;
}

Report flatness(const ConnectionPtr& nabla, const BatteryConfig& config) {
  const PredualBundle& b = nabla->predual();
  const CourantAlgebroid& alg = b.algebroid();
  Batteries bt(b, config);
  auto endos = sample_endomorphisms(bt);
  Report report;

  report.checks.push_back(info_vanishing(
      "r0_vanishes", "R_0(e1, e2) = 0", check_identity("", "", bt.e, 2, 0, [&](const auto& t) {
        return flat(nabla->curvature0_matrix(sec(bt.e, t.vectors[0]), sec(bt.e, t.vectors[1])));
      })));
  report.checks.push_back(info_vanishing(
      "r1_vanishes", "R_1(f) = 0", check_identity("", "", bt.e, 0, 1, [&](const auto& t) {
        return flat(nabla->curvature1_matrix(alg.d(bt.e.function(t.functions[0]))));
      })));
  report.checks.push_back(check_endo(
      "endo_curvature", "R~_0(e1, e2) tau = [R_0(e1, e2), tau] and R~_1(f) tau = [R_1(f), tau]",
      bt, endos, 2, 1, [&](const Battery::Tuple& t, const Matrix& tau, const Matrix&) {
        Section e1 = sec(bt.e, t.vectors[0]);
        Section e2 = sec(bt.e, t.vectors[1]);
        const Scalar& f = bt.e.function(t.functions[0]);
        Matrix r0 = nabla->endo(e1, nabla->endo(e2, tau)) - nabla->endo(e2, nabla->endo(e1, tau)) -
                    nabla->endo(alg.bracket(e1, e2), tau);
        Matrix r1 = nabla->endo(alg.d(f), tau);
        auto r = flat(r0 - commutator(nabla->curvature0_matrix(e1, e2), tau));
        auto s = flat(r1 - commutator(nabla->curvature1_matrix(alg.d(f)), tau));
        r.insert(r.end(), s.begin(), s.end());
        return r;
      }));
  return report;
}

Report endo_checks(const ConnectionPtr& nabla, const BatteryConfig& config) {
  const PredualBundle& b = nabla->predual();
  const CourantAlgebroid& alg = b.algebroid();
  Batteries bt(b, config);
  auto endos = sample_endomorphisms(bt);
  Report report;
  report.checks.push_back(check_endo(
      "endo_on_sections", "(nabla~_e tau) b = nabla_e(tau b) - tau nabla_e b", bt, endos, 1, 0,
      [&](const Battery::Tuple& t, const Matrix& tau, const Matrix&) {
        Section e = sec(bt.e, t.vectors[0]);
        std::vector<Scalar> r;
        Matrix m = nabla->endo(e, tau);
        for (int j = 0; j < static_cast<int>(bt.b.vectors().size()); j += 3) {
          BSection v = bsec(bt.b, j);
          auto part = flat(apply_matrix(m, v) - nabla->apply(e, apply_matrix(tau, v)) +
                           apply_matrix(tau, nabla->apply(e, v)));
          r.insert(r.end(), part.begin(), part.end());
        }
        return r;
      }));
  report.checks.push_back(check_endo(
      "endo_product_rule", "nabla~_e(tau sigma) = (nabla~_e tau) sigma + tau nabla~_e sigma", bt,
      endos, 1, 0, [&](const Battery::Tuple& t, const Matrix& tau, const Matrix& sigma) {
        Section e = sec(bt.e, t.vectors[0]);
        return flat(nabla->endo(e, tau * sigma) - nabla->endo(e, tau) * sigma -
                    tau * nabla->endo(e, sigma));
      }));
  report.checks.push_back(check_endo(
      "endo_leibniz", "nabla~_e(f tau) = f nabla~_e tau + rho(e)(f) tau", bt, endos, 1, 1,
      [&](const Battery::Tuple& t, const Matrix& tau, const Matrix&) {
        Section e = sec(bt.e, t.vectors[0]);
        const Scalar& f = bt.e.function(t.functions[0]);
        return flat(nabla->endo(e, scaled(f, tau)) - scaled(f, nabla->endo(e, tau)) -
                    scaled(alg.anchor_apply(e, f), tau));
      }));
  report.checks.push_back(check_endo(
      "endo_anchor_slot",
      "(nabla~_{f e} tau) b = f (nabla~_e tau) b + <<e, tau b>> d_B f - <<e, b>> tau d_B f", bt,
      endos, 1, 1, [&](const Battery::Tuple& t, const Matrix& tau, const Matrix&) {
        Section e = sec(bt.e, t.vectors[0]);
        const Scalar& f = bt.e.function(t.functions[0]);
        Matrix diff = nabla->endo(f * e, tau) - scaled(f, nabla->endo(e, tau));
        std::vector<Scalar> r;
        for (int j = 0; j < b.rank(); ++j) {
          BSection v = b.frame(j);
          BSection expected = b.pairing(e, apply_matrix(tau, v)) * b.d(f) -
                              b.pairing(e, v) * apply_matrix(tau, b.d(f));
          auto part = flat(apply_matrix(diff, v) - expected);
          r.insert(r.end(), part.begin(), part.end());
        }
        return r;
      }));
  report.checks.push_back(check_identity(
      "endo_identity_parallel", "nabla~_e id = 0", bt.e, 1, 0, [&](const Battery::Tuple& t) {
        return flat(nabla->endo(sec(bt.e, t.vectors[0]), Matrix::identity(b.rank())));
      }));
  return report;
}

Report bianchi_check(const ConnectionPtr& nabla, const BatteryConfig& config) {
  const PredualBundle& b = nabla->predual();
  const CourantAlgebroid& alg = b.algebroid();
  Batteries bt(b, config);
  EndCochain r = curvature_cochain(nabla);
  EndCochain dr = covariant(r);
  ValuedEvaluator<Matrix> ev(nabla);
  auto ids = [&](const Battery::Tuple& t) {
    Evaluator::Ids out;
    for (int v : t.vectors) out.push_back(ev.scalars().intern(sec(bt.e, v)));
    return out;
  };
  auto forms = [&](const Battery::Tuple& t) {
    Evaluator::Ids out;
    for (int f : t.functions) out.push_back(ev.scalars().intern(OneForm::exact(bt.e.function(f))));
    return out;
  };
  Report report;
  report.checks.push_back(check_identity(
      "bianchi_sections", "(d^{nabla~} R)(e1, e2, e3) = 0", bt.e, 3, 0,
      [&](const Battery::Tuple& t) { return flat(ev(dr, 0, ids(t), {})); }));
  report.checks.push_back(check_identity(
      "bianchi_function_slot", "(d^{nabla~} R)(e; f) = 0", bt.e, 1, 1,
      [&](const Battery::Tuple& t) { return flat(ev(dr, 1, ids(t), forms(t))); }));
  report.checks.push_back(check_identity(
      "bianchi_function_slot_formula",
      "(d^{nabla~} R)(e; f) = R_0(d_E f, e) + nabla~_e R_1(f)", bt.e, 1, 1,
      [&](const Battery::Tuple& t) {
        Section e = sec(bt.e, t.vectors[0]);
        Section df = alg.d(bt.e.function(t.functions[0]));
        Matrix direct = nabla->curvature0_matrix(df, e) +
                        nabla->endo(e, nabla->curvature1_matrix(df));
        return flat(ev(dr, 1, ids(t), forms(t)) - direct);
      }));
  DualConnection dual(nabla);
  report.checks.push_back(check_mixed(
      "dual_curvature", "<R*_0(e1, e2) b*, b> = -<b*, R_0(e1, e2) b> and likewise for R_1", bt,
      2, 2, 1, [&](const Battery::Tuple& x, const Battery::Tuple& y) {
        Section e1 = sec(bt.e, x.vectors[0]);
        Section e2 = sec(bt.e, x.vectors[1]);
        const Scalar& f = bt.e.function(x.functions[0]);
        DualBSection bs = dsec(bt.b, y.vectors[0]);
        BSection v = bsec(bt.b, y.vectors[1]);
        return std::vector<Scalar>{
            dual_pairing(dual.curvature0(e1, e2, bs), v) +
                dual_pairing(bs, nabla->curvature0(e1, e2, v)),
            dual_pairing(dual.curvature1(f, bs), v) + dual_pairing(bs, nabla->curvature1(f, v))};
      }));
  return report;
}

}  // namespace courant
