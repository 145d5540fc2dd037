#include "courant/dorfman.hpp"

#include <functional>

namespace courant {

namespace {

std::string idx(int i) { return std::to_string(i + 1); }

template <class Tag>
std::vector<Scalar> residual_of(const FrameVector<Tag>& v) {
  return v.components();
}

std::vector<Scalar> residual_of(const Scalar& s) { return {s}; }

Section sec(const Battery& b, int i) { return b.vector<Section>(i); }
BSection bsec(const Battery& b, int i) { return b.vector<BSection>(i); }

}  // namespace

Check check_mixed(std::string name, std::string identity, const Batteries& bt, int ne, int nb,
                  int nf, const MixedResidual& residual) {
  Check c;
  c.name = std::move(name);
  c.identity = std::move(identity);
  auto te = bt.e.tuples(ne, nf);
  auto tb = bt.b.tuples(nb, 0);
  for (const auto& x : te) {
    for (const auto& y : tb) {
      ++c.evaluations;
      std::vector<Scalar> r = residual(x, y);
      for (const auto& s : r) {
        if (!s.is_zero()) {
          c.status = Status::Fail;
          std::string args = bt.e.describe(x);
          std::string bargs = bt.b.describe(y);
          if (!bargs.empty()) args += args.empty() ? bargs : " | " + bargs;
          c.witness = Witness{args, std::move(r)};
          return c;
        }
      }
    }
  }
  return c;
}

// ------------------------------------------------------------------ predual

PredualBundle::PredualBundle(AlgebroidPtr e, Matrix pairing, Matrix alpha)
    : e_(std::move(e)), p_(std::move(pairing)), a_(std::move(alpha)) {
  int r = e_->rank();
  int n = e_->base_dim();
  if (p_.rows() < 1 || p_.cols() != r) {
    throw DomainError("pairing_P must be s x " + std::to_string(r) + " with s >= 1");
  }
  if (a_.rows() != p_.rows() || a_.cols() != n) {
    throw DomainError("alpha_A must be " + std::to_string(p_.rows()) + " x " +
                      std::to_string(n));
  }
  Matrix lhs = a_.transpose() * p_;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < r; ++j) {
      if (!(lhs(i, j) == e_->anchor_matrix()(i, j))) {
        throw DomainError("A^T P differs from the anchor at (" + idx(i) + "," + idx(j) +
                          "): " + lhs(i, j).to_string() + " vs " +
                          e_->anchor_matrix()(i, j).to_string());
      }
    }
  }
  embed_ = e_->inverse_pairing() * p_.transpose();
}

BSection PredualBundle::d(const Scalar& f) const {
  BSection out = zero();
  if (f.is_constant()) return out;
  auto grad = gradient(f, e_->base_dim());
  for (int i = 0; i < rank(); ++i) {
    for (int l = 0; l < e_->base_dim(); ++l) {
      if (!a_(i, l).is_zero() && !grad[l].is_zero()) out[i] += a_(i, l) * grad[l];
    }
  }
  return out;
}

Scalar PredualBundle::pairing(const Section& e, const BSection& b) const {
  Scalar out;
  for (int i = 0; i < rank(); ++i) {
    if (b[i].is_zero()) continue;
    for (int j = 0; j < e.size(); ++j) {
      if (!e[j].is_zero() && !p_(i, j).is_zero()) out += b[i] * p_(i, j) * e[j];
    }
  }
  return out;
}

DualBSection PredualBundle::pairing_form(const Section& e) const {
  DualBSection out(rank());
  for (int i = 0; i < rank(); ++i) {
    for (int j = 0; j < e.size(); ++j) {
      if (!e[j].is_zero() && !p_(i, j).is_zero()) out[i] += p_(i, j) * e[j];
    }
  }
  return out;
}

Section PredualBundle::embed(const BSection& b) const {
  Section out = e_->zero();
  for (int k = 0; k < out.size(); ++k) {
    for (int i = 0; i < rank(); ++i) {
      if (!b[i].is_zero() && !embed_(k, i).is_zero()) out[k] += embed_(k, i) * b[i];
    }
  }
  return out;
}

PredualPtr predual_self(AlgebroidPtr e) {
  Matrix p = e->pairing_matrix().transpose();
  Matrix a = e->inverse_pairing() * e->anchor_matrix().transpose();
  return std::make_shared<const PredualBundle>(std::move(e), std::move(p), std::move(a));
}

PredualPtr port_hamiltonian_predual(AlgebroidPtr e, int n, int v, bool dual_side) {
  if (e->rank() != 2 * n + 2 * v || e->base_dim() != n) {
    throw DomainError("algebroid is not a port-Hamiltonian algebroid with n=" +
                      std::to_string(n) + ", v=" + std::to_string(v));
  }
  int s = n + v;
  Matrix p(s, e->rank());
  Matrix a(s, n);
  for (int k = 0; k < n; ++k) {
    p(k, k) = 1;
    a(k, k) = 1;
  }
  for (int c = 0; c < v; ++c) p(n + c, dual_side ? 2 * n + c : 2 * n + v + c) = 1;
  return std::make_shared<const PredualBundle>(std::move(e), std::move(p), std::move(a));
}

PredualDiagnosis diagnose(const PredualBundle& b) {
  PredualDiagnosis out;
  out.rank_e = b.algebroid().rank();
  out.rank_b = b.rank();
  out.rank_pairing = rank(b.pairing_matrix());
  out.rank_k = out.rank_b - out.rank_pairing;
  out.rank_f = out.rank_e - out.rank_pairing;
  bool onto_e = out.rank_pairing == out.rank_e;
  bool onto_b = out.rank_pairing == out.rank_b;
  if (onto_e && onto_b) {
    out.classification = "B = E";
  } else if (onto_e) {
    out.classification = "B = E + K";
  } else if (onto_b) {
    out.classification = "E = B + F";
  } else {
    out.classification = "neither";
  }
  return out;
}

Batteries::Batteries(const PredualBundle& bundle, const BatteryConfig& config)
    : e(bundle.algebroid().base_dim(), bundle.algebroid().rank(), config, "e"),
      b(bundle.algebroid().base_dim(), bundle.rank(), config, "b") {}

// -------------------------------------------------------------- connection

DorfmanConnection::DorfmanConnection(PredualPtr b, ConnectionTable gamma)
    : b_(std::move(b)), gamma_(std::move(gamma)) {
  int r = b_->algebroid().rank();
  int s = b_->rank();
  bool ok = static_cast<int>(gamma_.size()) == r;
  for (const auto& row : gamma_) {
    ok = ok && static_cast<int>(row.size()) == s;
    for (const auto& v : row) ok = ok && v.size() == s;
  }
  if (!ok) {
    throw DomainError("connection table must be " + std::to_string(r) + " x " +
                      std::to_string(s) + " sections of length " + std::to_string(s));
  }
}

BSection DorfmanConnection::apply(const Section& e, const BSection& b) const {
  const CourantAlgebroid& alg = algebroid();
  const Matrix& p = b_->pairing_matrix();
  int s = rank();
  BSection out = b_->zero();
  for (int i = 0; i < e.size(); ++i) {
    const Scalar& g = e[i];
    if (g.is_zero()) continue;
    for (int j = 0; j < s; ++j) {
      if (!b[j].is_zero() && !gamma_[i][j].is_zero()) out += (g * b[j]) * gamma_[i][j];
    }
    auto field = alg.anchor_field(alg.frame(i));
    for (int j = 0; j < s; ++j) {
      if (b[j].is_constant()) continue;
      Scalar v = apply_field(field, b[j]);
      if (!v.is_zero()) out[j] += g * v;
    }
    if (g.is_constant()) continue;
    Scalar coef;
    for (int j = 0; j < s; ++j) {
      if (!b[j].is_zero() && !p(j, i).is_zero()) coef += b[j] * p(j, i);
    }
    if (!coef.is_zero()) out += coef * b_->d(g);
  }
  return out;
}

BSection DorfmanConnection::curvature0(const Section& e1, const Section& e2,
                                       const BSection& b) const {
  return apply(e1, apply(e2, b)) - apply(e2, apply(e1, b)) -
         apply(algebroid().bracket(e1, e2), b);
}

BSection DorfmanConnection::curvature1(const Scalar& f, const BSection& b) const {
  return apply(algebroid().d(f), b);
}

namespace {

Matrix columns(int s, const std::function<BSection(const BSection&)>& map) {
  Matrix m(s, s);
  for (int j = 0; j < s; ++j) {
    BSection c = map(BSection::basis(s, j));
    for (int i = 0; i < s; ++i) m(i, j) = c[i];
  }
  return m;
}

}  // namespace

Matrix DorfmanConnection::matrix_of(const Section& e) const {
  return columns(rank(), [&](const BSection& b) { return apply(e, b); });
}

Matrix DorfmanConnection::curvature0_matrix(const Section& e1, const Section& e2) const {
  Section br = algebroid().bracket(e1, e2);
  return columns(rank(), [&](const BSection& b) {
    return apply(e1, apply(e2, b)) - apply(e2, apply(e1, b)) - apply(br, b);
  });
}

Matrix DorfmanConnection::curvature1_matrix(const Section& sharp) const {
  return matrix_of(sharp);
}

Matrix DorfmanConnection::endo(const Section& e, const Matrix& tau) const {
  int s = rank();
  Matrix out(s, s);
  Matrix ne = matrix_of(e);
  for (int j = 0; j < s; ++j) {
    BSection col(s);
    for (int i = 0; i < s; ++i) col[i] = tau(i, j);
    BSection v = apply(e, col);
    for (int i = 0; i < s; ++i) out(i, j) = v[i];
  }
  return out - tau * ne;
}

BSection apply_matrix(const Matrix& m, const BSection& b) {
  BSection out(m.rows());
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) {
      if (!m(i, j).is_zero() && !b[j].is_zero()) out[i] += m(i, j) * b[j];
    }
  }
  return out;
}

Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

// ------------------------------------------------------------ verification

namespace {

Check axiom3(const DorfmanConnection& nabla, const Batteries& bt) {
  const PredualBundle& b = nabla.predual();
  return check_identity("axiom_exact", "nabla_e d_B f = d_B(rho(e) f)", bt.e, 1, 1,
                        [&](const Battery::Tuple& t) {
                          Section e = sec(bt.e, t.vectors[0]);
                          const Scalar& f = bt.e.function(t.functions[0]);
                          return residual_of(
                              nabla.apply(e, b.d(f)) -
                              b.d(b.algebroid().anchor_apply(e, f)));
                        });
}

}  // namespace

Report verify_connection(const DorfmanConnection& nabla, const BatteryConfig& config) {
  const PredualBundle& b = nabla.predual();
  Batteries bt(b, config);
  Report report;
  report.checks.push_back(check_mixed(
      "axiom_anchor_slot", "nabla_{f e} b = f nabla_e b + <<e, b>> d_B f", bt, 1, 1, 1,
      [&](const Battery::Tuple& x, const Battery::Tuple& y) {
        Section e = sec(bt.e, x.vectors[0]);
        BSection v = bsec(bt.b, y.vectors[0]);
        const Scalar& f = bt.e.function(x.functions[0]);
        return residual_of(nabla.apply(f * e, v) - f * nabla.apply(e, v) -
                           b.pairing(e, v) * b.d(f));
      }));
  report.checks.push_back(check_mixed(
      "axiom_leibniz", "nabla_e (f b) = f nabla_e b + rho(e)(f) b", bt, 1, 1, 1,
      [&](const Battery::Tuple& x, const Battery::Tuple& y) {
        Section e = sec(bt.e, x.vectors[0]);
        BSection v = bsec(bt.b, y.vectors[0]);
        const Scalar& f = bt.e.function(x.functions[0]);
        return residual_of(nabla.apply(e, f * v) - f * nabla.apply(e, v) -
                           b.algebroid().anchor_apply(e, f) * v);
      }));
  report.checks.push_back(axiom3(nabla, bt));
  return report;
}

ConnectionTable trivial_connection_table(const PredualBundle& b) {
  int r = b.algebroid().rank();
  int s = b.rank();
  ConnectionTable g(r, std::vector<BSection>(s, b.zero()));
  for (int k = 0; k < r; ++k) {
    for (int i = 0; i < s; ++i) g[k][i] = b.d(b.pairing_matrix()(i, k));
  }
  return g;
}

Matrix correction_rhs(const PredualBundle& b, int k) {
  const Matrix& a = b.alpha();
  const Matrix& p = b.pairing_matrix();
  int n = b.algebroid().base_dim();
  int s = b.rank();
  Matrix out(n, s);
  for (int l = 0; l < n; ++l) {
    for (int q = 0; q < s; ++q) {
      Scalar sum;
      for (int t = 0; t < s; ++t) {
        if (p(t, k).is_zero()) continue;
        Scalar inner;
        for (int j = 0; j < n; ++j) {
          if (!a(q, j).is_zero()) inner += a(q, j) * a(t, l).derivative(j);
          if (!a(t, j).is_zero()) inner -= a(t, j) * a(q, l).derivative(j);
        }
        if (!inner.is_zero()) sum += inner * p(t, k);
      }
      out(l, q) = sum;
    }
  }
  return out;
}

Matrix correction_rhs_from_defect(const PredualBundle& b, int k) {
  const Matrix& a = b.alpha();
  const Matrix& rho = b.algebroid().anchor_matrix();
  int n = b.algebroid().base_dim();
  int s = b.rank();
  ConnectionTable g0 = trivial_connection_table(b);
  Section ek = b.algebroid().frame(k);
  Matrix out(n, s);
  for (int l = 0; l < n; ++l) {
    for (int q = 0; q < s; ++q) {
      Scalar m;
      for (int j = 0; j < n; ++j) {
        if (!a(q, j).is_zero()) m += a(q, j) * rho(l, k).derivative(j);
      }
      m -= b.algebroid().anchor_apply(ek, a(q, l));
      for (int i = 0; i < s; ++i) {
        if (!a(i, l).is_zero()) m -= a(i, l) * g0[k][i][q];
      }
      out(l, q) = m;
    }
  }
  return out;
}

ConnectionPtr build_connection(PredualPtr b) {
  int r = b->algebroid().rank();
  int s = b->rank();
  ConnectionTable g = trivial_connection_table(*b);
  Matrix at = b->alpha().transpose();
  for (int k = 0; k < r; ++k) {
    Matrix rhs = correction_rhs(*b, k);
    if (rhs.is_zero()) continue;
    auto c = solve(at, rhs);
    if (!c) {
      throw DomainError("correction system A^T C = N is inconsistent for k = " + idx(k));
    }
    for (int i = 0; i < s; ++i) {
      for (int q = 0; q < s; ++q) g[k][i][q] += (*c)(i, q);
    }
  }
  auto nabla = std::make_shared<const DorfmanConnection>(b, std::move(g));
  Check post = axiom3(*nabla, Batteries(*b, BatteryConfig{}));
  if (!post.passed()) {
    throw Error("constructed connection violates nabla_e d_B f = d_B(rho(e) f) at " +
                post.witness->arguments + ": " + post.witness->residual_text());
  }
  return nabla;
}

ConnectionPtr affine_combine(const DorfmanConnection& a, const DorfmanConnection& b,
                             const Scalar& g) {
  if (a.predual_ptr() != b.predual_ptr()) {
    throw DomainError("affine combination needs connections on the same predual");
  }
  ConnectionTable out = a.gamma();
  Scalar h = Scalar(1) - g;
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (std::size_t j = 0; j < out[i].size(); ++j) {
      out[i][j] = h * a.gamma()[i][j] + g * b.gamma()[i][j];
    }
  }
  return std::make_shared<const DorfmanConnection>(a.predual_ptr(), std::move(out));
}

Report difference_check(const DorfmanConnection& a, const DorfmanConnection& b,
                        const BatteryConfig& config) {
  if (a.predual_ptr() != b.predual_ptr()) {
    throw DomainError("difference needs connections on the same predual");
  }
  const PredualBundle& bundle = a.predual();
  Batteries bt(bundle, config);
  auto diff = [&](const Section& e, const BSection& v) { return a.apply(e, v) - b.apply(e, v); };
  Report report;
  report.checks.push_back(check_mixed(
      "difference_linear_in_e", "(nabla - nabla')(f e, b) = f (nabla - nabla')(e, b)", bt, 1,
      1, 1, [&](const Battery::Tuple& x, const Battery::Tuple& y) {
        Section e = sec(bt.e, x.vectors[0]);
        BSection v = bsec(bt.b, y.vectors[0]);
        const Scalar& f = bt.e.function(x.functions[0]);
        return residual_of(diff(f * e, v) - f * diff(e, v));
      }));
  report.checks.push_back(check_mixed(
      "difference_linear_in_b", "(nabla - nabla')(e, f b) = f (nabla - nabla')(e, b)", bt, 1,
      1, 1, [&](const Battery::Tuple& x, const Battery::Tuple& y) {
        Section e = sec(bt.e, x.vectors[0]);
        BSection v = bsec(bt.b, y.vectors[0]);
        const Scalar& f = bt.e.function(x.functions[0]);
        return residual_of(diff(e, f * v) - f * diff(e, v));
      }));
  report.checks.push_back(check_identity(
      "difference_kills_exact", "(nabla - nabla')(e, d_B f) = 0", bt.e, 1, 1,
      [&](const Battery::Tuple& t) {
        return residual_of(diff(sec(bt.e, t.vectors[0]), bundle.d(bt.e.function(t.functions[0]))));
      }));
  return report;
}

// ----------------------------------------------------------------- examples

ConnectionPtr build_christoffel_connection(AlgebroidPtr standard, const Christoffel& delta) {
  int n = standard->base_dim();
  auto ref = build_standard(std::max(n, 1));
  if (n < 1 || standard->rank() != 2 * n ||
      !(standard->pairing_matrix() == ref->pairing_matrix()) ||
      !(standard->anchor_matrix() == ref->anchor_matrix())) {
    throw DomainError("the Christoffel connection needs the standard algebroid on T M + T*M");
  }
  bool shape = static_cast<int>(delta.size()) == n;
  for (const auto& a : delta) {
    shape = shape && static_cast<int>(a.size()) == n;
    for (const auto& b : a) shape = shape && static_cast<int>(b.size()) == n;
  }
  if (!shape) throw DomainError("christoffel symbols must be n x n x n");
  auto b = predual_self(standard);
  ConnectionTable g(2 * n, std::vector<BSection>(2 * n, b->zero()));
  for (int a = 0; a < n; ++a) {
    for (int c = 0; c < n; ++c) {
      for (int k = 0; k < n; ++k) {
        g[a][c][k] = delta[a][c][k];
        g[n + a][c][n + k] = -delta[k][c][a];
      }
    }
  }
  auto nabla = std::make_shared<const DorfmanConnection>(b, std::move(g));
  Check post = axiom3(*nabla, Batteries(*b, BatteryConfig{}));
  if (!post.passed()) throw Error("Christoffel connection fails axiom 3 at " + post.witness->arguments);
  return nabla;
}

std::pair<ConnectionPtr, ConnectionPtr> build_port_hamiltonian_connections(
    AlgebroidPtr e, int n, int v, const Christoffel& omega) {
  auto b = port_hamiltonian_predual(e, n, v, false);
  auto bd = port_hamiltonian_predual(e, n, v, true);
  int r = e->rank();
  int s = n + v;
  ConnectionTable g(r, std::vector<BSection>(s, b->zero()));
  ConnectionTable gd(r, std::vector<BSection>(s, b->zero()));
  auto vf = [n](int c) { return 2 * n + c; };
  auto vd = [n, v](int c) { return 2 * n + v + c; };
  for (int c = 0; c < v; ++c) {
    for (int d = 0; d < v; ++d) {
      for (int a = 0; a < n; ++a) {
        g[a][n + c][n + d] = omega[a][c][d];
        gd[a][n + c][n + d] = -omega[a][d][c];
      }
    }
    for (int bb = 0; bb < v; ++bb) {
      for (int d = 0; d < n; ++d) {
        g[vd(bb)][n + c][d] = -omega[d][c][bb];
        gd[vf(bb)][n + c][d] = omega[d][bb][c];
      }
    }
  }
  auto nabla = std::make_shared<const DorfmanConnection>(b, std::move(g));
  auto nabla2 = std::make_shared<const DorfmanConnection>(bd, std::move(gd));
  for (const auto& c : {nabla, nabla2}) {
    Check post = axiom3(*c, Batteries(c->predual(), BatteryConfig{}));
    if (!post.passed()) {
      throw Error("port-Hamiltonian connection fails axiom 3 at " + post.witness->arguments);
    }
  }
  return {nabla, nabla2};
}

// ---------------------------------------------------------------- induced D

std::optional<AdaptedFrame> detect_adapted_frame(const PredualBundle& b) {
  const Matrix& p = b.pairing_matrix();
  const Matrix& g = b.algebroid().pairing_matrix();
  int r = g.rows();
  int s = b.rank();
  auto row_matches = [&](int i) {
    for (int j = 0; j < r; ++j) {
      if (!(p(i, j) == (i < r ? g(i, j) : Scalar()))) return false;
    }
    return true;
  };
  bool all = true;
  for (int i = 0; i < s; ++i) all = all && row_matches(i);
  if (!all) return std::nullopt;
  return s >= r ? AdaptedFrame::K : AdaptedFrame::F;
}

InducedConnection::InducedConnection(ConnectionPtr nabla, AdaptedFrame frame)
    : nabla_(std::move(nabla)), frame_(frame) {
  const PredualBundle& b = nabla_->predual();
  int r = b.algebroid().rank();
  int s = b.rank();
  if (frame == AdaptedFrame::K && s < r) {
    throw DomainError("frame K needs rank B >= rank E");
  }
  if (frame == AdaptedFrame::F && s > r) {
    throw DomainError("frame F needs rank B <= rank E");
  }
  const Matrix& p = b.pairing_matrix();
  const Matrix& g = b.algebroid().pairing_matrix();
  for (int i = 0; i < s; ++i) {
    for (int j = 0; j < r; ++j) {
      Scalar expected = i < r ? g(i, j) : Scalar();
      if (!(p(i, j) == expected)) {
        throw DomainError("pairing does not match the declared adapted frame at <<e" + idx(j) +
                          ", b" + idx(i) + ">> = " + p(i, j).to_string() + ", expected " +
                          expected.to_string());
      }
    }
  }
}

InducedConnection::InducedConnection(ConnectionPtr nabla) : nabla_(std::move(nabla)) {}

Section InducedConnection::apply(const BSection& b, const Section& e) const {
  const PredualBundle& bundle = nabla_->predual();
  return bundle.embed(nabla_->apply(e, b)) - bundle.algebroid().bracket(e, bundle.embed(b));
}

std::vector<Scalar> InducedConnection::anchor_field(const BSection& b) const {
  const PredualBundle& bundle = nabla_->predual();
  return bundle.algebroid().anchor_field(bundle.embed(b));
}

Report verify_induced(const InducedConnection& d, const BatteryConfig& config) {
  const DorfmanConnection& nabla = d.connection();
  const PredualBundle& b = nabla.predual();
  const CourantAlgebroid& alg = b.algebroid();
  Batteries bt(b, config);
  Report report;
  report.checks.push_back(check_mixed(
      "induced_linear_in_b", "D_{f b} e = f D_b e", bt, 1, 1, 1,
      [&](const Battery::Tuple& x, const Battery::Tuple& y) {
        Section e = sec(bt.e, x.vectors[0]);
        BSection v = bsec(bt.b, y.vectors[0]);
        const Scalar& f = bt.e.function(x.functions[0]);
        return residual_of(d.apply(f * v, e) - f * d.apply(v, e));
      }));
  report.checks.push_back(check_mixed(
      "induced_leibniz", "D_b (f e) = f D_b e + a(b)(f) e", bt, 1, 1, 1,
      [&](const Battery::Tuple& x, const Battery::Tuple& y) {
        Section e = sec(bt.e, x.vectors[0]);
        BSection v = bsec(bt.b, y.vectors[0]);
        const Scalar& f = bt.e.function(x.functions[0]);
        return residual_of(d.apply(v, f * e) - f * d.apply(v, e) -
                           apply_field(d.anchor_field(v), f) * e);
      }));
  report.checks.push_back(check_mixed(
      "induced_compatibility",
      "rho(e)<<e', b>> = <<[[e, e']], b>> - <D_b e, e'> + <<e', nabla_e b>>", bt, 2, 1, 0,
      [&](const Battery::Tuple& x, const Battery::Tuple& y) {
        Section e = sec(bt.e, x.vectors[0]);
        Section e2 = sec(bt.e, x.vectors[1]);
        BSection v = bsec(bt.b, y.vectors[0]);
        Scalar r = alg.anchor_apply(e, b.pairing(e2, v)) - b.pairing(alg.bracket(e, e2), v) +
                   alg.pairing(d.apply(v, e), e2) - b.pairing(e2, nabla.apply(e, v));
        return residual_of(r);
      }));
  return report;
}

// -------------------------------------------------------------------- dual

DualConnection::DualConnection(ConnectionPtr nabla) : nabla_(std::move(nabla)) {
  int r = nabla_->algebroid().rank();
  int s = nabla_->rank();
  gamma_.assign(r, std::vector<DualBSection>(s, DualBSection(s)));
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < s; ++j) {
      for (int l = 0; l < s; ++l) gamma_[i][j][l] = -nabla_->gamma()[i][l][j];
    }
  }
}

DualBSection DualConnection::apply(const Section& e, const DualBSection& b) const {
  const PredualBundle& bundle = nabla_->predual();
  const CourantAlgebroid& alg = bundle.algebroid();
  int s = nabla_->rank();
  DualBSection out(s);
  for (int i = 0; i < e.size(); ++i) {
    const Scalar& g = e[i];
    if (g.is_zero()) continue;
    for (int j = 0; j < s; ++j) {
      if (!b[j].is_zero() && !gamma_[i][j].is_zero()) out += (g * b[j]) * gamma_[i][j];
    }
    auto field = alg.anchor_field(alg.frame(i));
    for (int j = 0; j < s; ++j) {
      if (b[j].is_constant()) continue;
      Scalar v = apply_field(field, b[j]);
      if (!v.is_zero()) out[j] += g * v;
    }
    if (g.is_constant()) continue;
    BSection dg = bundle.d(g);
    Scalar coef;
    for (int j = 0; j < s; ++j) {
      if (!b[j].is_zero() && !dg[j].is_zero()) coef += b[j] * dg[j];
    }
    if (!coef.is_zero()) out -= coef * bundle.pairing_form(alg.frame(i));
  }
  return out;
}

DualBSection DualConnection::curvature0(const Section& e1, const Section& e2,
                                        const DualBSection& b) const {
  return apply(e1, apply(e2, b)) - apply(e2, apply(e1, b)) -
         apply(nabla_->algebroid().bracket(e1, e2), b);
}

DualBSection DualConnection::curvature1(const Scalar& f, const DualBSection& b) const {
  return apply(nabla_->algebroid().d(f), b);
}

namespace {

Scalar dual_pairing(const DualBSection& a, const BSection& b) {
  Scalar out;
  for (int i = 0; i < b.size(); ++i) {
    if (!a[i].is_zero() && !b[i].is_zero()) out += a[i] * b[i];
  }
  return out;
}

}  // namespace

Report verify_dual(const DualConnection& dual, const DorfmanConnection& nabla,
                   const BatteryConfig& config) {
  const PredualBundle& b = nabla.predual();
  const CourantAlgebroid& alg = b.algebroid();
  Batteries bt(b, config);
  auto dsec = [&](int i) { return bt.b.vector<DualBSection>(i); };
  Report report;
  report.checks.push_back(check_mixed(
      "dual_defining_identity", "rho(e)<b*, b> = <nabla*_e b*, b> + <b*, nabla_e b>", bt, 1, 2,
      0, [&](const Battery::Tuple& x, const Battery::Tuple& y) {
        Section e = sec(bt.e, x.vectors[0]);
        DualBSection bs = dsec(y.vectors[0]);
        BSection v = bsec(bt.b, y.vectors[1]);
        return residual_of(alg.anchor_apply(e, dual_pairing(bs, v)) -
                           dual_pairing(dual.apply(e, bs), v) -
                           dual_pairing(bs, nabla.apply(e, v)));
      }));
  report.checks.push_back(check_mixed(
      "dual_anchor_slot", "nabla*_{f e} b* = f nabla*_e b* - <b*, d_B f> <<e, .>>", bt, 1, 1, 1,
      [&](const Battery::Tuple& x, const Battery::Tuple& y) {
        Section e = sec(bt.e, x.vectors[0]);
        DualBSection bs = dsec(y.vectors[0]);
        const Scalar& f = bt.e.function(x.functions[0]);
        return residual_of(dual.apply(f * e, bs) - f * dual.apply(e, bs) +
                           dual_pairing(bs, b.d(f)) * b.pairing_form(e));
      }));
  report.checks.push_back(check_mixed(
      "dual_leibniz", "nabla*_e (f b*) = f nabla*_e b* + rho(e)(f) b*", bt, 1, 1, 1,
      [&](const Battery::Tuple& x, const Battery::Tuple& y) {
        Section e = sec(bt.e, x.vectors[0]);
        DualBSection bs = dsec(y.vectors[0]);
        const Scalar& f = bt.e.function(x.functions[0]);
        return residual_of(dual.apply(e, f * bs) - f * dual.apply(e, bs) -
                           alg.anchor_apply(e, f) * bs);
      }));
  return report;
}

std::vector<Matrix> sample_endomorphisms(const Batteries& bt) {
  int s = bt.b.rank();
  int nv = static_cast<int>(bt.b.vectors().size());
  std::vector<Matrix> out{Matrix::identity(s)};
  auto outer = [&](int i, int j) {
    BSection u = bsec(bt.b, i);
    BSection w = bsec(bt.b, j);
    Matrix m(s, s);
    for (int a = 0; a < s; ++a) {
      for (int c = 0; c < s; ++c) m(a, c) = u[a] * w[c];
    }
    return m;
  };
  out.push_back(outer(0, std::min(1, nv - 1)));
  out.push_back(outer(std::min(s, nv - 1), nv - 1));
  out.push_back(outer(nv - 1, nv - 2 >= 0 ? nv - 2 : 0) + outer(std::min(s + 1, nv - 1), 0));
  return out;
}

}  // namespace courant
