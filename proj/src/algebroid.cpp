#include "courant/algebroid.hpp"

#include <string>

namespace courant {

namespace {

std::string idx(int i) { return std::to_string(i + 1); }

}  // namespace

CourantAlgebroid::CourantAlgebroid(int n, Matrix pairing, Matrix anchor,
                                   BracketTable bracket)
    : n_(n),
      r_(pairing.rows()),
      g_(std::move(pairing)),
      rho_(std::move(anchor)),
      c_(std::move(bracket)) {
  if (n_ < 0 || n_ > kMaxVariables) {
    throw DomainError("base dimension must be in 0.." + std::to_string(kMaxVariables));
  }
  if (r_ < 1 || g_.cols() != r_) throw DomainError("pairing must be a square r x r matrix");
  if (rho_.rows() != n_ || rho_.cols() != r_) {
    throw DomainError("anchor must be an n x r matrix (" + std::to_string(n_) + " x " +
                      std::to_string(r_) + ")");
  }
  if (static_cast<int>(c_.size()) != r_) throw DomainError("bracket table must be r x r");
  for (const auto& row : c_) {
    if (static_cast<int>(row.size()) != r_) throw DomainError("bracket table must be r x r");
    for (const auto& s : row) {
      if (s.size() != r_) throw DomainError("bracket entries must have r components");
    }
  }
  for (int i = 0; i < r_; ++i) {
    for (int j = 0; j < r_; ++j) {
      if (!(g_(i, j) == g_(j, i))) {
        throw DomainError("pairing is not symmetric at (" + idx(i) + "," + idx(j) + ")");
      }
    }
  }
  auto check_vars = [&](const Scalar& s) {
    if (s.variables_used() > n_) {
      throw DomainError("structure function " + s.to_string() + " uses a variable beyond x" +
                        std::to_string(n_));
    }
  };
  for (int i = 0; i < r_; ++i) {
    for (int j = 0; j < r_; ++j) {
      check_vars(g_(i, j));
      for (int k = 0; k < r_; ++k) check_vars(c_[i][j][k]);
    }
    for (int l = 0; l < n_; ++l) check_vars(rho_(l, i));
  }
  Scalar det = determinant(g_);
  if (det.is_zero() || !det.is_constant()) {
    throw DomainError("pairing determinant must be a nonzero constant, got " + det.to_string());
  }
  ginv_ = inverse(g_);
  Matrix dmat = ginv_ * rho_.transpose();
  for (int i = 0; i < r_; ++i) {
    for (int j = 0; j < r_; ++j) {
      if (!g_(i, j).is_zero()) g_nz_.push_back({i, j, g_(i, j)});
      for (int k = 0; k < r_; ++k) {
        if (!c_[i][j][k].is_zero()) c_nz_.push_back({i, j, k, c_[i][j][k]});
      }
    }
    for (int l = 0; l < n_; ++l) {
      if (!rho_(l, i).is_zero()) rho_nz_.push_back({l, i, rho_(l, i)});
      if (!dmat(i, l).is_zero()) d_nz_.push_back({i, l, dmat(i, l)});
    }
  }
}

std::vector<Scalar> gradient(const Scalar& f, int n) {
  std::vector<Scalar> g(n);
  if (f.is_constant()) return g;
  for (int l = 0; l < n; ++l) g[l] = f.derivative(l);
  return g;
}

Scalar apply_field(const std::vector<Scalar>& field, const Scalar& f) {
  Scalar out;
  if (f.is_constant()) return out;
  for (std::size_t l = 0; l < field.size(); ++l) {
    if (!field[l].is_zero()) out += field[l] * f.derivative(static_cast<int>(l));
  }
  return out;
}

Scalar CourantAlgebroid::pairing(const Section& a, const Section& b) const {
  Scalar out;
  for (const auto& e : g_nz_) {
    if (a[e.i].is_zero() || b[e.j].is_zero()) continue;
    out += e.value * a[e.i] * b[e.j];
  }
  return out;
}

std::vector<Scalar> CourantAlgebroid::anchor_field(const Section& a) const {
  std::vector<Scalar> v(n_);
  for (const auto& e : rho_nz_) {
    if (!a[e.j].is_zero()) v[e.i] += e.value * a[e.j];
  }
  return v;
}

Scalar CourantAlgebroid::anchor_apply(const Section& a, const Scalar& f) const {
  if (f.is_constant()) return Scalar();
  return apply_field(anchor_field(a), f);
}

Section CourantAlgebroid::d(const Scalar& f) const {
  Section out(r_);
  if (f.is_constant()) return out;
  std::vector<Scalar> g = gradient(f, n_);
  for (const auto& e : d_nz_) {
    if (!g[e.j].is_zero()) out[e.i] += e.value * g[e.j];
  }
  return out;
}

Section CourantAlgebroid::bracket(const Section& a, const Section& b) const {
  Section out(r_);
  for (const auto& e : c_nz_) {
    if (a[e.i].is_zero() || b[e.j].is_zero()) continue;
    out[e.k] += e.value * a[e.i] * b[e.j];
  }
  std::vector<Scalar> va = anchor_field(a);
  std::vector<Scalar> vb = anchor_field(b);
  for (int k = 0; k < r_; ++k) {
    if (!b[k].is_constant()) out[k] += apply_field(va, b[k]);
    if (!a[k].is_constant()) out[k] -= apply_field(vb, a[k]);
  }
  // sum_i (G b)_i d_E(a^i)
  std::vector<Scalar> gb(r_);
  for (const auto& e : g_nz_) {
    if (!b[e.j].is_zero()) gb[e.i] += e.value * b[e.j];
  }
  std::vector<Scalar> w(n_);
  bool any = false;
  for (int i = 0; i < r_; ++i) {
    if (a[i].is_constant() || gb[i].is_zero()) continue;
    for (int l = 0; l < n_; ++l) {
      Scalar dl = a[i].derivative(l);
      if (!dl.is_zero()) {
        w[l] += gb[i] * dl;
        any = true;
      }
    }
  }
  if (any) {
    for (const auto& e : d_nz_) {
      if (!w[e.j].is_zero()) out[e.i] += e.value * w[e.j];
    }
  }
  return out;
}

// ------------------------------------------------------------------ builders

AlgebroidPtr build_standard(int n) {
  if (n < 1) throw DomainError("standard algebroid needs n >= 1");
  int r = 2 * n;
  Matrix g(r, r);
  Matrix rho(n, r);
  for (int a = 0; a < n; ++a) {
    g(a, n + a) = 1;
    g(n + a, a) = 1;
    rho(a, a) = 1;
  }
  BracketTable c(r, std::vector<Section>(r, Section(r)));
  return std::make_shared<CourantAlgebroid>(n, std::move(g), std::move(rho), std::move(c));
}

AlgebroidPtr build_quadratic_lie_algebra(const Matrix& pairing, const BracketTable& structure) {
  int r = pairing.rows();
  if (static_cast<int>(structure.size()) != r) throw DomainError("bracket table must be r x r");
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(structure[i].size()) != r) {
      throw DomainError("bracket table must be r x r");
    }
    for (int j = 0; j < r; ++j) {
      if (!pairing(i, j).is_constant()) throw DomainError("pairing must be constant");
      const Section& a = structure[i][j];
      const Section& b = structure[j][i];
      if (a.size() != r || b.size() != r) {
        throw DomainError("bracket entries must have r components");
      }
      for (int k = 0; k < r; ++k) {
        if (!a[k].is_constant()) throw DomainError("structure constants must be constant");
      }
      if (!(a + b).is_zero()) {
        throw DomainError("structure constants are not antisymmetric at (" + idx(i) + "," +
                          idx(j) + ")");
      }
    }
  }
  return std::make_shared<CourantAlgebroid>(0, pairing, Matrix(0, r), structure);
}

Report check_quadratic_lie(const CourantAlgebroid& e) {
  int r = e.rank();
  Report report;
  Check inv{"ad_invariance", "<[x,y],z> + <y,[x,z]> = 0"};
  Check jac{"lie_jacobi", "[x,[y,z]] = [[x,y],z] + [y,[x,z]]"};
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < r; ++j) {
      for (int k = 0; k < r; ++k) {
        Section x = e.frame(i);
        Section y = e.frame(j);
        Section z = e.frame(k);
        std::string args = "e" + idx(i) + ", e" + idx(j) + ", e" + idx(k);
        ++inv.evaluations;
        Scalar s = e.pairing(e.bracket(x, y), z) + e.pairing(y, e.bracket(x, z));
        if (!s.is_zero() && !inv.witness) {
          inv.status = Status::Fail;
          inv.witness = Witness{args, {s}};
        }
        ++jac.evaluations;
        Section t = e.bracket(x, e.bracket(y, z)) - e.bracket(e.bracket(x, y), z) -
                    e.bracket(y, e.bracket(x, z));
        if (!t.is_zero() && !jac.witness) {
          jac.status = Status::Fail;
          jac.witness = Witness{args, t.components()};
        }
      }
    }
  }
  report.checks.push_back(std::move(inv));
  report.checks.push_back(std::move(jac));
  return report;
}

AlgebroidPtr build_port_hamiltonian(int n, int v, const Christoffel& delta) {
  if (n < 1 || v < 0) throw DomainError("port-Hamiltonian algebroid needs n >= 1, v >= 0");
  if (static_cast<int>(delta.size()) != n) throw DomainError("christoffel must be n x v x v");
  for (const auto& a : delta) {
    if (static_cast<int>(a.size()) != v) throw DomainError("christoffel must be n x v x v");
    for (const auto& b : a) {
      if (static_cast<int>(b.size()) != v) throw DomainError("christoffel must be n x v x v");
    }
  }
  // Curvature of Delta on coordinate fields.
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      for (int c = 0; c < v; ++c) {
        for (int e = 0; e < v; ++e) {
          Scalar comp = delta[b][c][e].derivative(a) - delta[a][c][e].derivative(b);
          for (int d = 0; d < v; ++d) {
            comp += delta[b][c][d] * delta[a][d][e] - delta[a][c][d] * delta[b][d][e];
          }
          if (!comp.is_zero()) {
            throw DomainError("connection on V is not flat: R(d/dx" + idx(a) + ", d/dx" +
                              idx(b) + ") v" + idx(c) + " has v" + idx(e) +
                              "-component " + comp.to_string());
          }
        }
      }
    }
  }
  int r = 2 * n + 2 * v;
  auto tx = [](int a) { return a; };
  auto cot = [n](int a) { return n + a; };
  auto vf = [n](int b) { return 2 * n + b; };
  auto vd = [n, v](int b) { return 2 * n + v + b; };
  Matrix g(r, r);
  Matrix rho(n, r);
  for (int a = 0; a < n; ++a) {
    g(tx(a), cot(a)) = 1;
    g(cot(a), tx(a)) = 1;
    rho(a, tx(a)) = 1;
  }
  for (int b = 0; b < v; ++b) {
    g(vf(b), vd(b)) = 1;
    g(vd(b), vf(b)) = 1;
  }
  BracketTable c(r, std::vector<Section>(r, Section(r)));
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < v; ++b) {
      for (int k = 0; k < v; ++k) {
        c[tx(a)][vf(b)][vf(k)] += delta[a][b][k];
        c[vf(b)][tx(a)][vf(k)] -= delta[a][b][k];
        c[tx(a)][vd(b)][vd(k)] -= delta[a][k][b];
        c[vd(b)][tx(a)][vd(k)] += delta[a][k][b];
      }
    }
  }
  for (int a = 0; a < v; ++a) {
    for (int b = 0; b < v; ++b) {
      for (int k = 0; k < n; ++k) {
        c[vf(a)][vd(b)][cot(k)] += delta[k][a][b];
        c[vd(b)][vf(a)][cot(k)] -= delta[k][a][b];
      }
    }
  }
  return std::make_shared<CourantAlgebroid>(n, std::move(g), std::move(rho), std::move(c));
}

AlgebroidPtr su2(const std::vector<long>& pairing_diagonal) {
  if (pairing_diagonal.size() != 3) throw DomainError("su(2) pairing diagonal needs 3 entries");
  Matrix g(3, 3);
  for (int i = 0; i < 3; ++i) g(i, i) = Scalar(pairing_diagonal[i]);
  BracketTable c(3, std::vector<Section>(3, Section(3)));
  for (int i = 0; i < 3; ++i) {
    int j = (i + 1) % 3;
    int k = (i + 2) % 3;
    c[i][j][k] = 1;
    c[j][i][k] = -1;
  }
  return build_quadratic_lie_algebra(g, c);
}

AlgebroidPtr su2_plus_line() {
  Matrix g = Matrix::identity(4);
  BracketTable c(4, std::vector<Section>(4, Section(4)));
  for (int i = 0; i < 3; ++i) {
    int j = (i + 1) % 3;
    int k = (i + 2) % 3;
    c[i][j][k] = 1;
    c[j][i][k] = -1;
  }
  return build_quadratic_lie_algebra(g, c);
}

AlgebroidPtr abelian(int dim) {
  BracketTable c(dim, std::vector<Section>(dim, Section(dim)));
  return build_quadratic_lie_algebra(Matrix::identity(dim), c);
}

// ------------------------------------------------------------------- axioms

Report verify_axioms(const CourantAlgebroid& e, const Battery& battery) {
  if (battery.rank() != e.rank()) throw DomainError("battery rank does not match algebroid");
  Report report;
  auto sec = [&](const Battery::Tuple& t, int i) { return battery.vector<Section>(t.vectors[i]); };
  auto fn = [&](const Battery::Tuple& t, int i) { return battery.function(t.functions[i]); };

  report.checks.push_back(check_identity(
      "jacobi", "[a,[b,c]] = [[a,b],c] + [b,[a,c]]", battery, 3, 0, [&](const auto& t) {
        Section a = sec(t, 0), b = sec(t, 1), c = sec(t, 2);
        return (e.bracket(a, e.bracket(b, c)) - e.bracket(e.bracket(a, b), c) -
                e.bracket(b, e.bracket(a, c)))
            .components();
      }));
  report.checks.push_back(check_identity(
      "compatibility", "rho(a)<b,c> = <[a,b],c> + <b,[a,c]>", battery, 3, 0,
      [&](const auto& t) {
        Section a = sec(t, 0), b = sec(t, 1), c = sec(t, 2);
        return std::vector<Scalar>{e.pairing(e.bracket(a, b), c) + e.pairing(b, e.bracket(a, c)) -
                                   e.anchor_apply(a, e.pairing(b, c))};
      }));
  report.checks.push_back(check_identity(
      "symmetric_part", "[a,b] + [b,a] = d_E<a,b>", battery, 2, 0, [&](const auto& t) {
        Section a = sec(t, 0), b = sec(t, 1);
        return (e.bracket(a, b) + e.bracket(b, a) - e.d(e.pairing(a, b))).components();
      }));
  report.checks.push_back(check_identity(
      "anchor_bracket", "rho([a,b]) = [rho(a), rho(b)]", battery, 2, 1, [&](const auto& t) {
        Section a = sec(t, 0), b = sec(t, 1);
        Scalar f = fn(t, 0);
        return std::vector<Scalar>{e.anchor_apply(e.bracket(a, b), f) -
                                   e.anchor_apply(a, e.anchor_apply(b, f)) +
                                   e.anchor_apply(b, e.anchor_apply(a, f))};
      }));
  report.checks.push_back(check_identity(
      "right_leibniz", "[a,f b] = f [a,b] + rho(a)(f) b", battery, 2, 1, [&](const auto& t) {
        Section a = sec(t, 0), b = sec(t, 1);
        Scalar f = fn(t, 0);
        return (e.bracket(a, f * b) - f * e.bracket(a, b) - e.anchor_apply(a, f) * b)
            .components();
      }));
  report.checks.push_back(check_identity(
      "left_leibniz", "[f a,b] = f [a,b] - rho(b)(f) a + <a,b> d_E f", battery, 2, 1,
      [&](const auto& t) {
        Section a = sec(t, 0), b = sec(t, 1);
        Scalar f = fn(t, 0);
        return (e.bracket(f * a, b) - f * e.bracket(a, b) + e.anchor_apply(b, f) * a -
                e.pairing(a, b) * e.d(f))
            .components();
      }));
  {
    Check c{"anchor_coanchor", "rho o rho* = 0"};
    c.evaluations = 1;
    Matrix m = e.anchor_matrix() * e.inverse_pairing() * e.anchor_matrix().transpose();
    for (int i = 0; i < m.rows() && !c.witness; ++i) {
      for (int j = 0; j < m.cols(); ++j) {
        if (!m(i, j).is_zero()) {
          c.status = Status::Fail;
          c.witness = Witness{"Rho G^-1 Rho^T entry (" + idx(i) + "," + idx(j) + ")", {m(i, j)}};
          break;
        }
      }
    }
    report.checks.push_back(std::move(c));
  }
  report.checks.push_back(check_identity(
      "bracket_exact_right", "[a, g d_E f] = rho(a)(g) d_E f + g d_E(rho(a) f)", battery, 1, 2,
      [&](const auto& t) {
        Section a = sec(t, 0);
        Scalar f = fn(t, 0), g = fn(t, 1);
        return (e.bracket(a, g * e.d(f)) - e.anchor_apply(a, g) * e.d(f) -
                g * e.d(e.anchor_apply(a, f)))
            .components();
      }));
  report.checks.push_back(check_identity(
      "bracket_exact_left", "[g d_E f, a] = -rho(a)(g) d_E f + rho(a)(f) d_E g", battery, 1, 2,
      [&](const auto& t) {
        Section a = sec(t, 0);
        Scalar f = fn(t, 0), g = fn(t, 1);
        return (e.bracket(g * e.d(f), a) + e.anchor_apply(a, g) * e.d(f) -
                e.anchor_apply(a, f) * e.d(g))
            .components();
      }));
  return report;
}

}  // namespace courant
