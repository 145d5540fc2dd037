#include "courant/bott.hpp"

namespace courant {

namespace {

std::string idx(int i) { return std::to_string(i + 1); }

Matrix columns(const std::vector<Section>& vs, int r) {
  Matrix m(r, static_cast<int>(vs.size()));
  for (int j = 0; j < m.cols(); ++j) {
    for (int i = 0; i < r; ++i) m(i, j) = vs[j][i];
  }
  return m;
}

std::vector<Scalar> flat(const BSection& v) { return v.components(); }

}  // namespace

BottConnection::BottConnection(AlgebroidPtr e, std::vector<Section> l)
    : e_(std::move(e)), l_(std::move(l)) {
  int r = e_->rank();
  if (r % 2 != 0) throw DomainError("E has odd rank " + std::to_string(r));
  for (std::size_t i = 0; i < l_.size(); ++i) {
    if (l_[i].size() != r) {
      throw DomainError("L frame vector l" + idx(static_cast<int>(i)) + " has " +
                        std::to_string(l_[i].size()) + " components, expected " +
                        std::to_string(r));
    }
  }
  for (int i = 0; i < rank(); ++i) {
    for (int j = i; j < rank(); ++j) {
      Scalar v = e_->pairing(l_[i], l_[j]);
      if (!v.is_zero()) {
        throw DomainError("L is not isotropic: <l" + idx(i) + ", l" + idx(j) +
                          "> = " + v.to_string());
      }
    }
  }
  Matrix lm = columns(l_, r);
  int rl = courant::rank(lm);
  if (rank() != r / 2 || rl != r / 2) {
    throw DomainError("L has rank " + std::to_string(rl) + " on " + std::to_string(rank()) +
                      " frame vectors, expected " + std::to_string(r / 2));
  }
  for (int i = 0; i < rank(); ++i) {
    for (int j = 0; j < rank(); ++j) {
      Section br = e_->bracket(l_[i], l_[j]);
      if (!solve(lm, columns({br}, r))) {
        throw DomainError("L is not involutive: [[l" + idx(i) + ", l" + idx(j) +
                          "]] = " + br.to_string() + " is not in L");
      }
    }
  }
  std::vector<Section> frame = l_;
  int current = rl;
  for (int k = 0; k < r && current < r; ++k) {
    frame.push_back(e_->frame(k));
    int next = courant::rank(columns(frame, r));
    if (next > current) {
      c_.push_back(e_->frame(k));
      current = next;
    } else {
      frame.pop_back();
    }
  }
  coords_ = inverse(columns(frame, r));
  int s = rank();
  p_ = Matrix(s, s);
  for (int j = 0; j < s; ++j) {
    for (int i = 0; i < s; ++i) p_(j, i) = e_->pairing(l_[i], c_[j]);
  }
  gamma_.assign(s, std::vector<BSection>(s, BSection(s)));
  for (int i = 0; i < s; ++i) {
    for (int j = 0; j < s; ++j) gamma_[i][j] = class_of(e_->bracket(l_[i], c_[j]));
  }
}

Section BottConnection::embed(const LSection& l) const {
  Section out = e_->zero();
  for (int i = 0; i < rank(); ++i) {
    if (!l[i].is_zero()) out += l[i] * l_[i];
  }
  return out;
}

Section BottConnection::lift(const BSection& q) const {
  Section out = e_->zero();
  for (int j = 0; j < rank(); ++j) {
    if (!q[j].is_zero()) out += q[j] * c_[j];
  }
  return out;
}

BSection BottConnection::class_of(const Section& e) const {
  int s = rank();
  BSection out(s);
  for (int j = 0; j < s; ++j) {
    for (int k = 0; k < e.size(); ++k) {
      if (!e[k].is_zero() && !coords_(s + j, k).is_zero()) out[j] += coords_(s + j, k) * e[k];
    }
  }
  return out;
}

LSection BottConnection::bracket(const LSection& a, const LSection& b) const {
  Section br = e_->bracket(embed(a), embed(b));
  LSection out(rank());
  for (int i = 0; i < rank(); ++i) {
    for (int k = 0; k < br.size(); ++k) {
      if (!br[k].is_zero() && !coords_(i, k).is_zero()) out[i] += coords_(i, k) * br[k];
    }
  }
  return out;
}

std::vector<Scalar> BottConnection::anchor_field(const LSection& l) const {
  return e_->anchor_field(embed(l));
}

Scalar BottConnection::pairing(const LSection& l, const BSection& q) const {
  Scalar out;
  for (int i = 0; i < rank(); ++i) {
    if (l[i].is_zero()) continue;
    for (int j = 0; j < rank(); ++j) {
      if (!q[j].is_zero() && !p_(j, i).is_zero()) out += l[i] * p_(j, i) * q[j];
    }
  }
  return out;
}

BSection BottConnection::d(const Scalar& f) const { return class_of(e_->d(f)); }

BSection BottConnection::apply(const LSection& l, const BSection& q) const {
  int s = rank();
  BSection out(s);
  for (int i = 0; i < s; ++i) {
    const Scalar& g = l[i];
    if (g.is_zero()) continue;
    for (int j = 0; j < s; ++j) {
      if (!q[j].is_zero() && !gamma_[i][j].is_zero()) out += (g * q[j]) * gamma_[i][j];
    }
    auto field = e_->anchor_field(l_[i]);
    for (int j = 0; j < s; ++j) {
      if (q[j].is_constant()) continue;
      Scalar v = apply_field(field, q[j]);
      if (!v.is_zero()) out[j] += g * v;
    }
    if (g.is_constant()) continue;
    Scalar coef;
    for (int j = 0; j < s; ++j) {
      if (!q[j].is_zero() && !p_(j, i).is_zero()) coef += q[j] * p_(j, i);
    }
    if (!coef.is_zero()) out += coef * d(g);
  }
  return out;
}

BSection BottConnection::curvature0(const LSection& a, const LSection& b,
                                    const BSection& q) const {
  return apply(a, apply(b, q)) - apply(b, apply(a, q)) - apply(bracket(a, b), q);
}

BSection BottConnection::curvature1(const Scalar& f, const BSection& q) const {
  return class_of(e_->bracket(e_->d(f), lift(q)));
}

Report bott_report(const BottConnection& bott, const BatteryConfig& config) {
  const CourantAlgebroid& e = bott.algebroid();
  int s = bott.rank();
  Battery lb(e.base_dim(), s, config, "l");
  Battery qb(e.base_dim(), s, config, "q");
  auto lsec = [&](int i) { return lb.vector<LSection>(i); };
  auto qsec = [&](int i) { return qb.vector<BSection>(i); };
  Report report;

  Check iso{"dirac_isotropic", "<l_i, l_j> = 0"};
  Check rk{"dirac_rank", "rank L = rank E / 2"};
  Check inv{"dirac_involutive", "[[l_i, l_j]] in L"};
  iso.evaluations = static_cast<std::size_t>(s * (s + 1) / 2);
  rk.evaluations = 1;
  inv.evaluations = static_cast<std::size_t>(s * s);
  report.checks.push_back(iso);
  report.checks.push_back(rk);
  report.checks.push_back(inv);

  // Every L tuple against every Q tuple.
  auto mixed = [&](std::string name, std::string identity, int nl, int nq, int nf,
                   const std::function<std::vector<Scalar>(const Battery::Tuple&,
                                                           const Battery::Tuple&)>& residual) {
    Check c;
    c.name = std::move(name);
    c.identity = std::move(identity);
    for (const auto& x : lb.tuples(nl, nf)) {
      for (const auto& y : qb.tuples(nq, 0)) {
        ++c.evaluations;
        auto r = residual(x, y);
        for (const auto& v : r) {
          if (!v.is_zero()) {
            c.status = Status::Fail;
            std::string args = lb.describe(x);
            std::string qargs = qb.describe(y);
            if (!qargs.empty()) args += args.empty() ? qargs : " | " + qargs;
            c.witness = Witness{args, std::move(r)};
            return c;
          }
        }
      }
    }
    return c;
  };

  report.checks.push_back(mixed(
      "axiom_anchor_slot", "nabla_{f l} q = f nabla_l q + <l, q> d_Q f", 1, 1, 1,
      [&](const auto& x, const auto& y) {
        LSection l = lsec(x.vectors[0]);
        BSection q = qsec(y.vectors[0]);
        const Scalar& f = lb.function(x.functions[0]);
        return flat(bott.apply(f * l, q) - f * bott.apply(l, q) - bott.pairing(l, q) * bott.d(f));
      }));
  report.checks.push_back(mixed(
      "axiom_leibniz", "nabla_l (f q) = f nabla_l q + rho(l)(f) q", 1, 1, 1,
      [&](const auto& x, const auto& y) {
        LSection l = lsec(x.vectors[0]);
        BSection q = qsec(y.vectors[0]);
        const Scalar& f = lb.function(x.functions[0]);
        return flat(bott.apply(l, f * q) - f * bott.apply(l, q) -
                    apply_field(bott.anchor_field(l), f) * q);
      }));
  report.checks.push_back(check_identity(
      "axiom_exact", "nabla_l d_Q f = d_Q(rho(l) f)", lb, 1, 1, [&](const Battery::Tuple& t) {
        LSection l = lsec(t.vectors[0]);
        const Scalar& f = lb.function(t.functions[0]);
        return flat(bott.apply(l, bott.d(f)) - bott.d(apply_field(bott.anchor_field(l), f)));
      }));
  report.checks.push_back(mixed(
      "extension_is_class_of_bracket", "nabla_l q = class of [[l, lift q]]", 1, 1, 0,
      [&](const auto& x, const auto& y) {
        LSection l = lsec(x.vectors[0]);
        BSection q = qsec(y.vectors[0]);
        return flat(bott.apply(l, q) - bott.class_of(e.bracket(bott.embed(l), bott.lift(q))));
      }));
  report.checks.push_back(check_identity(
      "independent_of_lift", "class of [[l, l']] = 0", lb, 2, 0, [&](const Battery::Tuple& t) {
        return flat(bott.class_of(e.bracket(bott.embed(lsec(t.vectors[0])),
                                            bott.embed(lsec(t.vectors[1])))));
      }));
  report.checks.push_back(mixed(
      "flat_r0", "R_0(l1, l2) q = 0", 2, 1, 0, [&](const auto& x, const auto& y) {
        return flat(bott.curvature0(lsec(x.vectors[0]), lsec(x.vectors[1]), qsec(y.vectors[0])));
      }));
  report.checks.push_back(mixed(
      "flat_r1", "class of [[d_E f, lift q]] = 0", 0, 1, 1, [&](const auto& x, const auto& y) {
        return flat(bott.curvature1(lb.function(x.functions[0]), qsec(y.vectors[0])));
      }));
  return report;
}

}  // namespace courant
