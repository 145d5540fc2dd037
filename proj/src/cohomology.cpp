#include "courant/cohomology.hpp"

#include <algorithm>

#include "courant/cochain.hpp"

namespace courant {

namespace {

void subsets(int r, int p, int start, std::vector<int>& cur,
             std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == p) {
    out.push_back(cur);
    return;
  }
  for (int i = start; i < r; ++i) {
    cur.push_back(i);
    subsets(r, p, i + 1, cur, out);
    cur.pop_back();
  }
}

// Value of the basis form e^J on frame vectors e_{m_1}, ..., e_{m_p}.
int basis_value(const std::vector<int>& j, std::vector<int> m) {
  int sign = 1;
  for (std::size_t a = 0; a < m.size(); ++a) {
    for (std::size_t b = 0; b + 1 < m.size() - a; ++b) {
      if (m[b] > m[b + 1]) {
        std::swap(m[b], m[b + 1]);
        sign = -sign;
      } else if (m[b] == m[b + 1]) {
        return 0;
      }
    }
  }
  for (std::size_t b = 0; b + 1 < m.size(); ++b) {
    if (m[b] == m[b + 1]) return 0;
  }
  return m == j ? sign : 0;
}

}  // namespace

PointComplex::PointComplex(AlgebroidPtr e) : e_(std::move(e)) {
  if (e_->base_dim() != 0) {
    throw DomainError("cohomology is computed over a point only; base dimension is " +
                      std::to_string(e_->base_dim()));
  }
  int r = rank();
  basis_.resize(r + 2);
  for (int p = 0; p <= r; ++p) {
    std::vector<int> cur;
    subsets(r, p, 0, cur, basis_[p]);
  }
  for (int p = 0; p <= r; ++p) {
    const auto& cols = basis_[p];
    const auto& rows = basis_[p + 1];
    Matrix m(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
    for (int ri = 0; ri < m.rows(); ++ri) {
      const auto& idx = rows[ri];
      for (int a = 0; a <= p; ++a) {
        for (int b = a + 1; b <= p; ++b) {
          const Section& br = e_->structure(idx[a], idx[b]);
          for (int k = 0; k < r; ++k) {
            if (br[k].is_zero()) continue;
            std::vector<int> args;
            for (int s = 0; s <= p; ++s) {
              if (s == a) continue;
              args.push_back(s == b ? k : idx[s]);
            }
            for (int ci = 0; ci < m.cols(); ++ci) {
              int v = basis_value(cols[ci], args);
              if (v == 0) continue;
              Scalar t = br[k] * Scalar(v);
              if (a % 2) {
                m(ri, ci) += t;
              } else {
                m(ri, ci) -= t;
              }
            }
          }
        }
      }
    }
    d_.push_back(std::move(m));
    rank_.push_back(courant::rank(d_.back()));
  }
}

const std::vector<std::vector<int>>& PointComplex::basis(int p) const {
  if (p < 0 || p > rank()) {
    throw DomainError("degree " + std::to_string(p) + " outside 0.." + std::to_string(rank()));
  }
  return basis_[p];
}

const Matrix& PointComplex::differential_matrix(int p) const {
  basis(p);
  return d_[p];
}

int PointComplex::rank_of_d(int p) const {
  if (p < 0 || p >= rank()) return 0;
  return rank_[p];
}

int PointComplex::betti(int p) const {
  return static_cast<int>(basis(p).size()) - rank_of_d(p) - rank_of_d(p - 1);
}

std::vector<PointComplex::Row> PointComplex::table(int max_p) const {
  std::vector<Row> out;
  for (int p = 0; p <= std::min(max_p, rank()); ++p) {
    out.push_back(Row{p, static_cast<int>(basis(p).size()), rank_of_d(p), betti(p)});
  }
  return out;
}

Report cohomology_report(const PointComplex& complex, int max_p) {
  int top = std::min(max_p, complex.rank());
  Report report;

  Check sq{"d_squared", "d_{p+1} d_p = 0"};
  for (int p = 0; p + 1 <= complex.rank() && p < top; ++p) {
    ++sq.evaluations;
    Matrix m = complex.differential_matrix(p + 1) * complex.differential_matrix(p);
    if (!m.is_zero()) {
      sq.status = Status::Fail;
      sq.witness = Witness{"p=" + std::to_string(p), {}};
      for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) sq.witness->residual.push_back(m(i, j));
      }
      break;
    }
  }
  report.checks.push_back(sq);

  Check euler{"euler_characteristic", "sum (-1)^p dim C^p = sum (-1)^p b_p"};
  int chi_dim = 0;
  int chi_betti = 0;
  for (int p = 0; p <= complex.rank(); ++p) {
    int sign = p % 2 ? -1 : 1;
    chi_dim += sign * static_cast<int>(complex.basis(p).size());
    chi_betti += sign * complex.betti(p);
  }
  euler.evaluations = 1;
  if (chi_dim != chi_betti) {
    euler.status = Status::Fail;
    euler.witness = Witness{"", {Scalar(chi_dim - chi_betti)}};
  }
  report.checks.push_back(euler);

  Check agree{"matches_cochain_evaluator",
              "d-matrix entries equal d(e^J) on sorted frame tuples"};
  const AlgebroidPtr& e = complex.algebroid();
  const Matrix& ginv = e->inverse_pairing();
  Evaluator ev(e);
  std::vector<Cochain> dual;
  for (int j = 0; j < complex.rank(); ++j) {
    Section s = e->zero();
    for (int k = 0; k < complex.rank(); ++k) s[k] = ginv(k, j);
    dual.push_back(Cochain::section(e, s));
  }
  for (int p = 0; p < top && p < complex.rank() && agree.passed(); ++p) {
    const auto& cols = complex.basis(p);
    const auto& rows = complex.basis(p + 1);
    const Matrix& m = complex.differential_matrix(p);
    for (std::size_t ci = 0; ci < cols.size() && agree.passed(); ++ci) {
      Cochain w = Cochain::scalar(e, 1);
      for (int j : cols[ci]) w = mul(w, dual[j]);
      Cochain dw = d(w);
      for (std::size_t ri = 0; ri < rows.size(); ++ri) {
        Evaluator::Ids args;
        for (int i : rows[ri]) args.push_back(ev.intern(e->frame(i)));
        ++agree.evaluations;
        Scalar diff = ev(dw, 0, args, {}) - m(static_cast<int>(ri), static_cast<int>(ci));
        if (!diff.is_zero()) {
          std::string label = "p=" + std::to_string(p) + " J=";
          for (int j : cols[ci]) label += std::to_string(j + 1);
          label += " I=";
          for (int i : rows[ri]) label += std::to_string(i + 1);
          agree.status = Status::Fail;
          agree.witness = Witness{label, {diff}};
          break;
        }
      }
    }
  }
  report.checks.push_back(agree);
  return report;
}

}  // namespace courant
