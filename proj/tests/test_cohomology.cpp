#include <doctest.h>

#include <functional>

#include "courant/cohomology.hpp"

using namespace courant;

namespace {

// Largest k with a nonzero k x k minor, by cofactor expansion.
Scalar minor_det(const Matrix& m, const std::vector<int>& rows, const std::vector<int>& cols) {
  if (rows.empty()) return Scalar(1);
  Scalar out;
  std::vector<int> rest(rows.begin() + 1, rows.end());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    const Scalar& a = m(rows[0], cols[c]);
    if (a.is_zero()) continue;
    std::vector<int> sub = cols;
    sub.erase(sub.begin() + static_cast<long>(c));
    Scalar t = a * minor_det(m, rest, sub);
    if (c % 2) {
      out -= t;
    } else {
      out += t;
    }
  }
  return out;
}

void choose(int n, int k, int start, std::vector<int>& cur,
            const std::function<bool(const std::vector<int>&)>& visit, bool& stop) {
  if (stop) return;
  if (static_cast<int>(cur.size()) == k) {
    stop = visit(cur);
    return;
  }
  for (int i = start; i < n && !stop; ++i) {
    cur.push_back(i);
    choose(n, k, i + 1, cur, visit, stop);
    cur.pop_back();
  }
}

int brute_rank(const Matrix& m) {
  for (int k = std::min(m.rows(), m.cols()); k > 0; --k) {
    bool found = false;
    std::vector<int> rows;
    bool stop_rows = false;
    choose(m.rows(), k, 0, rows, [&](const std::vector<int>& r) {
      std::vector<int> cols;
      bool stop_cols = false;
      choose(m.cols(), k, 0, cols, [&](const std::vector<int>& c) {
        found = !minor_det(m, r, c).is_zero();
        return found;
      }, stop_cols);
      return found;
    }, stop_rows);
    if (found) return k;
  }
  return 0;
}

std::vector<int> bettis(const PointComplex& c) {
  std::vector<int> out;
  for (int p = 0; p <= c.rank(); ++p) out.push_back(c.betti(p));
  return out;
}

std::vector<int> brute_bettis(const PointComplex& c) {
  std::vector<int> ranks;
  for (int p = 0; p < c.rank(); ++p) ranks.push_back(brute_rank(c.differential_matrix(p)));
  std::vector<int> out;
  for (int p = 0; p <= c.rank(); ++p) {
    int dim = static_cast<int>(c.basis(p).size());
    out.push_back(dim - (p < c.rank() ? ranks[p] : 0) - (p > 0 ? ranks[p - 1] : 0));
  }
  return out;
}

}  // namespace

TEST_CASE("betti numbers of small quadratic Lie algebras") {
  PointComplex s(su2());
  CHECK(bettis(s) == std::vector<int>{1, 0, 0, 1});
  CHECK(brute_bettis(s) == bettis(s));
  PointComplex a(abelian(4));
  CHECK(bettis(a) == std::vector<int>{1, 4, 6, 4, 1});
  for (int p = 0; p <= 4; ++p) CHECK(a.differential_matrix(p).is_zero());
  PointComplex sl(su2_plus_line());
  CHECK(bettis(sl) == std::vector<int>{1, 1, 0, 1, 1});
  CHECK(brute_bettis(sl) == bettis(sl));
  // Kunneth: (1, 0, 0, 1) times (1, 1).
  std::vector<int> prod(5, 0);
  std::vector<int> u{1, 0, 0, 1};
  for (int i = 0; i < 4; ++i) {
    prod[i] += u[i];
    prod[i + 1] += u[i];
  }
  CHECK(prod == bettis(sl));
}

TEST_CASE("differential matrices by hand and against the evaluator") {
  PointComplex s(su2());
  CHECK(s.differential_matrix(0).is_zero());
  CHECK(s.basis(2) == std::vector<std::vector<int>>{{0, 1}, {0, 2}, {1, 2}});
  // (d e^1)(e2, e3) = -e^1([[e2, e3]]).
  auto lie = su2();
  Section br = lie->structure(1, 2);
  CHECK(s.differential_matrix(1)(2, 0) == -br[0]);
  CHECK_FALSE(s.differential_matrix(1)(2, 0).is_zero());
  CHECK_THROWS_AS(s.differential_matrix(4), DomainError);
  CHECK_THROWS_AS(s.differential_matrix(-1), DomainError);
  CHECK_THROWS_AS(PointComplex(build_standard(1)), DomainError);
  for (auto e : {su2(), su2_plus_line(), abelian(4), su2({1, 1, 2})}) {
    PointComplex c(e);
    Report r = cohomology_report(c, c.rank());
    for (const auto& check : r.checks) {
      INFO(check.name);
      CHECK(check.passed());
    }
  }
}
