#pragma once

#include <vector>

#include "courant/algebroid.hpp"
#include "courant/report.hpp"

namespace courant {

// Standard complex of a Courant algebroid over a point.  The p-cochains are
// the alternating p-forms on the fiber, with basis the lexicographically
// ordered index sets i_1 < ... < i_p (the dual wedge e^{i_1} ... e^{i_p}).
class PointComplex {
 public:
  // Throws DomainError unless the base has dimension 0.
  explicit PointComplex(AlgebroidPtr e);

  int rank() const { return e_->rank(); }
  const AlgebroidPtr& algebroid() const { return e_; }
  const std::vector<std::vector<int>>& basis(int p) const;
  // Matrix of d from degree p to degree p + 1; throws for p outside [0, r].
  const Matrix& differential_matrix(int p) const;
  int rank_of_d(int p) const;  // 0 for p = -1 and p = r
  int betti(int p) const;

  struct Row {
    int p;
    int dim;
    int rank_d;
    int betti;
  };
  std::vector<Row> table(int max_p) const;

 private:
  AlgebroidPtr e_;
  std::vector<std::vector<std::vector<int>>> basis_;
  std::vector<Matrix> d_;
  std::vector<int> rank_;
};

// d^2 = 0, Euler characteristic, and agreement of every matrix entry with the
// generic cochain evaluator on frame tuples, for p <= max_p.
Report cohomology_report(const PointComplex& complex, int max_p);

}  // namespace courant
