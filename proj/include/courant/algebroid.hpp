#pragma once

#include <memory>
#include <vector>

#include "courant/battery.hpp"
#include "courant/linalg.hpp"
#include "courant/report.hpp"
#include "courant/vector.hpp"

namespace courant {

// c[i][j] is the frame bracket [[e_i, e_j]].
using BracketTable = std::vector<std::vector<Section>>;
// christoffel[a][b][c]: Delta_{d/dx_a} v_b = sum_c christoffel[a][b][c] v_c.
using Christoffel = std::vector<std::vector<std::vector<Scalar>>>;

// Courant algebroid on the trivial bundle R^n x R^r over an open subset of
// R^n, given by structure functions on a fixed frame.
class CourantAlgebroid {
 public:
  // Throws DomainError on shape mismatch, non-symmetric pairing, or a pairing
  // whose determinant is not a nonzero constant.
  CourantAlgebroid(int n, Matrix pairing, Matrix anchor, BracketTable bracket);

  int base_dim() const { return n_; }
  int rank() const { return r_; }
  const Matrix& pairing_matrix() const { return g_; }
  const Matrix& inverse_pairing() const { return ginv_; }
  const Matrix& anchor_matrix() const { return rho_; }  // n x r
  const Section& structure(int i, int j) const { return c_[i][j]; }

  Section frame(int i) const { return Section::basis(r_, i); }
  Section zero() const { return Section(r_); }

  Scalar pairing(const Section& a, const Section& b) const;
  std::vector<Scalar> anchor_field(const Section& a) const;
  Scalar anchor_apply(const Section& a, const Scalar& f) const;
  Section d(const Scalar& f) const;  // d_E f = G^{-1} Rho^T grad f
  Section bracket(const Section& a, const Section& b) const;

 private:
  struct Entry {
    int i;
    int j;
    Scalar value;
  };
  struct BracketEntry {
    int i;
    int j;
    int k;
    Scalar value;
  };

  int n_;
  int r_;
  Matrix g_;
  Matrix ginv_;
  Matrix rho_;
  BracketTable c_;
  std::vector<Entry> g_nz_;
  std::vector<Entry> rho_nz_;
  std::vector<Entry> d_nz_;  // entries of G^{-1} Rho^T
  std::vector<BracketEntry> c_nz_;
};

using AlgebroidPtr = std::shared_ptr<const CourantAlgebroid>;

std::vector<Scalar> gradient(const Scalar& f, int n);
Scalar apply_field(const std::vector<Scalar>& field, const Scalar& f);

AlgebroidPtr build_standard(int n);
// Point-base algebroid (n = 0) from a constant pairing and structure
// constants; rejects brackets that are not antisymmetric.
AlgebroidPtr build_quadratic_lie_algebra(const Matrix& pairing,
                                         const BracketTable& structure);
// ad-invariance of the pairing and the Jacobi identity of the structure
// constants, on the frame.
Report check_quadratic_lie(const CourantAlgebroid& e);
// TM + T*M + V + V* with a flat connection on V of rank v.  Frame order:
// d/dx, dx, V frame, dual V* frame.  Throws DomainError if not flat.
AlgebroidPtr build_port_hamiltonian(int n, int v, const Christoffel& delta);

AlgebroidPtr su2(const std::vector<long>& pairing_diagonal = {1, 1, 1});
AlgebroidPtr su2_plus_line();
AlgebroidPtr abelian(int dim);

Report verify_axioms(const CourantAlgebroid& e, const Battery& battery);

}  // namespace courant
