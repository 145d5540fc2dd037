#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "courant/algebroid.hpp"

namespace courant {

// Bundle B paired with E.  P is s x r with P(i, j) = <<e_j, b_i>>; A is s x n
// and d_B f = A grad f.
class PredualBundle {
 public:
  // Throws DomainError on shape mismatch or when A^T P differs from the
  // anchor matrix.
  PredualBundle(AlgebroidPtr e, Matrix pairing, Matrix alpha);

  int rank() const { return p_.rows(); }
  const CourantAlgebroid& algebroid() const { return *e_; }
  const AlgebroidPtr& algebroid_ptr() const { return e_; }
  const Matrix& pairing_matrix() const { return p_; }
  const Matrix& alpha() const { return a_; }

  BSection frame(int i) const { return BSection::basis(rank(), i); }
  BSection zero() const { return BSection(rank()); }
  BSection d(const Scalar& f) const;
  Scalar pairing(const Section& e, const BSection& b) const;
  DualBSection pairing_form(const Section& e) const;  // <<e, .>>
  // e_[b] = G^{-1} P^T b, so that <e_[b], e> = <<e, b>>.
  Section embed(const BSection& b) const;

 private:
  AlgebroidPtr e_;
  Matrix p_;
  Matrix a_;
  Matrix embed_;
};

using PredualPtr = std::shared_ptr<const PredualBundle>;

// B = E with <<.,.>> = <.,.> and d_B = d_E.
PredualPtr predual_self(AlgebroidPtr e);
// On the port-Hamiltonian algebroid: T*M + V (frame dx, V frame) or, with
// dual_side, T*M + V* (frame dx, V* frame).
PredualPtr port_hamiltonian_predual(AlgebroidPtr e, int n, int v, bool dual_side);

// Kernels of the two maps induced by the pairing: K = ker(B -> E*),
// F = ker(E -> B*).
struct PredualDiagnosis {
  int rank_e;
  int rank_b;
  int rank_pairing;
  int rank_k;
  int rank_f;
  std::string classification;
};
PredualDiagnosis diagnose(const PredualBundle& b);

// gamma[i][j] = nabla_{e_i} b_j.
using ConnectionTable = std::vector<std::vector<BSection>>;

class DorfmanConnection {
 public:
  DorfmanConnection(PredualPtr b, ConnectionTable gamma);

  const PredualBundle& predual() const { return *b_; }
  const PredualPtr& predual_ptr() const { return b_; }
  const CourantAlgebroid& algebroid() const { return b_->algebroid(); }
  const ConnectionTable& gamma() const { return gamma_; }
  int rank() const { return b_->rank(); }

  // Extension of the frame values by the two Leibniz rules.
  BSection apply(const Section& e, const BSection& b) const;

  BSection curvature0(const Section& e1, const Section& e2, const BSection& b) const;
  BSection curvature1(const Scalar& f, const BSection& b) const;  // nabla_{d_E f} b
  // Columns are the images of the frame of B.
  Matrix matrix_of(const Section& e) const;  // b_j -> nabla_e b_j, not tensorial
  Matrix curvature0_matrix(const Section& e1, const Section& e2) const;
  Matrix curvature1_matrix(const Section& sharp) const;  // b -> nabla_sharp b
  // [nabla_e, tau] as an endomorphism of B.
  Matrix endo(const Section& e, const Matrix& tau) const;

 private:
  PredualPtr b_;
  ConnectionTable gamma_;
};

using ConnectionPtr = std::shared_ptr<const DorfmanConnection>;

BSection apply_matrix(const Matrix& m, const BSection& b);
Matrix commutator(const Matrix& a, const Matrix& b);

// Batteries for E (prefix "e") and B (prefix "b") with the same config.
struct Batteries {
  Battery e;
  Battery b;
  Batteries(const PredualBundle& bundle, const BatteryConfig& config);
};

using MixedResidual =
    std::function<std::vector<Scalar>(const Battery::Tuple&, const Battery::Tuple&)>;
// Every E tuple against every B tuple; the B part takes nb vectors and no
// functions.
Check check_mixed(std::string name, std::string identity, const Batteries& bt, int ne, int nb,
                  int nf, const MixedResidual& residual);

Report verify_connection(const DorfmanConnection& nabla, const BatteryConfig& config);

// nabla^0_{e_k} b_i = d_B <<e_k, b_i>>.
ConnectionTable trivial_connection_table(const PredualBundle& b);
// Right-hand sides of the correction system A^T C_k = N_k: the closed form
// from the derivatives of A, and the defect of nabla^0 against axiom 3.
Matrix correction_rhs(const PredualBundle& b, int k);
Matrix correction_rhs_from_defect(const PredualBundle& b, int k);
// Throws DomainError naming k when a correction system is inconsistent.
ConnectionPtr build_connection(PredualPtr b);

ConnectionPtr affine_combine(const DorfmanConnection& a, const DorfmanConnection& b,
                             const Scalar& g);
Report difference_check(const DorfmanConnection& a, const DorfmanConnection& b,
                        const BatteryConfig& config);

// Christoffel symbols delta[a][b][c]: Delta_{d_a} d_b = sum_c delta[a][b][c] d_c.
// Connection (X, z) -> (Y, h) |-> (Delta_X Y, L_X h + <Delta*_. z, Y>) on
// B = E = standard(n).
ConnectionPtr build_christoffel_connection(AlgebroidPtr standard, const Christoffel& delta);
// The two connections of the port-Hamiltonian example, on T*M + V and on
// T*M + V*, for the flat connection omega on V.
std::pair<ConnectionPtr, ConnectionPtr> build_port_hamiltonian_connections(
    AlgebroidPtr e, int n, int v, const Christoffel& omega);

// Induced B-linear connection D_b e = e_[nabla_e b] - [[e, e_[b]]].  The
// adapted frame declares which way the pairing splits: K when B's frame
// starts with a copy of E's, F when E's frame starts with B's.
enum class AdaptedFrame { K, F };
std::optional<AdaptedFrame> detect_adapted_frame(const PredualBundle& b);

class InducedConnection {
 public:
  // Throws DomainError when the pairing does not match the declared frame.
  InducedConnection(ConnectionPtr nabla, AdaptedFrame frame);
  // Uniform formula without a declared frame.
  explicit InducedConnection(ConnectionPtr nabla);

  Section apply(const BSection& b, const Section& e) const;
  std::vector<Scalar> anchor_field(const BSection& b) const;  // a(b) = rho(e_[b])
  std::optional<AdaptedFrame> frame() const { return frame_; }
  const DorfmanConnection& connection() const { return *nabla_; }

 private:
  ConnectionPtr nabla_;
  std::optional<AdaptedFrame> frame_;
};

Report verify_induced(const InducedConnection& d, const BatteryConfig& config);

// nabla* on B*, defined by rho(e)<b*, b> = <nabla*_e b*, b> + <b*, nabla_e b>.
class DualConnection {
 public:
  explicit DualConnection(ConnectionPtr nabla);

  const std::vector<std::vector<DualBSection>>& gamma() const { return gamma_; }
  DualBSection apply(const Section& e, const DualBSection& b) const;
  DualBSection curvature0(const Section& e1, const Section& e2, const DualBSection& b) const;
  DualBSection curvature1(const Scalar& f, const DualBSection& b) const;

 private:
  ConnectionPtr nabla_;
  std::vector<std::vector<DualBSection>> gamma_;
};

Report verify_dual(const DualConnection& dual, const DorfmanConnection& nabla,
                   const BatteryConfig& config);

// Curvature identities: linearity of (d^nabla)^2, vanishing on Im d_B,
// i_f (d^nabla)^2 b = nabla_{d_E f} b, the two symbol formulas, and the
// operator relations of the B-valued calculus.
Report curvature_laws(const ConnectionPtr& nabla, const BatteryConfig& config);
// Whether R_0 and R_1 vanish (informational), and the curvature of the
// commutator connection expressed through R.
Report flatness(const ConnectionPtr& nabla, const BatteryConfig& config);
// Relations of the commutator connection on End(B).
Report endo_checks(const ConnectionPtr& nabla, const BatteryConfig& config);
// Both components of d^{~nabla} R^nabla on the battery, the function slot
// against its closed form, and the curvature of nabla* through R.
Report bianchi_check(const ConnectionPtr& nabla, const BatteryConfig& config);

// Test endomorphisms of B built from battery data.
std::vector<Matrix> sample_endomorphisms(const Batteries& batteries);

}  // namespace courant
