#pragma once

#include <vector>

#include "courant/algebroid.hpp"
#include "courant/battery.hpp"
#include "courant/report.hpp"

namespace courant {

struct LSectionTag;
// Coefficients on the frame of L.
using LSection = FrameVector<LSectionTag>;

// The flat L-Dorfman connection on Q = E/L of a Dirac structure L, with
// nabla_l qbar = class of [[l, q]].  Q is framed by the classes of a
// complement C of L chosen greedily among the frame vectors of E.
class BottConnection {
 public:
  // Throws DomainError with a witness when L is not isotropic, not of rank
  // r/2, or not closed under the bracket.
  BottConnection(AlgebroidPtr e, std::vector<Section> l);

  const CourantAlgebroid& algebroid() const { return *e_; }
  int rank() const { return static_cast<int>(l_.size()); }
  const std::vector<Section>& lagrangian() const { return l_; }
  const std::vector<Section>& complement() const { return c_; }
  // P(j, i) = <l_i, c_j>.
  const Matrix& pairing_matrix() const { return p_; }
  // gamma[i][j] = nabla_{l_i} cbar_j.
  const std::vector<std::vector<BSection>>& gamma() const { return gamma_; }

  Section embed(const LSection& l) const;
  Section lift(const BSection& q) const;
  BSection class_of(const Section& e) const;
  LSection bracket(const LSection& a, const LSection& b) const;
  std::vector<Scalar> anchor_field(const LSection& l) const;
  Scalar pairing(const LSection& l, const BSection& q) const;  // <l, q>
  BSection d(const Scalar& f) const;                          // class of d_E f

  // Extension of gamma by the Leibniz rules.
  BSection apply(const LSection& l, const BSection& q) const;
  BSection curvature0(const LSection& a, const LSection& b, const BSection& q) const;
  // class of [[d_E f, lift q]]
  BSection curvature1(const Scalar& f, const BSection& q) const;

 private:
  AlgebroidPtr e_;
  std::vector<Section> l_;
  std::vector<Section> c_;
  Matrix coords_;  // inverse of the frame [L | C]
  Matrix p_;
  std::vector<std::vector<BSection>> gamma_;
};

// Dirac conditions, connection axioms, agreement of the Leibniz extension
// with the class of the bracket, and exact flatness.
Report bott_report(const BottConnection& bott, const BatteryConfig& config);

}  // namespace courant
