#pragma once

#include <Eigen/SparseCore>

#include "anyonchain/d3.hpp"
#include "anyonchain/spin_basis.hpp"

namespace anyonchain {

using SparseMatrixXc = Eigen::SparseMatrix<Complex>;

// The chain representation Pi(g) = pi_aux(g) (x) pi2(g)^(x L) on a spin
// basis.  Every Pi(g) is a phase permutation, Pi(g) e_j = phase(j) e_perm(j),
// so it is stored as the permutation plus the phase vector instead of a
// dense matrix.
class GlobalAction {
 public:
  GlobalAction(SpinBasis basis, GroupElement g);

  const SpinBasis& basis() const { return basis_; }
  GroupElement element() const { return g_; }
  long long dimension() const { return static_cast<long long>(perm_.size()); }

  long long permuted(long long j) const { return perm_[j]; }
  Complex phase(long long j) const { return phase_[j]; }

  MatrixXc matrix() const;

  // max_ij |[Pi(g), o]_ij|, evaluated in O(dim^2) without forming Pi(g).
  double commutator_max_abs(const MatrixXc& o) const;

 private:
  SpinBasis basis_;
  GroupElement g_;
  std::vector<long long> perm_;
  std::vector<Complex> phase_;
};

// Convenience wrapper over the free-auxiliary basis of a length-L chain.
GlobalAction global_action(int length, GroupElement g);

// Isotypic projector P_a = (dim V_a / 6) sum_g conj(chi_a(g)) Pi(g) onto the
// sector-a subspace.  At most 6 nonzeros per column, hence sparse storage.
SparseMatrixXc sector_projector_sparse(const SpinBasis& basis, Label a);

MatrixXc sector_projector(const SpinBasis& basis, Label a);
MatrixXc sector_projector_global(int length, Label a);

struct SymmetryCheck {
  bool d3_symmetric = false;
  double max_commutator = 0.0;  // max over the 6 group elements
};

// Tests [Pi(g), o] = 0 for all g within `tol`.  The overload without a basis
// deduces the free basis from the operator dimension (must equal 2^(L+2) for
// some L >= 1; throws std::invalid_argument otherwise).
SymmetryCheck check_d3_symmetry(const MatrixXc& o, const SpinBasis& basis,
                                double tol = 1e-12);
SymmetryCheck check_d3_symmetry(const MatrixXc& o, double tol = 1e-12);

}  // namespace anyonchain
