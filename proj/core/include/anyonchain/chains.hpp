#pragma once

#include <memory>
#include <optional>

#include "anyonchain/fmove.hpp"
#include "anyonchain/fusion.hpp"
#include "anyonchain/global_action.hpp"

namespace anyonchain {

struct CouplingParams {
  double J = 1.0;
  double Jz = 0.0;
};

// The XXZ bond operator
//   h = J/2 (sx (x) sx + sy (x) sy) + Jz/2 (sz (x) sz) + (Jz/2 - J) I (x) I
//     = -2J P(-) + (Jz - J) P(2).
Matrix4c local_xxz_spin(const CouplingParams& p);

// Coefficients of an operator in the channel-projector span,
// c+ P(+) + c- P(-) + c2 P(2) (spin) or the anyonic analogue.
struct ProjectorCoefficients {
  Complex plus{0.0};
  Complex minus{0.0};
  Complex two{0.0};

  Complex coefficient(Label a) const;
  // Coefficients of the inverse operator; throws std::invalid_argument if
  // any coefficient vanishes (the operator is singular).
  ProjectorCoefficients reciprocal() const;
};

// Decompose a two-site spin operator over {P(+), P(-), P(2)}.  Possible
// exactly when o commutes with the D3 action on V2 (x) V2; throws
// std::invalid_argument with the residual otherwise.
ProjectorCoefficients project_onto_channels(const Matrix4c& o,
                                            double tol = 1e-12);

// Three-label anyonic window operator: the same projector combination
// acting on the middle label of a (prev, mid, next) window.
class WindowOp {
 public:
  explicit WindowOp(const ProjectorCoefficients& c);

  const ProjectorCoefficients& coefficients() const { return c_; }

  // <prev, mid', next| op |prev, mid, next>
  Complex amplitude(Label prev, Label mid, Label mid_prime, Label next) const;

  WindowOp inverse() const;

 private:
  ProjectorCoefficients c_;
  std::array<Complex, 81> amp_;  // dense (prev, mid, mid', next) cache
};

// The two-site <-> three-label correspondence: a D3-symmetric spin
// operator and its anyonic counterpart share projector coefficients.
WindowOp correspond(const Matrix4c& spin_op, double tol = 1e-12);
Matrix4c correspond_inverse(const WindowOp& o);

WindowOp local_xxz_anyon(const CouplingParams& p);

// ---------------------------------------------------------------------------

enum class BasisKind { Spin, Anyon };

// A Hermitian operator together with the basis it is expressed in.
// Construction verifies Hermiticity (residual <= 1e-12) and rejects
// non-Hermitian input with std::invalid_argument.
class ChainOperator {
 public:
  ChainOperator(SpinBasis basis, SparseMatrixXc m);
  ChainOperator(std::shared_ptr<const PathBasis> basis, SparseMatrixXc m);

  BasisKind kind() const { return kind_; }
  long long dimension() const { return matrix_.rows(); }

  const SpinBasis& spin_basis() const;  // throws unless kind() == Spin
  const PathBasis& path_basis() const;  // throws unless kind() == Anyon
  std::shared_ptr<const PathBasis> path_basis_ptr() const { return paths_; }

  const SparseMatrixXc& sparse() const { return matrix_; }
  MatrixXc dense() const { return MatrixXc(matrix_); }

  std::string basis_description() const;

  // Sorted COO text: one "row col real imag" line per stored nonzero.
  std::string to_coo_text() const;

 private:
  BasisKind kind_;
  SpinBasis spin_;
  std::shared_ptr<const PathBasis> paths_;
  SparseMatrixXc matrix_;
};

// ---------------------------------------------------------------------------
// Assembly primitives (exposed for tests and diagnostics)

// kron(a, b) with the first factor owning the most significant index.
MatrixXc kronecker(const MatrixXc& a, const MatrixXc& b);

// Embed a two-site operator on (site_i, site_j) of a spin basis; the 4-dim
// local space is ordered (bit of site_i, bit of site_j).  Sites are
// 1-based and need not be adjacent (the periodic wrap bond is (L, 1)).
SparseMatrixXc spin_bond_operator(const SpinBasis& basis, const Matrix4c& op,
                                  int site_i, int site_j);

// Embed a window operator acting on middle label position mid_pos
// (1 <= mid_pos <= L-1) of a path basis.
SparseMatrixXc anyon_window_operator(const PathBasis& basis,
                                     const WindowOp& op, int mid_pos);

// The wrap window of periodic path bases: middle label a_L == a_0, with
// prev = a_{L-1} and next = a_1.  Requires a periodic constraint.
SparseMatrixXc anyon_wrap_operator(const PathBasis& basis, const WindowOp& op);

// ---------------------------------------------------------------------------
// Global Hamiltonians

// Open chains with free (or sector-restricted) boundary labels:
//   H = sum_{i=1}^{L-1} h_{i,i+1}   <->   H~ = sum windows (a_{i-1} a_i a_{i+1}).
ChainOperator build_open_spin(int length, const CouplingParams& p,
                              std::optional<Label> aux = std::nullopt);
ChainOperator build_open_anyon(int length, const CouplingParams& p,
                               std::optional<Label> a0 = std::nullopt);

// Periodic spin chain: the open sum plus the wrap bond h_{L,1}.
ChainOperator build_periodic_spin(int length, const CouplingParams& p,
                                  std::optional<Label> aux = std::nullopt);

// ---------------------------------------------------------------------------
// Braided chains

// Conditions on a braid candidate b (with the bond Hamiltonian h):
//  1. invertible and expressible over {P(+), P(-), P(2)},
//  2. the braid equation b12 b23 b12 = b23 b12 b23,
//  3. h12 b23 b12 = b23 b12 h23 and b12 b23 h12 = h23 b12 b23.
struct BraidConditionReport {
  bool projector_expressible = false;
  double expressibility_residual = 0.0;
  bool invertible = false;
  double smallest_coefficient = 0.0;

  bool braid_equation = false;
  double braid_equation_residual = 0.0;

  bool braids_hamiltonian = false;
  double braiding_residual = 0.0;

  bool all_pass() const {
    return projector_expressible && invertible && braid_equation &&
           braids_hamiltonian;
  }
};

BraidConditionReport verify_braid_conditions(const Matrix4c& b,
                                             const Matrix4c& h,
                                             double tol = 1e-12);

// A braided chain plus its global braiding operator
//   B = b_12 b_23 ... b_{L-1,L},   H = B^-1 h_12 B + sum_i h_{i,i+1},
// and the anyonic counterpart with b~, h~ swapped in.  The builders verify
// the braid conditions and throw std::invalid_argument when they fail.
struct BraidedChain {
  ChainOperator hamiltonian;
  SparseMatrixXc global_braid;
};

BraidedChain build_braided_spin(int length, const CouplingParams& p,
                                const Matrix4c& braid,
                                std::optional<Label> aux = std::nullopt);
BraidedChain build_braided_anyon(int length, const CouplingParams& p,
                                 const Matrix4c& braid,
                                 std::optional<Label> a0 = std::nullopt);

// ---------------------------------------------------------------------------
// Periodic anyon chains

// On the identified basis (a_L = a_0).  Without the wrap term the outgoing
// anyon is conserved and a spin counterpart survives; `translational`
// adds the wrap window h~ at (a_{L-1}, a_L=a_0, a_1), which mixes outgoing
// sectors and severs the correspondence.
ChainOperator build_periodic_anyon(int length, const CouplingParams& p,
                                   bool translational);

// Spin counterpart of the non-translational periodic anyon chain: the open
// Hamiltonian restricted to the invariant subspace where the auxiliary
// component label equals the global sector label.  Returned per sector as
// the Hamiltonian block in an orthonormal basis of (aux = a) ^ (sector = a);
// the full counterpart is the direct sum of the three blocks.
MatrixXc periodic_spin_counterpart_block(int length, const CouplingParams& p,
                                         Label a);

// Largest |H_ij| between basis states of differing conserved labels:
// outgoing anyon a_L for anyon bases (start label a_0 for periodic bases),
// auxiliary slot for spin bases.  Zero exactly for sector-preserving
// Hamiltonians; the translational wrap term makes it order J.
double max_boundary_mixing(const ChainOperator& op);

}  // namespace anyonchain
