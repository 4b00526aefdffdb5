#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>

#include "anyonchain/label.hpp"

namespace anyonchain {

using Complex = std::complex<double>;
using Matrix2c = Eigen::Matrix2cd;
using Matrix4c = Eigen::Matrix4cd;
using MatrixXc = Eigen::MatrixXcd;

// Element sigma^rot tau^flip of the dihedral group of the triangle,
// presented as <sigma, tau | sigma^3 = tau^2 = (sigma tau)^2 = 1>.
// rot is taken mod 3 and flip mod 2; the normalized pair is the identity
// of the element, so defaulted comparison is correct.
struct GroupElement {
  int rot = 0;
  int flip = 0;

  friend bool operator==(const GroupElement&, const GroupElement&) = default;
};

inline constexpr GroupElement kIdentity{0, 0};
inline constexpr GroupElement kSigma{1, 0};
inline constexpr GroupElement kTau{0, 1};

// All six elements in the fixed order 1, s, s^2, t, st, s^2 t.
const std::array<GroupElement, 6>& all_elements();

GroupElement multiply(GroupElement g, GroupElement h);
GroupElement inverse(GroupElement g);

std::string to_string(GroupElement g);

// Unitary matrix of irrep `a` at `g`: 1x1 for the sign irreps, 2x2 for the
// faithful one (pi2(sigma) = diag(w, conj(w)) with w = exp(2 pi i/3),
// pi2(tau) = off-diagonal 1s).
MatrixXc irrep_matrix(Label a, GroupElement g);

// The 2x2 irrep, returned fixed-size for hot paths.
Matrix2c pi2(GroupElement g);

// Character of irrep `a` at `g`.  Real for every D3 irrep.
double character(Label a, GroupElement g);

// Isotypic projector onto the V_a component of V2 (x) V2,
//   P(a) = (dim V_a / 6) sum_g conj(chi_a(g)) pi2(g) (x) pi2(g).
// The three projectors are Hermitian, orthogonal, and sum to the identity.
Matrix4c projector_spin(Label a);

// The permutation operator Pi = P(+) - P(-) + P(2) on V2 (x) V2, i.e. the
// SWAP gate.  Acts as the braid generator of the spin chain.
Matrix4c permutation_operator();

}  // namespace anyonchain
