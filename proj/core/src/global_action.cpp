#include "anyonchain/global_action.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace anyonchain {

std::vector<int> SpinBasis::aux_slots() const {
  if (!aux) return {0, 1, 2, 3};
  switch (*aux) {
    case Label::Two:
      return {0, 1};
    case Label::Plus:
      return {2};
    case Label::Minus:
      return {3};
  }
  throw std::logic_error("unreachable auxiliary label");
}

int SpinBasis::aux_dimension() const { return aux ? label_dim(*aux) : 4; }

long long SpinBasis::dimension() const {
  if (length < 1 || length > 60)
    throw std::invalid_argument("spin basis length must be in [1, 60]");
  return static_cast<long long>(aux_dimension()) << length;
}

std::string SpinBasis::description() const {
  std::string s = "spin (L=" + std::to_string(length) + ", aux=";
  s += aux ? std::string(1, label_symbol(*aux)) : "free";
  return s + ")";
}

GlobalAction::GlobalAction(SpinBasis basis, GroupElement g)
    : basis_(std::move(basis)), g_(g) {
  const int length = basis_.length;
  const long long dim = basis_.dimension();  // validates the length
  const long long nbits = 1LL << length;
  const auto slots = basis_.aux_slots();

  const double third = 2.0 * std::numbers::pi / 3.0;

  // Single-site rule for a V2 factor: the flip swaps the two components,
  // and the phase is w^rot on component 0 and its conjugate on component 1,
  // evaluated on the *output* component.
  const Complex w = std::polar(1.0, third * g.rot);

  // Auxiliary factor in the slot order [V2 c1, V2 c2, V+, V-].
  std::array<int, 4> slot_to{0, 1, 2, 3};
  std::array<Complex, 4> slot_phase{w, std::conj(w), 1.0, 1.0};
  if (g.flip) {
    slot_to = {1, 0, 2, 3};
    slot_phase = {std::conj(w), w, 1.0, -1.0};
  }
  std::array<int, 4> local_of_slot{-1, -1, -1, -1};
  for (std::size_t i = 0; i < slots.size(); ++i)
    local_of_slot[slots[i]] = static_cast<int>(i);

  // Site factors contribute w per output 0-bit and conj(w) per output
  // 1-bit, i.e. w^(L - 2 popcount) in total.
  std::vector<Complex> site_phase(length + 1);
  for (int ones = 0; ones <= length; ++ones)
    site_phase[ones] = std::polar(1.0, third * g.rot * (length - 2 * ones));

  const long long mask = nbits - 1;
  perm_.resize(dim);
  phase_.resize(dim);
  for (std::size_t a = 0; a < slots.size(); ++a) {
    const int slot = slots[a];
    const int target_local = local_of_slot[slot_to[slot]];
    if (target_local < 0)
      throw std::logic_error("auxiliary restriction is not invariant");
    for (long long bits = 0; bits < nbits; ++bits) {
      const long long out_bits =
          g.flip ? (~bits & mask) : bits;
      const int ones =
          std::popcount(static_cast<unsigned long long>(out_bits));
      const long long j = static_cast<long long>(a) * nbits + bits;
      perm_[j] = static_cast<long long>(target_local) * nbits + out_bits;
      phase_[j] = slot_phase[slot] * site_phase[ones];
    }
  }
}

MatrixXc GlobalAction::matrix() const {
  MatrixXc m = MatrixXc::Zero(dimension(), dimension());
  for (long long j = 0; j < dimension(); ++j) m(perm_[j], j) = phase_[j];
  return m;
}

double GlobalAction::commutator_max_abs(const MatrixXc& o) const {
  const long long dim = dimension();
  if (o.rows() != dim || o.cols() != dim)
    throw std::invalid_argument("operator dimension does not match the basis");
  // [Pi, o] row perm(k), column j:
  //   (Pi o)(perm k, j) = phase(k) o(k, j)
  //   (o Pi)(perm k, j) = o(perm k, perm j) phase(j)
  double worst = 0.0;
  for (long long j = 0; j < dim; ++j)
    for (long long k = 0; k < dim; ++k)
      worst = std::max(worst, std::abs(phase_[k] * o(k, j) -
                                       o(perm_[k], perm_[j]) * phase_[j]));
  return worst;
}

GlobalAction global_action(int length, GroupElement g) {
  return GlobalAction(SpinBasis{length, std::nullopt}, g);
}

SparseMatrixXc sector_projector_sparse(const SpinBasis& basis, Label a) {
  const long long dim = basis.dimension();
  std::vector<Eigen::Triplet<Complex>> triplets;
  triplets.reserve(static_cast<std::size_t>(dim) * 6);
  const double weight = label_dim(a) / 6.0;
  for (const GroupElement& g : all_elements()) {
    const GlobalAction action(basis, g);
    const double chi = character(a, inverse(g));  // = chi_a(g) over the reals
    if (chi == 0.0) continue;
    for (long long j = 0; j < dim; ++j)
      triplets.emplace_back(action.permuted(j), j,
                            weight * chi * action.phase(j));
  }
  SparseMatrixXc p(dim, dim);
  p.setFromTriplets(triplets.begin(), triplets.end());
  return p;
}

MatrixXc sector_projector(const SpinBasis& basis, Label a) {
  return MatrixXc(sector_projector_sparse(basis, a));
}

MatrixXc sector_projector_global(int length, Label a) {
  return sector_projector(SpinBasis{length, std::nullopt}, a);
}

SymmetryCheck check_d3_symmetry(const MatrixXc& o, const SpinBasis& basis,
                                double tol) {
  SymmetryCheck check;
  for (const GroupElement& g : all_elements()) {
    const GlobalAction action(basis, g);
    check.max_commutator =
        std::max(check.max_commutator, action.commutator_max_abs(o));
  }
  check.d3_symmetric = check.max_commutator <= tol;
  return check;
}

SymmetryCheck check_d3_symmetry(const MatrixXc& o, double tol) {
  const long long dim = o.rows();
  const auto udim = static_cast<unsigned long long>(dim);
  if (o.rows() != o.cols() || dim < 8 || !std::has_single_bit(udim))
    throw std::invalid_argument(
        "operator dimension " + std::to_string(dim) +
        " does not equal 2^(L+2) for any chain length L >= 1");
  const int length = std::bit_width(udim) - 3;
  return check_d3_symmetry(o, SpinBasis{length, std::nullopt}, tol);
}

}  // namespace anyonchain
