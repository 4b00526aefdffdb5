#pragma once

#include <array>

#include "anyonchain/label.hpp"

namespace anyonchain {

// The D3 F-move amplitudes (F^{abc}_e)^x_y relating the two decompositions
// of V_a (x) V_b (x) V_c into total charge e: x labels the intermediate
// charge of (a b), y the intermediate charge of (b c).  All amplitudes are
// real; an amplitude is zero unless every fusion vertex is admissible.
class FMoveTable {
 public:
  // The validated table: construction cross-checks unitarity, the pentagon
  // identity, and agreement of the derived three-label projectors with
  // their closed forms; throws std::logic_error if any check fails.
  static const FMoveTable& instance();

  double amplitude(Label a, Label b, Label c, Label e, Label x,
                   Label y) const {
    return f_[index(a, b, c, e, x, y)];
  }

  // Copy with a single amplitude's sign flipped — a deliberately broken
  // table for negative controls.  Not validated.
  FMoveTable with_sign_flip(Label a, Label b, Label c, Label e, Label x,
                            Label y) const;

 private:
  FMoveTable();

  static int index(Label a, Label b, Label c, Label e, Label x, Label y) {
    int i = static_cast<int>(a);
    i = 3 * i + static_cast<int>(b);
    i = 3 * i + static_cast<int>(c);
    i = 3 * i + static_cast<int>(e);
    i = 3 * i + static_cast<int>(x);
    i = 3 * i + static_cast<int>(y);
    return i;
  }

  std::array<double, 729> f_{};
};

// (F^{abc}_e)^x_y from the validated table.
double f_move(Label a, Label b, Label c, Label e, Label x, Label y);

struct AlgebraCheck {
  bool ok = false;
  double max_residual = 0.0;
};

// Unitarity of every admissible block F^{abc}_e over its intermediate
// labels (x columns against y rows).
AlgebraCheck f_unitarity_check(const FMoveTable& t, double tol = 1e-14);
AlgebraCheck f_unitarity_check(double tol = 1e-14);

// Pentagon identity
//   (F^{fcd}_e)^g_l (F^{abl}_e)^f_k
//     = sum_h (F^{abc}_g)^f_h (F^{ahd}_e)^g_k (F^{bcd}_k)^h_l
// over all 3^9 assignments of a, b, c, d, e, f, g, k, l.
AlgebraCheck pentagon_check(const FMoveTable& t, double tol = 1e-12);
AlgebraCheck pentagon_check(double tol = 1e-12);

// Matrix element <prev, mid', next | P~(b) | prev, mid, next> of the
// three-label anyonic projector onto pair-fusion channel b,
//   [(F^{prev,2,2}_next)^{mid'}_b]* (F^{prev,2,2}_next)^{mid}_b.
double anyon_projector(const FMoveTable& t, Label b, Label prev, Label mid,
                       Label mid_prime, Label next);
double anyon_projector(Label b, Label prev, Label mid, Label mid_prime,
                       Label next);

// The same matrix element from the closed forms (delta terms for one-dim
// boundary labels plus fixed 3x3 blocks between 2s); used to cross-check
// the F-derived projectors.
double anyon_projector_closed_form(Label b, Label prev, Label mid,
                                   Label mid_prime, Label next);

}  // namespace anyonchain
