#include "anyonchain/fmove.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "anyonchain/fusion.hpp"

namespace anyonchain {

namespace {

constexpr Label kP = Label::Plus;
constexpr Label kM = Label::Minus;
constexpr Label kT = Label::Two;

bool one_dim(Label a) { return label_dim(a) == 1; }

// Fusion product of two one-dimensional labels.
Label sign_product(Label a, Label b) { return a == b ? kP : kM; }

// Sign of an amplitude with exactly two 2-particles among (a, b, c),
// given that the vertex constraints already hold.  With the one-dim
// label +, every amplitude is +1; with -, the sign depends on its slot:
//   (F^{-22}_e): -1 only for e = 2
//   (F^{2-2}_e): -1 for e = +/-, +1 for e = 2
//   (F^{22-}_e): -1 for every e
double two_particle_pair_sign(Label a, Label b, Label c, Label e) {
  if (a != kT) return a == kP ? 1.0 : (e == kT ? -1.0 : 1.0);
  if (b != kT) return b == kP ? 1.0 : (e == kT ? 1.0 : -1.0);
  return c == kP ? 1.0 : -1.0;
}

// (F^{222}_2)^x_y, rows x, columns y over (+, -, 2):
//   1/2 (d_x^+ d_y^+ - d_x^+ d_y^- + d_x^- d_y^+ - d_x^- d_y^-)
//   + 1/sqrt2 (d_x^+ d_y^2 - d_x^- d_y^2 + d_x^2 d_y^+ + d_x^2 d_y^-).
// Note the matrix is not symmetric: (+,2) carries +, (-,2) carries -.
double f222_block(Label x, Label y) {
  const double s = 1.0 / std::sqrt(2.0);
  static const double block[3][3] = {
      {0.5, -0.5, 0.0}, {0.5, -0.5, 0.0}, {0.0, 0.0, 0.0}};
  double v = block[static_cast<int>(x)][static_cast<int>(y)];
  if (x == kT && y != kT) v = s;
  if (y == kT && x != kT) v = (x == kP ? s : -s);
  return v;
}

double raw_amplitude(Label a, Label b, Label c, Label e, Label x, Label y) {
  if (!(fusion_contains(a, b, x) && fusion_contains(x, c, e) &&
        fusion_contains(b, c, y) && fusion_contains(a, y, e)))
    return 0.0;
  const int twos = (a == kT) + (b == kT) + (c == kT);
  if (twos <= 1) return 1.0;
  if (twos == 2) return two_particle_pair_sign(a, b, c, e);
  if (e == kP) return 1.0;
  if (e == kM) return -1.0;
  return f222_block(x, y);
}

double projector_from(const FMoveTable& t, Label b, Label prev, Label mid,
                      Label mid_prime, Label next) {
  // F amplitudes are real, so the conjugation on the bra factor is a no-op.
  return t.amplitude(prev, kT, kT, next, mid_prime, b) *
         t.amplitude(prev, kT, kT, next, mid, b);
}

}  // namespace

FMoveTable::FMoveTable() {
  for (Label a : kAllLabels)
    for (Label b : kAllLabels)
      for (Label c : kAllLabels)
        for (Label e : kAllLabels)
          for (Label x : kAllLabels)
            for (Label y : kAllLabels)
              f_[index(a, b, c, e, x, y)] = raw_amplitude(a, b, c, e, x, y);
}

const FMoveTable& FMoveTable::instance() {
  static const FMoveTable table = [] {
    FMoveTable t;
    if (const auto u = f_unitarity_check(t); !u.ok)
      throw std::logic_error("F-move table failed unitarity: residual " +
                             std::to_string(u.max_residual));
    if (const auto p = pentagon_check(t); !p.ok)
      throw std::logic_error("F-move table failed the pentagon: residual " +
                             std::to_string(p.max_residual));
    for (Label b : kAllLabels)
      for (Label prev : kAllLabels)
        for (Label mid : kAllLabels)
          for (Label mid_prime : kAllLabels)
            for (Label next : kAllLabels) {
              const double got =
                  projector_from(t, b, prev, mid, mid_prime, next);
              const double want =
                  anyon_projector_closed_form(b, prev, mid, mid_prime, next);
              if (std::abs(got - want) > 1e-14)
                throw std::logic_error(
                    "F-derived projector disagrees with closed form");
            }
    return t;
  }();
  return table;
}

FMoveTable FMoveTable::with_sign_flip(Label a, Label b, Label c, Label e,
                                      Label x, Label y) const {
  FMoveTable copy(*this);
  copy.f_[index(a, b, c, e, x, y)] = -copy.f_[index(a, b, c, e, x, y)];
  return copy;
}

double f_move(Label a, Label b, Label c, Label e, Label x, Label y) {
  return FMoveTable::instance().amplitude(a, b, c, e, x, y);
}

AlgebraCheck f_unitarity_check(const FMoveTable& t, double tol) {
  AlgebraCheck check;
  check.ok = true;
  for (Label a : kAllLabels)
    for (Label b : kAllLabels)
      for (Label c : kAllLabels)
        for (Label e : kAllLabels) {
          std::vector<Label> xs, ys;
          for (Label x : kAllLabels)
            if (fusion_contains(a, b, x) && fusion_contains(x, c, e))
              xs.push_back(x);
          for (Label y : kAllLabels)
            if (fusion_contains(b, c, y) && fusion_contains(a, y, e))
              ys.push_back(y);
          if (xs.size() != ys.size()) {
            check.ok = false;
            check.max_residual = 1.0;
            return check;
          }
          // F F^dagger and F^dagger F against the identity (real table).
          const auto entry = [&](std::size_t i, std::size_t j) {
            return t.amplitude(a, b, c, e, xs[i], ys[j]);
          };
          for (std::size_t i = 0; i < xs.size(); ++i)
            for (std::size_t j = 0; j < xs.size(); ++j) {
              double row = 0.0, col = 0.0;
              for (std::size_t k = 0; k < ys.size(); ++k) {
                row += entry(i, k) * entry(j, k);
                col += entry(k, i) * entry(k, j);
              }
              const double target = i == j ? 1.0 : 0.0;
              check.max_residual = std::max(
                  {check.max_residual, std::abs(row - target),
                   std::abs(col - target)});
            }
        }
  check.ok = check.max_residual <= tol;
  return check;
}

AlgebraCheck f_unitarity_check(double tol) {
  return f_unitarity_check(FMoveTable::instance(), tol);
}

AlgebraCheck pentagon_check(const FMoveTable& t, double tol) {
  AlgebraCheck check;
  for (Label a : kAllLabels)
    for (Label b : kAllLabels)
      for (Label c : kAllLabels)
        for (Label d : kAllLabels)
          for (Label e : kAllLabels)
            for (Label f : kAllLabels)
              for (Label g : kAllLabels)
                for (Label k : kAllLabels)
                  for (Label l : kAllLabels) {
                    const double lhs = t.amplitude(f, c, d, e, g, l) *
                                       t.amplitude(a, b, l, e, f, k);
                    double rhs = 0.0;
                    for (Label h : kAllLabels)
                      rhs += t.amplitude(a, b, c, g, f, h) *
                             t.amplitude(a, h, d, e, g, k) *
                             t.amplitude(b, c, d, k, h, l);
                    check.max_residual =
                        std::max(check.max_residual, std::abs(lhs - rhs));
                  }
  check.ok = check.max_residual <= tol;
  return check;
}

AlgebraCheck pentagon_check(double tol) {
  return pentagon_check(FMoveTable::instance(), tol);
}

double anyon_projector(const FMoveTable& t, Label b, Label prev, Label mid,
                       Label mid_prime, Label next) {
  return projector_from(t, b, prev, mid, mid_prime, next);
}

double anyon_projector(Label b, Label prev, Label mid, Label mid_prime,
                       Label next) {
  return projector_from(FMoveTable::instance(), b, prev, mid, mid_prime, next);
}

double anyon_projector_closed_form(Label b, Label prev, Label mid,
                                   Label mid_prime, Label next) {
  // Zero outside the admissible middle labels of the (prev, next) window.
  if (!(admissible_pair(prev, mid) && admissible_pair(mid, next) &&
        admissible_pair(prev, mid_prime) && admissible_pair(mid_prime, next)))
    return 0.0;

  if (one_dim(prev) && one_dim(next))
    return b == sign_product(prev, next) && mid == mid_prime ? 1.0 : 0.0;
  if (one_dim(prev) || one_dim(next))  // channel forced to 2
    return b == kT && mid == mid_prime ? 1.0 : 0.0;

  // Both boundary labels are 2: fixed blocks over middle labels (+, -, 2).
  const double s2 = std::sqrt(2.0);
  static const double plus_block[3][3] = {
      {0.25, 0.25, 0.0}, {0.25, 0.25, 0.0}, {0.0, 0.0, 0.5}};
  const int i = static_cast<int>(mid_prime);
  const int j = static_cast<int>(mid);
  switch (b) {
    case Label::Plus: {
      double v = plus_block[i][j];
      if ((mid == kT) != (mid_prime == kT)) v = s2 / 4.0;
      return v;
    }
    case Label::Minus: {
      double v = plus_block[i][j];
      if ((mid == kT) != (mid_prime == kT)) v = -s2 / 4.0;
      return v;
    }
    case Label::Two: {
      if (mid == kT || mid_prime == kT) return 0.0;
      return mid == mid_prime ? 0.5 : -0.5;
    }
  }
  throw std::logic_error("unreachable channel label");
}

}  // namespace anyonchain
