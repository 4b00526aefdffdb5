#include "anyonchain/d3.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace anyonchain {

std::string to_string(Label a) { return std::string(1, label_symbol(a)); }

Label label_from_string(std::string_view s) {
  if (s == "+" || s == "plus") return Label::Plus;
  if (s == "-" || s == "minus") return Label::Minus;
  if (s == "2" || s == "two") return Label::Two;
  throw std::invalid_argument("unknown label '" + std::string(s) +
                              "' (expected +, -, 2, plus, minus, two)");
}

namespace {

int mod3(int x) { return ((x % 3) + 3) % 3; }

GroupElement normalized(int rot, int flip) {
  return GroupElement{mod3(rot), ((flip % 2) + 2) % 2};
}

}  // namespace

const std::array<GroupElement, 6>& all_elements() {
  static const std::array<GroupElement, 6> elems{
      GroupElement{0, 0}, GroupElement{1, 0}, GroupElement{2, 0},
      GroupElement{0, 1}, GroupElement{1, 1}, GroupElement{2, 1}};
  return elems;
}

GroupElement multiply(GroupElement g, GroupElement h) {
  // (s^a t^b)(s^c t^d) = s^(a + (-1)^b c) t^(b + d): pushing t past s
  // inverts the rotation.
  const int sign = g.flip ? -1 : 1;
  return normalized(g.rot + sign * h.rot, g.flip + h.flip);
}

GroupElement inverse(GroupElement g) {
  // Reflections are involutions; rotations invert as usual.
  return g.flip ? g : normalized(-g.rot, 0);
}

std::string to_string(GroupElement g) {
  std::string s;
  if (g.rot == 1) s += "s";
  if (g.rot == 2) s += "s^2";
  if (g.flip) s += "t";
  if (s.empty()) s = "1";
  return s;
}

Matrix2c pi2(GroupElement g) {
  constexpr double third = 2.0 * std::numbers::pi / 3.0;
  const Complex w = std::polar(1.0, third * g.rot);
  Matrix2c rot;
  rot << w, 0.0, 0.0, std::conj(w);
  if (!g.flip) return rot;
  Matrix2c t;
  t << 0.0, 1.0, 1.0, 0.0;
  return rot * t;
}

MatrixXc irrep_matrix(Label a, GroupElement g) {
  switch (a) {
    case Label::Plus:
      return MatrixXc::Identity(1, 1);
    case Label::Minus: {
      MatrixXc m(1, 1);
      m(0, 0) = g.flip ? -1.0 : 1.0;
      return m;
    }
    case Label::Two:
      return pi2(g);
  }
  throw std::logic_error("unreachable irrep label");
}

double character(Label a, GroupElement g) {
  switch (a) {
    case Label::Plus:
      return 1.0;
    case Label::Minus:
      return g.flip ? -1.0 : 1.0;
    case Label::Two:
      if (g.flip) return 0.0;
      return 2.0 * std::cos(2.0 * std::numbers::pi * g.rot / 3.0);
  }
  throw std::logic_error("unreachable irrep label");
}

Matrix4c projector_spin(Label a) {
  Matrix4c p = Matrix4c::Zero();
  const double weight = label_dim(a) / 6.0;
  for (const GroupElement& g : all_elements()) {
    const Matrix2c u = pi2(g);
    Matrix4c kron;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        kron.block<2, 2>(2 * i, 2 * j) = u(i, j) * u;
    p += weight * character(a, g) * kron;  // chi_a is real for D3
  }
  return p;
}

Matrix4c permutation_operator() {
  Matrix4c swap = Matrix4c::Zero();
  swap(0, 0) = swap(1, 2) = swap(2, 1) = swap(3, 3) = 1.0;
  return swap;
}

}  // namespace anyonchain
