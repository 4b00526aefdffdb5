#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

namespace anyonchain {

// Irrep of D3, doubling as an anyon charge label.  The enumeration order
// (+ < - < 2) is load-bearing: fusion paths are enumerated lexicographically
// in this order, and arrays indexed by Label use it as the storage order.
enum class Label : std::uint8_t { Plus = 0, Minus = 1, Two = 2 };

inline constexpr std::array<Label, 3> kAllLabels{Label::Plus, Label::Minus,
                                                 Label::Two};

// Dimension of the irrep / quantum dimension of the anyon.
constexpr int label_dim(Label a) { return a == Label::Two ? 2 : 1; }

constexpr char label_symbol(Label a) {
  return a == Label::Plus ? '+' : (a == Label::Minus ? '-' : '2');
}

std::string to_string(Label a);

// Accepts the one-character symbols "+", "-", "2" and the spelled-out
// forms "plus", "minus", "two".  Throws std::invalid_argument otherwise.
Label label_from_string(std::string_view s);

}  // namespace anyonchain
