#pragma once

#include <optional>
#include <string>
#include <vector>

#include "anyonchain/label.hpp"

namespace anyonchain {

// Product basis of the spin chain V_aux (x) V2^(x L), with the auxiliary
// factor V_aux = V2 (+) V+ (+) V- (free boundary) or restricted to a single
// summand.  Basis state index = aux_slot * 2^L + site_bits, where site 1 is
// the most significant bit (bit L-1) and bit value 0/1 selects the first/
// second component of that site's V2.
struct SpinBasis {
  int length = 1;
  std::optional<Label> aux;  // nullopt: free auxiliary factor

  // Slots of the full 4-dim auxiliary factor, in the storage order
  // [V2 component 1, V2 component 2, V+, V-], kept by this basis.
  std::vector<int> aux_slots() const;

  int aux_dimension() const;
  long long dimension() const;  // aux_dimension() * 2^length

  std::string description() const;

  friend bool operator==(const SpinBasis&, const SpinBasis&) = default;
};

}  // namespace anyonchain
