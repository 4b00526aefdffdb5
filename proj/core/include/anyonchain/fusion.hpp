#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "anyonchain/label.hpp"

namespace anyonchain {

// D3 fusion rules: + x a = a, - x - = +, - x 2 = 2 x - = 2, 2 x 2 = + - 2.
std::vector<Label> fuse(Label a, Label b);

// Multiplicity (0 or 1) of c in a x b.
bool fusion_contains(Label a, Label b, Label c);

// Neighbouring labels of a fusion path obey a_{i+1} in a_i x 2; the
// admissible pairs are exactly {+2, -2, 2+, 2-, 22}.
bool admissible_pair(Label a, Label b);

// Number N_L^{(ab)} of admissible paths a = a_0, ..., a_L = b, computed by
// the transfer recurrence
//   N_l(a, +/-) = N_{l-1}(a, 2),
//   N_l(a, 2)   = N_{l-1}(a, +) + N_{l-1}(a, -) + N_{l-1}(a, 2),
// from N_0(a, b) = delta_ab.  Closed form for the all-2 count: the
// Jacobsthal-like N_L^{(22)} = (2^{L+1} + (-1)^L) / 3.
std::int64_t count_paths(int length, Label a, Label b);

// Constraint on the path endpoints, one per boundary handling.
struct PathConstraint {
  enum class Kind { FreeEnds, FixedStart, FixedEnds, Periodic };

  Kind kind = Kind::FreeEnds;
  std::optional<Label> start;  // FixedStart, FixedEnds
  std::optional<Label> end;    // FixedEnds

  static PathConstraint free_ends();
  static PathConstraint fixed_start(Label a0);
  static PathConstraint fixed_ends(Label a0, Label aL);
  static PathConstraint periodic();  // a_L identified with a_0

  std::string description() const;

  friend bool operator==(const PathConstraint&, const PathConstraint&) =
      default;
};

// Anyonic Hilbert-space dimension: sum of count_paths over the admitted
// endpoint pairs.  Closed forms: free ends (2^(L+3) + (-1)^L)/3,
// periodic 2^L + (-1)^L.
std::int64_t anyon_dimension(int length, const PathConstraint& c);

// Dimension of the corresponding spin space: each path contributes
// dim V_{a_L} states (sector multiplicity times irrep dimension).  Closed
// forms: free ends 2^(L+2), fixed start a_0 gives dim V_{a_0} * 2^L,
// periodic (5 * 2^L + 4 * (-1)^L)/3.
std::int64_t spin_dimension(int length, const PathConstraint& c);

// One admissible labelling a_0, ..., a_L of the fusion tree.
class FusionPath {
 public:
  explicit FusionPath(std::vector<Label> labels);

  const std::vector<Label>& labels() const { return labels_; }
  int length() const { return static_cast<int>(labels_.size()) - 1; }
  Label start() const { return labels_.front(); }
  Label end() const { return labels_.back(); }

  bool is_admissible() const;
  std::string to_string() const;  // labels separated by spaces, e.g. "+ 2 - 2"

  friend bool operator==(const FusionPath&, const FusionPath&) = default;

 private:
  std::vector<Label> labels_;
};

// The ordered basis of admissible paths under a constraint.  Paths are
// enumerated lexicographically in the label order + < - < 2, which fixes
// the matrix representation of every anyonic operator.  Periodic bases
// store the full L+1 labels with labels[L] == labels[0].
class PathBasis {
 public:
  PathBasis(int length, PathConstraint constraint);

  int length() const { return length_; }
  const PathConstraint& constraint() const { return constraint_; }
  long long size() const { return static_cast<long long>(paths_.size()); }
  const std::vector<FusionPath>& paths() const { return paths_; }
  const FusionPath& path(long long i) const { return paths_[i]; }

  std::optional<long long> index_of(std::span<const Label> labels) const;

  // Index of the path equal to path(i) with position `pos` replaced by `l`;
  // nullopt if that labelling is not in the basis.  O(1): bases are keyed
  // by the base-3 encoding of the label string.
  std::optional<long long> index_with(long long i, int pos, Label l) const;

  // Same, replacing the identified endpoints a_0 and a_L together (the
  // wrap-around move of periodic chains).
  std::optional<long long> index_with_ends(long long i, Label l) const;

  std::string to_text() const;         // one path per line
  std::string to_json_string() const;  // {"length", "constraint", "paths", ...}

 private:
  std::uint64_t key_of(long long i) const { return keys_[i]; }

  int length_;
  PathConstraint constraint_;
  std::vector<FusionPath> paths_;
  std::vector<std::uint64_t> keys_;
  std::vector<std::uint64_t> pow3_;
  std::unordered_map<std::uint64_t, long long> index_;
};

// Spec-level convenience spelling of the PathBasis constructor.
PathBasis enumerate_paths(int length, const PathConstraint& c);

}  // namespace anyonchain
