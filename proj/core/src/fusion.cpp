#include "anyonchain/fusion.hpp"

#include "json.hpp"
#include <sstream>
#include <stdexcept>

namespace anyonchain {

std::vector<Label> fuse(Label a, Label b) {
  const bool a1 = label_dim(a) == 1;
  const bool b1 = label_dim(b) == 1;
  if (a1 && b1) return {a == b ? Label::Plus : Label::Minus};
  if (a1 || b1) return {Label::Two};
  return {Label::Plus, Label::Minus, Label::Two};  // 2 x 2
}

bool fusion_contains(Label a, Label b, Label c) {
  for (Label l : fuse(a, b))
    if (l == c) return true;
  return false;
}

bool admissible_pair(Label a, Label b) {
  return fusion_contains(a, Label::Two, b);
}

std::int64_t count_paths(int length, Label a, Label b) {
  if (length < 0) throw std::invalid_argument("path length must be >= 0");
  // n[l] = N_l(a, label l), advanced by the transfer recurrence.
  std::array<std::int64_t, 3> n{0, 0, 0};
  n[static_cast<int>(a)] = 1;
  for (int l = 0; l < length; ++l) {
    const std::int64_t plus = n[2];
    const std::int64_t minus = n[2];
    const std::int64_t two = n[0] + n[1] + n[2];
    n = {plus, minus, two};
  }
  return n[static_cast<int>(b)];
}

PathConstraint PathConstraint::free_ends() { return {}; }

PathConstraint PathConstraint::fixed_start(Label a0) {
  return {Kind::FixedStart, a0, std::nullopt};
}

PathConstraint PathConstraint::fixed_ends(Label a0, Label aL) {
  return {Kind::FixedEnds, a0, aL};
}

PathConstraint PathConstraint::periodic() {
  return {Kind::Periodic, std::nullopt, std::nullopt};
}

std::string PathConstraint::description() const {
  switch (kind) {
    case Kind::FreeEnds:
      return "free ends";
    case Kind::FixedStart:
      return std::string("a0=") + label_symbol(*start);
    case Kind::FixedEnds:
      return std::string("a0=") + label_symbol(*start) +
             ", aL=" + label_symbol(*end);
    case Kind::Periodic:
      return "periodic (aL=a0)";
  }
  throw std::logic_error("unreachable constraint kind");
}

namespace {

// Endpoint pairs admitted by a constraint, with the paths' a_L label.
std::vector<std::pair<Label, Label>> endpoint_pairs(const PathConstraint& c) {
  std::vector<std::pair<Label, Label>> pairs;
  switch (c.kind) {
    case PathConstraint::Kind::FreeEnds:
      for (Label a : kAllLabels)
        for (Label b : kAllLabels) pairs.emplace_back(a, b);
      break;
    case PathConstraint::Kind::FixedStart:
      for (Label b : kAllLabels) pairs.emplace_back(*c.start, b);
      break;
    case PathConstraint::Kind::FixedEnds:
      pairs.emplace_back(*c.start, *c.end);
      break;
    case PathConstraint::Kind::Periodic:
      for (Label a : kAllLabels) pairs.emplace_back(a, a);
      break;
  }
  return pairs;
}

}  // namespace

std::int64_t anyon_dimension(int length, const PathConstraint& c) {
  std::int64_t total = 0;
  for (auto [a, b] : endpoint_pairs(c)) total += count_paths(length, a, b);
  return total;
}

std::int64_t spin_dimension(int length, const PathConstraint& c) {
  std::int64_t total = 0;
  for (auto [a, b] : endpoint_pairs(c))
    total += count_paths(length, a, b) * label_dim(b);
  return total;
}

FusionPath::FusionPath(std::vector<Label> labels) : labels_(std::move(labels)) {
  if (labels_.size() < 2)
    throw std::invalid_argument(
        "a fusion path needs at least two labels (length >= 1)");
}

bool FusionPath::is_admissible() const {
  for (std::size_t i = 0; i + 1 < labels_.size(); ++i)
    if (!admissible_pair(labels_[i], labels_[i + 1])) return false;
  return true;
}

std::string FusionPath::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (i) s += ' ';
    s += label_symbol(labels_[i]);
  }
  return s;
}

PathBasis::PathBasis(int length, PathConstraint constraint)
    : length_(length), constraint_(std::move(constraint)) {
  // 3^(L+1) must fit the uint64 key; interactive sizes stop far earlier.
  if (length < 1 || length > 39)
    throw std::invalid_argument("path basis length must be in [1, 39]");

  pow3_.resize(length + 1);
  pow3_[0] = 1;
  for (int i = 1; i <= length; ++i) pow3_[i] = 3 * pow3_[i - 1];

  const auto accepts = [&](const std::vector<Label>& p) {
    switch (constraint_.kind) {
      case PathConstraint::Kind::FreeEnds:
      case PathConstraint::Kind::FixedStart:
        return true;
      case PathConstraint::Kind::FixedEnds:
        return p.back() == *constraint_.end;
      case PathConstraint::Kind::Periodic:
        return p.back() == p.front();
    }
    return false;
  };

  // Depth-first in the label order + < - < 2 yields the lexicographic
  // basis ordering directly.
  std::vector<Label> partial;
  auto grow = [&](auto&& self) -> void {
    if (static_cast<int>(partial.size()) == length_ + 1) {
      if (accepts(partial)) paths_.emplace_back(partial);
      return;
    }
    for (Label next : kAllLabels) {
      if (!partial.empty() && !admissible_pair(partial.back(), next)) continue;
      partial.push_back(next);
      self(self);
      partial.pop_back();
    }
  };
  if (constraint_.start) {
    partial.push_back(*constraint_.start);
    grow(grow);
  } else {
    grow(grow);
  }

  keys_.reserve(paths_.size());
  index_.reserve(paths_.size());
  for (long long i = 0; i < size(); ++i) {
    std::uint64_t key = 0;
    const auto& labels = paths_[i].labels();
    for (int p = 0; p <= length_; ++p)
      key += static_cast<std::uint64_t>(labels[p]) * pow3_[p];
    keys_.push_back(key);
    index_.emplace(key, i);
  }
}

std::optional<long long> PathBasis::index_of(
    std::span<const Label> labels) const {
  if (static_cast<int>(labels.size()) != length_ + 1) return std::nullopt;
  std::uint64_t key = 0;
  for (int p = 0; p <= length_; ++p)
    key += static_cast<std::uint64_t>(labels[p]) * pow3_[p];
  const auto it = index_.find(key);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<long long> PathBasis::index_with(long long i, int pos,
                                               Label l) const {
  const Label old = paths_[i].labels()[pos];
  const std::int64_t shift = (static_cast<std::int64_t>(l) -
                              static_cast<std::int64_t>(old)) *
                             static_cast<std::int64_t>(pow3_[pos]);
  const std::uint64_t key = keys_[i] + static_cast<std::uint64_t>(shift);
  const auto it = index_.find(key);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<long long> PathBasis::index_with_ends(long long i,
                                                    Label l) const {
  const Label old = paths_[i].labels()[0];
  const std::int64_t shift =
      (static_cast<std::int64_t>(l) - static_cast<std::int64_t>(old)) *
      static_cast<std::int64_t>(pow3_[0] + pow3_[length_]);
  const std::uint64_t key = keys_[i] + static_cast<std::uint64_t>(shift);
  const auto it = index_.find(key);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::string PathBasis::to_text() const {
  std::ostringstream out;
  for (const FusionPath& p : paths_) out << p.to_string() << '\n';
  return out.str();
}

std::string PathBasis::to_json_string() const {
  nlohmann::ordered_json j;
  j["length"] = length_;
  j["constraint"] = constraint_.description();
  j["count"] = size();
  j["recurrence_count"] = anyon_dimension(length_, constraint_);
  j["paths"] = nlohmann::ordered_json::array();
  for (const FusionPath& p : paths_) j["paths"].push_back(p.to_string());
  return j.dump(2);
}

PathBasis enumerate_paths(int length, const PathConstraint& c) {
  return PathBasis(length, c);
}

}  // namespace anyonchain
