#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "anyonchain/chains.hpp"

namespace anyonchain {

struct EigenSystem {
  Eigen::VectorXd values;  // ascending
  MatrixXc vectors;        // orthonormal columns, matching order
};

// Dense Hermitian diagonalization.  The ChainOperator overload relies on
// the Hermiticity established at construction; the raw overload checks it
// (residual <= 1e-12) and throws std::invalid_argument otherwise.
EigenSystem diagonalize(const MatrixXc& m);
EigenSystem diagonalize(const ChainOperator& op);

// Partition an ascending eigenvalue list into degenerate groups: a value
// joins the current group while it lies within `tol` of the group's first
// member.  Returns (mean energy, count) pairs.
std::vector<std::pair<double, int>> group_degeneracies(
    const Eigen::VectorXd& values, double tol = 1e-8);

// One energy level after degeneracy grouping and sector refinement.  A
// missing sector marks a level whose eigenspace is not invariant under the
// sector decomposition (possible only when the boundary breaks the
// symmetry, e.g. the translational periodic anyon chain).
struct SpectrumLevel {
  double energy = 0.0;
  int multiplicity = 0;
  std::optional<Label> sector;
};

struct Spectrum {
  std::vector<SpectrumLevel> levels;  // ascending; sectors ordered +, -, 2
  std::string basis;
  long long dimension = 0;
  CouplingParams params{};
  bool has_mixed_sectors = false;

  std::string to_json_string() const;
  std::string to_csv() const;
  std::string to_table() const;
};

// Sector of a single eigenvector: the global-projector weight <v|P_a|v>
// must exceed 1 - tol for exactly one a (spin), or the support must lie in
// a single outgoing-label block (anyon).  Throws std::runtime_error when
// the sector is ambiguous instead of guessing.
Label classify_sector_spin(const Eigen::VectorXcd& v, const SpinBasis& basis,
                           double tol = 1e-6);
Label classify_sector_anyon(const Eigen::VectorXcd& v, const PathBasis& basis,
                            double tol = 1e-6);

// Diagonalize, group degeneracies, and refine each degenerate group by
// sector.  Refinement projects the group's eigenspace onto each sector and
// demands integral weights with an invariant span; a group that fails
// (broken symmetry) becomes a single mixed-sector level.
Spectrum compute_spectrum(const ChainOperator& op,
                          double degeneracy_tol = 1e-8);

// Spectrum of an operator given as per-sector Hermitian blocks (used for
// the spin counterpart of the non-translational periodic anyon chain).
Spectrum spectrum_from_sector_blocks(
    const std::vector<std::pair<Label, MatrixXc>>& blocks,
    const std::string& basis_description, const CouplingParams& params,
    double degeneracy_tol = 1e-8);

struct ComparisonLine {
  double spin_energy = 0.0;
  double anyon_energy = 0.0;
  std::optional<Label> sector;
  int spin_multiplicity = 0;
  int anyon_multiplicity = 0;
  int expected_ratio = 1;  // dim V_sector
  bool ok = false;
  std::string note;
};

struct ComparisonReport {
  bool pass = false;
  double max_energy_difference = 0.0;
  std::vector<ComparisonLine> lines;
  std::vector<std::string> failures;

  std::string to_json_string() const;
  std::string to_csv() const;
  std::string to_table() const;
};

// Level-by-level spin <-> anyon comparison: cluster both spectra by energy
// (within tol_match), then require each cluster to carry the same sectors
// with spin multiplicity = anyon multiplicity * dim V_sector.
ComparisonReport compare_spectra(const Spectrum& spin, const Spectrum& anyon,
                                 double tol_match = 1e-9);

}  // namespace anyonchain
