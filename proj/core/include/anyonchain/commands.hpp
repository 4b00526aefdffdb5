#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "anyonchain/chains.hpp"
#include "anyonchain/spectra.hpp"

namespace anyonchain {

// Boundary handling of the chain pair.  The first three keep the spin <->
// anyon correspondence intact; periodic_anyon_fixed retains a restricted
// spin counterpart; periodic_anyon_translational has none.
enum class Boundary {
  Open,
  Braided,
  PeriodicSpin,
  PeriodicAnyonFixed,
  PeriodicAnyonTranslational,
};

enum class BasisChoice { Spin, Anyon, Both };

enum class OutputFormat { Table, Json, Csv };

// Braid candidates for the braided boundary: the permutation operator
// (the physical choice), the identity (fails the braiding condition on the
// Hamiltonian), and P(+) + P(-) - P(2) (a sign flip on the two channel).
enum class BraidChoice { Pi, Identity, NegatedTwo };

std::string to_string(Boundary b);
std::string to_string(BasisChoice b);
std::string to_string(OutputFormat f);
std::string to_string(BraidChoice b);

// Parsers for the CLI spellings ("periodic-anyon-fixed", "both", "json",
// "pi", ...).  All throw std::invalid_argument listing the valid tokens.
Boundary boundary_from_string(const std::string& s);
BasisChoice basis_choice_from_string(const std::string& s);
OutputFormat format_from_string(const std::string& s);
BraidChoice braid_from_string(const std::string& s);

Matrix4c braid_matrix(BraidChoice b);

// Anisotropy of the reference spectrum table: cosh(2*pi/3).
double default_jz();

// Accepts a real literal or the symbolic tokens "cos(2pi/3)" (= -1/2
// exactly) and "cosh(2pi/3)".
double parse_jz(const std::string& s);

// Matrix-size cap: ANYONCHAIN_MAX_DIM from the environment, 65536 when
// unset (so the free spin basis allows L <= 14); malformed values throw
// std::invalid_argument.
long long default_max_dimension();

struct RunConfig {
  std::string command;  // subcommand name, echoed in diagnostics
  int length = 4;
  CouplingParams params{1.0, 0.0};  // Jz filled by make_run_config
  BasisChoice basis = BasisChoice::Both;
  Boundary boundary = Boundary::Open;
  std::optional<Label> a0;  // boundary-label restriction; nullopt = free
  OutputFormat format = OutputFormat::Table;
  std::string out_path;              // empty: write to the provided stream
  std::string export_operator_path;  // empty: no sparse-operator export
  double tol_degeneracy = 1e-8;
  double tol_match = 1e-9;
  long long max_dimension = 65536;
  BraidChoice braid = BraidChoice::Pi;
  bool perturb_fmove = false;  // verify: flip one F-move sign
  bool perturb_sz = false;     // verify: insert a one-site sigma_z term
  unsigned seed = 0;           // reserved; no current command draws from it
};

// Default config with Jz = default_jz() and the environment dimension cap
// applied.
RunConfig make_run_config();

// Overlay a JSON chain specification {L, J, Jz, basis, boundary,
// aux_restriction} onto `base`.  Every key is optional, unknown keys are
// rejected, and Jz accepts the same spellings as parse_jz.
RunConfig apply_chain_spec_json(RunConfig base, const std::string& json_text);

inline constexpr int kExitSuccess = 0;
inline constexpr int kExitCheckFailure = 1;
inline constexpr int kExitUsageError = 2;

// Path listing plus dimension summary with closed-form cross-check.
int cmd_basis(const RunConfig& c, std::ostream& out, std::ostream& err);

// Build, diagonalize, classify; with basis = both also emit the spin <->
// anyon comparison, and fail (exit 1) when it does not match.
int cmd_spectrum(const RunConfig& c, std::ostream& out, std::ostream& err);

// The consistency-check suite: group algebra, projectors, fusion counts,
// F-move identities, braid conditions, symmetry and block structure.
int cmd_verify(const RunConfig& c, std::ostream& out, std::ostream& err);

}  // namespace anyonchain
