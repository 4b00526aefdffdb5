// Command-line surface over the chain library: basis enumeration, spectrum
// computation with spin <-> anyon comparison, and the consistency-check
// suite.  Exit codes: 0 success, 1 check failure, 2 usage/config error.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"
#include "anyonchain/commands.hpp"

namespace {

// Raw option values exactly as parsed; RunConfig assembly happens after the
// parse so a --config chain spec can be overlaid first and explicit flags
// still win.
struct RawOptions {
  std::optional<int> length;
  std::optional<double> coupling_j;
  std::optional<std::string> coupling_jz;
  std::optional<std::string> boundary;
  std::optional<std::string> basis;
  std::optional<std::string> a0;
  std::optional<std::string> format;
  std::optional<std::string> out_path;
  std::optional<std::string> config_path;
  std::optional<std::string> export_operator;
  std::optional<std::string> braid;
  std::optional<double> tol_degeneracy;
  std::optional<double> tol_match;
  std::optional<unsigned> seed;
  bool perturb_fmove = false;
  bool perturb_sz = false;
};

void add_model_options(CLI::App* sub, RawOptions& raw) {
  sub->add_option("--L", raw.length, "Chain length (number of sites)");
  sub->add_option("--J", raw.coupling_j, "Exchange coupling J");
  sub->add_option("--Jz", raw.coupling_jz,
                  "Anisotropy: real literal, \"cos(2pi/3)\", or "
                  "\"cosh(2pi/3)\"");
  sub->add_option("--boundary", raw.boundary,
                  "open | braided | periodic-spin | periodic-anyon-fixed | "
                  "periodic-anyon-translational");
  sub->add_option("--a0", raw.a0,
                  "Boundary-label restriction: free | plus | minus | two");
  sub->add_option("--config", raw.config_path,
                  "JSON chain spec {L, J, Jz, basis, boundary, "
                  "aux_restriction}");
}

void add_output_options(CLI::App* sub, RawOptions& raw) {
  sub->add_option("--format", raw.format, "table | json | csv");
  sub->add_option("--out", raw.out_path, "Write output to PATH");
}

void add_tolerance_options(CLI::App* sub, RawOptions& raw) {
  sub->add_option("--tol-degeneracy", raw.tol_degeneracy,
                  "Energy window for grouping degenerate levels");
  sub->add_option("--tol-match", raw.tol_match,
                  "Energy window for matching spin and anyon levels");
}

anyonchain::RunConfig build_config(const RawOptions& raw,
                                   const std::string& command) {
  anyonchain::RunConfig c = anyonchain::make_run_config();
  c.command = command;

  if (raw.config_path) {
    std::ifstream file(*raw.config_path);
    if (!file)
      throw std::invalid_argument("cannot open config file '" +
                                  *raw.config_path + "'");
    std::ostringstream buffer;
    buffer << file.rdbuf();
    c = anyonchain::apply_chain_spec_json(std::move(c), buffer.str());
  }

  if (raw.length) c.length = *raw.length;
  if (raw.coupling_j) c.params.J = *raw.coupling_j;
  if (raw.coupling_jz) c.params.Jz = anyonchain::parse_jz(*raw.coupling_jz);
  if (raw.boundary)
    c.boundary = anyonchain::boundary_from_string(*raw.boundary);
  if (raw.basis) c.basis = anyonchain::basis_choice_from_string(*raw.basis);
  if (raw.a0)
    c.a0 = *raw.a0 == "free"
               ? std::nullopt
               : std::optional<anyonchain::Label>(
                     anyonchain::label_from_string(*raw.a0));
  if (raw.format) c.format = anyonchain::format_from_string(*raw.format);
  if (raw.out_path) c.out_path = *raw.out_path;
  if (raw.export_operator) c.export_operator_path = *raw.export_operator;
  if (raw.braid) c.braid = anyonchain::braid_from_string(*raw.braid);
  if (raw.tol_degeneracy) c.tol_degeneracy = *raw.tol_degeneracy;
  if (raw.tol_match) c.tol_match = *raw.tol_match;
  if (raw.seed) c.seed = *raw.seed;
  c.perturb_fmove = raw.perturb_fmove;
  c.perturb_sz = raw.perturb_sz;
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"XXZ Heisenberg chain in spin and D3 anyon bases"};
  app.require_subcommand(1);

  RawOptions raw;

  CLI::App* basis = app.add_subcommand(
      "basis", "Enumerate the fusion-path basis with a dimension summary");
  add_model_options(basis, raw);
  add_output_options(basis, raw);

  CLI::App* spectrum = app.add_subcommand(
      "spectrum", "Build, diagonalize, and classify chain Hamiltonians");
  add_model_options(spectrum, raw);
  add_output_options(spectrum, raw);
  add_tolerance_options(spectrum, raw);
  spectrum->add_option("--basis", raw.basis, "spin | anyon | both");
  spectrum->add_option("--braid", raw.braid,
                       "Braid for the braided boundary: pi | identity | "
                       "negated-two");
  spectrum->add_option("--export-operator", raw.export_operator,
                       "Write the assembled Hamiltonian as sparse "
                       "coordinate text to PATH");
  spectrum->add_option("--seed", raw.seed, "Reserved");

  CLI::App* compare = app.add_subcommand(
      "compare", "Spin vs anyon spectra (spectrum with --basis both)");
  add_model_options(compare, raw);
  add_output_options(compare, raw);
  add_tolerance_options(compare, raw);
  compare->add_option("--braid", raw.braid,
                      "Braid for the braided boundary: pi | identity | "
                      "negated-two");

  CLI::App* verify = app.add_subcommand(
      "verify", "Run the algebraic and symmetry consistency checks");
  verify->add_option("--J", raw.coupling_j, "Exchange coupling J");
  verify->add_option("--Jz", raw.coupling_jz,
                     "Anisotropy: real literal, \"cos(2pi/3)\", or "
                     "\"cosh(2pi/3)\"");
  verify->add_option("--braid", raw.braid,
                     "Braid candidate to test: pi | identity | negated-two");
  verify->add_flag("--perturb-fmove", raw.perturb_fmove,
                   "Negative control: flip one F-move sign");
  verify->add_flag("--perturb-sz", raw.perturb_sz,
                   "Negative control: insert a one-site sigma_z term");
  add_output_options(verify, raw);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);  // prints the message or requested help
    return code == 0 ? 0 : anyonchain::kExitUsageError;
  }

  try {
    if (basis->parsed())
      return anyonchain::cmd_basis(build_config(raw, "basis"), std::cout,
                                   std::cerr);
    if (spectrum->parsed())
      return anyonchain::cmd_spectrum(build_config(raw, "spectrum"), std::cout,
                                      std::cerr);
    if (compare->parsed()) {
      anyonchain::RunConfig c = build_config(raw, "compare");
      c.basis = anyonchain::BasisChoice::Both;
      return anyonchain::cmd_spectrum(c, std::cout, std::cerr);
    }
    if (verify->parsed())
      return anyonchain::cmd_verify(build_config(raw, "verify"), std::cout,
                                    std::cerr);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return anyonchain::kExitUsageError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return anyonchain::kExitCheckFailure;
  }
  return anyonchain::kExitUsageError;
}
