#include "anyonchain/commands.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <iomanip>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace anyonchain {
namespace {

using Json = nlohmann::ordered_json;

[[noreturn]] void bad_token(const std::string& what, const std::string& got,
                            const std::string& expected) {
  throw std::invalid_argument("unknown " + what + " '" + got + "' (expected " +
                              expected + ")");
}

std::string trimmed(const std::string& s) {
  auto begin = s.find_first_not_of(" \t");
  if (begin == std::string::npos) return "";
  auto end = s.find_last_not_of(" \t");
  return s.substr(begin, end - begin + 1);
}

// ---------------------------------------------------------------------------
// Config plumbing

void require_valid_length(const RunConfig& c) {
  if (c.length < 1)
    throw std::invalid_argument("L must be at least 1 (got " +
                                std::to_string(c.length) + ")");
}

void require_within_cap(const RunConfig& c, long long dim, const char* what) {
  if (dim > c.max_dimension)
    throw std::invalid_argument(
        std::string(what) + " dimension " + std::to_string(dim) +
        " exceeds the cap " + std::to_string(c.max_dimension) +
        " (set ANYONCHAIN_MAX_DIM to raise it)");
}

// Path constraint implied by the boundary handling: periodic anyon chains
// identify a_L with a_0; every other boundary keeps free (or start-
// restricted) endpoints.
PathConstraint path_constraint_for(const RunConfig& c) {
  const bool periodic_paths =
      c.boundary == Boundary::PeriodicAnyonFixed ||
      c.boundary == Boundary::PeriodicAnyonTranslational;
  if (periodic_paths) {
    if (c.a0)
      throw std::invalid_argument(
          "periodic anyon chains identify a_L with a_0, so --a0 does not "
          "apply; drop the restriction");
    return PathConstraint::periodic();
  }
  return c.a0 ? PathConstraint::fixed_start(*c.a0)
              : PathConstraint::free_ends();
}

// Write `text` to the configured destination; guarantees a trailing
// newline.  Returns an exit code (file errors are usage errors).
int emit(const RunConfig& c, std::string text, std::ostream& out,
         std::ostream& err) {
  if (!text.empty() && text.back() != '\n') text += '\n';
  if (c.out_path.empty()) {
    out << text;
    return kExitSuccess;
  }
  std::ofstream file(c.out_path, std::ios::binary);
  if (!file) {
    err << "error: cannot open output file '" << c.out_path << "'\n";
    return kExitUsageError;
  }
  file << text;
  file.flush();
  if (!file) {
    err << "error: failed writing output file '" << c.out_path << "'\n";
    return kExitUsageError;
  }
  return kExitSuccess;
}

int guarded(std::ostream& err, int (*impl)(const RunConfig&, std::ostream&,
                                           std::ostream&),
            const RunConfig& c, std::ostream& out) {
  try {
    return impl(c, out, err);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitCheckFailure;
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Token spellings

std::string to_string(Boundary b) {
  switch (b) {
    case Boundary::Open:
      return "open";
    case Boundary::Braided:
      return "braided";
    case Boundary::PeriodicSpin:
      return "periodic-spin";
    case Boundary::PeriodicAnyonFixed:
      return "periodic-anyon-fixed";
    case Boundary::PeriodicAnyonTranslational:
      return "periodic-anyon-translational";
  }
  throw std::logic_error("unhandled Boundary value");
}

std::string to_string(BasisChoice b) {
  switch (b) {
    case BasisChoice::Spin:
      return "spin";
    case BasisChoice::Anyon:
      return "anyon";
    case BasisChoice::Both:
      return "both";
  }
  throw std::logic_error("unhandled BasisChoice value");
}

std::string to_string(OutputFormat f) {
  switch (f) {
    case OutputFormat::Table:
      return "table";
    case OutputFormat::Json:
      return "json";
    case OutputFormat::Csv:
      return "csv";
  }
  throw std::logic_error("unhandled OutputFormat value");
}

std::string to_string(BraidChoice b) {
  switch (b) {
    case BraidChoice::Pi:
      return "pi";
    case BraidChoice::Identity:
      return "identity";
    case BraidChoice::NegatedTwo:
      return "negated-two";
  }
  throw std::logic_error("unhandled BraidChoice value");
}

Boundary boundary_from_string(const std::string& s) {
  if (s == "open") return Boundary::Open;
  if (s == "braided") return Boundary::Braided;
  if (s == "periodic-spin") return Boundary::PeriodicSpin;
  if (s == "periodic-anyon-fixed") return Boundary::PeriodicAnyonFixed;
  if (s == "periodic-anyon-translational")
    return Boundary::PeriodicAnyonTranslational;
  bad_token("boundary", s,
            "open, braided, periodic-spin, periodic-anyon-fixed, or "
            "periodic-anyon-translational");
}

BasisChoice basis_choice_from_string(const std::string& s) {
  if (s == "spin") return BasisChoice::Spin;
  if (s == "anyon") return BasisChoice::Anyon;
  if (s == "both") return BasisChoice::Both;
  bad_token("basis", s, "spin, anyon, or both");
}

OutputFormat format_from_string(const std::string& s) {
  if (s == "table") return OutputFormat::Table;
  if (s == "json") return OutputFormat::Json;
  if (s == "csv") return OutputFormat::Csv;
  bad_token("format", s, "table, json, or csv");
}

BraidChoice braid_from_string(const std::string& s) {
  if (s == "pi") return BraidChoice::Pi;
  if (s == "identity") return BraidChoice::Identity;
  if (s == "negated-two") return BraidChoice::NegatedTwo;
  bad_token("braid", s, "pi, identity, or negated-two");
}

Matrix4c braid_matrix(BraidChoice b) {
  switch (b) {
    case BraidChoice::Pi:
      return permutation_operator();
    case BraidChoice::Identity:
      return Matrix4c::Identity();
    case BraidChoice::NegatedTwo:
      return projector_spin(Label::Plus) + projector_spin(Label::Minus) -
             projector_spin(Label::Two);
  }
  throw std::logic_error("unhandled BraidChoice value");
}

double default_jz() { return std::cosh(2.0 * std::numbers::pi / 3.0); }

double parse_jz(const std::string& s) {
  const std::string t = trimmed(s);
  if (t == "cos(2pi/3)") return -0.5;
  if (t == "cosh(2pi/3)") return default_jz();
  const char* begin = t.c_str();
  char* end = nullptr;
  const double value = std::strtod(begin, &end);
  if (end == begin || *end != '\0')
    throw std::invalid_argument("Jz must be a real literal, \"cos(2pi/3)\", "
                                "or \"cosh(2pi/3)\" (got '" +
                                s + "')");
  return value;
}

long long default_max_dimension() {
  const char* env = std::getenv("ANYONCHAIN_MAX_DIM");
  if (env == nullptr || *env == '\0') return 65536;
  char* end = nullptr;
  const long long cap = std::strtoll(env, &end, 10);
  if (end == env || *end != '\0' || cap <= 0)
    throw std::invalid_argument(
        "ANYONCHAIN_MAX_DIM must be a positive integer (got '" +
        std::string(env) + "')");
  return cap;
}

RunConfig make_run_config() {
  RunConfig c;
  c.params.Jz = default_jz();
  c.max_dimension = default_max_dimension();
  return c;
}

RunConfig apply_chain_spec_json(RunConfig base, const std::string& json_text) {
  Json spec;
  try {
    spec = Json::parse(json_text);
  } catch (const Json::parse_error& e) {
    throw std::invalid_argument(std::string("chain spec is not valid JSON: ") +
                                e.what());
  }
  if (!spec.is_object())
    throw std::invalid_argument("chain spec must be a JSON object");

  for (const auto& [key, value] : spec.items()) {
    if (key == "L") {
      if (!value.is_number_integer())
        throw std::invalid_argument("chain spec: L must be an integer");
      base.length = value.get<int>();
    } else if (key == "J") {
      if (!value.is_number())
        throw std::invalid_argument("chain spec: J must be a number");
      base.params.J = value.get<double>();
    } else if (key == "Jz") {
      if (value.is_number())
        base.params.Jz = value.get<double>();
      else if (value.is_string())
        base.params.Jz = parse_jz(value.get<std::string>());
      else
        throw std::invalid_argument(
            "chain spec: Jz must be a number or a symbolic string");
    } else if (key == "basis") {
      if (!value.is_string())
        throw std::invalid_argument("chain spec: basis must be a string");
      base.basis = basis_choice_from_string(value.get<std::string>());
    } else if (key == "boundary") {
      if (!value.is_string())
        throw std::invalid_argument("chain spec: boundary must be a string");
      base.boundary = boundary_from_string(value.get<std::string>());
    } else if (key == "aux_restriction") {
      if (!value.is_string())
        throw std::invalid_argument(
            "chain spec: aux_restriction must be a string");
      const std::string label = value.get<std::string>();
      base.a0 = label == "free" ? std::nullopt
                                : std::optional<Label>(label_from_string(label));
    } else {
      throw std::invalid_argument("unknown chain spec key '" + key + "'");
    }
  }
  return base;
}

// ---------------------------------------------------------------------------
// basis

namespace {

int cmd_basis_impl(const RunConfig& c, std::ostream& out, std::ostream& err) {
  require_valid_length(c);
  const PathConstraint constraint = path_constraint_for(c);
  const std::int64_t anyon_count = anyon_dimension(c.length, constraint);
  const std::int64_t spin_count = spin_dimension(c.length, constraint);
  require_within_cap(c, anyon_count, "path basis");

  const PathBasis basis(c.length, constraint);

  // Cross-check enumeration against the recurrence and, where one exists,
  // the closed form.
  const std::int64_t sign = c.length % 2 == 0 ? 1 : -1;
  const std::int64_t two_l = std::int64_t{1} << c.length;
  bool ok = basis.size() == anyon_count;
  switch (constraint.kind) {
    case PathConstraint::Kind::FreeEnds:
      ok = ok && anyon_count == (8 * two_l + sign) / 3;
      ok = ok && spin_count == 4 * two_l;
      break;
    case PathConstraint::Kind::FixedStart:
      ok = ok && spin_count == label_dim(*constraint.start) * two_l;
      break;
    case PathConstraint::Kind::Periodic:
      ok = ok && anyon_count == two_l + sign;
      ok = ok && spin_count == (5 * two_l + 4 * sign) / 3;
      break;
    case PathConstraint::Kind::FixedEnds:
      break;  // no closed form; recurrence vs enumeration already checked
  }
  const std::string status = ok ? "OK" : "MISMATCH";

  std::string text;
  switch (c.format) {
    case OutputFormat::Table: {
      std::ostringstream s;
      s << basis.to_text();
      s << "anyon " << anyon_count << ", spin " << spin_count
        << ", closed-form " << status << '\n';
      text = s.str();
      break;
    }
    case OutputFormat::Json: {
      Json j;
      j["length"] = c.length;
      j["constraint"] = constraint.description();
      j["anyon_dimension"] = anyon_count;
      j["spin_dimension"] = spin_count;
      j["closed_form"] = status;
      j["paths"] = Json::array();
      for (const FusionPath& p : basis.paths()) j["paths"].push_back(p.to_string());
      text = j.dump(2);
      break;
    }
    case OutputFormat::Csv: {
      std::ostringstream s;
      s << "index,path\n";
      for (long long i = 0; i < basis.size(); ++i)
        s << i << ',' << basis.path(i).to_string() << '\n';
      text = s.str();
      break;
    }
  }

  const int rc = emit(c, std::move(text), out, err);
  if (rc != kExitSuccess) return rc;
  return ok ? kExitSuccess : kExitCheckFailure;
}

// ---------------------------------------------------------------------------
// spectrum

// The anyon counterpart of the periodic spin chain is the braided chain
// with b = Pi, independent of the --braid selection (which parameterizes
// only the braided boundary proper).
ChainOperator build_anyon_side(const RunConfig& c) {
  switch (c.boundary) {
    case Boundary::Open:
      return build_open_anyon(c.length, c.params, c.a0);
    case Boundary::Braided:
      return build_braided_anyon(c.length, c.params, braid_matrix(c.braid),
                                 c.a0)
          .hamiltonian;
    case Boundary::PeriodicSpin:
      return build_braided_anyon(c.length, c.params, permutation_operator(),
                                 c.a0)
          .hamiltonian;
    case Boundary::PeriodicAnyonFixed:
      return build_periodic_anyon(c.length, c.params, false);
    case Boundary::PeriodicAnyonTranslational:
      return build_periodic_anyon(c.length, c.params, true);
  }
  throw std::logic_error("unhandled Boundary value");
}

int cmd_spectrum_impl(const RunConfig& c, std::ostream& out,
                      std::ostream& err) {
  require_valid_length(c);
  const bool wants_spin = c.basis != BasisChoice::Anyon;
  const bool wants_anyon = c.basis != BasisChoice::Spin;

  if (c.boundary == Boundary::PeriodicAnyonTranslational && wants_spin) {
    err << "error: the translationally invariant periodic anyon chain breaks "
           "the D3 symmetry and has no spin model counterpart; rerun with "
           "--basis anyon\n";
    return kExitUsageError;
  }

  // Size guards before any assembly.
  const PathConstraint constraint = path_constraint_for(c);
  if (wants_anyon)
    require_within_cap(c, anyon_dimension(c.length, constraint), "anyon basis");
  if (wants_spin) {
    const long long spin_dim =
        c.boundary == Boundary::PeriodicAnyonFixed
            ? SpinBasis{c.length, Label::Two}.dimension()  // largest block
            : SpinBasis{c.length, c.a0}.dimension();
    require_within_cap(c, spin_dim, "spin basis");
  }

  std::optional<ChainOperator> spin_op;
  std::optional<Spectrum> spin_spectrum;
  if (wants_spin) {
    switch (c.boundary) {
      case Boundary::Open:
        spin_op = build_open_spin(c.length, c.params, c.a0);
        break;
      case Boundary::Braided:
        spin_op =
            build_braided_spin(c.length, c.params, braid_matrix(c.braid), c.a0)
                .hamiltonian;
        break;
      case Boundary::PeriodicSpin:
        spin_op = build_periodic_spin(c.length, c.params, c.a0);
        break;
      case Boundary::PeriodicAnyonFixed: {
        std::vector<std::pair<Label, MatrixXc>> blocks;
        for (Label a : kAllLabels)
          blocks.emplace_back(
              a, periodic_spin_counterpart_block(c.length, c.params, a));
        spin_spectrum = spectrum_from_sector_blocks(
            std::move(blocks),
            "spin (L=" + std::to_string(c.length) + ", aux = sector)",
            c.params, c.tol_degeneracy);
        break;
      }
      case Boundary::PeriodicAnyonTranslational:
        throw std::logic_error("translational spin branch is unreachable");
    }
    if (spin_op) {
      spin_spectrum = compute_spectrum(*spin_op, c.tol_degeneracy);
      spin_spectrum->params = c.params;
    }
  }

  std::optional<ChainOperator> anyon_op;
  std::optional<Spectrum> anyon_spectrum;
  if (wants_anyon) {
    anyon_op = build_anyon_side(c);
    anyon_spectrum = compute_spectrum(*anyon_op, c.tol_degeneracy);
    anyon_spectrum->params = c.params;
  }

  if (!c.export_operator_path.empty()) {
    if (c.basis == BasisChoice::Both)
      throw std::invalid_argument(
          "--export-operator needs a single basis; rerun with --basis spin "
          "or --basis anyon");
    const std::optional<ChainOperator>& op = wants_spin ? spin_op : anyon_op;
    if (!op)
      throw std::invalid_argument(
          "the periodic-anyon-fixed spin counterpart is a direct sum of "
          "sector blocks, not one assembled operator; export the anyon side");
    std::ofstream file(c.export_operator_path, std::ios::binary);
    if (!file)
      throw std::invalid_argument("cannot open export file '" +
                                  c.export_operator_path + "'");
    file << op->to_coo_text();
    file.flush();
    if (!file)
      throw std::invalid_argument("failed writing export file '" +
                                  c.export_operator_path + "'");
  }

  std::string text;
  int status = kExitSuccess;
  if (c.basis == BasisChoice::Both) {
    const ComparisonReport report =
        compare_spectra(*spin_spectrum, *anyon_spectrum, c.tol_match);
    if (!report.pass) status = kExitCheckFailure;
    switch (c.format) {
      case OutputFormat::Table: {
        std::ostringstream s;
        s << spin_spectrum->to_table() << '\n'
          << anyon_spectrum->to_table() << '\n'
          << report.to_table();
        text = s.str();
        break;
      }
      case OutputFormat::Json: {
        Json j;
        j["spin"] = Json::parse(spin_spectrum->to_json_string());
        j["anyon"] = Json::parse(anyon_spectrum->to_json_string());
        j["comparison"] = Json::parse(report.to_json_string());
        text = j.dump(2);
        break;
      }
      case OutputFormat::Csv:
        text = report.to_csv();
        break;
    }
  } else {
    const Spectrum& spectrum = wants_spin ? *spin_spectrum : *anyon_spectrum;
    switch (c.format) {
      case OutputFormat::Table: {
        std::ostringstream s;
        s << spectrum.to_table();
        if (spectrum.has_mixed_sectors)
          s << "mixed sectors: yes (the boundary breaks the sector "
               "decomposition)\n";
        text = s.str();
        break;
      }
      case OutputFormat::Json:
        text = spectrum.to_json_string();
        break;
      case OutputFormat::Csv:
        text = spectrum.to_csv();
        break;
    }
  }

  const int rc = emit(c, std::move(text), out, err);
  if (rc != kExitSuccess) return rc;
  return status;
}

// ---------------------------------------------------------------------------
// verify

struct CheckLine {
  std::string name;
  bool ok = false;
  double residual = 0.0;
  std::string detail;
};

double max_abs(const MatrixXc& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

CheckLine check_group_relations() {
  int violations = 0;
  const auto& all = all_elements();

  if (!(multiply(kSigma, multiply(kSigma, kSigma)) == kIdentity)) ++violations;
  if (!(multiply(kTau, kTau) == kIdentity)) ++violations;
  const GroupElement st = multiply(kSigma, kTau);
  if (!(multiply(st, st) == kIdentity)) ++violations;

  for (const GroupElement& g : all) {
    if (!(multiply(g, inverse(g)) == kIdentity)) ++violations;
    if (!(multiply(inverse(g), g) == kIdentity)) ++violations;
    if (!(multiply(g, kIdentity) == g) || !(multiply(kIdentity, g) == g))
      ++violations;
    for (const GroupElement& h : all)
      for (const GroupElement& k : all)
        if (!(multiply(multiply(g, h), k) == multiply(g, multiply(h, k))))
          ++violations;
  }
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = i + 1; j < all.size(); ++j)
      if (all[i] == all[j]) ++violations;

  return {"group relations, associativity, inverses", violations == 0,
          static_cast<double>(violations), ""};
}

CheckLine check_irreps() {
  double r = 0.0;
  for (Label a : kAllLabels) {
    for (const GroupElement& g : all_elements()) {
      const MatrixXc m = irrep_matrix(a, g);
      const MatrixXc id = MatrixXc::Identity(m.rows(), m.cols());
      r = std::max(r, max_abs(m.adjoint() * m - id));
      for (const GroupElement& h : all_elements())
        r = std::max(
            r, max_abs(m * irrep_matrix(a, h) - irrep_matrix(a, multiply(g, h))));
    }
  }
  return {"irrep homomorphism and unitarity", r <= 1e-14, r, ""};
}

CheckLine check_characters() {
  double r = 0.0;
  for (Label a : kAllLabels)
    for (Label b : kAllLabels) {
      double inner = 0.0;
      for (const GroupElement& g : all_elements())
        inner += character(a, g) * character(b, g);
      inner /= 6.0;
      r = std::max(r, std::abs(inner - (a == b ? 1.0 : 0.0)));
    }
  return {"character orthogonality", r <= 1e-14, r, ""};
}

CheckLine check_spin_projectors() {
  double r = 0.0;
  Matrix4c sum = Matrix4c::Zero();
  for (Label a : kAllLabels) {
    const Matrix4c p = projector_spin(a);
    r = std::max(r, max_abs(p - p.adjoint()));
    r = std::max(r, max_abs(p * p - p));
    for (Label b : kAllLabels)
      if (a != b) r = std::max(r, max_abs(p * projector_spin(b)));
    sum += p;
  }
  r = std::max(r, max_abs(sum - Matrix4c::Identity()));

  const Matrix4c swap = permutation_operator();
  const Matrix4c recombined = projector_spin(Label::Plus) -
                              projector_spin(Label::Minus) +
                              projector_spin(Label::Two);
  r = std::max(r, max_abs(swap - recombined));
  r = std::max(r, max_abs(swap * swap - Matrix4c::Identity()));
  return {"spin projector algebra and permutation identities", r <= 1e-14, r,
          ""};
}

CheckLine check_fusion_dimensions() {
  int mismatches = 0;
  for (int length = 1; length <= 12; ++length) {
    const std::int64_t sign = length % 2 == 0 ? 1 : -1;
    const std::int64_t two_l = std::int64_t{1} << length;
    if (anyon_dimension(length, PathConstraint::free_ends()) !=
        (8 * two_l + sign) / 3)
      ++mismatches;
    if (spin_dimension(length, PathConstraint::free_ends()) != 4 * two_l)
      ++mismatches;
    if (count_paths(length, Label::Two, Label::Two) != (2 * two_l + sign) / 3)
      ++mismatches;
    if (anyon_dimension(length, PathConstraint::periodic()) != two_l + sign)
      ++mismatches;
    if (spin_dimension(length, PathConstraint::periodic()) !=
        (5 * two_l + 4 * sign) / 3)
      ++mismatches;
  }
  for (int length = 1; length <= 10; ++length) {
    const PathBasis free(length, PathConstraint::free_ends());
    std::int64_t by_pair[3][3] = {};
    for (const FusionPath& p : free.paths())
      ++by_pair[static_cast<int>(p.start())][static_cast<int>(p.end())];
    for (Label a : kAllLabels)
      for (Label b : kAllLabels)
        if (by_pair[static_cast<int>(a)][static_cast<int>(b)] !=
            count_paths(length, a, b))
          ++mismatches;
    if (free.size() != anyon_dimension(length, PathConstraint::free_ends()))
      ++mismatches;
    const PathBasis periodic(length, PathConstraint::periodic());
    if (periodic.size() != anyon_dimension(length, PathConstraint::periodic()))
      ++mismatches;
  }
  return {"fusion dimension identities (closed form, recurrence, enumeration)",
          mismatches == 0, static_cast<double>(mismatches), ""};
}

CheckLine check_f_unitarity(const FMoveTable& table, bool perturbed) {
  const AlgebraCheck r = f_unitarity_check(table, 1e-14);
  return {"F-move block unitarity", r.ok, r.max_residual,
          perturbed ? "with one F-move sign flipped" : ""};
}

CheckLine check_pentagon(const FMoveTable& table, bool perturbed) {
  const AlgebraCheck r = pentagon_check(table, 1e-12);
  return {"pentagon identity", r.ok, r.max_residual,
          perturbed ? "with one F-move sign flipped" : ""};
}

// Admissible middle labels of a (prev, *, next) window.
std::vector<Label> window_mids(Label prev, Label next) {
  std::vector<Label> mids;
  for (Label m : kAllLabels)
    if (admissible_pair(prev, m) && admissible_pair(m, next)) mids.push_back(m);
  return mids;
}

CheckLine check_anyon_projector_algebra(const FMoveTable& table) {
  double r = 0.0;
  for (Label prev : kAllLabels)
    for (Label next : kAllLabels) {
      const std::vector<Label> mids = window_mids(prev, next);
      const int n = static_cast<int>(mids.size());
      if (n == 0) continue;
      std::array<MatrixXc, 3> block;
      for (Label b : kAllLabels) {
        MatrixXc m(n, n);
        for (int row = 0; row < n; ++row)
          for (int col = 0; col < n; ++col)
            m(row, col) =
                anyon_projector(table, b, prev, mids[col], mids[row], next);
        block[static_cast<int>(b)] = m;
      }
      MatrixXc sum = MatrixXc::Zero(n, n);
      for (Label b : kAllLabels) {
        const MatrixXc& m = block[static_cast<int>(b)];
        r = std::max(r, max_abs(m - m.adjoint()));
        r = std::max(r, max_abs(m * m - m));
        for (Label b2 : kAllLabels)
          if (b != b2)
            r = std::max(r, max_abs(m * block[static_cast<int>(b2)]));
        sum += m;
      }
      r = std::max(r, max_abs(sum - MatrixXc::Identity(n, n)));
    }
  return {"anyon projector algebra over all windows", r <= 1e-12, r, ""};
}

CheckLine check_anyon_projector_closed_forms(const FMoveTable& table) {
  double r = 0.0;
  for (Label b : kAllLabels)
    for (Label prev : kAllLabels)
      for (Label next : kAllLabels)
        for (Label mid : kAllLabels)
          for (Label mid_prime : kAllLabels)
            r = std::max(
                r, std::abs(anyon_projector(table, b, prev, mid, mid_prime,
                                            next) -
                            anyon_projector_closed_form(b, prev, mid,
                                                        mid_prime, next)));
  return {"anyon projectors match closed forms", r <= 1e-15, r, ""};
}

CheckLine check_braid_conditions(const RunConfig& c) {
  const BraidConditionReport report = verify_braid_conditions(
      braid_matrix(c.braid), local_xxz_spin(c.params), 1e-12);
  const double r =
      std::max({report.expressibility_residual, report.braid_equation_residual,
                report.braiding_residual});
  std::vector<std::string> failed;
  if (!report.projector_expressible || !report.invertible)
    failed.push_back("condition 1 (invertible projector combination)");
  if (!report.braid_equation) failed.push_back("condition 2 (braid equation)");
  if (!report.braids_hamiltonian)
    failed.push_back("condition 3 (braids the Hamiltonian)");
  std::string detail;
  for (const std::string& f : failed) {
    if (!detail.empty()) detail += "; ";
    detail += f;
  }
  if (!detail.empty()) detail += " failed";
  return {"braid conditions (b = " + to_string(c.braid) + ")",
          report.all_pass(), r, detail};
}

// diag(1, -1) on the first site of the chain, extended by identity: the
// canonical symmetry-breaking insertion.
MatrixXc sigma_z_site1(const SpinBasis& basis) {
  const long long dim = basis.dimension();
  const long long site_bits = std::int64_t{1} << basis.length;
  MatrixXc m = MatrixXc::Zero(dim, dim);
  for (long long j = 0; j < dim; ++j) {
    const long long bits = j % site_bits;
    const int bit = static_cast<int>((bits >> (basis.length - 1)) & 1);
    m(j, j) = bit == 0 ? 1.0 : -1.0;
  }
  return m;
}

CheckLine check_d3_symmetry_suite(const RunConfig& c) {
  double r = 0.0;
  bool ok = true;
  for (int length = 2; length <= 5; ++length) {
    const ChainOperator open = build_open_spin(length, c.params);
    const ChainOperator braided =
        build_braided_spin(length, c.params, permutation_operator())
            .hamiltonian;
    for (const ChainOperator* op : {&open, &braided}) {
      MatrixXc dense = op->dense();
      if (c.perturb_sz) dense += sigma_z_site1(op->spin_basis());
      const SymmetryCheck s =
          check_d3_symmetry(dense, op->spin_basis(), 1e-11);
      r = std::max(r, s.max_commutator);
      ok = ok && s.d3_symmetric;
    }
  }
  return {"D3 symmetry of open and braided spin chains (L = 2..5)", ok, r,
          c.perturb_sz ? "with a one-site sigma_z insertion" : ""};
}

CheckLine check_block_structure(const RunConfig& c) {
  double leak = 0.0;
  leak = std::max(leak,
                  max_boundary_mixing(build_open_anyon(4, c.params)));
  leak = std::max(
      leak, max_boundary_mixing(
                build_braided_anyon(4, c.params, permutation_operator())
                    .hamiltonian));
  leak = std::max(leak, max_boundary_mixing(
                            build_periodic_anyon(4, c.params, false)));
  return {"boundary-label conservation (open, braided, periodic-fixed)",
          leak == 0.0, leak, ""};
}

CheckLine check_translational_mixing(const RunConfig& c) {
  double smallest = std::numeric_limits<double>::infinity();
  for (int length : {3, 4, 5})
    smallest = std::min(
        smallest,
        max_boundary_mixing(build_periodic_anyon(length, c.params, true)));
  return {"translational wrap mixes boundary labels (L = 3..5)",
          smallest > 0.1, smallest, ""};
}

int cmd_verify_impl(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const FMoveTable table =
      c.perturb_fmove
          ? FMoveTable::instance().with_sign_flip(Label::Two, Label::Two,
                                                  Label::Two, Label::Two,
                                                  Label::Plus, Label::Two)
          : FMoveTable::instance();

  std::vector<CheckLine> lines;
  lines.push_back(check_group_relations());
  lines.push_back(check_irreps());
  lines.push_back(check_characters());
  lines.push_back(check_spin_projectors());
  lines.push_back(check_fusion_dimensions());
  lines.push_back(check_f_unitarity(table, c.perturb_fmove));
  lines.push_back(check_pentagon(table, c.perturb_fmove));
  lines.push_back(check_anyon_projector_algebra(table));
  lines.push_back(check_anyon_projector_closed_forms(table));
  lines.push_back(check_braid_conditions(c));
  lines.push_back(check_d3_symmetry_suite(c));
  lines.push_back(check_block_structure(c));
  lines.push_back(check_translational_mixing(c));

  const bool pass = std::all_of(lines.begin(), lines.end(),
                                [](const CheckLine& l) { return l.ok; });

  std::string text;
  switch (c.format) {
    case OutputFormat::Table: {
      std::ostringstream s;
      s << std::scientific << std::setprecision(3);
      for (const CheckLine& l : lines) {
        s << (l.ok ? "ok   " : "FAIL ") << std::left << std::setw(62) << l.name
          << " residual " << l.residual;
        if (!l.detail.empty()) s << "  [" << l.detail << "]";
        s << '\n';
      }
      s << "verify: " << (pass ? "PASS" : "FAIL") << '\n';
      text = s.str();
      break;
    }
    case OutputFormat::Json: {
      Json j;
      j["pass"] = pass;
      j["checks"] = Json::array();
      for (const CheckLine& l : lines)
        j["checks"].push_back(Json{{"name", l.name},
                                   {"ok", l.ok},
                                   {"residual", l.residual},
                                   {"detail", l.detail}});
      text = j.dump(2);
      break;
    }
    case OutputFormat::Csv: {
      std::ostringstream s;
      s << std::setprecision(17);
      s << "name,ok,residual\n";
      for (const CheckLine& l : lines)
        s << '"' << l.name << "\"," << (l.ok ? "true" : "false") << ','
          << l.residual << '\n';
      text = s.str();
      break;
    }
  }

  const int rc = emit(c, std::move(text), out, err);
  if (rc != kExitSuccess) return rc;
  return pass ? kExitSuccess : kExitCheckFailure;
}

}  // namespace

int cmd_basis(const RunConfig& c, std::ostream& out, std::ostream& err) {
  return guarded(err, cmd_basis_impl, c, out);
}

int cmd_spectrum(const RunConfig& c, std::ostream& out, std::ostream& err) {
  return guarded(err, cmd_spectrum_impl, c, out);
}

int cmd_verify(const RunConfig& c, std::ostream& out, std::ostream& err) {
  return guarded(err, cmd_verify_impl, c, out);
}

}  // namespace anyonchain
