// Acceptance gate: one check per shipping criterion, one PASS/FAIL line
// each.  Returns 0 only when every criterion passes.

#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "anyonchain/commands.hpp"

namespace {

using namespace anyonchain;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

double max_abs(const MatrixXc& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

std::string fmt(double x) {
  std::ostringstream s;
  s << std::setprecision(3) << x;
  return s.str();
}

// --- criterion 1: the reference spectrum table ----------------------------

Outcome table_reproduction() {
  const auto start = Clock::now();
  const CouplingParams p{1.0, default_jz()};

  const ChainOperator spin_op = build_open_spin(4, p, Label::Plus);
  const ChainOperator anyon_op = build_open_anyon(4, p, Label::Plus);
  if (spin_op.dimension() != 16)
    return {false, "spin dimension " + std::to_string(spin_op.dimension()) +
                       ", expected 16"};
  if (anyon_op.dimension() != 11)
    return {false, "anyon dimension " + std::to_string(anyon_op.dimension()) +
                       ", expected 11"};

  Spectrum spin = compute_spectrum(spin_op);
  spin.params = p;
  Spectrum anyon = compute_spectrum(anyon_op);
  anyon.params = p;

  struct Row {
    double energy;
    Label sector;
    int spin_mult;
    int anyon_mult;
  };
  // Reference energies to four digits, ascending.
  const std::vector<Row> table = {
      {-3.9050, Label::Plus, 1, 1},  {-3.1196, Label::Minus, 1, 1},
      {-0.0665, Label::Two, 2, 1},   {1.1218, Label::Minus, 1, 1},
      {1.8290, Label::Two, 2, 1},    {1.8924, Label::Plus, 1, 1},
      {5.3632, Label::Minus, 1, 1},  {5.3781, Label::Plus, 1, 1},
      {5.4320, Label::Two, 2, 1},    {5.5365, Label::Two, 2, 1},
      {9.3655, Label::Two, 2, 1}};

  if (spin.levels.size() != table.size())
    return {false,
            "spin spectrum has " + std::to_string(spin.levels.size()) +
                " levels, expected " + std::to_string(table.size())};
  if (anyon.levels.size() != table.size())
    return {false,
            "anyon spectrum has " + std::to_string(anyon.levels.size()) +
                " levels, expected " + std::to_string(table.size())};

  double max_dev = 0.0;
  std::array<int, 3> sector_counts{};
  for (std::size_t i = 0; i < table.size(); ++i) {
    const Row& row = table[i];
    for (const SpectrumLevel* level : {&spin.levels[i], &anyon.levels[i]}) {
      const double dev = std::abs(level->energy - row.energy);
      max_dev = std::max(max_dev, dev);
      if (dev > 5e-4)
        return {false, "level " + std::to_string(i) + " energy " +
                           fmt(level->energy) + " vs table " +
                           fmt(row.energy)};
      if (!level->sector || *level->sector != row.sector)
        return {false, "level " + std::to_string(i) + " sector mismatch"};
    }
    if (spin.levels[i].multiplicity != row.spin_mult)
      return {false, "level " + std::to_string(i) + " spin multiplicity " +
                         std::to_string(spin.levels[i].multiplicity)};
    if (anyon.levels[i].multiplicity != row.anyon_mult)
      return {false, "level " + std::to_string(i) + " anyon multiplicity " +
                         std::to_string(anyon.levels[i].multiplicity)};
    ++sector_counts[static_cast<int>(row.sector)];
  }
  if (sector_counts != std::array<int, 3>{3, 3, 5})
    return {false, "sector census is not 3/3/5"};

  if (!compare_spectra(spin, anyon).pass)
    return {false, "spin <-> anyon comparison failed"};

  const double elapsed = seconds_since(start);
  if (elapsed >= 1.0) return {false, "took " + fmt(elapsed) + " s (>= 1 s)"};
  return {true, "11 levels, max |dE| " + fmt(max_dev) + ", " + fmt(elapsed) +
                    " s"};
}

// --- criterion 2: dimension identities ------------------------------------

Outcome dimension_identities() {
  for (int length = 1; length <= 12; ++length) {
    const std::int64_t sign = length % 2 == 0 ? 1 : -1;
    const std::int64_t two_l = std::int64_t{1} << length;
    std::int64_t free_total = 0, free_weighted = 0, periodic_total = 0,
                 periodic_weighted = 0;
    for (Label a : kAllLabels) {
      periodic_total += count_paths(length, a, a);
      periodic_weighted += count_paths(length, a, a) * label_dim(a);
      for (Label b : kAllLabels) {
        free_total += count_paths(length, a, b);
        free_weighted += count_paths(length, a, b) * label_dim(b);
      }
    }
    if (free_total != (8 * two_l + sign) / 3)
      return {false, "free count at L=" + std::to_string(length)};
    if (free_weighted != 4 * two_l)
      return {false, "weighted free count at L=" + std::to_string(length)};
    if (count_paths(length, Label::Two, Label::Two) != (2 * two_l + sign) / 3)
      return {false, "N^(22) at L=" + std::to_string(length)};
    if (periodic_total != two_l + sign)
      return {false, "periodic count at L=" + std::to_string(length)};
    if (periodic_weighted != (5 * two_l + 4 * sign) / 3)
      return {false, "weighted periodic count at L=" + std::to_string(length)};
    if (anyon_dimension(length, PathConstraint::free_ends()) != free_total ||
        spin_dimension(length, PathConstraint::free_ends()) != free_weighted ||
        anyon_dimension(length, PathConstraint::periodic()) !=
            periodic_total ||
        spin_dimension(length, PathConstraint::periodic()) !=
            periodic_weighted)
      return {false, "dimension helpers disagree at L=" +
                         std::to_string(length)};
  }

  for (int length = 1; length <= 10; ++length) {
    const PathBasis free(length, PathConstraint::free_ends());
    std::array<std::array<std::int64_t, 3>, 3> by_pair{};
    for (const FusionPath& path : free.paths())
      ++by_pair[static_cast<int>(path.start())][static_cast<int>(path.end())];
    for (Label a : kAllLabels)
      for (Label b : kAllLabels)
        if (by_pair[static_cast<int>(a)][static_cast<int>(b)] !=
            count_paths(length, a, b))
          return {false, "enumeration vs recurrence at L=" +
                             std::to_string(length)};
    const PathBasis periodic(length, PathConstraint::periodic());
    if (periodic.size() !=
        anyon_dimension(length, PathConstraint::periodic()))
      return {false,
              "periodic enumeration at L=" + std::to_string(length)};
  }
  return {true, "recurrence, closed forms, and enumeration agree (L <= 12)"};
}

// --- criterion 3: open-chain correspondence --------------------------------

Outcome open_correspondence() {
  const auto start = Clock::now();
  double worst = 0.0;
  for (const CouplingParams p : {CouplingParams{1.0, -0.5},
                                 CouplingParams{1.0, 1.0},
                                 CouplingParams{1.0, 2.0}}) {
    for (int length = 2; length <= 8; ++length) {
      Spectrum spin = compute_spectrum(build_open_spin(length, p));
      spin.params = p;
      Spectrum anyon = compute_spectrum(build_open_anyon(length, p));
      anyon.params = p;
      const ComparisonReport report = compare_spectra(spin, anyon, 1e-9);
      worst = std::max(worst, report.max_energy_difference);
      if (!report.pass)
        return {false, "L=" + std::to_string(length) + ", Jz=" + fmt(p.Jz) +
                           ": comparison failed"};
    }
  }
  const double elapsed = seconds_since(start);
  if (elapsed >= 60.0)
    return {false, "took " + fmt(elapsed) + " s (>= 60 s)"};
  return {true, "L=2..8, three couplings, max |dE| " + fmt(worst) + ", " +
                    fmt(elapsed) + " s"};
}

// --- criterion 4: braided equals periodic ----------------------------------

Outcome braided_equals_periodic() {
  const CouplingParams p{1.0, -0.5};
  double worst_entry = 0.0, worst_comm = 0.0;
  for (int length = 3; length <= 6; ++length) {
    const BraidedChain braided_spin =
        build_braided_spin(length, p, permutation_operator());
    const ChainOperator periodic = build_periodic_spin(length, p);
    const MatrixXc h = braided_spin.hamiltonian.dense();

    const double entry_diff = max_abs(h - periodic.dense());
    worst_entry = std::max(worst_entry, entry_diff);
    if (entry_diff > 1e-13)
      return {false, "entrywise difference " + fmt(entry_diff) + " at L=" +
                         std::to_string(length)};

    const MatrixXc b = MatrixXc(braided_spin.global_braid);
    const double comm = max_abs(b * h - h * b);
    worst_comm = std::max(worst_comm, comm);
    if (comm > 1e-11)
      return {false,
              "[B, H] residual " + fmt(comm) + " at L=" + std::to_string(length)};

    Spectrum spin = compute_spectrum(braided_spin.hamiltonian);
    spin.params = p;
    Spectrum anyon = compute_spectrum(
        build_braided_anyon(length, p, permutation_operator()).hamiltonian);
    anyon.params = p;
    if (!compare_spectra(spin, anyon).pass)
      return {false,
              "braided spectra differ at L=" + std::to_string(length)};
  }
  return {true, "L=3..6, entrywise " + fmt(worst_entry) + ", [B,H] " +
                    fmt(worst_comm)};
}

// --- criterion 5: algebraic suites -----------------------------------------

Outcome algebraic_suites() {
  const AlgebraCheck pentagon = pentagon_check();
  if (!pentagon.ok || pentagon.max_residual > 1e-12)
    return {false, "pentagon residual " + fmt(pentagon.max_residual)};
  const AlgebraCheck unitarity = f_unitarity_check();
  if (!unitarity.ok || unitarity.max_residual > 1e-14)
    return {false, "F unitarity residual " + fmt(unitarity.max_residual)};

  double spin_residual = 0.0;
  Matrix4c sum = Matrix4c::Zero();
  for (Label a : kAllLabels) {
    const Matrix4c proj = projector_spin(a);
    spin_residual = std::max(spin_residual, max_abs(proj - proj.adjoint()));
    spin_residual = std::max(spin_residual, max_abs(proj * proj - proj));
    for (Label b : kAllLabels)
      if (a != b)
        spin_residual =
            std::max(spin_residual, max_abs(proj * projector_spin(b)));
    sum += proj;
  }
  spin_residual = std::max(spin_residual, max_abs(sum - Matrix4c::Identity()));
  if (spin_residual > 1e-12)
    return {false, "spin projector residual " + fmt(spin_residual)};

  double anyon_residual = 0.0;
  double closed_form_dev = 0.0;
  for (Label prev : kAllLabels)
    for (Label next : kAllLabels) {
      std::vector<Label> mids;
      for (Label m : kAllLabels)
        if (admissible_pair(prev, m) && admissible_pair(m, next))
          mids.push_back(m);
      if (mids.empty()) continue;
      const int n = static_cast<int>(mids.size());
      std::array<MatrixXc, 3> block;
      for (Label b : kAllLabels) {
        MatrixXc m(n, n);
        for (int row = 0; row < n; ++row)
          for (int col = 0; col < n; ++col)
            m(row, col) = anyon_projector(b, prev, mids[col], mids[row], next);
        block[static_cast<int>(b)] = m;
      }
      MatrixXc complete = MatrixXc::Zero(n, n);
      for (Label b : kAllLabels) {
        const MatrixXc& m = block[static_cast<int>(b)];
        anyon_residual = std::max(anyon_residual, max_abs(m - m.adjoint()));
        anyon_residual = std::max(anyon_residual, max_abs(m * m - m));
        for (Label b2 : kAllLabels)
          if (b != b2)
            anyon_residual = std::max(
                anyon_residual, max_abs(m * block[static_cast<int>(b2)]));
        complete += m;
      }
      anyon_residual = std::max(anyon_residual,
                                max_abs(complete - MatrixXc::Identity(n, n)));
    }
  for (Label b : kAllLabels)
    for (Label prev : kAllLabels)
      for (Label next : kAllLabels)
        for (Label mid : kAllLabels)
          for (Label mid_prime : kAllLabels)
            closed_form_dev = std::max(
                closed_form_dev,
                std::abs(anyon_projector(b, prev, mid, mid_prime, next) -
                         anyon_projector_closed_form(b, prev, mid, mid_prime,
                                                     next)));
  if (anyon_residual > 1e-12)
    return {false, "anyon projector residual " + fmt(anyon_residual)};
  if (closed_form_dev > 1e-15)
    return {false, "closed-form deviation " + fmt(closed_form_dev)};

  return {true, "pentagon " + fmt(pentagon.max_residual) + ", unitarity " +
                    fmt(unitarity.max_residual) + ", projectors " +
                    fmt(std::max(spin_residual, anyon_residual)) +
                    ", closed forms " + fmt(closed_form_dev)};
}

// --- criterion 6: symmetry dichotomy ----------------------------------------

Outcome symmetry_dichotomy() {
  const CouplingParams p{1.0, -0.5};
  double worst = 0.0;
  for (int length = 2; length <= 6; ++length) {
    const ChainOperator open = build_open_spin(length, p);
    const ChainOperator braided =
        build_braided_spin(length, p, permutation_operator()).hamiltonian;
    for (const ChainOperator* op : {&open, &braided}) {
      const SymmetryCheck check =
          check_d3_symmetry(op->dense(), op->spin_basis(), 1e-11);
      worst = std::max(worst, check.max_commutator);
      if (!check.d3_symmetric)
        return {false, "symmetry residual " + fmt(check.max_commutator) +
                           " at L=" + std::to_string(length)};
    }
  }

  for (int length = 3; length <= 5; ++length) {
    const double open_leak = max_boundary_mixing(build_open_anyon(length, p));
    const double braided_leak = max_boundary_mixing(
        build_braided_anyon(length, p, permutation_operator()).hamiltonian);
    const double fixed_leak =
        max_boundary_mixing(build_periodic_anyon(length, p, false));
    if (open_leak != 0.0 || braided_leak != 0.0 || fixed_leak != 0.0)
      return {false, "sector leakage at L=" + std::to_string(length)};

    const double mixing =
        max_boundary_mixing(build_periodic_anyon(length, p, true));
    if (mixing <= 0.1)
      return {false, "translational mixing only " + fmt(mixing) + " at L=" +
                         std::to_string(length)};
  }
  return {true, "commutators <= " + fmt(worst) +
                    ", blocks exact, wrap mixing > 0.1"};
}

// --- criterion 7: negative controls -----------------------------------------

int run_cli(const std::string& args) {
#ifdef ANYONCHAIN_CLI_PATH
  const std::string command =
      std::string("\"") + ANYONCHAIN_CLI_PATH + "\" " + args +
      " >/dev/null 2>/dev/null";
  const int status = std::system(command.c_str());
  if (status == -1) return -1;
  if (WIFEXITED(status)) return WEXITSTATUS(status);
  return -2;
#else
  (void)args;
  return -3;
#endif
}

Outcome negative_controls() {
  std::ostringstream sink;

  RunConfig clean = make_run_config();
  std::ostringstream clean_out;
  if (cmd_verify(clean, clean_out, sink) != kExitSuccess)
    return {false, "clean verify did not pass"};

  RunConfig flipped = make_run_config();
  flipped.perturb_fmove = true;
  std::ostringstream flipped_out;
  if (cmd_verify(flipped, flipped_out, sink) != kExitCheckFailure)
    return {false, "flipped F-move sign was not detected"};
  if (flipped_out.str().find("FAIL pentagon identity") == std::string::npos)
    return {false, "pentagon failure not reported"};

  RunConfig identity = make_run_config();
  identity.braid = BraidChoice::Identity;
  std::ostringstream identity_out;
  if (cmd_verify(identity, identity_out, sink) != kExitCheckFailure)
    return {false, "identity braid was not detected"};
  if (identity_out.str().find("condition 3") == std::string::npos)
    return {false, "condition 3 failure not reported"};

  RunConfig perturbed = make_run_config();
  perturbed.perturb_sz = true;
  if (cmd_verify(perturbed, sink, sink) != kExitCheckFailure)
    return {false, "sigma_z insertion was not detected"};

  const int flipped_cli = run_cli("verify --perturb-fmove");
  if (flipped_cli != kExitCheckFailure)
    return {false,
            "CLI --perturb-fmove exit " + std::to_string(flipped_cli)};
  const int identity_cli = run_cli("verify --braid identity");
  if (identity_cli != kExitCheckFailure)
    return {false,
            "CLI --braid identity exit " + std::to_string(identity_cli)};
  const int usage_cli = run_cli("basis --L 0");
  if (usage_cli != kExitUsageError)
    return {false, "CLI basis --L 0 exit " + std::to_string(usage_cli)};
  const int ok_cli = run_cli("basis --L 4");
  if (ok_cli != kExitSuccess)
    return {false, "CLI basis --L 4 exit " + std::to_string(ok_cli)};

  return {true, "library and CLI exit codes as expected"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria =
      {{"reference spectrum reproduction", table_reproduction},
       {"dimension identities", dimension_identities},
       {"open-chain correspondence", open_correspondence},
       {"braided equals periodic", braided_equals_periodic},
       {"algebraic suites", algebraic_suites},
       {"symmetry dichotomy", symmetry_dichotomy},
       {"negative controls", negative_controls}};

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome outcome;
    try {
      outcome = criteria[i].second();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    if (!outcome.pass) ++failures;
    std::cout << (outcome.pass ? "PASS" : "FAIL") << " criterion "
              << (i + 1) << ": " << criteria[i].first;
    if (!outcome.detail.empty()) std::cout << " (" << outcome.detail << ")";
    std::cout << std::endl;
  }
  if (failures != 0)
    std::cout << failures << " of " << criteria.size()
              << " criteria failed" << std::endl;
  return failures == 0 ? 0 : 1;
}
