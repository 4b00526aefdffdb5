#include "anyonchain/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include "json.hpp"
#include <sstream>
#include <stdexcept>

namespace anyonchain {

namespace {

using Json = nlohmann::ordered_json;

std::string sector_name(const std::optional<Label>& s) {
  return s ? std::string(1, label_symbol(*s)) : "mixed";
}

int sector_rank(const std::optional<Label>& s) {
  return s ? static_cast<int>(*s) : 3;  // mixed levels sort last
}

Json params_json(const CouplingParams& p) {
  return Json{{"J", p.J}, {"Jz", p.Jz}};
}

}  // namespace

EigenSystem diagonalize(const MatrixXc& m) {
  if (m.rows() != m.cols())
    throw std::invalid_argument("can only diagonalize a square matrix");
  const double residual = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (residual > 1e-12)
    throw std::invalid_argument("matrix is not Hermitian: residual " +
                                std::to_string(residual));
  Eigen::SelfAdjointEigenSolver<MatrixXc> solver(m);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("eigendecomposition did not converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

EigenSystem diagonalize(const ChainOperator& op) {
  Eigen::SelfAdjointEigenSolver<MatrixXc> solver(op.dense());
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("eigendecomposition did not converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

std::vector<std::pair<double, int>> group_degeneracies(
    const Eigen::VectorXd& values, double tol) {
  std::vector<std::pair<double, int>> groups;
  Eigen::Index i = 0;
  while (i < values.size()) {
    Eigen::Index j = i;
    double sum = 0.0;
    while (j < values.size() && values[j] - values[i] <= tol)
      sum += values[j++];
    groups.emplace_back(sum / static_cast<double>(j - i),
                        static_cast<int>(j - i));
    i = j;
  }
  return groups;
}

Label classify_sector_spin(const Eigen::VectorXcd& v, const SpinBasis& basis,
                           double tol) {
  if (v.size() != basis.dimension())
    throw std::invalid_argument("vector dimension does not match the basis");
  for (Label a : kAllLabels) {
    const SparseMatrixXc p = sector_projector_sparse(basis, a);
    const double weight = (v.adjoint() * (p * v)).value().real();
    if (weight > 1.0 - tol) return a;
  }
  throw std::runtime_error(
      "ambiguous sector: no global projector carries the full weight");
}

Label classify_sector_anyon(const Eigen::VectorXcd& v, const PathBasis& basis,
                            double tol) {
  if (v.size() != basis.size())
    throw std::invalid_argument("vector dimension does not match the basis");
  std::array<double, 3> weight{0.0, 0.0, 0.0};
  for (long long i = 0; i < basis.size(); ++i)
    weight[static_cast<int>(basis.path(i).end())] += std::norm(v[i]);
  for (Label a : kAllLabels)
    if (weight[static_cast<int>(a)] > 1.0 - tol) return a;
  throw std::runtime_error(
      "ambiguous sector: support spreads over several outgoing labels");
}

namespace {

// Apply the sector projector for label a to a block of column vectors.
MatrixXc apply_sector(const ChainOperator& op,
                      const std::array<SparseMatrixXc, 3>& spin_projectors,
                      Label a, const MatrixXc& block) {
  if (op.kind() == BasisKind::Spin)
    return spin_projectors[static_cast<int>(a)] * block;
  const PathBasis& basis = op.path_basis();
  MatrixXc out = MatrixXc::Zero(block.rows(), block.cols());
  for (long long i = 0; i < basis.size(); ++i)
    if (basis.path(i).end() == a) out.row(i) = block.row(i);
  return out;
}

}  // namespace

Spectrum compute_spectrum(const ChainOperator& op, double degeneracy_tol) {
  // Weights must be integral and the group eigenspace invariant for the
  // sector split to be trusted; anything else is flagged as mixed.
  constexpr double kRefineTol = 1e-6;

  const EigenSystem es = diagonalize(op);

  std::array<SparseMatrixXc, 3> spin_projectors;
  if (op.kind() == BasisKind::Spin)
    for (Label a : kAllLabels)
      spin_projectors[static_cast<int>(a)] =
          sector_projector_sparse(op.spin_basis(), a);

  Spectrum spectrum;
  spectrum.basis = op.basis_description();
  spectrum.dimension = op.dimension();

  Eigen::Index start = 0;
  while (start < es.values.size()) {
    Eigen::Index stop = start;
    double sum = 0.0;
    while (stop < es.values.size() &&
           es.values[stop] - es.values[start] <= degeneracy_tol)
      sum += es.values[stop++];
    const int count = static_cast<int>(stop - start);
    const double energy = sum / count;
    const MatrixXc block = es.vectors.middleCols(start, stop - start);

    std::array<int, 3> multiplicity{0, 0, 0};
    bool refined = true;
    int total = 0;
    for (Label a : kAllLabels) {
      const MatrixXc pv = apply_sector(op, spin_projectors, a, block);
      const MatrixXc w = block.adjoint() * pv;
      const double trace = w.trace().real();
      const auto m = static_cast<int>(std::llround(trace));
      const double invariance = (pv - block * w).cwiseAbs().maxCoeff();
      if (std::abs(trace - m) > kRefineTol || invariance > kRefineTol ||
          m < 0 || m > count) {
        refined = false;
        break;
      }
      multiplicity[static_cast<int>(a)] = m;
      total += m;
    }

    if (refined && total == count) {
      for (Label a : kAllLabels)
        if (const int m = multiplicity[static_cast<int>(a)]; m > 0)
          spectrum.levels.push_back({energy, m, a});
    } else {
      spectrum.levels.push_back({energy, count, std::nullopt});
      spectrum.has_mixed_sectors = true;
    }
    start = stop;
  }
  return spectrum;
}

Spectrum spectrum_from_sector_blocks(
    const std::vector<std::pair<Label, MatrixXc>>& blocks,
    const std::string& basis_description, const CouplingParams& params,
    double degeneracy_tol) {
  Spectrum spectrum;
  spectrum.basis = basis_description;
  spectrum.params = params;
  for (const auto& [label, block] : blocks) {
    spectrum.dimension += block.rows();
    if (block.rows() == 0) continue;
    const EigenSystem es = diagonalize(block);
    for (const auto& [energy, count] :
         group_degeneracies(es.values, degeneracy_tol))
      spectrum.levels.push_back({energy, count, label});
  }
  std::sort(spectrum.levels.begin(), spectrum.levels.end(),
            [](const SpectrumLevel& a, const SpectrumLevel& b) {
              if (a.energy != b.energy) return a.energy < b.energy;
              return sector_rank(a.sector) < sector_rank(b.sector);
            });
  return spectrum;
}

std::string Spectrum::to_json_string() const {
  Json j;
  j["basis"] = basis;
  j["dimension"] = dimension;
  j["params"] = params_json(params);
  j["mixed_sectors"] = has_mixed_sectors;
  j["levels"] = Json::array();
  for (const SpectrumLevel& l : levels)
    j["levels"].push_back(Json{{"energy", l.energy},
                               {"multiplicity", l.multiplicity},
                               {"sector", sector_name(l.sector)}});
  return j.dump(2);
}

std::string Spectrum::to_csv() const {
  std::ostringstream out;
  out << std::setprecision(17);
  out << "energy,multiplicity,sector\n";
  for (const SpectrumLevel& l : levels)
    out << l.energy << ',' << l.multiplicity << ',' << sector_name(l.sector)
        << '\n';
  return out.str();
}

std::string Spectrum::to_table() const {
  std::ostringstream out;
  out << basis << ", dimension " << dimension << ", J=" << params.J
      << ", Jz=" << params.Jz << '\n';
  out << std::setw(8) << "sector" << std::setw(16) << "energy"
      << std::setw(14) << "multiplicity" << '\n';
  out << std::fixed << std::setprecision(6);
  for (const SpectrumLevel& l : levels)
    out << std::setw(8) << sector_name(l.sector) << std::setw(16) << l.energy
        << std::setw(14) << l.multiplicity << '\n';
  return out.str();
}

ComparisonReport compare_spectra(const Spectrum& spin, const Spectrum& anyon,
                                 double tol_match) {
  ComparisonReport report;
  const auto& s = spin.levels;
  const auto& a = anyon.levels;
  std::size_t i = 0, j = 0;

  const auto fail = [&](const std::string& message) {
    report.failures.push_back(message);
  };

  while (i < s.size() || j < a.size()) {
    // Grow one energy cluster across both spectra (transitive closure
    // within tol_match), so near-degenerate levels are matched by sector
    // rather than by list position.
    std::vector<const SpectrumLevel*> cluster_spin, cluster_anyon;
    double emax = i < s.size() && (j >= a.size() || s[i].energy <= a[j].energy)
                      ? s[i].energy
                      : a[j].energy;
    bool grew = true;
    while (grew) {
      grew = false;
      while (i < s.size() && s[i].energy <= emax + tol_match) {
        emax = std::max(emax, s[i].energy);
        cluster_spin.push_back(&s[i++]);
        grew = true;
      }
      while (j < a.size() && a[j].energy <= emax + tol_match) {
        emax = std::max(emax, a[j].energy);
        cluster_anyon.push_back(&a[j++]);
        grew = true;
      }
    }

    for (const SpectrumLevel* l : cluster_spin)
      if (!l->sector)
        fail("spin level at energy " + std::to_string(l->energy) +
             " has a mixed sector");
    for (const SpectrumLevel* l : cluster_anyon)
      if (!l->sector)
        fail("anyon level at energy " + std::to_string(l->energy) +
             " has a mixed sector");

    for (Label sector : kAllLabels) {
      const auto find = [&](const std::vector<const SpectrumLevel*>& c) {
        const SpectrumLevel* found = nullptr;
        for (const SpectrumLevel* l : c)
          if (l->sector == sector) found = l;
        return found;
      };
      const SpectrumLevel* ls = find(cluster_spin);
      const SpectrumLevel* la = find(cluster_anyon);
      if (!ls && !la) continue;
      if (!ls || !la) {
        const SpectrumLevel* present = ls ? ls : la;
        fail(std::string(ls ? "anyon" : "spin") +
             " spectrum is missing a sector-" +
             std::string(1, label_symbol(sector)) + " level at energy " +
             std::to_string(present->energy));
        continue;
      }
      ComparisonLine line;
      line.spin_energy = ls->energy;
      line.anyon_energy = la->energy;
      line.sector = sector;
      line.spin_multiplicity = ls->multiplicity;
      line.anyon_multiplicity = la->multiplicity;
      line.expected_ratio = label_dim(sector);
      const double diff = std::abs(ls->energy - la->energy);
      report.max_energy_difference =
          std::max(report.max_energy_difference, diff);
      line.ok = diff <= tol_match &&
                ls->multiplicity == la->multiplicity * label_dim(sector);
      if (diff > tol_match) line.note = "energy mismatch";
      if (ls->multiplicity != la->multiplicity * label_dim(sector))
        line.note += std::string(line.note.empty() ? "" : "; ") +
                     "multiplicity ratio is not dim(V_sector)";
      report.lines.push_back(std::move(line));
    }
  }

  report.pass = report.failures.empty() &&
                std::all_of(report.lines.begin(), report.lines.end(),
                            [](const ComparisonLine& l) { return l.ok; });
  return report;
}

std::string ComparisonReport::to_json_string() const {
  Json j;
  j["pass"] = pass;
  j["max_energy_difference"] = max_energy_difference;
  j["levels"] = Json::array();
  for (const ComparisonLine& l : lines) {
    Json line{{"sector", sector_name(l.sector)},
              {"spin_energy", l.spin_energy},
              {"anyon_energy", l.anyon_energy},
              {"spin_multiplicity", l.spin_multiplicity},
              {"anyon_multiplicity", l.anyon_multiplicity},
              {"expected_ratio", l.expected_ratio},
              {"ok", l.ok}};
    if (!l.note.empty()) line["note"] = l.note;
    j["levels"].push_back(std::move(line));
  }
  j["failures"] = failures;
  return j.dump(2);
}

std::string ComparisonReport::to_csv() const {
  std::ostringstream out;
  out << std::setprecision(17);
  out << "sector,spin_energy,anyon_energy,spin_multiplicity,anyon_"
         "multiplicity,expected_ratio,ok\n";
  for (const ComparisonLine& l : lines)
    out << sector_name(l.sector) << ',' << l.spin_energy << ','
        << l.anyon_energy << ',' << l.spin_multiplicity << ','
        << l.anyon_multiplicity << ',' << l.expected_ratio << ','
        << (l.ok ? "true" : "false") << '\n';
  return out.str();
}

std::string ComparisonReport::to_table() const {
  std::ostringstream out;
  out << std::setw(8) << "sector" << std::setw(16) << "energy"
      << std::setw(12) << "spin mult" << std::setw(12) << "anyon mult"
      << std::setw(8) << "ok" << '\n';
  out << std::fixed << std::setprecision(6);
  for (const ComparisonLine& l : lines)
    out << std::setw(8) << sector_name(l.sector) << std::setw(16)
        << l.spin_energy << std::setw(12) << l.spin_multiplicity
        << std::setw(12) << l.anyon_multiplicity << std::setw(8)
        << (l.ok ? "yes" : "NO") << '\n';
  for (const std::string& f : failures) out << "FAILURE: " << f << '\n';
  out << (pass ? "match: PASS" : "match: FAIL") << '\n';
  return out.str();
}

}  // namespace anyonchain
