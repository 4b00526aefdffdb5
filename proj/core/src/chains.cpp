#include "anyonchain/chains.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace anyonchain {

namespace {

using Triplet = Eigen::Triplet<Complex>;

double max_abs(const MatrixXc& m) { return m.cwiseAbs().maxCoeff(); }

double hermiticity_residual(const SparseMatrixXc& m) {
  const SparseMatrixXc diff = SparseMatrixXc(m.adjoint()) - m;
  double worst = 0.0;
  for (int k = 0; k < diff.outerSize(); ++k)
    for (SparseMatrixXc::InnerIterator it(diff, k); it; ++it)
      worst = std::max(worst, std::abs(it.value()));
  return worst;
}

void require_hermitian(const SparseMatrixXc& m) {
  if (m.rows() != m.cols())
    throw std::invalid_argument("operator matrix must be square");
  const double r = hermiticity_residual(m);
  if (r > 1e-12)
    throw std::invalid_argument("assembled operator is not Hermitian: residual " +
                                std::to_string(r));
}

}  // namespace

Matrix4c local_xxz_spin(const CouplingParams& p) {
  Matrix4c h = Matrix4c::Zero();
  h(0, 0) = h(3, 3) = p.Jz - p.J;
  h(1, 1) = h(2, 2) = -p.J;
  h(1, 2) = h(2, 1) = p.J;
  return h;
}

Complex ProjectorCoefficients::coefficient(Label a) const {
  switch (a) {
    case Label::Plus:
      return plus;
    case Label::Minus:
      return minus;
    case Label::Two:
      return two;
  }
  throw std::logic_error("unreachable channel label");
}

ProjectorCoefficients ProjectorCoefficients::reciprocal() const {
  for (Label a : kAllLabels)
    if (std::abs(coefficient(a)) == 0.0)
      throw std::invalid_argument(
          std::string("operator is singular: the P(") + label_symbol(a) +
          ") coefficient vanishes");
  return {1.0 / plus, 1.0 / minus, 1.0 / two};
}

ProjectorCoefficients project_onto_channels(const Matrix4c& o, double tol) {
  ProjectorCoefficients c;
  Matrix4c recombined = Matrix4c::Zero();
  for (Label a : kAllLabels) {
    const Matrix4c p = projector_spin(a);
    // Orthogonality of the projectors gives tr(P_a o) = c_a tr(P_a).
    const Complex ca = (p * o).trace() / static_cast<double>(label_dim(a));
    switch (a) {
      case Label::Plus:
        c.plus = ca;
        break;
      case Label::Minus:
        c.minus = ca;
        break;
      case Label::Two:
        c.two = ca;
        break;
    }
    recombined += ca * p;
  }
  const double residual = max_abs(recombined - o);
  if (residual > tol)
    throw std::invalid_argument(
        "operator is not in the span of the channel projectors (not "
        "D3-symmetric): residual " +
        std::to_string(residual));
  return c;
}

WindowOp::WindowOp(const ProjectorCoefficients& c) : c_(c) {
  const auto& table = FMoveTable::instance();
  for (int prev = 0; prev < 3; ++prev)
    for (int mid = 0; mid < 3; ++mid)
      for (int mid_prime = 0; mid_prime < 3; ++mid_prime)
        for (int next = 0; next < 3; ++next) {
          Complex v = 0.0;
          for (Label b : kAllLabels)
            v += c_.coefficient(b) *
                 anyon_projector(table, b, static_cast<Label>(prev),
                                 static_cast<Label>(mid),
                                 static_cast<Label>(mid_prime),
                                 static_cast<Label>(next));
          amp_[((prev * 3 + mid) * 3 + mid_prime) * 3 + next] = v;
        }
}

Complex WindowOp::amplitude(Label prev, Label mid, Label mid_prime,
                            Label next) const {
  return amp_[((static_cast<int>(prev) * 3 + static_cast<int>(mid)) * 3 +
               static_cast<int>(mid_prime)) *
                  3 +
              static_cast<int>(next)];
}

WindowOp WindowOp::inverse() const { return WindowOp(c_.reciprocal()); }

WindowOp correspond(const Matrix4c& spin_op, double tol) {
  return WindowOp(project_onto_channels(spin_op, tol));
}

Matrix4c correspond_inverse(const WindowOp& o) {
  Matrix4c m = Matrix4c::Zero();
  for (Label a : kAllLabels)
    m += o.coefficients().coefficient(a) * projector_spin(a);
  return m;
}

WindowOp local_xxz_anyon(const CouplingParams& p) {
  return WindowOp({0.0, -2.0 * p.J, p.Jz - p.J});
}

// ---------------------------------------------------------------------------

ChainOperator::ChainOperator(SpinBasis basis, SparseMatrixXc m)
    : kind_(BasisKind::Spin), spin_(std::move(basis)), matrix_(std::move(m)) {
  if (matrix_.rows() != spin_.dimension())
    throw std::invalid_argument("matrix dimension does not match the basis");
  require_hermitian(matrix_);
  matrix_.makeCompressed();
}

ChainOperator::ChainOperator(std::shared_ptr<const PathBasis> basis,
                             SparseMatrixXc m)
    : kind_(BasisKind::Anyon), paths_(std::move(basis)), matrix_(std::move(m)) {
  if (!paths_) throw std::invalid_argument("path basis must not be null");
  if (matrix_.rows() != paths_->size())
    throw std::invalid_argument("matrix dimension does not match the basis");
  require_hermitian(matrix_);
  matrix_.makeCompressed();
}

const SpinBasis& ChainOperator::spin_basis() const {
  if (kind_ != BasisKind::Spin)
    throw std::logic_error("operator is not in a spin basis");
  return spin_;
}

const PathBasis& ChainOperator::path_basis() const {
  if (kind_ != BasisKind::Anyon)
    throw std::logic_error("operator is not in a path basis");
  return *paths_;
}

std::string ChainOperator::basis_description() const {
  if (kind_ == BasisKind::Spin) return spin_.description();
  return "anyon (L=" + std::to_string(paths_->length()) + ", " +
         paths_->constraint().description() + ")";
}

std::string ChainOperator::to_coo_text() const {
  struct Entry {
    long long row, col;
    Complex v;
  };
  std::vector<Entry> entries;
  entries.reserve(matrix_.nonZeros());
  for (int k = 0; k < matrix_.outerSize(); ++k)
    for (SparseMatrixXc::InnerIterator it(matrix_, k); it; ++it)
      entries.push_back({it.row(), it.col(), it.value()});
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    return std::tie(a.row, a.col) < std::tie(b.row, b.col);
  });
  std::ostringstream out;
  out << std::setprecision(17);
  for (const Entry& e : entries)
    out << e.row << ' ' << e.col << ' ' << e.v.real() << ' ' << e.v.imag()
        << '\n';
  return out.str();
}

// ---------------------------------------------------------------------------

MatrixXc kronecker(const MatrixXc& a, const MatrixXc& b) {
  MatrixXc out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

SparseMatrixXc spin_bond_operator(const SpinBasis& basis, const Matrix4c& op,
                                  int site_i, int site_j) {
  const int length = basis.length;
  if (site_i < 1 || site_i > length || site_j < 1 || site_j > length ||
      site_i == site_j)
    throw std::invalid_argument("bond sites must be distinct chain sites");

  const long long nbits = 1LL << length;
  const long long dim = basis.dimension();
  const int pos_i = length - site_i;  // site 1 is the most significant bit
  const int pos_j = length - site_j;

  std::vector<Triplet> triplets;
  triplets.reserve(static_cast<std::size_t>(dim) * 4);
  for (int a = 0; a < basis.aux_dimension(); ++a) {
    const long long base = static_cast<long long>(a) * nbits;
    for (long long bits = 0; bits < nbits; ++bits) {
      const int bi = static_cast<int>((bits >> pos_i) & 1);
      const int bj = static_cast<int>((bits >> pos_j) & 1);
      const int in = bi * 2 + bj;
      for (int out = 0; out < 4; ++out) {
        const Complex v = op(out, in);
        if (v == Complex(0.0, 0.0)) continue;
        long long flipped = bits;
        flipped = (flipped & ~(1LL << pos_i)) |
                  (static_cast<long long>(out >> 1) << pos_i);
        flipped = (flipped & ~(1LL << pos_j)) |
                  (static_cast<long long>(out & 1) << pos_j);
        triplets.emplace_back(base + flipped, base + bits, v);
      }
    }
  }
  SparseMatrixXc m(dim, dim);
  m.setFromTriplets(triplets.begin(), triplets.end());
  return m;
}

SparseMatrixXc anyon_window_operator(const PathBasis& basis, const WindowOp& op,
                                     int mid_pos) {
  if (mid_pos < 1 || mid_pos > basis.length() - 1)
    throw std::invalid_argument("window middle position must be interior");

  std::vector<Triplet> triplets;
  triplets.reserve(static_cast<std::size_t>(basis.size()) * 3);
  for (long long col = 0; col < basis.size(); ++col) {
    const auto& labels = basis.path(col).labels();
    const Label prev = labels[mid_pos - 1];
    const Label mid = labels[mid_pos];
    const Label next = labels[mid_pos + 1];
    for (Label mid_prime : kAllLabels) {
      const Complex v = op.amplitude(prev, mid, mid_prime, next);
      if (v == Complex(0.0, 0.0)) continue;
      const auto row = basis.index_with(col, mid_pos, mid_prime);
      if (!row)
        throw std::logic_error(
            "window image is admissible but missing from the path basis");
      triplets.emplace_back(*row, col, v);
    }
  }
  SparseMatrixXc m(basis.size(), basis.size());
  m.setFromTriplets(triplets.begin(), triplets.end());
  return m;
}

SparseMatrixXc anyon_wrap_operator(const PathBasis& basis, const WindowOp& op) {
  if (basis.constraint().kind != PathConstraint::Kind::Periodic)
    throw std::invalid_argument("the wrap window needs a periodic path basis");
  const int length = basis.length();
  if (length < 2)
    throw std::invalid_argument("the wrap window needs length >= 2");

  std::vector<Triplet> triplets;
  triplets.reserve(static_cast<std::size_t>(basis.size()) * 3);
  for (long long col = 0; col < basis.size(); ++col) {
    const auto& labels = basis.path(col).labels();
    const Label prev = labels[length - 1];
    const Label mid = labels[length];  // == labels[0]
    const Label next = labels[1];
    for (Label mid_prime : kAllLabels) {
      const Complex v = op.amplitude(prev, mid, mid_prime, next);
      if (v == Complex(0.0, 0.0)) continue;
      const auto row = basis.index_with_ends(col, mid_prime);
      if (!row)
        throw std::logic_error(
            "wrap image is admissible but missing from the path basis");
      triplets.emplace_back(*row, col, v);
    }
  }
  SparseMatrixXc m(basis.size(), basis.size());
  m.setFromTriplets(triplets.begin(), triplets.end());
  return m;
}

// ---------------------------------------------------------------------------

namespace {

SparseMatrixXc assemble_spin_bonds(const SpinBasis& basis, const Matrix4c& h,
                                   bool wrap) {
  const int length = basis.length;
  SparseMatrixXc total(basis.dimension(), basis.dimension());
  for (int i = 1; i <= length - 1; ++i)
    total += spin_bond_operator(basis, h, i, i + 1);
  if (wrap) total += spin_bond_operator(basis, h, length, 1);
  return total;
}

SparseMatrixXc assemble_anyon_windows(const PathBasis& basis,
                                      const WindowOp& h) {
  SparseMatrixXc total(basis.size(), basis.size());
  for (int i = 1; i <= basis.length() - 1; ++i)
    total += anyon_window_operator(basis, h, i);
  return total;
}

PathConstraint open_constraint(std::optional<Label> a0) {
  return a0 ? PathConstraint::fixed_start(*a0) : PathConstraint::free_ends();
}

void require_braidable_length(int length) {
  if (length < 2)
    throw std::invalid_argument("closed chains need length >= 2");
}

void require_braid(const Matrix4c& braid, const Matrix4c& h) {
  const BraidConditionReport r = verify_braid_conditions(braid, h);
  if (r.all_pass()) return;
  std::string failed;
  if (!r.projector_expressible) failed += " projector-expressibility";
  if (!r.invertible) failed += " invertibility";
  if (!r.braid_equation) failed += " braid-equation";
  if (!r.braids_hamiltonian) failed += " hamiltonian-braiding";
  throw std::invalid_argument("braid candidate fails:" + failed);
}

}  // namespace

ChainOperator build_open_spin(int length, const CouplingParams& p,
                              std::optional<Label> aux) {
  const SpinBasis basis{length, aux};
  return ChainOperator(basis,
                       assemble_spin_bonds(basis, local_xxz_spin(p), false));
}

ChainOperator build_open_anyon(int length, const CouplingParams& p,
                               std::optional<Label> a0) {
  auto basis = std::make_shared<PathBasis>(length, open_constraint(a0));
  SparseMatrixXc h = assemble_anyon_windows(*basis, local_xxz_anyon(p));
  return ChainOperator(std::move(basis), std::move(h));
}

ChainOperator build_periodic_spin(int length, const CouplingParams& p,
                                  std::optional<Label> aux) {
  require_braidable_length(length);
  const SpinBasis basis{length, aux};
  return ChainOperator(basis,
                       assemble_spin_bonds(basis, local_xxz_spin(p), true));
}

BraidConditionReport verify_braid_conditions(const Matrix4c& b,
                                             const Matrix4c& h, double tol) {
  BraidConditionReport report;

  // Condition 1: in the commutant span and invertible.
  Matrix4c recombined = Matrix4c::Zero();
  double smallest = std::numeric_limits<double>::infinity();
  for (Label a : kAllLabels) {
    const Complex ca =
        (projector_spin(a) * b).trace() / static_cast<double>(label_dim(a));
    smallest = std::min(smallest, std::abs(ca));
    recombined += ca * projector_spin(a);
  }
  report.expressibility_residual = max_abs(recombined - b);
  report.projector_expressible = report.expressibility_residual <= tol;
  report.smallest_coefficient = smallest;
  report.invertible = std::abs(b.determinant()) > tol;

  // Conditions 2 and 3 live on the three-site space V2 (x) V2 (x) V2.
  const MatrixXc id2 = MatrixXc::Identity(2, 2);
  const MatrixXc b12 = kronecker(b, id2);
  const MatrixXc b23 = kronecker(id2, b);
  const MatrixXc h12 = kronecker(h, id2);
  const MatrixXc h23 = kronecker(id2, h);

  report.braid_equation_residual = max_abs(b12 * b23 * b12 - b23 * b12 * b23);
  report.braid_equation = report.braid_equation_residual <= tol;

  report.braiding_residual =
      std::max(max_abs(h12 * b23 * b12 - b23 * b12 * h23),
               max_abs(b12 * b23 * h12 - h23 * b12 * b23));
  report.braids_hamiltonian = report.braiding_residual <= tol;

  return report;
}

BraidedChain build_braided_spin(int length, const CouplingParams& p,
                                const Matrix4c& braid,
                                std::optional<Label> aux) {
  require_braidable_length(length);
  const Matrix4c h = local_xxz_spin(p);
  require_braid(braid, h);

  const SpinBasis basis{length, aux};
  const ProjectorCoefficients c = project_onto_channels(braid);
  const Matrix4c braid_inv =
      correspond_inverse(WindowOp(c.reciprocal()));

  // B = b_12 b_23 ... b_{L-1,L}; the inverse multiplies the inverted bonds
  // in the opposite order.
  SparseMatrixXc global = spin_bond_operator(basis, braid, 1, 2);
  for (int i = 2; i <= length - 1; ++i)
    global = SparseMatrixXc(global * spin_bond_operator(basis, braid, i, i + 1));
  SparseMatrixXc global_inv =
      spin_bond_operator(basis, braid_inv, length - 1, length);
  for (int i = length - 2; i >= 1; --i)
    global_inv =
        SparseMatrixXc(global_inv * spin_bond_operator(basis, braid_inv, i, i + 1));

  const SparseMatrixXc wrap = SparseMatrixXc(
      global_inv * SparseMatrixXc(spin_bond_operator(basis, h, 1, 2) * global));
  SparseMatrixXc total = assemble_spin_bonds(basis, h, false);
  total += wrap;
  return {ChainOperator(basis, std::move(total)), std::move(global)};
}

BraidedChain build_braided_anyon(int length, const CouplingParams& p,
                                 const Matrix4c& braid,
                                 std::optional<Label> a0) {
  require_braidable_length(length);
  const Matrix4c h = local_xxz_spin(p);
  require_braid(braid, h);

  auto basis = std::make_shared<PathBasis>(length, open_constraint(a0));
  const WindowOp braid_window = correspond(braid);
  const WindowOp braid_window_inv = braid_window.inverse();
  const WindowOp h_window = local_xxz_anyon(p);

  SparseMatrixXc global = anyon_window_operator(*basis, braid_window, 1);
  for (int i = 2; i <= length - 1; ++i)
    global =
        SparseMatrixXc(global * anyon_window_operator(*basis, braid_window, i));
  SparseMatrixXc global_inv =
      anyon_window_operator(*basis, braid_window_inv, length - 1);
  for (int i = length - 2; i >= 1; --i)
    global_inv = SparseMatrixXc(
        global_inv * anyon_window_operator(*basis, braid_window_inv, i));

  const SparseMatrixXc wrap = SparseMatrixXc(
      global_inv *
      SparseMatrixXc(anyon_window_operator(*basis, h_window, 1) * global));
  SparseMatrixXc total = assemble_anyon_windows(*basis, h_window);
  total += wrap;
  return {ChainOperator(std::move(basis), std::move(total)), std::move(global)};
}

ChainOperator build_periodic_anyon(int length, const CouplingParams& p,
                                   bool translational) {
  require_braidable_length(length);
  auto basis =
      std::make_shared<PathBasis>(length, PathConstraint::periodic());
  const WindowOp h_window = local_xxz_anyon(p);
  SparseMatrixXc total = assemble_anyon_windows(*basis, h_window);
  if (translational) total += anyon_wrap_operator(*basis, h_window);
  return ChainOperator(std::move(basis), std::move(total));
}

MatrixXc periodic_spin_counterpart_block(int length, const CouplingParams& p,
                                         Label a) {
  const SpinBasis basis{length, a};
  const MatrixXc h =
      MatrixXc(assemble_spin_bonds(basis, local_xxz_spin(p), false));
  const MatrixXc projector = sector_projector(basis, a);

  Eigen::SelfAdjointEigenSolver<MatrixXc> solver(projector);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("projector eigendecomposition failed");

  std::vector<Eigen::Index> kept;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    const double lambda = solver.eigenvalues()[i];
    if (std::abs(lambda) > 1e-9 && std::abs(lambda - 1.0) > 1e-9)
      throw std::logic_error("sector projector has a non-idempotent spectrum");
    if (lambda > 0.5) kept.push_back(i);
  }
  MatrixXc v(h.rows(), static_cast<Eigen::Index>(kept.size()));
  for (std::size_t i = 0; i < kept.size(); ++i)
    v.col(static_cast<Eigen::Index>(i)) = solver.eigenvectors().col(kept[i]);
  return v.adjoint() * h * v;
}

double max_boundary_mixing(const ChainOperator& op) {
  const SparseMatrixXc& m = op.sparse();
  double worst = 0.0;
  if (op.kind() == BasisKind::Spin) {
    const long long nbits = 1LL << op.spin_basis().length;
    for (int k = 0; k < m.outerSize(); ++k)
      for (SparseMatrixXc::InnerIterator it(m, k); it; ++it)
        if (it.row() / nbits != it.col() / nbits)
          worst = std::max(worst, std::abs(it.value()));
    return worst;
  }
  const PathBasis& basis = op.path_basis();
  const auto ends = [&](long long i) {
    return std::pair<Label, Label>{basis.path(i).start(), basis.path(i).end()};
  };
  for (int k = 0; k < m.outerSize(); ++k)
    for (SparseMatrixXc::InnerIterator it(m, k); it; ++it)
      if (ends(it.row()) != ends(it.col()))
        worst = std::max(worst, std::abs(it.value()));
  return worst;
}

}  // namespace anyonchain
