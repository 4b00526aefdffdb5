#include "anyonchain/chains.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

#include "anyonchain/spectra.hpp"
#include "doctest.h"

namespace {

using namespace anyonchain;

double max_abs(const MatrixXc& m) { return m.cwiseAbs().maxCoeff(); }

TEST_SUITE("chains") {
  TEST_CASE("XXZ bond matrix") {
    const CouplingParams p{1.0, 0.5};
    const Matrix4c h = local_xxz_spin(p);
    CHECK(h(0, 0).real() == doctest::Approx(-0.5));  // Jz - J
    CHECK(h(1, 1).real() == doctest::Approx(-1.0));  // -J
    CHECK(h(2, 2).real() == doctest::Approx(-1.0));
    CHECK(h(3, 3).real() == doctest::Approx(-0.5));
    CHECK(h(1, 2).real() == doctest::Approx(1.0));  // J
    CHECK(h(2, 1).real() == doctest::Approx(1.0));
    CHECK(max_abs(h - h.adjoint()) < 1e-15);
  }

  TEST_CASE("bond decomposes as -2J P(-) + (Jz - J) P(2)") {
    const CouplingParams p{1.25, -0.75};
    const ProjectorCoefficients c = project_onto_channels(local_xxz_spin(p));
    CHECK(std::abs(c.plus) < 1e-14);
    CHECK(c.minus.real() == doctest::Approx(-2.0 * p.J));
    CHECK(c.two.real() == doctest::Approx(p.Jz - p.J));
  }

  TEST_CASE("operators outside the channel span are rejected") {
    Matrix4c sz_left = Matrix4c::Zero();
    sz_left.diagonal() << 1.0, 1.0, -1.0, -1.0;  // sigma_z (x) id
    CHECK_THROWS_AS(project_onto_channels(sz_left), std::invalid_argument);
  }

  TEST_CASE("reciprocal coefficients invert the window operator") {
    const ProjectorCoefficients swap{1.0, -1.0, 1.0};
    const ProjectorCoefficients inv = swap.reciprocal();
    CHECK(inv.plus == Complex(1.0));
    CHECK(inv.minus == Complex(-1.0));
    CHECK(inv.two == Complex(1.0));
    CHECK_THROWS_AS((ProjectorCoefficients{1.0, 0.0, 1.0}.reciprocal()),
                    std::invalid_argument);
  }

  TEST_CASE("spin and anyon bonds share projector coefficients") {
    const CouplingParams p{1.0, 2.0};
    const WindowOp anyon = local_xxz_anyon(p);
    const WindowOp from_spin = correspond(local_xxz_spin(p));
    CHECK(std::abs(anyon.coefficients().plus - from_spin.coefficients().plus) <
          1e-14);
    CHECK(std::abs(anyon.coefficients().minus -
                   from_spin.coefficients().minus) < 1e-14);
    CHECK(std::abs(anyon.coefficients().two - from_spin.coefficients().two) <
          1e-14);
    CHECK(max_abs(correspond_inverse(from_spin) - local_xxz_spin(p)) < 1e-13);
  }

  TEST_CASE("window amplitudes recombine the anyonic projectors") {
    const ProjectorCoefficients c{0.5, -1.5, 2.0};
    const WindowOp op(c);
    for (Label prev : kAllLabels)
      for (Label next : kAllLabels)
        for (Label mid : kAllLabels)
          for (Label mid_prime : kAllLabels) {
            Complex expected = 0.0;
            for (Label b : kAllLabels)
              expected += c.coefficient(b) *
                          anyon_projector(b, prev, mid, mid_prime, next);
            CHECK(std::abs(op.amplitude(prev, mid, mid_prime, next) -
                           expected) < 1e-14);
          }
  }

  TEST_CASE("open chain dimensions and eigenvalues at L = 2") {
    const CouplingParams p{1.0, 0.0};
    const ChainOperator spin = build_open_spin(2, p);
    CHECK(spin.dimension() == 16);
    const Eigen::VectorXd values = diagonalize(spin).values;
    // One bond, channels (0, -2J, Jz - J (x2)), four auxiliary copies.
    for (int i = 0; i < 4; ++i) CHECK(values[i] == doctest::Approx(-2.0));
    for (int i = 4; i < 12; ++i) CHECK(values[i] == doctest::Approx(-1.0));
    for (int i = 12; i < 16; ++i) CHECK(std::abs(values[i]) < 1e-12);

    const ChainOperator anyon = build_open_anyon(2, p);
    CHECK(anyon.dimension() == 11);
    CHECK(build_open_anyon(4, p).dimension() == 43);
    CHECK(build_open_anyon(4, p, Label::Plus).dimension() == 11);
    CHECK(build_open_spin(4, p, Label::Plus).dimension() == 16);
  }

  TEST_CASE("constructor rejects non-Hermitian matrices") {
    SparseMatrixXc m(2, 2);
    m.insert(0, 1) = 1.0;  // no conjugate partner
    CHECK_THROWS_AS(ChainOperator(SpinBasis{1, Label::Plus}, m),
                    std::invalid_argument);
  }

  TEST_CASE("braiding with the permutation reproduces the periodic chain") {
    const CouplingParams p{1.0, -0.5};
    for (int length : {3, 4}) {
      const BraidedChain braided =
          build_braided_spin(length, p, permutation_operator());
      const ChainOperator periodic = build_periodic_spin(length, p);
      CHECK(max_abs(braided.hamiltonian.dense() - periodic.dense()) < 1e-13);
      // The global braid commutes with the braided Hamiltonian.
      const MatrixXc b = MatrixXc(braided.global_braid);
      const MatrixXc h = braided.hamiltonian.dense();
      CHECK(max_abs(b * h - h * b) < 1e-11);
    }
  }

  TEST_CASE("braid conditions sort the candidates") {
    const Matrix4c h = local_xxz_spin(CouplingParams{1.0, -0.5});

    const BraidConditionReport swap =
        verify_braid_conditions(permutation_operator(), h);
    CHECK(swap.all_pass());

    const BraidConditionReport identity =
        verify_braid_conditions(Matrix4c::Identity(), h);
    CHECK(identity.projector_expressible);
    CHECK(identity.invertible);
    CHECK(identity.braid_equation);
    CHECK_FALSE(identity.braids_hamiltonian);  // condition 3
    CHECK(identity.braiding_residual > 0.1);

    // P(+) + P(-) - P(2) squares to one but fails the braid equation.
    const Matrix4c negated = projector_spin(Label::Plus) +
                             projector_spin(Label::Minus) -
                             projector_spin(Label::Two);
    const BraidConditionReport report = verify_braid_conditions(negated, h);
    CHECK(report.projector_expressible);
    CHECK_FALSE(report.braid_equation);
  }

  TEST_CASE("builders refuse a failing braid") {
    const CouplingParams p{1.0, -0.5};
    CHECK_THROWS_AS(build_braided_spin(3, p, Matrix4c::Identity()),
                    std::invalid_argument);
    CHECK_THROWS_AS(build_braided_anyon(3, p, Matrix4c::Identity()),
                    std::invalid_argument);
  }

  TEST_CASE("wrap window requires a periodic basis") {
    const WindowOp op = local_xxz_anyon(CouplingParams{1.0, 0.0});
    const PathBasis free(3, PathConstraint::free_ends());
    CHECK_THROWS_AS(anyon_wrap_operator(free, op), std::invalid_argument);
    const PathBasis periodic(3, PathConstraint::periodic());
    const SparseMatrixXc wrap = anyon_wrap_operator(periodic, op);
    CHECK(wrap.rows() == 7);
    CHECK(max_abs(MatrixXc(wrap) - MatrixXc(wrap).adjoint()) < 1e-14);
  }

  TEST_CASE("periodic anyon chains: sector conservation and its loss") {
    const CouplingParams p{1.0, -0.5};
    const ChainOperator conserved = build_periodic_anyon(4, p, false);
    CHECK(conserved.dimension() == 17);
    CHECK(max_boundary_mixing(conserved) == 0.0);

    const ChainOperator translational = build_periodic_anyon(4, p, true);
    CHECK(translational.dimension() == 17);
    CHECK(max_boundary_mixing(translational) > 0.1);

    CHECK(max_boundary_mixing(build_open_anyon(4, p)) == 0.0);
    CHECK(max_boundary_mixing(build_periodic_spin(4, p)) == 0.0);
  }

  TEST_CASE("spin counterpart blocks of the fixed periodic anyon chain") {
    const CouplingParams p{1.0, -0.5};
    long long total = 0;
    const std::array<int, 3> expected{3, 3, 22};  // N_4(a,a) * dim V_a
    for (Label a : kAllLabels) {
      const MatrixXc block = periodic_spin_counterpart_block(4, p, a);
      CHECK(block.rows() == expected[static_cast<int>(a)]);
      CHECK(max_abs(block - block.adjoint()) < 1e-12);
      total += block.rows();
    }
    CHECK(total == spin_dimension(4, PathConstraint::periodic()));
  }

  TEST_CASE("kronecker convention: first factor most significant") {
    MatrixXc x(2, 2);
    x << 0.0, 1.0, 1.0, 0.0;
    const MatrixXc id = MatrixXc::Identity(2, 2);
    const MatrixXc k = kronecker(x, id);
    CHECK(k.rows() == 4);
    CHECK(k(0, 2).real() == doctest::Approx(1.0));
    CHECK(k(1, 3).real() == doctest::Approx(1.0));
    CHECK(std::abs(k(0, 1)) < 1e-15);
  }
}

}  // namespace
