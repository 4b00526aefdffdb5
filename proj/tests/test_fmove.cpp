#include "anyonchain/fmove.hpp"

#include <cmath>

#include "anyonchain/fusion.hpp"
#include "doctest.h"

namespace {

using namespace anyonchain;

constexpr Label P = Label::Plus;
constexpr Label M = Label::Minus;
constexpr Label T = Label::Two;

TEST_SUITE("fmove") {
  TEST_CASE("vertex admissibility forces zeros") {
    // x must lie in a (x) b and fuse with c to e; here + (x) + = + only.
    CHECK(f_move(P, P, P, P, P, P) == doctest::Approx(1.0));
    CHECK(f_move(P, P, P, P, M, M) == doctest::Approx(0.0));
    CHECK(f_move(P, T, T, M, T, M) == doctest::Approx(1.0));
    CHECK(f_move(P, T, T, M, T, T) == doctest::Approx(0.0));  // needs - in + x 2
    CHECK(f_move(T, P, T, M, P, T) == doctest::Approx(0.0));  // needs + in 2 x +
  }

  TEST_CASE("two-two blocks carry the sign structure") {
    // One-dimensional slot s = +: always +1.
    CHECK(f_move(P, T, T, P, T, P) == doctest::Approx(1.0));
    CHECK(f_move(P, T, T, T, T, T) == doctest::Approx(1.0));
    // s = - in the a slot: -1 exactly when e = 2.
    CHECK(f_move(M, T, T, T, T, T) == doctest::Approx(-1.0));
    CHECK(f_move(M, T, T, P, T, M) == doctest::Approx(1.0));
    // s = - in the c slot: -1 for every e.
    CHECK(f_move(T, T, M, M, P, T) == doctest::Approx(-1.0));
    CHECK(f_move(T, T, M, T, T, T) == doctest::Approx(-1.0));
  }

  TEST_CASE("the all-two block matches the 3x3 matrix") {
    const double s = 1.0 / std::sqrt(2.0);
    CHECK(f_move(T, T, T, T, P, P) == doctest::Approx(0.5));
    CHECK(f_move(T, T, T, T, P, M) == doctest::Approx(-0.5));
    CHECK(f_move(T, T, T, T, P, T) == doctest::Approx(s));
    CHECK(f_move(T, T, T, T, M, T) == doctest::Approx(-s));
    CHECK(f_move(T, T, T, T, T, P) == doctest::Approx(s));
    CHECK(f_move(T, T, T, T, T, M) == doctest::Approx(s));
    CHECK(f_move(T, T, T, T, T, T) == doctest::Approx(0.0));
    // Total charge +/- instead: scalar blocks.
    CHECK(f_move(T, T, T, P, T, T) == doctest::Approx(1.0));
    CHECK(f_move(T, T, T, M, T, T) == doctest::Approx(-1.0));
  }

  TEST_CASE("every admissible block is unitary") {
    const AlgebraCheck r = f_unitarity_check();
    CHECK(r.ok);
    CHECK(r.max_residual < 1e-14);
  }

  TEST_CASE("pentagon identity holds over all 3^9 assignments") {
    const AlgebraCheck r = pentagon_check();
    CHECK(r.ok);
    CHECK(r.max_residual < 1e-12);
  }

  TEST_CASE("a single sign flip breaks the pentagon") {
    const FMoveTable broken =
        FMoveTable::instance().with_sign_flip(T, T, T, T, P, T);
    const AlgebraCheck r = pentagon_check(broken);
    CHECK_FALSE(r.ok);
    CHECK(r.max_residual > 0.5);
  }

  TEST_CASE("derived projectors match the closed forms") {
    for (Label b : kAllLabels)
      for (Label prev : kAllLabels)
        for (Label next : kAllLabels)
          for (Label mid : kAllLabels)
            for (Label mid_prime : kAllLabels)
              CHECK(anyon_projector(b, prev, mid, mid_prime, next) ==
                    doctest::Approx(anyon_projector_closed_form(
                                        b, prev, mid, mid_prime, next))
                        .epsilon(1e-15));
  }

  TEST_CASE("projector values on the all-two window") {
    const double s = std::sqrt(2.0) / 4.0;
    CHECK(anyon_projector(P, T, P, P, T) == doctest::Approx(0.25));
    CHECK(anyon_projector(P, T, T, T, T) == doctest::Approx(0.5));
    CHECK(anyon_projector(P, T, P, T, T) == doctest::Approx(s));
    CHECK(anyon_projector(M, T, P, T, T) == doctest::Approx(-s));
    CHECK(anyon_projector(T, T, P, M, T) == doctest::Approx(-0.5));
    CHECK(anyon_projector(T, T, T, T, T) == doctest::Approx(0.0));
  }

  TEST_CASE("projectors resolve each window") {
    for (Label prev : kAllLabels)
      for (Label next : kAllLabels)
        for (Label mid : kAllLabels)
          for (Label mid_prime : kAllLabels) {
            if (!admissible_pair(prev, mid) || !admissible_pair(mid, next) ||
                !admissible_pair(prev, mid_prime) ||
                !admissible_pair(mid_prime, next))
              continue;
            double sum = 0.0;
            for (Label b : kAllLabels)
              sum += anyon_projector(b, prev, mid, mid_prime, next);
            CHECK(sum == doctest::Approx(mid == mid_prime ? 1.0 : 0.0)
                             .epsilon(1e-14));
          }
  }
}

}  // namespace
