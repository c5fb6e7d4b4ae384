#include <doctest.h>

#include <cmath>

#include "gstatics/fixtures.hpp"
#include "gstatics/sheaf.hpp"
#include "gstatics/statics.hpp"
#include "support.hpp"

using namespace gstatics;

TEST_SUITE("numerics") {
  TEST_CASE("kernel of zero and identity") {
    CHECK(kernel_basis(Matrix::Zero(2, 2)).cols() == 2);
    CHECK(kernel_basis(Matrix::Identity(3, 3)).cols() == 0);
  }

  TEST_CASE("kernel of the boxed boundary is one stress") {
    const auto c = assemble_chain_complex(force_cosheaf(fixtures::boxed()));
    REQUIRE(c.maps[1].rows() == 10);
    REQUIRE(c.maps[1].cols() == 8);
    const Matrix k = kernel_basis(c.maps[1]);
    CHECK(k.cols() == 1);
    CHECK((k.transpose() * k - Matrix::Identity(1, 1)).norm() < 1e-12);
  }

  TEST_CASE("quotient bases") {
    const Matrix kernel = Matrix::Identity(2, 2);
    Matrix axis = Matrix::Zero(2, 1);
    axis(0, 0) = 1;
    const Matrix q = quotient_basis(kernel, axis);
    REQUIRE(q.cols() == 1);
    CHECK(std::abs(q(0, 0)) < 1e-12);
    CHECK(std::abs(std::abs(q(1, 0)) - 1) < 1e-12);
    CHECK(quotient_basis(kernel, Matrix::Zero(2, 1)).cols() == 2);
  }

  TEST_CASE("image outside the kernel is refused") {
    Matrix kernel = Matrix::Zero(2, 1);
    kernel(0, 0) = 1;
    Matrix image = Matrix::Zero(2, 1);
    image(1, 0) = 1;
    CHECK_THROWS_AS(quotient_basis(kernel, image), StaticsError);
  }

  TEST_CASE("second homology of the constant plane cosheaf on a sphere") {
    const auto dg = fixtures::boxed();
    const auto c = constant_cosheaf(dg.complex_ptr(), 2);
    const auto chains = assemble_chain_complex(c);
    // brute force: dim ker d2 - 0
    const Index brute = chains.maps[2].cols() - rank(chains.maps[2]);
    CHECK(brute == 2);
    CHECK(homology(c, 2).dimension() == 2);
  }

  TEST_CASE("least squares") {
    const Vector b = test::vec({0.3, -2.0, 5.5});
    auto r = least_squares_solve(Matrix::Identity(3, 3), b);
    CHECK((r.x - b).norm() < 1e-14);
    CHECK(r.residual < 1e-14);

    Matrix col(2, 1);
    col << 1, 1;
    r = least_squares_solve(col, test::vec({1, -1}));
    CHECK(std::abs(r.x(0)) < 1e-14);
    CHECK(std::abs(r.residual - std::sqrt(2.0)) < 1e-12);
  }

  TEST_CASE("non-finite input") {
    Matrix m = Matrix::Identity(2, 2);
    m(0, 1) = std::nan("");
    try {
      (void)kernel_basis(m);
      FAIL("expected NonFiniteInput");
    } catch (const StaticsError& e) {
      CHECK(e.code() == ErrorCode::NonFiniteInput);
    }
  }

  TEST_CASE("tolerance from the environment") {
    ::setenv("STATICS_TOL", "1e-6", 1);
    CHECK(Tolerance::from_env().relative == doctest::Approx(1e-6));
    ::setenv("STATICS_TOL", "nonsense", 1);
    CHECK_THROWS_AS(Tolerance::from_env(), StaticsError);
    ::unsetenv("STATICS_TOL");
    CHECK(Tolerance::from_env().relative == 1e-9);
  }
}
