#pragma once

// Rank-revealing dense linear algebra shared by every homology computation.
//
// All routines are templated on the scalar type and accept any Eigen dense
// expression. Rank decisions use singular values: sigma is treated as zero
// when sigma <= max(relative * sigma_max, absolute).

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

#include "gstatics/error.hpp"

namespace gstatics {

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using Matrix = MatrixX<double>;
using Vector = VectorX<double>;
using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Index = Eigen::Index;

struct Tolerance {
  double relative = 1e-9;
  double absolute = 1e-12;

  Tolerance() = default;
  Tolerance(double rel, double abs) : relative(rel), absolute(abs) {
    if (!(rel > 0.0) || !(abs > 0.0))
      throw StaticsError(ErrorCode::InvalidArgument, "tolerances must be strictly positive");
  }

  template <typename Scalar>
  Scalar cutoff(Scalar sigma_max) const {
    return std::max<Scalar>(Scalar(relative) * sigma_max, Scalar(absolute));
  }

  // Default tolerance with the relative threshold taken from STATICS_TOL when set.
  static Tolerance from_env() {
    Tolerance tol;
    if (const char* s = std::getenv("STATICS_TOL"); s != nullptr && *s != '\0') {
      char* end = nullptr;
      const double v = std::strtod(s, &end);
      if (end == s || !(v > 0.0) || !std::isfinite(v))
        throw StaticsError(ErrorCode::InvalidArgument,
                           std::string("STATICS_TOL is not a positive number: ") + s);
      tol.relative = v;
    }
    return tol;
  }
};

template <typename Derived>
void require_finite(const Eigen::MatrixBase<Derived>& m) {
  if (!m.allFinite()) throw StaticsError(ErrorCode::NonFiniteInput, "matrix has non-finite entries");
}

namespace detail {

template <typename Scalar>
struct Decomposition {
  MatrixX<Scalar> U;  // full left singular vectors
  VectorX<Scalar> sigma;
  MatrixX<Scalar> V;  // full right singular vectors
  Index rank = 0;
};

template <typename Derived>
Decomposition<typename Derived::Scalar> decompose(const Eigen::MatrixBase<Derived>& m,
                                                  const Tolerance& tol) {
  using Scalar = typename Derived::Scalar;
  require_finite(m);
  Decomposition<Scalar> d;
  const Index rows = m.rows(), cols = m.cols();
  if (rows == 0 || cols == 0) {
    d.U = MatrixX<Scalar>::Identity(rows, rows);
    d.V = MatrixX<Scalar>::Identity(cols, cols);
    d.sigma = VectorX<Scalar>::Zero(0);
    return d;
  }
  Eigen::JacobiSVD<MatrixX<Scalar>> svd(MatrixX<Scalar>(m), Eigen::ComputeFullU | Eigen::ComputeFullV);
  d.U = svd.matrixU();
  d.V = svd.matrixV();
  d.sigma = svd.singularValues();
  const Scalar cut = tol.cutoff(d.sigma.size() ? d.sigma(0) : Scalar(0));
  for (Index i = 0; i < d.sigma.size(); ++i)
    if (d.sigma(i) > cut) d.rank = i + 1;
  return d;
}

}  // namespace detail

template <typename Derived>
Index rank(const Eigen::MatrixBase<Derived>& m, const Tolerance& tol = {}) {
  return detail::decompose(m, tol).rank;
}

// Flips each column so that its first entry of significant magnitude is
// positive. Makes bases reproducible across runs and platforms with equal SVDs.
template <typename Scalar>
void canonicalize_signs(MatrixX<Scalar>& basis) {
  for (Index j = 0; j < basis.cols(); ++j) {
    const Scalar big = basis.col(j).cwiseAbs().maxCoeff();
    for (Index i = 0; i < basis.rows(); ++i) {
      if (std::abs(basis(i, j)) > Scalar(1e-8) * big) {
        if (basis(i, j) < 0) basis.col(j) *= Scalar(-1);
        break;
      }
    }
  }
}

// Orthonormal basis of ker(m), one column per negligible singular value.
template <typename Derived>
MatrixX<typename Derived::Scalar> kernel_basis(const Eigen::MatrixBase<Derived>& m,
                                               const Tolerance& tol = {}) {
  auto d = detail::decompose(m, tol);
  MatrixX<typename Derived::Scalar> k = d.V.rightCols(m.cols() - d.rank);
  canonicalize_signs(k);
  return k;
}

// Orthonormal basis of the column space of m.
template <typename Derived>
MatrixX<typename Derived::Scalar> range_basis(const Eigen::MatrixBase<Derived>& m,
                                              const Tolerance& tol = {}) {
  auto d = detail::decompose(m, tol);
  MatrixX<typename Derived::Scalar> r = d.U.leftCols(d.rank);
  canonicalize_signs(r);
  return r;
}

// Orthonormal basis of the orthogonal complement of span(generators) in R^n.
template <typename Derived>
MatrixX<typename Derived::Scalar> complement_basis(const Eigen::MatrixBase<Derived>& generators,
                                                   const Tolerance& tol = {}) {
  auto d = detail::decompose(generators, tol);
  MatrixX<typename Derived::Scalar> c = d.U.rightCols(generators.rows() - d.rank);
  canonicalize_signs(c);
  return c;
}

// Orthonormal basis of the part of span(kernel) orthogonal to the image.
// These are the harmonic representatives of ker / im.
template <typename DerivedK, typename DerivedI>
MatrixX<typename DerivedK::Scalar> quotient_basis(const Eigen::MatrixBase<DerivedK>& kernel,
                                                  const Eigen::MatrixBase<DerivedI>& image,
                                                  const Tolerance& tol = {}) {
  using Scalar = typename DerivedK::Scalar;
  require_finite(kernel);
  require_finite(image);
  if (kernel.rows() != image.rows())
    throw StaticsError(ErrorCode::InvalidArgument, "quotient_basis: row counts differ");
  const MatrixX<Scalar> coords = kernel.transpose() * image;
  if (image.size() > 0) {
    const Scalar residual = (image - kernel * coords).norm();
    const Scalar scale = std::max<Scalar>(Scalar(1), image.norm());
    if (residual > Scalar(10 * tol.relative) * scale)
      throw StaticsError(ErrorCode::ImageNotInKernel,
                         "image generators leave the kernel (residual " + std::to_string(double(residual)) + ")");
  }
  if (kernel.cols() == 0) return MatrixX<Scalar>::Zero(kernel.rows(), 0);
  const MatrixX<Scalar> inner = complement_basis(coords, tol);
  MatrixX<Scalar> q = kernel * inner;
  canonicalize_signs(q);
  return q;
}

template <typename Scalar>
struct LeastSquaresResult {
  VectorX<Scalar> x;
  Scalar residual = 0;
};

// Minimum-norm least-squares solution of m x = b. The caller judges whether
// the residual is small enough to call x a preimage.
template <typename DerivedM, typename DerivedB>
LeastSquaresResult<typename DerivedM::Scalar> least_squares_solve(const Eigen::MatrixBase<DerivedM>& m,
                                                                  const Eigen::MatrixBase<DerivedB>& b,
                                                                  const Tolerance& tol = {}) {
  using Scalar = typename DerivedM::Scalar;
  if (m.rows() != b.rows())
    throw StaticsError(ErrorCode::InvalidArgument, "least_squares_solve: dimensions do not conform");
  require_finite(b);
  auto d = detail::decompose(m, tol);
  LeastSquaresResult<Scalar> out;
  out.x = VectorX<Scalar>::Zero(m.cols());
  for (Index i = 0; i < d.rank; ++i)
    out.x += d.V.col(i) * (d.U.col(i).dot(b.col(0)) / d.sigma(i));
  out.residual = (m * out.x - b.col(0)).norm();
  return out;
}

}  // namespace gstatics
