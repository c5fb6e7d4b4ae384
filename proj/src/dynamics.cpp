#include "gstatics/dynamics.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "gstatics/statics.hpp"

namespace gstatics {

namespace {

double weight_of(const SpringConstants& w, Index e) {
  auto it = w.find(e);
  if (it == w.end()) return 1.0;
  if (!std::isfinite(it->second) || !(it->second > 0.0))
    throw StaticsError(ErrorCode::NonPositiveWeight, "spring constants must be positive");
  return it->second;
}

struct Spectrum {
  Vector lambda;
  Matrix vectors;
  Index kernel = 0;  // leading eigenvalues treated as zero
};

Spectrum spectrum(const Matrix& l, const Tolerance& tol) {
  if (l.rows() != l.cols()) throw StaticsError(ErrorCode::InvalidArgument, "laplacian must be square");
  require_finite(l);
  Spectrum s;
  if (l.rows() == 0) return s;
  Eigen::SelfAdjointEigenSolver<Matrix> eig(0.5 * (l + l.transpose()));
  s.lambda = eig.eigenvalues().cwiseMax(0.0);
  s.vectors = eig.eigenvectors();
  const double cut = tol.cutoff(s.lambda.maxCoeff());
  while (s.kernel < s.lambda.size() && s.lambda(s.kernel) <= cut) ++s.kernel;
  return s;
}

}  // namespace

Matrix sheaf_laplacian(const CosheafData& sheaf, const SpringConstants& weights) {
  if (!sheaf.is_sheaf()) throw StaticsError(ErrorCode::InvalidArgument, "sheaf Laplacian needs a sheaf");
  for (const auto& [e, k] : weights) {
    if (e < 0 || e >= sheaf.base().count(1)) throw StaticsError(ErrorCode::InvalidArgument, "weight for unknown edge");
    weight_of(weights, e);
  }
  const Matrix delta = assemble_chain_complex(sheaf).maps[0];
  Vector w(delta.rows());
  for (Index e = 0; e < sheaf.base().count(1); ++e)
    w.segment(sheaf.offset(1, e), sheaf.stalk_dim(1, e)).setConstant(weight_of(weights, e));
  return delta.transpose() * w.asDiagonal() * delta;
}

Matrix hodge_laplacian(const CosheafData& sheaf, int degree) {
  if (!sheaf.is_sheaf()) throw StaticsError(ErrorCode::InvalidArgument, "Hodge Laplacian needs a sheaf");
  const auto c = assemble_chain_complex(sheaf);
  const Matrix up = c.outgoing(degree);
  const Matrix down = c.incoming(degree);
  return up.transpose() * up + down * down.transpose();
}

Matrix stiffness_matrix(const Diagram& dg, const SpringConstants& springs) {
  const auto& cx = dg.complex();
  Matrix k = Matrix::Zero(2 * cx.count(0), 2 * cx.count(0));
  for (Index e = 0; e < cx.count(1); ++e) {
    const double kappa = weight_of(springs, e);
    const Vec2 d = edge_direction(dg, e);
    const double c = d.x(), s = d.y();
    Eigen::Matrix2d block;
    block << c * c, c * s, c * s, s * s;
    block *= kappa;
    const auto [tail, head] = cx.edge_ends(e);
    if (tail && head) {
      const Index u = 2 * *tail, v = 2 * *head;
      k.block<2, 2>(u, u) += block;
      k.block<2, 2>(v, v) += block;
      k.block<2, 2>(u, v) -= block;
      k.block<2, 2>(v, u) -= block;
    } else {
      const Index u = 2 * (tail ? *tail : *head);
      k.block<2, 2>(u, u) += block;
    }
  }
  return k;
}

Vector harmonic_projection(const Matrix& l, const Vector& xi, const Tolerance& tol) {
  const auto s = spectrum(l, tol);
  if (xi.size() != l.rows()) throw StaticsError(ErrorCode::InvalidArgument, "state has the wrong length");
  const Matrix u = s.vectors.leftCols(s.kernel);
  return u * (u.transpose() * xi);
}

DiffusionTrace diffuse(const Matrix& l, const Vector& xi0, const DiffusionOptions& opt, const Tolerance& tol) {
  if (!(opt.alpha > 0.0) || !std::isfinite(opt.alpha))
    throw StaticsError(ErrorCode::InvalidArgument, "alpha must be positive");
  if (opt.steps < 1) throw StaticsError(ErrorCode::InvalidArgument, "steps must be positive");
  if (xi0.size() != l.rows()) throw StaticsError(ErrorCode::InvalidArgument, "state has the wrong length");
  require_finite(xi0);
  const auto s = spectrum(l, tol);
  const double lmax = s.lambda.size() ? s.lambda.maxCoeff() : 0.0;

  DiffusionTrace tr;
  const Matrix u0 = s.vectors.leftCols(s.kernel);
  tr.final = u0 * (u0.transpose() * xi0);
  auto record = [&](double t, const Vector& x) {
    tr.times.push_back(t);
    tr.states.push_back(x);
    tr.energies.push_back(x.dot(l * x));
  };

  if (opt.scheme == Scheme::Spectral) {
    double t_end = opt.t_end;
    if (t_end <= 0.0) {
      const double lmin = s.kernel < s.lambda.size() ? s.lambda(s.kernel) : 1.0;
      t_end = 40.0 / (opt.alpha * lmin);
    }
    const Vector coeff = s.vectors.transpose() * xi0;
    for (Index k = 0; k <= opt.steps; ++k) {
      const double t = t_end * double(k) / double(opt.steps);
      Vector decay(coeff.size());
      for (Index i = 0; i < coeff.size(); ++i) decay(i) = i < s.kernel ? 1.0 : std::exp(-opt.alpha * s.lambda(i) * t);
      record(t, s.vectors * decay.cwiseProduct(coeff));
    }
    return tr;
  }

  double dt = opt.dt > 0.0 ? opt.dt : (lmax > 0.0 ? 1.0 / (opt.alpha * lmax) : 1.0);
  if (lmax > 0.0 && dt >= 2.0 / (opt.alpha * lmax))
    throw StaticsError(ErrorCode::UnstableStepSize,
                       "explicit step must satisfy dt < 2 / (alpha lambda_max) = " + std::to_string(2.0 / (opt.alpha * lmax)));
  Vector x = xi0;
  record(0.0, x);
  for (Index k = 1; k <= opt.steps; ++k) {
    x -= dt * opt.alpha * (l * x);
    record(dt * double(k), x);
  }
  return tr;
}

std::vector<Vec2> nearest_parallel_realization(const Diagram& dg, const std::vector<Vec2>& perturbed,
                                               const Tolerance& tol) {
  const Index n = dg.complex().count(0);
  if (static_cast<Index>(perturbed.size()) != n)
    throw StaticsError(ErrorCode::InvalidArgument, "perturbed realization needs one point per vertex");
  Vector delta(2 * n);
  for (Index v = 0; v < n; ++v) delta.segment<2>(2 * v) = perturbed[v] - dg.position(v);
  require_finite(delta);
  const auto h0 = cohomology(position_sheaf(dg), 0, tol);
  const Vector kept = h0.basis * h0.coordinates(delta);
  std::vector<Vec2> out;
  for (Index v = 0; v < n; ++v) out.push_back(dg.position(v) + kept.segment<2>(2 * v));
  return out;
}

std::string trace_to_csv(const DiffusionTrace& tr) {
  std::ostringstream os;
  os << std::setprecision(17) << "t,energy,norm\n";
  for (std::size_t k = 0; k < tr.times.size(); ++k)
    os << tr.times[k] << "," << tr.energies[k] << "," << tr.states[k].norm() << "\n";
  return os.str();
}

}  // namespace gstatics
