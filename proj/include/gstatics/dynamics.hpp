#pragma once

// Sheaf Laplacians, truss stiffness and heat-equation diffusion.

#include <map>
#include <string>
#include <vector>

#include "gstatics/complex.hpp"
#include "gstatics/sheaf.hpp"

namespace gstatics {

// Spring constant per edge index; edges not listed default to 1.
using SpringConstants = std::map<Index, double>;

// Delta = delta^T W delta on 0-cochains of a sheaf, W the diagonal of edge weights.
Matrix sheaf_laplacian(const CosheafData& sheaf, const SpringConstants& weights = {});
// Full Hodge Laplacian of the given degree (delta^T delta + delta delta^T, unweighted).
Matrix hodge_laplacian(const CosheafData& sheaf, int degree);

// Sum of per-edge element matrices kappa [[c^2, cs, -c^2, -cs], ...]; open
// edges add a ground spring kappa [[c^2, cs], [cs, s^2]] at their vertex.
Matrix stiffness_matrix(const Diagram& diagram, const SpringConstants& springs = {});

enum class Scheme { Spectral, Euler };

struct DiffusionTrace {
  std::vector<double> times;
  std::vector<Vector> states;
  std::vector<double> energies;  // <xi, Delta xi>
  Vector final;                   // harmonic limit (projection onto ker Delta)
};

struct DiffusionOptions {
  double alpha = 1.0;
  Index steps = 50;
  double dt = 0.0;  // Euler step; 0 picks 1 / (alpha lambda_max)
  Scheme scheme = Scheme::Spectral;
  double t_end = 0.0;  // spectral horizon; 0 picks 40 / (alpha lambda_min_positive)
};

DiffusionTrace diffuse(const Matrix& laplacian, const Vector& xi0, const DiffusionOptions& options = {},
                       const Tolerance& tol = {});

// Orthogonal projection onto ker(laplacian).
Vector harmonic_projection(const Matrix& laplacian, const Vector& xi, const Tolerance& tol = {});

// p + projection of (perturbed - p) onto H^0 of the position sheaf.
std::vector<Vec2> nearest_parallel_realization(const Diagram& diagram, const std::vector<Vec2>& perturbed,
                                               const Tolerance& tol = {});

// CSV with header "t,energy,norm".
std::string trace_to_csv(const DiffusionTrace& trace);

}  // namespace gstatics
