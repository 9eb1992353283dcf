#pragma once

#include <vector>

#include "image_grid.hpp"

namespace pdebin {

struct PdeParams {
  double source_coeff = 1.0;     // c_s
  double edge_coeff = 1.0;       // c_e
  double diffusion_coeff = 0.2;  // c_d
  double dt = 0.2;               // explicit step, <= 0.25
  int max_iters = 20;
  double tol = 1e-4;             // stop when mean |u' - u| < tol
  double k_pm = 0.1;             // Perona-Malik contrast
  double alpha = 1.0;            // 1 = integer order
  int memory = 8;                // GL memory depth in time and taps in space
};

void validate(const PdeParams& p);

struct TermFields {
  RealGrid source;
  RealGrid edge;
  RealGrid diffusion;
};

// U_s = B - u
RealGrid term_source(const ScalarField& u, const BinaryMap& target);

// U_e = -E * sign(laplacian u) * |grad u| (5-point Laplacian, central gradient).
RealGrid term_edge(const ScalarField& u, const ScalarField& edges);

// Perona-Malik divergence with g(s) = 1 / (1 + (s/k)^2) on the 4-neighbour stencil.
RealGrid term_diffusion(const RealGrid& u, double k_pm);

// u' = clamp(u + dt*(c_s U_s + c_e U_e + c_d U_d), 0, 1). Jacobi: every term
// must come from the same iterate.
ScalarField step_integer(const ScalarField& u, const TermFields& terms, const PdeParams& p);

struct EvolutionResult {
  ScalarField field;
  int iterations = 0;
  bool converged = false;
  std::vector<double> updates;  // mean absolute per-pixel change of each step
};

// Iterates the integer (alpha = 1) or fractional (alpha < 1) model until the
// mean absolute update drops below tol or max_iters steps have run.
EvolutionResult run_evolution(const ScalarField& input, const PdeParams& p,
                              const ScalarField& edges, const BinaryMap& target);

}  // namespace pdebin
