#pragma once

#include <deque>
#include <vector>

#include "evolution.hpp"
#include "image_grid.hpp"

namespace pdebin {

// Grunwald-Letnikov weights w_0..w_K: w_0 = 1, w_k = (1 - (alpha+1)/k) w_{k-1}.
struct GlCoefficients {
  double order = 1.0;
  std::vector<double> weights;
};

GlCoefficients gl_coefficients(double alpha, int taps);

// Direction in which the one-sided difference looks "forward"; the GL sum runs
// over pixels shifted the opposite way. XPlus at alpha = 1 is u(x) - u(x-1).
enum class Direction { XPlus, XMinus, YPlus, YMinus };

RealGrid frac_gradient(const RealGrid& u, double alpha, int taps, Direction dir);

// term_edge / term_diffusion with each one-sided difference replaced by the GL
// difference of order alpha. alpha = 1 reproduces the integer terms exactly.
RealGrid term_edge_frac(const ScalarField& u, const ScalarField& edges, double alpha, int taps);
RealGrid term_diffusion_frac(const RealGrid& u, double k_pm, double alpha, int taps);

// Past iterates, most recent first, at most `capacity` entries.
class EvolutionHistory {
 public:
  explicit EvolutionHistory(int capacity);

  void push(ScalarField u);
  int capacity() const noexcept { return capacity_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  const ScalarField& operator[](std::size_t lag) const { return entries_.at(lag); }
  const ScalarField& latest() const { return entries_.at(0); }

 private:
  int capacity_;
  std::deque<ScalarField> entries_;
};

// u^{n+1} = clamp(dt^alpha * (c_s U_s + c_e U_e + c_d U_d) - sum_{k>=1} w_k u^{n+1-k}, 0, 1)
// with the sum truncated to the stored history.
ScalarField step_fractional(const EvolutionHistory& history, const TermFields& terms,
                            const PdeParams& p);

}  // namespace pdebin
