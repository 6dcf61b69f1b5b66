#pragma once

#include <random>
#include <vector>

#include "risjam/types.hpp"

namespace risjam {

// Vertical stack of the weighted per-user cascade operators sqrt(nu_k) S_k,
// together with its Gram matrix and largest Gram eigenvalue.
struct StackedOperator {
  CMat s_bar;               // (K*M*N) x L
  CMat gram;                // s_bar^H s_bar, Hermitian L x L
  double lambda_star = 0.0; // largest eigenvalue of gram
};

StackedOperator stack_weighted(const std::vector<CMat>& s_list, const std::vector<double>& nu);

// ||s_bar theta||_2^2
double attack_objective(const CMat& s_bar, const CVec& theta);

// Largest eigenvalue of a Hermitian PSD matrix: direct eigensolve up to
// moderate sizes, power iteration (1e-10 relative) beyond.
double largest_gram_eigenvalue(const CMat& gram);

enum class PhaseInit {
  AllOnes,     // zero phases everywhere (feasible)
  FirstBasis,  // e_1; becomes all-ones after the first projection
};

CVec initial_phases(int l, PhaseInit init);

struct RisProfile {
  enum class Kind { Zero, Disco, Optimized };
  CVec theta;
  Kind kind = Kind::Zero;

  static RisProfile zero(int l);
};

struct OptimizeOptions {
  int iterations = 3000;  // T; the loop runs T-1 gradient steps
  double beta = 0.99;     // step tuning, alpha = beta / lambda_star
  bool early_stop = false;
  double early_stop_rel_tol = 1e-10;
  int early_stop_window = 10;
};

struct OptimizationTrace {
  std::vector<double> objective;  // objective at theta_(1..T)
  double alpha = 0.0;
  int iterations_run = 0;         // entries recorded
  bool zero_operator = false;     // lambda_star == 0; theta0 returned unchanged
};

// Projected gradient ascent of ||s_bar theta||^2 over unit-modulus theta:
//   delta = s_bar^H (s_bar theta);  phi = theta + alpha delta;
//   theta = exp(j*angle(phi))  elementwise.
RisProfile optimize_phases(const StackedOperator& op, const OptimizeOptions& opts,
                           const CVec& theta0, OptimizationTrace* trace = nullptr);

// Uniformly random phases ("Disco Ball" baseline).
RisProfile disco_profile(int l, std::mt19937_64& rng);

}  // namespace risjam
