#include "risjam/attacker.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "risjam/errors.hpp"
#include "risjam/linalg.hpp"

namespace risjam {

StackedOperator stack_weighted(const std::vector<CMat>& s_list, const std::vector<double>& nu) {
  if (s_list.empty()) throw DimensionError("stack_weighted: empty operator list");
  if (nu.size() != s_list.size())
    throw DimensionError("stack_weighted: one weight per operator required");
  const Index l = s_list[0].cols();
  Index rows = 0;
  for (const CMat& s : s_list) {
    if (s.cols() != l) throw DimensionError("stack_weighted: column counts differ");
    rows += s.rows();
  }
  for (double w : nu)
    if (!(w > 0.0)) throw std::invalid_argument("stack_weighted: weights must be positive");

  StackedOperator op;
  op.s_bar.resize(rows, l);
  Index at = 0;
  for (std::size_t k = 0; k < s_list.size(); ++k) {
    op.s_bar.middleRows(at, s_list[k].rows()) = std::sqrt(nu[k]) * s_list[k];
    at += s_list[k].rows();
  }
  CMat gram = op.s_bar.adjoint() * op.s_bar;
  op.gram = 0.5 * (gram + gram.adjoint());  // kill rounding asymmetry
  op.lambda_star = largest_gram_eigenvalue(op.gram);
  return op;
}

double attack_objective(const CMat& s_bar, const CVec& theta) {
  if (theta.size() != s_bar.cols())
    throw DimensionError("attack_objective: theta length must equal the column count");
  return (s_bar * theta).squaredNorm();
}

double largest_gram_eigenvalue(const CMat& gram) {
  const Index l = gram.rows();
  if (l <= 512) {
    Eigen::SelfAdjointEigenSolver<CMat> es(gram, Eigen::EigenvaluesOnly);
    return es.eigenvalues().maxCoeff();
  }
  // Power iteration with a fixed, deterministic start.
  CVec v(l);
  for (Index i = 0; i < l; ++i)
    v(i) = Complex(std::cos(0.7 * static_cast<double>(i) + 0.3),
                   std::sin(1.3 * static_cast<double>(i) + 0.1));
  v.normalize();
  double lambda = 0.0;
  for (int it = 0; it < 20000; ++it) {
    CVec w = gram * v;
    const double next = w.norm();
    if (next == 0.0) return 0.0;
    v = w / next;
    if (std::abs(next - lambda) <= 1e-10 * std::max(next, 1.0) && it > 2) return next;
    lambda = next;
  }
  return lambda;
}

CVec initial_phases(int l, PhaseInit init) {
  if (init == PhaseInit::AllOnes) return CVec::Ones(l);
  CVec e1 = CVec::Zero(l);
  if (l > 0) e1(0) = Complex(1.0, 0.0);
  return e1;
}

RisProfile RisProfile::zero(int l) {
  return RisProfile{CVec::Zero(l), Kind::Zero};
}

RisProfile optimize_phases(const StackedOperator& op, const OptimizeOptions& opts,
                           const CVec& theta0, OptimizationTrace* trace) {
  if (opts.iterations < 1) throw std::invalid_argument("optimize_phases: T must be >= 1");
  if (!(opts.beta > 0.0 && opts.beta < 1.0))
    throw std::invalid_argument("optimize_phases: beta must lie in (0,1)");
  if (theta0.size() != op.gram.rows())
    throw DimensionError("optimize_phases: theta0 length must match the operator");

  OptimizationTrace local;
  OptimizationTrace& tr = trace ? *trace : local;
  tr = OptimizationTrace{};

  if (!(op.lambda_star > 0.0)) {
    tr.zero_operator = true;
    tr.objective.assign(1, 0.0);
    tr.iterations_run = 1;
    return RisProfile{theta0, RisProfile::Kind::Optimized};
  }

  const double alpha = opts.beta / op.lambda_star;
  tr.alpha = alpha;

  CVec theta = theta0;
  CVec delta = op.gram * theta;
  double obj = theta.dot(delta).real();
  tr.objective.reserve(static_cast<std::size_t>(opts.iterations));
  tr.objective.push_back(obj);

  int flat_streak = 0;
  for (int t = 1; t < opts.iterations; ++t) {
    theta = project_unit_modulus(theta + alpha * delta);
    delta = op.gram * theta;
    const double next = theta.dot(delta).real();
    tr.objective.push_back(next);
    if (opts.early_stop) {
      const double rel = std::abs(next - obj) / std::max(std::abs(obj), 1e-300);
      flat_streak = rel < opts.early_stop_rel_tol ? flat_streak + 1 : 0;
      if (flat_streak >= opts.early_stop_window) {
        obj = next;
        break;
      }
    }
    obj = next;
  }
  tr.iterations_run = static_cast<int>(tr.objective.size());
  return RisProfile{std::move(theta), RisProfile::Kind::Optimized};
}

RisProfile disco_profile(int l, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> uni(0.0, 2.0 * M_PI);
  CVec theta(l);
  for (int i = 0; i < l; ++i) theta(i) = std::polar(1.0, uni(rng));
  return RisProfile{std::move(theta), RisProfile::Kind::Disco};
}

}  // namespace risjam
