#include "risjam/linalg.hpp"

#include <Eigen/SVD>
#include <cmath>

#include "risjam/errors.hpp"

namespace risjam {

CMat khatri_rao_cols(const CMat& a, const CMat& b) {
  if (a.cols() != b.cols())
    throw DimensionError("khatri_rao_cols: column counts differ");
  CMat out(a.rows() * b.rows(), a.cols());
  for (Index l = 0; l < a.cols(); ++l)
    for (Index i = 0; i < a.rows(); ++i)
      out.block(i * b.rows(), l, b.rows(), 1) = a(i, l) * b.col(l);
  return out;
}

CVec vec(const CMat& m) {
  return Eigen::Map<const CVec>(m.data(), m.size());
}

Svd svd_canonical(const CMat& a, bool full_u, bool full_v) {
  const unsigned opts = (full_u ? Eigen::ComputeFullU : Eigen::ComputeThinU) |
                        (full_v ? Eigen::ComputeFullV : Eigen::ComputeThinV);
  Eigen::BDCSVD<CMat> svd(a, opts);
  Svd out{svd.matrixU(), svd.singularValues(), svd.matrixV()};

  // Phase convention: the SVD is unique only up to per-pair phases, so pin
  // each left vector's largest entry to be real-positive.
  const Index paired = out.sigma.size();
  for (Index j = 0; j < out.u.cols(); ++j) {
    Index imax = 0;
    out.u.col(j).cwiseAbs().maxCoeff(&imax);
    const Complex z = out.u(imax, j);
    const double mag = std::abs(z);
    if (mag == 0.0) continue;
    const Complex rot = std::conj(z) / mag;
    out.u.col(j) *= rot;
    if (j < paired && j < out.v.cols()) out.v.col(j) *= rot;
  }
  // Surplus right vectors (beyond the paired set) get the same convention
  // applied to themselves.
  for (Index j = paired; j < out.v.cols(); ++j) {
    Index imax = 0;
    out.v.col(j).cwiseAbs().maxCoeff(&imax);
    const Complex z = out.v(imax, j);
    const double mag = std::abs(z);
    if (mag == 0.0) continue;
    out.v.col(j) *= std::conj(z) / mag;
  }
  return out;
}

CMat left_inverse(const CMat& a, bool& truncated, double rel_tol) {
  Svd s = svd_canonical(a);
  truncated = false;
  const double smax = s.sigma.size() > 0 ? s.sigma(0) : 0.0;
  RVec inv(s.sigma.size());
  for (Index i = 0; i < s.sigma.size(); ++i) {
    if (s.sigma(i) > rel_tol * smax && s.sigma(i) > 0.0) {
      inv(i) = 1.0 / s.sigma(i);
    } else {
      inv(i) = 0.0;
      truncated = true;
    }
  }
  return s.v * inv.asDiagonal() * s.u.adjoint();
}

CVec project_unit_modulus(const CVec& phi) {
  CVec out(phi.size());
  for (Index i = 0; i < phi.size(); ++i) {
    const double mag = std::abs(phi(i));
    out(i) = mag == 0.0 ? Complex(1.0, 0.0) : phi(i) / mag;
  }
  return out;
}

double pairwise_sum(const double* data, std::size_t n) {
  if (n <= 8) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += data[i];
    return acc;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(data, half) + pairwise_sum(data + half, n - half);
}

}  // namespace risjam
