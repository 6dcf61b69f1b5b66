#include "risjam/precoder.hpp"

#include <cmath>

#include "risjam/errors.hpp"
#include "risjam/linalg.hpp"

namespace risjam {

CMat interference_basis(const std::vector<CovarianceFactor>& covs, int k) {
  const int users = static_cast<int>(covs.size());
  Index cols = 0;
  for (int i = 0; i < users; ++i)
    if (i != k) cols += covs[static_cast<std::size_t>(i)].u_bar.cols();
  const Index m = covs.at(static_cast<std::size_t>(k)).u_bar.rows();
  CMat lambda(m, cols);
  Index at = 0;
  for (int i = 0; i < users; ++i) {
    if (i == k) continue;
    const CMat& u = covs[static_cast<std::size_t>(i)].u_bar;
    lambda.middleCols(at, u.cols()) = u;
    at += u.cols();
  }
  return lambda;
}

CMat outer_precoder(const CMat& lambda_k, int m, int s) {
  if (s > m - lambda_k.cols())
    throw std::invalid_argument("outer_precoder: S exceeds the orthogonal-complement dimension");
  CMat u_full;
  if (lambda_k.cols() == 0) {
    // Empty interference basis: the identity is the canonical left-vector set.
    u_full = CMat::Identity(m, m);
  } else {
    u_full = svd_canonical(lambda_k, /*full_u=*/true).u;
  }
  return u_full.rightCols(s) / std::sqrt(static_cast<double>(s));
}

InnerPrecoder inner_precoder(const CMat& h_k, const CMat& k_k) {
  const CMat projected = h_k.adjoint() * k_k;  // N x S
  if (projected.cols() > projected.rows())
    throw DimensionError("inner_precoder: needs S <= N");
  Svd svd = svd_canonical(projected);
  InnerPrecoder out;
  out.u_hat = std::move(svd.u);
  out.delta_hat = std::move(svd.sigma);
  out.d = std::move(svd.v);
  out.degenerate = out.delta_hat.minCoeff() < 1e-12;
  return out;
}

PrecoderSet build_precoders(const std::vector<CovarianceFactor>& covs,
                            const std::vector<CMat>& h, int s) {
  PrecoderSet set;
  const int users = static_cast<int>(covs.size());
  const int m = static_cast<int>(covs.empty() ? 0 : covs[0].u_bar.rows());
  for (int k = 0; k < users; ++k) {
    CMat lambda = interference_basis(covs, k);
    CMat outer = outer_precoder(lambda, m, s);
    InnerPrecoder inner = inner_precoder(h[static_cast<std::size_t>(k)], outer);
    if (inner.degenerate) ++set.degenerate_streams;
    set.p.push_back(outer * inner.d);
    set.outer.push_back(std::move(outer));
    set.inner.push_back(std::move(inner.d));
    set.u_hat.push_back(std::move(inner.u_hat));
    set.delta_hat.push_back(std::move(inner.delta_hat));
  }
  return set;
}

}  // namespace risjam
