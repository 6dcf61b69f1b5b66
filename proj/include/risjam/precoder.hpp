#pragma once

#include <vector>

#include "risjam/channel.hpp"
#include "risjam/types.hpp"

namespace risjam {

struct InnerPrecoder {
  CMat d;          // S x S unitary
  CMat u_hat;      // N x S left singular vectors of the projected channel
  RVec delta_hat;  // S singular values, descending
  bool degenerate = false;  // a top-S singular value fell below 1e-12
};

struct PrecoderSet {
  std::vector<CMat> outer;       // K_k, M x S with K^H K = (1/S) I
  std::vector<CMat> inner;       // D_k, S x S
  std::vector<CMat> p;           // P_k = K_k D_k
  std::vector<CMat> u_hat;       // per user
  std::vector<RVec> delta_hat;   // per user
  int degenerate_streams = 0;
};

// Horizontal concatenation of the eigenbases of all users except k
// (M x sum_{k' != k} r_k'; zero columns when K == 1).
CMat interference_basis(const std::vector<CovarianceFactor>& covs, int k);

// (1/sqrt(S)) times the last S left singular vectors of Lambda_k, i.e. an
// orthonormal basis of its orthogonal complement. Empty Lambda_k uses the
// identity as the left-vector basis.
CMat outer_precoder(const CMat& lambda_k, int m, int s);

// Full SVD of the projected channel H_k^H K_k; D_k is the right-vector matrix.
InnerPrecoder inner_precoder(const CMat& h_k, const CMat& k_k);

PrecoderSet build_precoders(const std::vector<CovarianceFactor>& covs,
                            const std::vector<CMat>& h, int s);

}  // namespace risjam
