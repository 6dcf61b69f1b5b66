#pragma once

#include <iosfwd>
#include <random>
#include <utility>
#include <vector>

#include "risjam/rng.hpp"
#include "risjam/scenario.hpp"
#include "risjam/types.hpp"

namespace risjam {

// Truncated eigendecomposition of one user's direct-link covariance:
// an M x r orthonormal eigenbasis and r positive eigenvalues (descending)
// normalized so their sum equals M times the link gain.
struct CovarianceFactor {
  CMat u_bar;
  RVec delta;
};

struct ChannelRealization {
  std::vector<CMat> h;      // per user, M x N direct channel
  std::vector<CMat> h_bar;  // per user, r_k x N fast-fading factor
  CMat g;                   // L x M, BS->RIS
  std::vector<CMat> f;      // per user, L x N, RIS->user
};

CovarianceFactor synth_covariance(int m, int rank, double link_gain, std::mt19937_64& rng);
CovarianceFactor synth_covariance(const SystemConfig& config, const LinkGains& gains, int k,
                                  std::mt19937_64& rng);

// Draws H_bar i.i.d. CN(0,1) and returns (H, H_bar) with H = U Delta^{1/2} H_bar.
std::pair<CMat, CMat> sample_direct(const CovarianceFactor& cov, int n_rx, std::mt19937_64& rng);

// Kronecker-correlated Rayleigh draws of G and all F_k, with exponential
// correlation rho^|i-j| on each side and path-loss scaling.
void sample_ris_links(const SystemConfig& config, const LinkGains& gains, std::mt19937_64& rng,
                      CMat& g, std::vector<CMat>& f);

// Square root of the exponential-correlation Toeplitz matrix [R]_ij = rho^|i-j|.
RMat exp_corr_sqrt(int n, double rho);

// S_k = G^T ⋄ F_k^H, the (M*N) x L operator with S_k vecd{Theta} = vec{F_k^H Theta G}.
CMat build_cascade_operator(const CMat& g, const CMat& f_k);

// Z_k with Z_k^H = F_k^H diag(theta) G. theta must be unit-modulus within
// 1e-9, or the all-zero "RIS absent" sentinel.
CMat cascade_channel(const CMat& f_k, const CVec& theta, const CMat& g);

// Zhat = sqrt(1 - tau^2) Z + tau E. Literal mode draws E with unit per-entry
// variance; Scaled mode matches E's per-entry variance to Z's empirical
// per-entry power.
CMat corrupt_csi(const CMat& z, double tau, CsiErrorMode mode, std::mt19937_64& rng);

// Debug dump: dimensions, then each matrix as column-major "re im" rows.
void dump_channel_realization(const ChannelRealization& chan, std::ostream& os);

}  // namespace risjam
