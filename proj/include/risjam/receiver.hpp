#pragma once

#include <string>
#include <vector>

#include "risjam/types.hpp"

namespace risjam {

enum class ReceiverMode { Unmitigated, Fmit, Hmit };

std::string to_string(ReceiverMode mode);
ReceiverMode receiver_mode_from_string(const std::string& s);

// Two-layer receive filter Q * W. W (W_dim x N, semi-unitary for the
// mitigation modes) tackles RIS reflections; Q (S x W_dim) removes
// inter-symbol interference.
struct CombinerPair {
  CMat w;
  CMat q;
  ReceiverMode mode = ReceiverMode::Unmitigated;
  bool pinv_fallback = false;  // left inverse degraded to pseudo-inverse
};

// Nulls every RIS-reflected stream: W spans the weakest left directions of
// Zhat_k^H P_tilde with W_dim = max(N - K*S, S); Q is the left inverse of
// W H_k^H P_k.
CombinerPair fmit_combiner(const CMat& z_hat_k, const CMat& p_tilde, const CMat& h_k,
                           const CMat& p_k);

// Nulls only other users' reflected streams (P_tilde_star excludes user k)
// with W_dim = max(N - (K-1)*S, S); Q is the left inverse of
// W (H_k^H + Zhat_k^H) P_k, so own reflections are harnessed.
CombinerPair hmit_combiner(const CMat& z_hat_k, const CMat& p_tilde_star, const CMat& h_k,
                           const CMat& p_k);

// Attack-oblivious baseline: W = I, Q zero-forces the legitimate effective
// channel H_k^H P_k.
CombinerPair unmitigated_combiner(const CMat& h_k, const CMat& p_k);

struct SinrBreakdown {
  double signal = 0;
  double inter_symbol = 0;
  double ris = 0;    // interference through the reflected link
  double noise = 0;
  double sinr = 0;
};

// Closed-form per-symbol SINR components for user k, evaluated against the
// true channels with unit-power symbols (powers are alpha-weighted quadratic
// forms, not sampled). p_all holds every user's precoder.
std::vector<SinrBreakdown> sinr_per_symbol(const CombinerPair& comb, const CMat& h_k,
                                           const CMat& z_k, const std::vector<CMat>& p_all,
                                           int user_k, double p_lin,
                                           const std::vector<std::vector<double>>& alpha,
                                           double sigma2_lin);

// [P_1 ... P_K], optionally excluding one user.
CMat concat_precoders(const std::vector<CMat>& p_all, int exclude = -1);

}  // namespace risjam
