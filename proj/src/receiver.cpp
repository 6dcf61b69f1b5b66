#include "risjam/receiver.hpp"

#include <algorithm>
#include <cmath>

#include "risjam/errors.hpp"
#include "risjam/linalg.hpp"

namespace risjam {

std::string to_string(ReceiverMode mode) {
  switch (mode) {
    case ReceiverMode::Unmitigated: return "unmit";
    case ReceiverMode::Fmit: return "fmit";
    case ReceiverMode::Hmit: return "hmit";
  }
  return "unmit";
}

ReceiverMode receiver_mode_from_string(const std::string& s) {
  if (s == "unmit") return ReceiverMode::Unmitigated;
  if (s == "fmit") return ReceiverMode::Fmit;
  if (s == "hmit") return ReceiverMode::Hmit;
  throw ParseError("unknown receiver mode '" + s + "'");
}

CMat concat_precoders(const std::vector<CMat>& p_all, int exclude) {
  if (p_all.empty()) return CMat();
  const Index m = p_all[0].rows();
  Index cols = 0;
  for (int i = 0; i < static_cast<int>(p_all.size()); ++i)
    if (i != exclude) cols += p_all[static_cast<std::size_t>(i)].cols();
  CMat out(m, cols);
  Index at = 0;
  for (int i = 0; i < static_cast<int>(p_all.size()); ++i) {
    if (i == exclude) continue;
    const CMat& p = p_all[static_cast<std::size_t>(i)];
    out.middleCols(at, p.cols()) = p;
    at += p.cols();
  }
  return out;
}

namespace {

// W = last W rows of U^H, where U is the left-vector matrix of z_block; the
// rows pair with the weakest singular directions, i.e. the (approximate)
// left null space of the interference block.
CMat null_rows(const CMat& z_block, Index n, Index w_dim) {
  if (z_block.cols() == 0) {
    CMat eye = CMat::Identity(n, n);
    return eye.bottomRows(w_dim);
  }
  CMat u = svd_canonical(z_block, /*full_u=*/true).u;  // N x N
  return u.rightCols(w_dim).adjoint();
}

}  // namespace

CombinerPair fmit_combiner(const CMat& z_hat_k, const CMat& p_tilde, const CMat& h_k,
                           const CMat& p_k) {
  const Index n = h_k.cols();
  const Index s = p_k.cols();
  const CMat z_block = z_hat_k.adjoint() * p_tilde;  // N x KS
  const Index w_dim = std::max<Index>(n - p_tilde.cols(), s);
  CombinerPair c;
  c.mode = ReceiverMode::Fmit;
  c.w = null_rows(z_block, n, w_dim);
  c.q = left_inverse(c.w * h_k.adjoint() * p_k, c.pinv_fallback);
  return c;
}

CombinerPair hmit_combiner(const CMat& z_hat_k, const CMat& p_tilde_star, const CMat& h_k,
                           const CMat& p_k) {
  const Index n = h_k.cols();
  const Index s = p_k.cols();
  const CMat z_block = z_hat_k.adjoint() * p_tilde_star;  // N x (K-1)S
  const Index w_dim = std::max<Index>(n - p_tilde_star.cols(), s);
  CombinerPair c;
  c.mode = ReceiverMode::Hmit;
  c.w = null_rows(z_block, n, w_dim);
  c.q = left_inverse(c.w * (h_k.adjoint() + z_hat_k.adjoint()) * p_k, c.pinv_fallback);
  return c;
}

CombinerPair unmitigated_combiner(const CMat& h_k, const CMat& p_k) {
  CombinerPair c;
  c.mode = ReceiverMode::Unmitigated;
  c.w = CMat::Identity(h_k.cols(), h_k.cols());
  c.q = left_inverse(h_k.adjoint() * p_k, c.pinv_fallback);
  return c;
}

std::vector<SinrBreakdown> sinr_per_symbol(const CombinerPair& comb, const CMat& h_k,
                                           const CMat& z_k, const std::vector<CMat>& p_all,
                                           int user_k, double p_lin,
                                           const std::vector<std::vector<double>>& alpha,
                                           double sigma2_lin) {
  const auto uk = static_cast<std::size_t>(user_k);
  const CMat& p_k = p_all[uk];
  const Index s_dim = p_k.cols();
  const CMat qw = comb.q * comb.w;    // S x N
  const CMat z_h = z_k.adjoint();     // N x M

  // Effective per-symbol channel; H-MIT harnesses the own reflection.
  CMat eff = (comb.mode == ReceiverMode::Hmit)
                 ? CMat(qw * ((h_k.adjoint() + z_h) * p_k))
                 : CMat(qw * (h_k.adjoint() * p_k));

  // Residual reflected interference, alpha-weighted over the selected group
  // (every stream for F-MIT/unmitigated, other users' streams for H-MIT).
  const CMat qwz = qw * z_h;  // S x M
  RVec ris = RVec::Zero(s_dim);
  for (int i = 0; i < static_cast<int>(p_all.size()); ++i) {
    if (comb.mode == ReceiverMode::Hmit && i == user_k) continue;
    const CMat b = qwz * p_all[static_cast<std::size_t>(i)];
    for (Index s = 0; s < s_dim; ++s)
      for (Index t = 0; t < b.cols(); ++t)
        ris(s) += alpha[static_cast<std::size_t>(i)][static_cast<std::size_t>(t)] *
                  std::norm(b(s, t));
  }

  std::vector<SinrBreakdown> out(static_cast<std::size_t>(s_dim));
  for (Index s = 0; s < s_dim; ++s) {
    SinrBreakdown& b = out[static_cast<std::size_t>(s)];
    b.signal = p_lin * alpha[uk][static_cast<std::size_t>(s)] * std::norm(eff(s, s));
    double isi = 0.0;
    for (Index t = 0; t < s_dim; ++t)
      if (t != s) isi += alpha[uk][static_cast<std::size_t>(t)] * std::norm(eff(s, t));
    b.inter_symbol = p_lin * isi;
    b.ris = p_lin * ris(s);
    b.noise = sigma2_lin * comb.q.row(s).squaredNorm();
    b.signal = std::max(b.signal, 0.0);
    b.inter_symbol = std::max(b.inter_symbol, 0.0);
    b.ris = std::max(b.ris, 0.0);
    b.sinr = b.signal / (b.inter_symbol + b.ris + b.noise);
  }
  return out;
}

}  // namespace risjam
