#include "risjam/channel.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <algorithm>
#include <cmath>
#include <ostream>

#include "risjam/errors.hpp"
#include "risjam/linalg.hpp"

namespace risjam {

CovarianceFactor synth_covariance(int m, int rank, double link_gain, std::mt19937_64& rng) {
  if (rank < 1 || rank > m)
    throw DimensionError("synth_covariance: rank must be in [1, M]");

  CMat draw = complex_gaussian(m, rank, rng);
  Eigen::HouseholderQR<CMat> qr(draw);
  CMat u = qr.householderQ() * CMat::Identity(m, rank);

  std::uniform_real_distribution<double> uni(0.5, 1.5);
  RVec delta(rank);
  for (int i = 0; i < rank; ++i) delta(i) = uni(rng);
  delta *= (static_cast<double>(m) * link_gain) / delta.sum();
  std::sort(delta.data(), delta.data() + rank, std::greater<double>());

  return CovarianceFactor{std::move(u), std::move(delta)};
}

CovarianceFactor synth_covariance(const SystemConfig& config, const LinkGains& gains, int k,
                                  std::mt19937_64& rng) {
  return synth_covariance(config.M, config.r[static_cast<std::size_t>(k)],
                          gains.beta_bu[static_cast<std::size_t>(k)], rng);
}

std::pair<CMat, CMat> sample_direct(const CovarianceFactor& cov, int n_rx, std::mt19937_64& rng) {
  CMat h_bar = complex_gaussian(cov.delta.size(), n_rx, rng);
  CMat h = cov.u_bar * cov.delta.cwiseSqrt().asDiagonal() * h_bar;
  return {std::move(h), std::move(h_bar)};
}

RMat exp_corr_sqrt(int n, double rho) {
  RMat r(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r(i, j) = std::pow(rho, std::abs(i - j));
  Eigen::SelfAdjointEigenSolver<RMat> es(r);
  RVec ev = es.eigenvalues().cwiseMax(0.0);
  return es.eigenvectors() * ev.cwiseSqrt().asDiagonal() * es.eigenvectors().transpose();
}

void sample_ris_links(const SystemConfig& config, const LinkGains& gains, std::mt19937_64& rng,
                      CMat& g, std::vector<CMat>& f) {
  const bool corr_ris = config.rho_ris > 0.0;
  const bool corr_bs = config.rho_bs > 0.0;
  const bool corr_ue = config.rho_ue > 0.0;
  RMat ris_sqrt, bs_sqrt, ue_sqrt;
  if (corr_ris) ris_sqrt = exp_corr_sqrt(config.L, config.rho_ris);
  if (corr_bs) bs_sqrt = exp_corr_sqrt(config.M, config.rho_bs);
  if (corr_ue) ue_sqrt = exp_corr_sqrt(config.N, config.rho_ue);

  g = complex_gaussian(config.L, config.M, rng);
  if (corr_ris) g = ris_sqrt * g;
  if (corr_bs) g = g * bs_sqrt;
  g *= std::sqrt(gains.beta_br);

  f.assign(static_cast<std::size_t>(config.K), CMat());
  for (int k = 0; k < config.K; ++k) {
    CMat fk = complex_gaussian(config.L, config.N, rng);
    if (corr_ris) fk = ris_sqrt * fk;
    if (corr_ue) fk = fk * ue_sqrt;
    fk *= std::sqrt(gains.beta_ru[static_cast<std::size_t>(k)]);
    f[static_cast<std::size_t>(k)] = std::move(fk);
  }
}

CMat build_cascade_operator(const CMat& g, const CMat& f_k) {
  if (g.rows() != f_k.rows())
    throw DimensionError("build_cascade_operator: G and F_k must share the RIS dimension");
  return khatri_rao_cols(g.transpose(), f_k.adjoint());
}

CMat cascade_channel(const CMat& f_k, const CVec& theta, const CMat& g) {
  if (f_k.rows() != theta.size() || g.rows() != theta.size())
    throw DimensionError("cascade_channel: theta length must match the RIS dimension");
  const bool all_zero = (theta.array() == Complex(0.0, 0.0)).all();
  if (!all_zero) {
    for (Index l = 0; l < theta.size(); ++l)
      if (std::abs(std::abs(theta(l)) - 1.0) > 1e-9)
        throw std::invalid_argument(
            "cascade_channel: theta must be unit-modulus or the all-zero sentinel");
  }
  CMat z_h = f_k.adjoint() * theta.asDiagonal() * g;  // N x M
  return z_h.adjoint();
}

CMat corrupt_csi(const CMat& z, double tau, CsiErrorMode mode, std::mt19937_64& rng) {
  if (tau < 0.0 || tau > 1.0)
    throw std::invalid_argument("corrupt_csi: tau must lie in [0,1]");
  if (tau == 0.0) return z;
  CMat e = complex_gaussian(z.rows(), z.cols(), rng);
  if (mode == CsiErrorMode::Scaled) {
    const double n = static_cast<double>(z.size());
    e *= std::sqrt(z.squaredNorm() / n);
  }
  return std::sqrt(1.0 - tau * tau) * z + tau * e;
}

namespace {

void dump_matrix(const char* name, const CMat& m, std::ostream& os) {
  os << name << " " << m.rows() << " " << m.cols() << "\n";
  // column-major: entry (i + j*rows) on its own "re im" line
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i)
      os << m(i, j).real() << " " << m(i, j).imag() << "\n";
}

}  // namespace

void dump_channel_realization(const ChannelRealization& chan, std::ostream& os) {
  os << "users " << chan.h.size() << "\n";
  dump_matrix("G", chan.g, os);
  for (std::size_t k = 0; k < chan.h.size(); ++k) {
    dump_matrix("H", chan.h[k], os);
    dump_matrix("H_bar", chan.h_bar[k], os);
    dump_matrix("F", chan.f[k], os);
  }
}

}  // namespace risjam
