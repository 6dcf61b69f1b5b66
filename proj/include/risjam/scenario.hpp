#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "risjam/errors.hpp"

namespace risjam {

struct Vec2 {
  double x = 0;
  double y = 0;
  bool operator==(const Vec2&) const = default;
};

double distance(const Vec2& a, const Vec2& b);

// How the cascade-channel estimation error is scaled. Literal keeps the
// unit-variance error matrix; Scaled matches the error's per-entry variance
// to the empirical per-entry power of the true cascade channel.
enum class CsiErrorMode { Literal, Scaled };

std::string to_string(CsiErrorMode mode);
CsiErrorMode csi_error_mode_from_string(const std::string& s);

// Full scenario description. Defaults reproduce the reference deployment:
// a 60-antenna uniform linear array serving three 4-antenna users at
// (20,0), (20,40), (50,20) m, with a 200-element hostile RIS at (30,20) m.
struct SystemConfig {
  int M = 60;  // BS antennas
  int N = 4;   // antennas per user
  int K = 3;   // users
  int L = 200; // RIS elements
  int S = 2;   // parallel symbols per user
  std::vector<int> r;  // per-user covariance rank; empty -> 12 each

  double P_dBm = 20.0;
  double sigma2_dBm = -40.0;
  double eta = 2.5;

  Vec2 bs_pos{0.0, 0.0};
  Vec2 ris_pos{30.0, 20.0};
  std::vector<Vec2> user_pos;  // empty and K==3 -> reference trio

  std::vector<double> nu;                  // attack weights; empty -> 1/K each
  std::vector<std::vector<double>> alpha;  // K x S power allocation; empty -> all ones

  int T = 3000;
  double beta = 0.99;

  double tau = 0.0;
  CsiErrorMode csi_error_mode = CsiErrorMode::Literal;

  double rho_bs = 0.0;
  double rho_ris = 0.0;
  double rho_ue = 0.0;

  std::uint64_t seed = 1;
  int trials = 200;

  // Derived by validate(): whether the mitigation combiners can null their
  // interference block exactly (N > K*S, resp. N > (K-1)*S).
  bool fmit_exact = false;
  bool hmit_exact = false;

  double p_lin() const;       // transmit budget, mW
  double sigma2_lin() const;  // noise power, mW

  bool operator==(const SystemConfig&) const = default;
};

// Fills defaulted vector fields, recomputes derived flags, and throws
// ValidationError listing every violated invariant.
void validate(SystemConfig& config);

SystemConfig default_config();

SystemConfig load_scenario(const std::string& path);
void save_scenario(const SystemConfig& config, const std::string& path);

SystemConfig config_from_json_text(const std::string& text);
std::string config_to_json_text(const SystemConfig& config, bool pretty = false);

// FNV-1a hash of the canonical JSON form, as a 16-digit hex string.
std::string config_digest(const SystemConfig& config);

// d^(-eta); domain error for d <= 0.
double path_loss(double distance_m, double eta);

// 10^(x/10); all linear powers in this codebase are milliwatts.
double dbm_to_linear(double dbm);

struct LinkGains {
  double d_bs_ris = 0;
  std::vector<double> d_bs_user;
  std::vector<double> d_ris_user;
  double beta_br = 0;              // BS->RIS path gain
  std::vector<double> beta_bu;     // BS->user
  std::vector<double> beta_ru;     // RIS->user
};

LinkGains link_gains(const SystemConfig& config);

}  // namespace risjam
