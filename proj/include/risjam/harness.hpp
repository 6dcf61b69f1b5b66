#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "risjam/attacker.hpp"
#include "risjam/precoder.hpp"
#include "risjam/receiver.hpp"
#include "risjam/scenario.hpp"

namespace risjam {

enum class AttackKind { None, Disco, Optimized };

struct AttackSpec {
  AttackKind kind = AttackKind::None;
  std::vector<double> nu;  // empty: use the scenario weights
  std::string label = "safe";

  static AttackSpec none();
  static AttackSpec disco();
  static AttackSpec optimized();  // scenario weights
  // 0.98 on `user` (1-based), the remaining 0.02 split over the others.
  static AttackSpec targeted(int user, int k_total);
};

struct ModeSpec {
  AttackSpec attack;
  ReceiverMode receiver = ReceiverMode::Unmitigated;
  std::string label() const;
};

// Comma-separated tokens: "safe" or "<attack>+<receiver>" with attack in
// {none, disco, opt, opt-u<k>} and receiver in {unmit, fmit, hmit}.
std::vector<ModeSpec> parse_modes(const std::string& list, int k_total);

struct TrialRecord {
  int trial = 0;
  std::string attack;
  std::string receiver;
  std::vector<std::vector<SinrBreakdown>> sinr;  // [user][symbol]
  std::vector<double> user_rate;                 // bits/s/Hz
  double system_rate = 0;
  int pinv_fallbacks = 0;
  int degenerate_streams = 0;
};

// sum_s log2(1 + gamma_s)
double user_rate(const std::vector<double>& sinrs);

// Everything about a trial that does not depend on the attack or receiver:
// covariances, channels, precoders, and the per-user cascade operators.
struct TrialContext {
  LinkGains gains;
  std::vector<CovarianceFactor> covs;
  ChannelRealization chan;
  PrecoderSet prec;
  CMat p_tilde;                   // M x K*S
  std::vector<CMat> cascade_ops;  // S_k, (M*N) x L
};

TrialContext make_trial_context(const SystemConfig& config, std::uint64_t trial);

// Resolves theta for the trial: zero sentinel, fresh disco draw, or
// Algorithm-style projected-gradient optimization against this trial's S_k.
RisProfile attack_profile(const SystemConfig& config, const TrialContext& ctx,
                          const AttackSpec& attack, std::uint64_t trial,
                          OptimizationTrace* trace = nullptr);

TrialRecord evaluate_trial(const SystemConfig& config, const TrialContext& ctx,
                           const RisProfile& profile, const std::string& attack_label,
                           ReceiverMode receiver, std::uint64_t trial);

TrialRecord run_trial(const SystemConfig& config, const AttackSpec& attack,
                      ReceiverMode receiver, std::uint64_t trial);

struct SweepSpec {
  std::string var = "none";  // none | P_dBm | ris_x | tau | nu_target
  std::vector<double> grid{0.0};
};

// "P_dBm=0:30:5" (inclusive range) or "tau=0,0.1,0.2" (list).
SweepSpec parse_sweep(const std::string& text);

// Returns the cell configuration with the sweep variable applied (revalidated).
SystemConfig apply_sweep_value(const SystemConfig& base, const std::string& var, double value);

struct MeanCi {
  double mean = 0;
  double ci95 = 0;  // 1.96 * sample std / sqrt(n)
};
MeanCi mean_ci95(const std::vector<double>& xs);

// Paired-difference mean and CI of (a - b); requires equal sizes.
MeanCi paired_gap_ci95(const std::vector<double>& a, const std::vector<double>& b);

struct CellModeStats {
  std::vector<std::vector<double>> user_rates;  // [user][trial]
  std::vector<double> sum_rates;                // [trial]
  long pinv_fallbacks = 0;
  long degenerate_streams = 0;
};

struct SweepRow {
  std::string sweep_var;
  double value = 0;
  std::string attack;
  std::string receiver;
  std::string user;  // "1".."K" or "sum"
  double rate_mean = 0;
  double rate_ci95 = 0;
  int trials = 0;
};

struct CampaignResult {
  SystemConfig config;
  SweepSpec sweep;
  std::vector<ModeSpec> modes;
  std::vector<std::vector<CellModeStats>> stats;  // [cell][mode]
  std::vector<SweepRow> rows;
  OptimizationTrace trace;  // first optimized attack of trial 0, cell 0
  bool has_trace = false;
};

struct CampaignOptions {
  int threads = 1;
  bool capture_trace = false;
};

// Runs `config.trials` trials per grid cell and mode with common random
// numbers: the same trial index sees identical channel draws in every cell
// and mode. Trials are independent work items on a bounded worker pool;
// results land in slots keyed by trial index, so output is schedule-free.
CampaignResult run_campaign(const SystemConfig& config, const SweepSpec& sweep,
                            const std::vector<ModeSpec>& modes,
                            const CampaignOptions& opts = {});

void write_results_csv(const CampaignResult& result, const std::string& path);
void write_manifest(const CampaignResult& result, const CampaignOptions& opts,
                    const std::string& path);
void write_trace_csv(const OptimizationTrace& trace, const std::string& path);

// results.csv + manifest.json under out_dir (created if missing).
void emit_results(const CampaignResult& result, const CampaignOptions& opts,
                  const std::string& out_dir);

}  // namespace risjam
