#include "risjam/harness.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "risjam/linalg.hpp"
#include "risjam/version.hpp"

namespace risjam {

using nlohmann::json;

AttackSpec AttackSpec::none() { return AttackSpec{AttackKind::None, {}, "safe"}; }
AttackSpec AttackSpec::disco() { return AttackSpec{AttackKind::Disco, {}, "disco"}; }
AttackSpec AttackSpec::optimized() { return AttackSpec{AttackKind::Optimized, {}, "opt"}; }

AttackSpec AttackSpec::targeted(int user, int k_total) {
  if (user < 1 || user > k_total)
    throw ValidationError({"targeted attack user index out of range"});
  std::vector<double> nu(static_cast<std::size_t>(k_total),
                         k_total > 1 ? 0.02 / static_cast<double>(k_total - 1) : 0.02);
  nu[static_cast<std::size_t>(user - 1)] = 0.98;
  return AttackSpec{AttackKind::Optimized, std::move(nu), "opt-u" + std::to_string(user)};
}

std::string ModeSpec::label() const {
  return attack.label + "+" + to_string(receiver);
}

std::vector<ModeSpec> parse_modes(const std::string& list, int k_total) {
  std::vector<ModeSpec> modes;
  std::stringstream ss(list);
  std::string token;
  while (std::getline(ss, token, ',')) {
    if (token.empty()) continue;
    if (token == "safe") {
      modes.push_back({AttackSpec::none(), ReceiverMode::Unmitigated});
      continue;
    }
    const auto plus = token.find('+');
    if (plus == std::string::npos)
      throw ValidationError({"mode token '" + token + "' is not '<attack>+<receiver>'"});
    const std::string atk = token.substr(0, plus);
    const std::string rcv = token.substr(plus + 1);
    ModeSpec m;
    if (atk == "none" || atk == "safe") {
      m.attack = AttackSpec::none();
    } else if (atk == "disco") {
      m.attack = AttackSpec::disco();
    } else if (atk == "opt") {
      m.attack = AttackSpec::optimized();
    } else if (atk.rfind("opt-u", 0) == 0) {
      int user = 0;
      try {
        user = std::stoi(atk.substr(5));
      } catch (...) {
        throw ValidationError({"bad targeted-attack token '" + atk + "'"});
      }
      m.attack = AttackSpec::targeted(user, k_total);
    } else {
      throw ValidationError({"unknown attack '" + atk + "'"});
    }
    try {
      m.receiver = receiver_mode_from_string(rcv);
    } catch (const ParseError& e) {
      throw ValidationError({e.what()});
    }
    modes.push_back(std::move(m));
  }
  return modes;
}

double user_rate(const std::vector<double>& sinrs) {
  double rate = 0.0;
  for (double g : sinrs) rate += std::log1p(g) / M_LN2;
  return rate;
}

TrialContext make_trial_context(const SystemConfig& config, std::uint64_t trial) {
  TrialContext ctx;
  ctx.gains = link_gains(config);
  auto rng = make_stream(config.seed, trial, Stream::Channel);

  for (int k = 0; k < config.K; ++k)
    ctx.covs.push_back(synth_covariance(config, ctx.gains, k, rng));

  ctx.chan.h.resize(static_cast<std::size_t>(config.K));
  ctx.chan.h_bar.resize(static_cast<std::size_t>(config.K));
  for (int k = 0; k < config.K; ++k) {
    auto [h, h_bar] = sample_direct(ctx.covs[static_cast<std::size_t>(k)], config.N, rng);
    ctx.chan.h[static_cast<std::size_t>(k)] = std::move(h);
    ctx.chan.h_bar[static_cast<std::size_t>(k)] = std::move(h_bar);
  }
  sample_ris_links(config, ctx.gains, rng, ctx.chan.g, ctx.chan.f);

  ctx.prec = build_precoders(ctx.covs, ctx.chan.h, config.S);
  ctx.p_tilde = concat_precoders(ctx.prec.p);
  for (int k = 0; k < config.K; ++k)
    ctx.cascade_ops.push_back(
        build_cascade_operator(ctx.chan.g, ctx.chan.f[static_cast<std::size_t>(k)]));
  return ctx;
}

RisProfile attack_profile(const SystemConfig& config, const TrialContext& ctx,
                          const AttackSpec& attack, std::uint64_t trial,
                          OptimizationTrace* trace) {
  switch (attack.kind) {
    case AttackKind::None:
      return RisProfile::zero(config.L);
    case AttackKind::Disco: {
      auto rng = make_stream(config.seed, trial, Stream::Disco);
      return disco_profile(config.L, rng);
    }
    case AttackKind::Optimized: {
      const std::vector<double>& nu = attack.nu.empty() ? config.nu : attack.nu;
      StackedOperator op = stack_weighted(ctx.cascade_ops, nu);
      OptimizeOptions opts;
      opts.iterations = config.T;
      opts.beta = config.beta;
      return optimize_phases(op, opts, initial_phases(config.L, PhaseInit::AllOnes), trace);
    }
  }
  return RisProfile::zero(config.L);
}

TrialRecord evaluate_trial(const SystemConfig& config, const TrialContext& ctx,
                           const RisProfile& profile, const std::string& attack_label,
                           ReceiverMode receiver, std::uint64_t trial) {
  TrialRecord rec;
  rec.trial = static_cast<int>(trial);
  rec.attack = attack_label;
  rec.receiver = to_string(receiver);
  rec.degenerate_streams = ctx.prec.degenerate_streams;

  std::vector<CMat> z(static_cast<std::size_t>(config.K));
  for (int k = 0; k < config.K; ++k)
    z[static_cast<std::size_t>(k)] =
        cascade_channel(ctx.chan.f[static_cast<std::size_t>(k)], profile.theta, ctx.chan.g);

  std::vector<CMat> z_hat(static_cast<std::size_t>(config.K));
  auto csi_rng = make_stream(config.seed, trial, Stream::Csi);
  for (int k = 0; k < config.K; ++k)
    z_hat[static_cast<std::size_t>(k)] = corrupt_csi(z[static_cast<std::size_t>(k)], config.tau,
                                                     config.csi_error_mode, csi_rng);

  const double p_lin = config.p_lin();
  const double sigma2 = config.sigma2_lin();
  for (int k = 0; k < config.K; ++k) {
    const auto uk = static_cast<std::size_t>(k);
    CombinerPair comb;
    switch (receiver) {
      case ReceiverMode::Unmitigated:
        comb = unmitigated_combiner(ctx.chan.h[uk], ctx.prec.p[uk]);
        break;
      case ReceiverMode::Fmit:
        comb = fmit_combiner(z_hat[uk], ctx.p_tilde, ctx.chan.h[uk], ctx.prec.p[uk]);
        break;
      case ReceiverMode::Hmit:
        comb = hmit_combiner(z_hat[uk], concat_precoders(ctx.prec.p, k), ctx.chan.h[uk],
                             ctx.prec.p[uk]);
        break;
    }
    if (comb.pinv_fallback) ++rec.pinv_fallbacks;
    auto breakdown =
        sinr_per_symbol(comb, ctx.chan.h[uk], z[uk], ctx.prec.p, k, p_lin, config.alpha, sigma2);
    std::vector<double> gammas;
    gammas.reserve(breakdown.size());
    for (const auto& b : breakdown) gammas.push_back(b.sinr);
    rec.user_rate.push_back(user_rate(gammas));
    rec.sinr.push_back(std::move(breakdown));
  }
  for (double r : rec.user_rate) rec.system_rate += r;
  return rec;
}

TrialRecord run_trial(const SystemConfig& config, const AttackSpec& attack,
                      ReceiverMode receiver, std::uint64_t trial) {
  TrialContext ctx = make_trial_context(config, trial);
  RisProfile profile = attack_profile(config, ctx, attack, trial);
  return evaluate_trial(config, ctx, profile, attack.label, receiver, trial);
}

SweepSpec parse_sweep(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos)
    throw ValidationError({"sweep must be '<var>=<start:stop:step>' or '<var>=<v1,v2,...>'"});
  SweepSpec spec;
  spec.var = text.substr(0, eq);
  if (spec.var != "P_dBm" && spec.var != "ris_x" && spec.var != "tau" && spec.var != "nu_target")
    throw ValidationError({"unsupported sweep variable '" + spec.var + "'"});
  const std::string body = text.substr(eq + 1);
  spec.grid.clear();
  try {
    if (body.find(':') != std::string::npos) {
      std::stringstream ss(body);
      std::string a, b, c;
      if (!std::getline(ss, a, ':') || !std::getline(ss, b, ':') || !std::getline(ss, c))
        throw ValidationError({"range sweep needs start:stop:step"});
      const double start = std::stod(a), stop = std::stod(b), step = std::stod(c);
      if (!(step > 0.0)) throw ValidationError({"sweep step must be positive"});
      for (double v = start; v <= stop + 1e-9 * std::abs(step); v += step) spec.grid.push_back(v);
    } else {
      std::stringstream ss(body);
      std::string item;
      while (std::getline(ss, item, ',')) spec.grid.push_back(std::stod(item));
    }
  } catch (const ValidationError&) {
    throw;
  } catch (...) {
    throw ValidationError({"cannot parse sweep grid '" + body + "'"});
  }
  if (spec.grid.empty()) throw ValidationError({"sweep grid is empty"});
  return spec;
}

SystemConfig apply_sweep_value(const SystemConfig& base, const std::string& var, double value) {
  SystemConfig c = base;
  if (var == "none") {
    return c;
  } else if (var == "P_dBm") {
    c.P_dBm = value;
  } else if (var == "tau") {
    c.tau = value;
  } else if (var == "ris_x") {
    c.ris_pos.x = value;
  } else if (var == "nu_target") {
    const int target = static_cast<int>(std::lround(value));
    if (target == 0) {
      c.nu.assign(static_cast<std::size_t>(c.K), 1.0 / static_cast<double>(c.K));
    } else {
      c.nu = AttackSpec::targeted(target, c.K).nu;
    }
  } else {
    throw ValidationError({"unsupported sweep variable '" + var + "'"});
  }
  validate(c);
  return c;
}

double pairwise_sum(const std::vector<double>& xs) {
  return pairwise_sum(xs.data(), xs.size());
}

MeanCi mean_ci95(const std::vector<double>& xs) {
  MeanCi out;
  const std::size_t n = xs.size();
  if (n == 0) return out;
  out.mean = pairwise_sum(xs.data(), n) / static_cast<double>(n);
  if (n < 2) return out;
  std::vector<double> sq(n);
  for (std::size_t i = 0; i < n; ++i) sq[i] = (xs[i] - out.mean) * (xs[i] - out.mean);
  const double var = pairwise_sum(sq.data(), n) / static_cast<double>(n - 1);
  out.ci95 = 1.96 * std::sqrt(var / static_cast<double>(n));
  return out;
}

MeanCi paired_gap_ci95(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size())
    throw DimensionError("paired_gap_ci95: samples must be paired");
  std::vector<double> d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
  return mean_ci95(d);
}

namespace {

// Fields that determine the channel/precoder draw of a trial. Cells that
// share this signature share contexts (and optimized profiles per weight
// vector), which is what makes P/tau/weight sweeps cheap.
std::string channel_signature(const SystemConfig& c) {
  json j;
  j["M"] = c.M;
  j["N"] = c.N;
  j["K"] = c.K;
  j["L"] = c.L;
  j["S"] = c.S;
  j["r"] = c.r;
  j["eta"] = c.eta;
  j["bs"] = {c.bs_pos.x, c.bs_pos.y};
  j["ris"] = {c.ris_pos.x, c.ris_pos.y};
  json users = json::array();
  for (const auto& u : c.user_pos) users.push_back({u.x, u.y});
  j["users"] = users;
  j["rho"] = {c.rho_bs, c.rho_ris, c.rho_ue};
  return j.dump();
}

std::string weights_key(const std::vector<double>& nu, int t, double beta) {
  std::string key = std::to_string(t) + "|" + std::to_string(beta);
  char buf[32];
  for (double w : nu) {
    std::snprintf(buf, sizeof(buf), "|%.17g", w);
    key += buf;
  }
  return key;
}

void parallel_for(int n, int threads, const std::function<void(int)>& fn) {
  if (threads <= 1 || n <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= n || failed.load()) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        failed.store(true);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  const int count = std::min(threads, n);
  pool.reserve(static_cast<std::size_t>(count));
  for (int t = 0; t < count; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

std::string format_g12(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

}  // namespace

CampaignResult run_campaign(const SystemConfig& config, const SweepSpec& sweep,
                            const std::vector<ModeSpec>& modes, const CampaignOptions& opts) {
  CampaignResult result;
  result.config = config;
  result.sweep = sweep;
  result.modes = modes;

  std::vector<SystemConfig> cells;
  for (double v : sweep.grid) cells.push_back(apply_sweep_value(config, sweep.var, v));

  const int n_cells = static_cast<int>(cells.size());
  const int n_modes = static_cast<int>(modes.size());
  const int n_trials = config.trials;
  const int k_users = config.K;

  result.stats.assign(static_cast<std::size_t>(n_cells),
                      std::vector<CellModeStats>(static_cast<std::size_t>(n_modes)));
  // Per-trial slots so any execution schedule produces identical output.
  std::vector<std::vector<std::vector<int>>> fallback_slots(
      static_cast<std::size_t>(n_cells),
      std::vector<std::vector<int>>(static_cast<std::size_t>(n_modes),
                                    std::vector<int>(static_cast<std::size_t>(n_trials), 0)));
  auto degenerate_slots = fallback_slots;
  for (auto& cell : result.stats)
    for (auto& cm : cell) {
      cm.user_rates.assign(static_cast<std::size_t>(k_users),
                           std::vector<double>(static_cast<std::size_t>(n_trials), 0.0));
      cm.sum_rates.assign(static_cast<std::size_t>(n_trials), 0.0);
    }

  const int wanted_modes = n_modes;
  parallel_for(n_trials, opts.threads, [&](int trial) {
    std::map<std::string, TrialContext> contexts;
    std::map<std::string, RisProfile> profiles;
    for (int ci = 0; ci < n_cells; ++ci) {
      const SystemConfig& cc = cells[static_cast<std::size_t>(ci)];
      const std::string csig = channel_signature(cc);
      auto ctx_it = contexts.find(csig);
      if (ctx_it == contexts.end())
        ctx_it = contexts.emplace(csig, make_trial_context(cc, static_cast<std::uint64_t>(trial)))
                     .first;
      const TrialContext& ctx = ctx_it->second;

      for (int mi = 0; mi < wanted_modes; ++mi) {
        const ModeSpec& mode = modes[static_cast<std::size_t>(mi)];
        RisProfile profile;
        if (mode.attack.kind == AttackKind::Optimized) {
          const std::vector<double>& nu = mode.attack.nu.empty() ? cc.nu : mode.attack.nu;
          const std::string key = csig + "#" + weights_key(nu, cc.T, cc.beta);
          auto it = profiles.find(key);
          if (it == profiles.end()) {
            AttackSpec resolved = mode.attack;
            resolved.nu = nu;
            OptimizationTrace* trace_out = nullptr;
            if (opts.capture_trace && trial == 0 && !result.has_trace) {
              trace_out = &result.trace;
              result.has_trace = true;
            }
            it = profiles
                     .emplace(key, attack_profile(cc, ctx, resolved,
                                                  static_cast<std::uint64_t>(trial), trace_out))
                     .first;
          }
          profile = it->second;
        } else {
          profile = attack_profile(cc, ctx, mode.attack, static_cast<std::uint64_t>(trial));
        }

        TrialRecord rec = evaluate_trial(cc, ctx, profile, mode.attack.label, mode.receiver,
                                         static_cast<std::uint64_t>(trial));
        CellModeStats& cm = result.stats[static_cast<std::size_t>(ci)][static_cast<std::size_t>(mi)];
        for (int k = 0; k < k_users; ++k)
          cm.user_rates[static_cast<std::size_t>(k)][static_cast<std::size_t>(trial)] =
              rec.user_rate[static_cast<std::size_t>(k)];
        cm.sum_rates[static_cast<std::size_t>(trial)] = rec.system_rate;
        fallback_slots[static_cast<std::size_t>(ci)][static_cast<std::size_t>(mi)]
                      [static_cast<std::size_t>(trial)] = rec.pinv_fallbacks;
        degenerate_slots[static_cast<std::size_t>(ci)][static_cast<std::size_t>(mi)]
                        [static_cast<std::size_t>(trial)] = rec.degenerate_streams;
      }
    }
  });

  for (int ci = 0; ci < n_cells; ++ci) {
    for (int mi = 0; mi < n_modes; ++mi) {
      CellModeStats& cm = result.stats[static_cast<std::size_t>(ci)][static_cast<std::size_t>(mi)];
      for (int v : fallback_slots[static_cast<std::size_t>(ci)][static_cast<std::size_t>(mi)])
        cm.pinv_fallbacks += v;
      for (int v : degenerate_slots[static_cast<std::size_t>(ci)][static_cast<std::size_t>(mi)])
        cm.degenerate_streams += v;

      const ModeSpec& mode = modes[static_cast<std::size_t>(mi)];
      for (int k = 0; k <= k_users; ++k) {
        const bool is_sum = k == k_users;
        const MeanCi mc =
            mean_ci95(is_sum ? cm.sum_rates : cm.user_rates[static_cast<std::size_t>(k)]);
        SweepRow row;
        row.sweep_var = sweep.var;
        row.value = sweep.grid[static_cast<std::size_t>(ci)];
        row.attack = mode.attack.label;
        row.receiver = to_string(mode.receiver);
        row.user = is_sum ? "sum" : std::to_string(k + 1);
        row.rate_mean = mc.mean;
        row.rate_ci95 = mc.ci95;
        row.trials = n_trials;
        result.rows.push_back(std::move(row));
      }
    }
  }
  return result;
}

void write_results_csv(const CampaignResult& result, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write results CSV '" + path + "'");
  out << "sweep_var,value,attack,receiver,user,rate_mean,rate_ci95,trials\n";
  for (const auto& row : result.rows) {
    out << row.sweep_var << ',' << format_g12(row.value) << ',' << row.attack << ','
        << row.receiver << ',' << row.user << ',' << format_g12(row.rate_mean) << ','
        << format_g12(row.rate_ci95) << ',' << row.trials << "\n";
  }
  if (!out) throw IoError("failed writing results CSV '" + path + "'");
}

void write_manifest(const CampaignResult& result, const CampaignOptions& opts,
                    const std::string& path) {
  json j;
  j["tool"] = "simulate";
  j["version"] = kVersion;
  j["config"] = json::parse(config_to_json_text(result.config));
  j["config_digest"] = config_digest(result.config);
  j["sweep"] = {{"var", result.sweep.var}, {"grid", result.sweep.grid}};
  json modes = json::array();
  for (const auto& m : result.modes) modes.push_back(m.label());
  j["modes"] = modes;
  j["threads"] = opts.threads;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write manifest '" + path + "'");
  out << j.dump(2) << "\n";
  if (!out) throw IoError("failed writing manifest '" + path + "'");
}

void write_trace_csv(const OptimizationTrace& trace, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write trace CSV '" + path + "'");
  out << "iteration,objective\n";
  for (std::size_t i = 0; i < trace.objective.size(); ++i)
    out << (i + 1) << ',' << format_g12(trace.objective[i]) << "\n";
  if (!out) throw IoError("failed writing trace CSV '" + path + "'");
}

void emit_results(const CampaignResult& result, const CampaignOptions& opts,
                  const std::string& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create output directory '" + out_dir + "': " + ec.message());
  write_results_csv(result, (std::filesystem::path(out_dir) / "results.csv").string());
  write_manifest(result, opts, (std::filesystem::path(out_dir) / "manifest.json").string());
}

}  // namespace risjam
