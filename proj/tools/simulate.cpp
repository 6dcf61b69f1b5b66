#include <CLI11.hpp>
#include <cstdio>
#include <exception>
#include <string>

#include "risjam/harness.hpp"
#include "risjam/version.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitIo = 3;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monte Carlo link-level simulator of a malicious-RIS jamming attack on "
               "downlink multi-user massive MIMO"};
  app.set_version_flag("--version", risjam::kVersion);

  std::string scenario_path;
  std::string sweep_text;
  std::string modes_text = "safe,disco+unmit,opt+unmit,opt+fmit,opt+hmit";
  std::string out_dir = "results";
  std::string trace_path;
  std::string csi_mode;
  int trials = 0;
  std::uint64_t seed = 0;
  int threads = 1;

  app.add_option("--scenario", scenario_path, "Scenario file (JSON); defaults when omitted");
  app.add_option("--sweep", sweep_text,
                 "Sweep '<var>=<start:stop:step|v1,v2,...>' with var in "
                 "{P_dBm, ris_x, tau, nu_target}");
  app.add_option("--modes", modes_text,
                 "Comma list of 'safe' or '<attack>+<receiver>' with attack in "
                 "{disco, opt, opt-u<k>} and receiver in {unmit, fmit, hmit}");
  auto* trials_opt = app.add_option("--trials", trials, "Monte Carlo trials per grid cell");
  auto* seed_opt = app.add_option("--seed", seed, "Root RNG seed");
  app.add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--out", out_dir, "Output directory for results.csv and manifest.json");
  app.add_option("--dump-trace", trace_path,
                 "Write the (iteration, objective) trace of the first optimized attack");
  app.add_option("--csi-mode", csi_mode, "CSI error mode: literal or scaled")
      ->check(CLI::IsMember({"literal", "scaled"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  try {
    risjam::SystemConfig config =
        scenario_path.empty() ? risjam::default_config() : risjam::load_scenario(scenario_path);
    if (trials_opt->count() > 0) config.trials = trials;
    if (seed_opt->count() > 0) config.seed = seed;
    if (!csi_mode.empty()) config.csi_error_mode = risjam::csi_error_mode_from_string(csi_mode);
    risjam::validate(config);

    risjam::SweepSpec sweep;
    if (!sweep_text.empty()) sweep = risjam::parse_sweep(sweep_text);
    const std::vector<risjam::ModeSpec> modes = risjam::parse_modes(modes_text, config.K);
    if (modes.empty()) throw risjam::ValidationError({"no modes requested"});

    risjam::CampaignOptions opts;
    opts.threads = threads;
    opts.capture_trace = !trace_path.empty();

    std::fprintf(stderr, "simulate: %zu cell(s) x %zu mode(s) x %d trial(s), seed %llu\n",
                 sweep.grid.size(), modes.size(), config.trials,
                 static_cast<unsigned long long>(config.seed));

    risjam::CampaignResult result = risjam::run_campaign(config, sweep, modes, opts);
    risjam::emit_results(result, opts, out_dir);
    if (!trace_path.empty()) {
      if (!result.has_trace)
        std::fprintf(stderr, "simulate: no optimized attack ran; trace not written\n");
      else
        risjam::write_trace_csv(result.trace, trace_path);
    }
    std::fprintf(stderr, "simulate: wrote %s/results.csv and %s/manifest.json\n",
                 out_dir.c_str(), out_dir.c_str());
    return kExitOk;
  } catch (const risjam::IoError& e) {
    std::fprintf(stderr, "simulate: %s\n", e.what());
    return kExitIo;
  } catch (const risjam::ValidationError& e) {
    std::fprintf(stderr, "simulate: %s\n", e.what());
    return kExitValidation;
  } catch (const risjam::ParseError& e) {
    std::fprintf(stderr, "simulate: %s\n", e.what());
    return kExitValidation;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "simulate: %s\n", e.what());
    return kExitValidation;
  }
}
