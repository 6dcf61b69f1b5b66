#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "risjam/harness.hpp"
#include "risjam/linalg.hpp"
#include "risjam/version.hpp"

namespace py = pybind11;
using namespace risjam;

namespace {

AttackSpec attack_from_label(const std::string& label, int k_total) {
  const std::string token = (label == "safe" || label == "none") ? "safe" : label + "+unmit";
  return parse_modes(token, k_total).at(0).attack;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Link-level simulator of malicious-RIS jamming against downlink multi-user "
            "massive MIMO: SDMA precoding, projected-gradient RIS phase optimization, "
            "F-MIT/H-MIT mitigation receivers, and a Monte Carlo sweep harness.";
  m.attr("__version__") = kVersion;

  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<IoError>(m, "IoError", PyExc_OSError);

  py::class_<Vec2>(m, "Vec2")
      .def(py::init<double, double>(), py::arg("x"), py::arg("y"))
      .def(py::init([](std::pair<double, double> p) { return Vec2{p.first, p.second}; }))
      .def_readwrite("x", &Vec2::x)
      .def_readwrite("y", &Vec2::y)
      .def("__repr__", [](const Vec2& v) {
        return "Vec2(" + std::to_string(v.x) + ", " + std::to_string(v.y) + ")";
      });
  py::implicitly_convertible<py::tuple, Vec2>();

  py::enum_<CsiErrorMode>(m, "CsiErrorMode")
      .value("literal", CsiErrorMode::Literal)
      .value("scaled", CsiErrorMode::Scaled);

  py::class_<SystemConfig>(m, "SystemConfig")
      .def(py::init<>())
      .def_readwrite("M", &SystemConfig::M)
      .def_readwrite("N", &SystemConfig::N)
      .def_readwrite("K", &SystemConfig::K)
      .def_readwrite("L", &SystemConfig::L)
      .def_readwrite("S", &SystemConfig::S)
      .def_readwrite("r", &SystemConfig::r)
      .def_readwrite("P_dBm", &SystemConfig::P_dBm)
      .def_readwrite("sigma2_dBm", &SystemConfig::sigma2_dBm)
      .def_readwrite("eta", &SystemConfig::eta)
      .def_readwrite("bs_pos", &SystemConfig::bs_pos)
      .def_readwrite("ris_pos", &SystemConfig::ris_pos)
      .def_readwrite("user_pos", &SystemConfig::user_pos)
      .def_readwrite("nu", &SystemConfig::nu)
      .def_readwrite("alpha", &SystemConfig::alpha)
      .def_readwrite("T", &SystemConfig::T)
      .def_readwrite("beta", &SystemConfig::beta)
      .def_readwrite("tau", &SystemConfig::tau)
      .def_readwrite("csi_error_mode", &SystemConfig::csi_error_mode)
      .def_readwrite("rho_bs", &SystemConfig::rho_bs)
      .def_readwrite("rho_ris", &SystemConfig::rho_ris)
      .def_readwrite("rho_ue", &SystemConfig::rho_ue)
      .def_readwrite("seed", &SystemConfig::seed)
      .def_readwrite("trials", &SystemConfig::trials)
      .def_readonly("fmit_exact", &SystemConfig::fmit_exact)
      .def_readonly("hmit_exact", &SystemConfig::hmit_exact)
      .def("p_lin", &SystemConfig::p_lin)
      .def("sigma2_lin", &SystemConfig::sigma2_lin);

  m.def("default_config", &default_config);
  m.def("validate", &validate, py::arg("config"));
  m.def("load_scenario", &load_scenario, py::arg("path"));
  m.def("save_scenario", &save_scenario, py::arg("config"), py::arg("path"));
  m.def("config_from_json", &config_from_json_text, py::arg("text"));
  m.def("config_to_json", &config_to_json_text, py::arg("config"), py::arg("pretty") = false);
  m.def("config_digest", &config_digest, py::arg("config"));

  m.def("path_loss", &path_loss, py::arg("distance_m"), py::arg("eta"));
  m.def("dbm_to_linear", &dbm_to_linear, py::arg("dbm"));

  py::class_<LinkGains>(m, "LinkGains")
      .def_readonly("d_bs_ris", &LinkGains::d_bs_ris)
      .def_readonly("d_bs_user", &LinkGains::d_bs_user)
      .def_readonly("d_ris_user", &LinkGains::d_ris_user)
      .def_readonly("beta_br", &LinkGains::beta_br)
      .def_readonly("beta_bu", &LinkGains::beta_bu)
      .def_readonly("beta_ru", &LinkGains::beta_ru);
  m.def("link_gains", &link_gains, py::arg("config"));

  m.def("khatri_rao_cols", &khatri_rao_cols, py::arg("a"), py::arg("b"),
        "Column-wise Khatri-Rao product: column l is kron(a_l, b_l)");
  m.def("build_cascade_operator", &build_cascade_operator, py::arg("g"), py::arg("f_k"));
  m.def("cascade_channel", &cascade_channel, py::arg("f_k"), py::arg("theta"), py::arg("g"));
  m.def(
      "corrupt_csi",
      [](const CMat& z, double tau, const std::string& mode, std::uint64_t seed,
         std::uint64_t trial) {
        auto rng = make_stream(seed, trial, Stream::Csi);
        return corrupt_csi(z, tau, csi_error_mode_from_string(mode), rng);
      },
      py::arg("z"), py::arg("tau"), py::arg("mode") = "literal", py::arg("seed") = 1,
      py::arg("trial") = 0);

  py::class_<StackedOperator>(m, "StackedOperator")
      .def_readonly("s_bar", &StackedOperator::s_bar)
      .def_readonly("gram", &StackedOperator::gram)
      .def_readonly("lambda_star", &StackedOperator::lambda_star);
  m.def("stack_weighted", &stack_weighted, py::arg("s_list"), py::arg("nu"));
  m.def("attack_objective", &attack_objective, py::arg("s_bar"), py::arg("theta"));

  m.def(
      "optimize_phases",
      [](const StackedOperator& op, py::object theta0, int iterations, double beta,
         bool early_stop) {
        OptimizeOptions opts;
        opts.iterations = iterations;
        opts.beta = beta;
        opts.early_stop = early_stop;
        CVec start = theta0.is_none()
                         ? initial_phases(static_cast<int>(op.gram.rows()), PhaseInit::AllOnes)
                         : theta0.cast<CVec>();
        OptimizationTrace trace;
        RisProfile prof = optimize_phases(op, opts, start, &trace);
        return py::make_tuple(prof.theta, trace.objective, trace.alpha);
      },
      py::arg("op"), py::arg("theta0") = py::none(), py::arg("iterations") = 3000,
      py::arg("beta") = 0.99, py::arg("early_stop") = false,
      "Projected-gradient phase optimization; returns (theta, objective_trace, alpha)");

  m.def(
      "disco_profile",
      [](int l, std::uint64_t seed, std::uint64_t trial) {
        auto rng = make_stream(seed, trial, Stream::Disco);
        return disco_profile(l, rng).theta;
      },
      py::arg("l"), py::arg("seed") = 1, py::arg("trial") = 0);

  py::class_<SinrBreakdown>(m, "SinrBreakdown")
      .def_readonly("signal", &SinrBreakdown::signal)
      .def_readonly("inter_symbol", &SinrBreakdown::inter_symbol)
      .def_readonly("ris", &SinrBreakdown::ris)
      .def_readonly("noise", &SinrBreakdown::noise)
      .def_readonly("sinr", &SinrBreakdown::sinr);

  py::class_<TrialRecord>(m, "TrialRecord")
      .def_readonly("trial", &TrialRecord::trial)
      .def_readonly("attack", &TrialRecord::attack)
      .def_readonly("receiver", &TrialRecord::receiver)
      .def_readonly("sinr", &TrialRecord::sinr)
      .def_readonly("user_rate", &TrialRecord::user_rate)
      .def_readonly("system_rate", &TrialRecord::system_rate)
      .def_readonly("pinv_fallbacks", &TrialRecord::pinv_fallbacks)
      .def_readonly("degenerate_streams", &TrialRecord::degenerate_streams);

  py::class_<TrialContext>(m, "TrialContext")
      .def_property_readonly("g", [](const TrialContext& c) { return c.chan.g; })
      .def_property_readonly("h", [](const TrialContext& c) { return c.chan.h; })
      .def_property_readonly("f", [](const TrialContext& c) { return c.chan.f; })
      .def_property_readonly("precoders", [](const TrialContext& c) { return c.prec.p; })
      .def_property_readonly("p_tilde", [](const TrialContext& c) { return c.p_tilde; })
      .def_property_readonly("cascade_ops",
                             [](const TrialContext& c) { return c.cascade_ops; });
  m.def("make_trial_context", &make_trial_context, py::arg("config"), py::arg("trial") = 0);

  m.def("user_rate", &user_rate, py::arg("sinrs"));

  m.def(
      "run_trial",
      [](const SystemConfig& config, const std::string& attack, const std::string& receiver,
         std::uint64_t trial) {
        return run_trial(config, attack_from_label(attack, config.K),
                         receiver_mode_from_string(receiver), trial);
      },
      py::arg("config"), py::arg("attack") = "opt", py::arg("receiver") = "unmit",
      py::arg("trial") = 0,
      "One Monte Carlo trial; attack in {safe, disco, opt, opt-u<k>}, receiver in "
      "{unmit, fmit, hmit}");

  m.def(
      "run_campaign",
      [](const SystemConfig& config, const std::string& sweep, const std::string& modes,
         int threads) {
        SweepSpec spec;
        if (!sweep.empty()) spec = parse_sweep(sweep);
        CampaignOptions opts;
        opts.threads = threads;
        CampaignResult result = run_campaign(config, spec, parse_modes(modes, config.K), opts);
        py::list rows;
        for (const auto& row : result.rows) {
          py::dict d;
          d["sweep_var"] = row.sweep_var;
          d["value"] = row.value;
          d["attack"] = row.attack;
          d["receiver"] = row.receiver;
          d["user"] = row.user;
          d["rate_mean"] = row.rate_mean;
          d["rate_ci95"] = row.rate_ci95;
          d["trials"] = row.trials;
          rows.append(d);
        }
        return rows;
      },
      py::arg("config"), py::arg("sweep") = "",
      py::arg("modes") = "safe,disco+unmit,opt+unmit,opt+fmit,opt+hmit", py::arg("threads") = 1,
      "Monte Carlo sweep with common random numbers; returns aggregated rows");
}
