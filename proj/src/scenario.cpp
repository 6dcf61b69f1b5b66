#include "risjam/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace risjam {

using nlohmann::json;

double distance(const Vec2& a, const Vec2& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

std::string to_string(CsiErrorMode mode) {
  return mode == CsiErrorMode::Literal ? "literal" : "scaled";
}

CsiErrorMode csi_error_mode_from_string(const std::string& s) {
  if (s == "literal") return CsiErrorMode::Literal;
  if (s == "scaled") return CsiErrorMode::Scaled;
  throw ParseError("csi_error_mode must be 'literal' or 'scaled', got '" + s + "'");
}

double path_loss(double distance_m, double eta) {
  if (distance_m <= 0.0)
    throw std::domain_error("path_loss: distance must be positive");
  return std::pow(distance_m, -eta);
}

double dbm_to_linear(double dbm) {
  return std::pow(10.0, dbm / 10.0);
}

double SystemConfig::p_lin() const { return dbm_to_linear(P_dBm); }
double SystemConfig::sigma2_lin() const { return dbm_to_linear(sigma2_dBm); }

namespace {

const std::vector<Vec2> kReferenceUsers{{20.0, 0.0}, {20.0, 40.0}, {50.0, 20.0}};

void fill_defaults(SystemConfig& c) {
  if (c.r.empty()) c.r.assign(static_cast<std::size_t>(std::max(c.K, 0)), 12);
  if (c.nu.empty() && c.K > 0)
    c.nu.assign(static_cast<std::size_t>(c.K), 1.0 / static_cast<double>(c.K));
  if (c.alpha.empty() && c.K > 0 && c.S > 0)
    c.alpha.assign(static_cast<std::size_t>(c.K),
                   std::vector<double>(static_cast<std::size_t>(c.S), 1.0));
  if (c.user_pos.empty() && c.K == 3) c.user_pos = kReferenceUsers;
}

}  // namespace

void validate(SystemConfig& c) {
  fill_defaults(c);
  std::vector<std::string> bad;
  auto fail = [&bad](const std::string& msg) { bad.push_back(msg); };

  if (c.M < 1) fail("M must be >= 1");
  if (c.N < 1) fail("N must be >= 1");
  if (c.K < 1) fail("K must be >= 1");
  if (c.L < 1) fail("L must be >= 1");
  if (c.S < 1) fail("S must be >= 1");
  if (c.M < c.N) fail("M must be >= N");
  if (c.S > c.N) fail("S must be <= N (the combiner needs N >= W >= S)");

  if (static_cast<int>(c.r.size()) != c.K) {
    fail("r must list one rank per user (length K)");
  } else {
    for (int k = 0; k < c.K; ++k) {
      if (c.r[k] < 1 || c.r[k] > c.M)
        fail("r[" + std::to_string(k + 1) + "] must be in [1, M]");
    }
    long r_sum = 0;
    for (int rk : c.r) r_sum += rk;
    for (int k = 0; k < c.K; ++k) {
      const long slack = static_cast<long>(c.M) - (r_sum - c.r[k]);
      if (c.S > slack)
        fail("S must satisfy S <= M - sum_{k' != k} r_k' for every k (user " +
             std::to_string(k + 1) + ": " + std::to_string(c.M) + " - " +
             std::to_string(r_sum - c.r[k]) + " = " + std::to_string(slack) + " < " +
             std::to_string(c.S) + ")");
    }
    if (c.S > *std::min_element(c.r.begin(), c.r.end()))
      fail("S must be <= min_k r_k");
  }

  if (!(c.beta > 0.0 && c.beta < 1.0)) fail("beta out of (0,1)");
  if (!(c.tau >= 0.0 && c.tau <= 1.0)) fail("tau out of [0,1]");
  if (!(c.eta > 0.0)) fail("eta must be > 0");
  if (c.T < 1) fail("T must be >= 1");
  if (c.trials < 1) fail("trials must be >= 1");

  if (static_cast<int>(c.nu.size()) != c.K) {
    fail("nu must list one weight per user (length K)");
  } else {
    for (int k = 0; k < c.K; ++k)
      if (!(c.nu[k] > 0.0)) fail("nu[" + std::to_string(k + 1) + "] must be > 0");
  }

  if (static_cast<int>(c.alpha.size()) != c.K) {
    fail("alpha must have K rows");
  } else {
    for (int k = 0; k < c.K; ++k) {
      if (static_cast<int>(c.alpha[k].size()) != c.S) {
        fail("alpha[" + std::to_string(k + 1) + "] must have S entries");
        continue;
      }
      for (int s = 0; s < c.S; ++s)
        if (!(c.alpha[k][s] >= 0.0))
          fail("alpha[" + std::to_string(k + 1) + "][" + std::to_string(s + 1) +
               "] must be >= 0");
    }
  }

  for (double rho : {c.rho_bs, c.rho_ris, c.rho_ue})
    if (!(rho >= 0.0 && rho < 1.0)) {
      fail("spatial correlation coefficients must be in [0,1)");
      break;
    }

  if (static_cast<int>(c.user_pos.size()) != c.K) {
    fail("user_pos must list one coordinate per user (length K)");
  } else {
    // The bare power law is invalid in the near field; keep gains <= 1.
    if (distance(c.bs_pos, c.ris_pos) < 1.0) fail("BS-RIS distance must be >= 1 m");
    for (int k = 0; k < c.K; ++k) {
      if (distance(c.bs_pos, c.user_pos[k]) < 1.0)
        fail("BS-user " + std::to_string(k + 1) + " distance must be >= 1 m");
      if (distance(c.ris_pos, c.user_pos[k]) < 1.0)
        fail("RIS-user " + std::to_string(k + 1) + " distance must be >= 1 m");
    }
  }

  if (!bad.empty()) throw ValidationError(std::move(bad));

  c.fmit_exact = c.N > c.K * c.S;
  c.hmit_exact = c.N > (c.K - 1) * c.S;
}

SystemConfig default_config() {
  SystemConfig c;
  validate(c);
  return c;
}

namespace {

Vec2 vec2_from_json(const json& j, const std::string& key) {
  if (!j.is_array() || j.size() != 2)
    throw ParseError("'" + key + "' must be a [x, y] pair");
  return Vec2{j.at(0).get<double>(), j.at(1).get<double>()};
}

const std::set<std::string> kKnownKeys{
    "M",      "N",     "K",        "L",       "S",        "r",
    "P_dBm",  "sigma2_dBm", "eta", "bs_pos",  "ris_pos",  "user_pos",
    "nu",     "alpha", "T",        "beta",    "tau",      "csi_error_mode",
    "rho_bs", "rho_ris", "rho_ue", "seed",    "trials"};

SystemConfig config_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("scenario must be a JSON object");
  for (const auto& item : j.items())
    if (!kKnownKeys.count(item.key()))
      throw ParseError("unknown scenario key '" + item.key() + "'");

  SystemConfig c;
  try {
    if (j.contains("M")) c.M = j.at("M").get<int>();
    if (j.contains("N")) c.N = j.at("N").get<int>();
    if (j.contains("K")) c.K = j.at("K").get<int>();
    if (j.contains("L")) c.L = j.at("L").get<int>();
    if (j.contains("S")) c.S = j.at("S").get<int>();
    if (j.contains("r")) {
      const auto& r = j.at("r");
      if (r.is_number_integer())
        c.r.assign(static_cast<std::size_t>(std::max(c.K, 0)), r.get<int>());
      else
        c.r = r.get<std::vector<int>>();
    }
    if (j.contains("P_dBm")) c.P_dBm = j.at("P_dBm").get<double>();
    if (j.contains("sigma2_dBm")) c.sigma2_dBm = j.at("sigma2_dBm").get<double>();
    if (j.contains("eta")) c.eta = j.at("eta").get<double>();
    if (j.contains("bs_pos")) c.bs_pos = vec2_from_json(j.at("bs_pos"), "bs_pos");
    if (j.contains("ris_pos")) c.ris_pos = vec2_from_json(j.at("ris_pos"), "ris_pos");
    if (j.contains("user_pos")) {
      c.user_pos.clear();
      for (const auto& u : j.at("user_pos")) c.user_pos.push_back(vec2_from_json(u, "user_pos"));
    }
    if (j.contains("nu")) c.nu = j.at("nu").get<std::vector<double>>();
    if (j.contains("alpha")) {
      const auto& a = j.at("alpha");
      if (a.is_number()) {
        c.alpha.assign(static_cast<std::size_t>(std::max(c.K, 0)),
                       std::vector<double>(static_cast<std::size_t>(std::max(c.S, 0)),
                                           a.get<double>()));
      } else if (a.is_array() && !a.empty() && a.at(0).is_number()) {
        const auto row = a.get<std::vector<double>>();
        c.alpha.assign(static_cast<std::size_t>(std::max(c.K, 0)), row);
      } else {
        c.alpha = a.get<std::vector<std::vector<double>>>();
      }
    }
    if (j.contains("T")) c.T = j.at("T").get<int>();
    if (j.contains("beta")) c.beta = j.at("beta").get<double>();
    if (j.contains("tau")) c.tau = j.at("tau").get<double>();
    if (j.contains("csi_error_mode"))
      c.csi_error_mode = csi_error_mode_from_string(j.at("csi_error_mode").get<std::string>());
    if (j.contains("rho_bs")) c.rho_bs = j.at("rho_bs").get<double>();
    if (j.contains("rho_ris")) c.rho_ris = j.at("rho_ris").get<double>();
    if (j.contains("rho_ue")) c.rho_ue = j.at("rho_ue").get<double>();
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("trials")) c.trials = j.at("trials").get<int>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad scenario value: ") + e.what());
  }

  validate(c);
  return c;
}

json config_to_json(const SystemConfig& c) {
  json j;
  j["M"] = c.M;
  j["N"] = c.N;
  j["K"] = c.K;
  j["L"] = c.L;
  j["S"] = c.S;
  j["r"] = c.r;
  j["P_dBm"] = c.P_dBm;
  j["sigma2_dBm"] = c.sigma2_dBm;
  j["eta"] = c.eta;
  j["bs_pos"] = {c.bs_pos.x, c.bs_pos.y};
  j["ris_pos"] = {c.ris_pos.x, c.ris_pos.y};
  json users = json::array();
  for (const auto& u : c.user_pos) users.push_back({u.x, u.y});
  j["user_pos"] = users;
  j["nu"] = c.nu;
  j["alpha"] = c.alpha;
  j["T"] = c.T;
  j["beta"] = c.beta;
  j["tau"] = c.tau;
  j["csi_error_mode"] = to_string(c.csi_error_mode);
  j["rho_bs"] = c.rho_bs;
  j["rho_ris"] = c.rho_ris;
  j["rho_ue"] = c.rho_ue;
  j["seed"] = c.seed;
  j["trials"] = c.trials;
  return j;
}

}  // namespace

SystemConfig config_from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("scenario is not valid JSON: ") + e.what());
  }
  return config_from_json(j);
}

std::string config_to_json_text(const SystemConfig& c, bool pretty) {
  return config_to_json(c).dump(pretty ? 2 : -1);
}

SystemConfig load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open scenario file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return config_from_json_text(buf.str());
}

void save_scenario(const SystemConfig& c, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write scenario file '" + path + "'");
  out << config_to_json_text(c, true) << "\n";
  if (!out) throw IoError("failed writing scenario file '" + path + "'");
}

std::string config_digest(const SystemConfig& c) {
  const std::string text = config_to_json_text(c);
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

LinkGains link_gains(const SystemConfig& c) {
  LinkGains g;
  g.d_bs_ris = distance(c.bs_pos, c.ris_pos);
  g.beta_br = path_loss(g.d_bs_ris, c.eta);
  for (int k = 0; k < c.K; ++k) {
    g.d_bs_user.push_back(distance(c.bs_pos, c.user_pos[k]));
    g.d_ris_user.push_back(distance(c.ris_pos, c.user_pos[k]));
    g.beta_bu.push_back(path_loss(g.d_bs_user.back(), c.eta));
    g.beta_ru.push_back(path_loss(g.d_ris_user.back(), c.eta));
  }
  return g;
}

}  // namespace risjam
