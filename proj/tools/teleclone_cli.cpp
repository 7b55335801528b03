// Command-line front end: table/figure reproduction, MAN queries, and a
// scenario runner with self-verification. All data output is CSV (comma,
// '.' decimal, LF, header row), reals with 10 significant digits.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "teleclone/analysis.hpp"
#include "teleclone/protocol.hpp"

using namespace teleclone;
using nlohmann::json;

namespace {

constexpr int kExitVerifyFailure = 1;
constexpr int kExitUsage = 2;

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

std::string to_csv(const OutputTable& t) {
  std::string out;
  for (std::size_t i = 0; i < t.headers.size(); ++i) {
    if (i) out += ',';
    out += t.headers[i];
  }
  out += '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_number(row[i]);
    }
    out += '\n';
  }
  return out;
}

void emit(const OutputTable& t, const std::string& out_path) {
  const std::string csv = to_csv(t);
  if (out_path.empty()) {
    std::cout << csv;
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open output file: " + out_path);
  f << csv;
  if (!f) throw std::runtime_error("write failed: " + out_path);
}

double verify_tolerance() {
  if (const char* env = std::getenv("TELECLONE_VERIFY_TOL")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(v > 0.0))
      throw std::invalid_argument(
          "TELECLONE_VERIFY_TOL must be a positive number");
    return v;
  }
  return 1e-8;
}

OutputTable run_tables(const std::string& which) {
  OutputTable t;
  if (which == "I") {
    auto b = man_boundary(BoundaryFamily::fidelity_floor);
    t.headers = {"f_lo", "f_hi", "man", "ref_lo", "ref_hi", "abs_diff"};
    const double lo = 2.0 / 3.0, hi = 5.0 / 6.0;
    const std::vector<std::vector<double>> refs{
        {0.6667, 0.6754, 3}, {0.6755, 0.7222, 2}, {0.7223, 0.8333, 1}};
    const std::vector<std::vector<double>> computed{
        {lo, b[0], 3}, {b[0], b[1], 2}, {b[1], hi, 1}};
    for (std::size_t i = 0; i < refs.size(); ++i) {
      const double diff = std::max(std::abs(computed[i][0] - refs[i][0]),
                                   std::abs(computed[i][1] - refs[i][1]));
      t.rows.push_back({computed[i][0], computed[i][1], computed[i][2],
                        refs[i][0], refs[i][1], diff});
    }
    return t;
  }
  BoundaryFamily family;
  std::vector<double> refs;
  if (which == "II") {
    family = BoundaryFamily::eta_port;
    refs = {0.7327, 0.3675};
  } else if (which == "III") {
    family = BoundaryFamily::eta_receivers;
    refs = {0.7290, 0.3115};
  } else {
    throw std::invalid_argument("unknown table id: " + which);
  }
  auto b = man_boundary(family);
  t.headers = {"man_step", "eta_boundary", "ref", "abs_diff"};
  t.rows.push_back({3, b[0], refs[0], std::abs(b[0] - refs[0])});
  t.rows.push_back({2, b[1], refs[1], std::abs(b[1] - refs[1])});
  return t;
}

FigureId parse_figure_id(const std::string& id) {
  if (id == "2") return FigureId::fig2;
  if (id == "3") return FigureId::fig3;
  if (id == "4a") return FigureId::fig4a;
  if (id == "4b") return FigureId::fig4b;
  if (id == "5") return FigureId::fig5;
  throw std::invalid_argument("unknown figure id: " + id);
}

OutputTable run_man(int receivers, double f_min, double eta_p, double eta_c) {
  DisentangleParams etas = DisentangleParams::optimal(receivers);
  etas.eta_P = eta_p;
  for (auto& e : etas.eta_C) e = eta_c;
  ScenarioConfig cfg{receivers, etas, f_min};
  ManResult r = man(cfg);
  OutputTable t;
  t.headers = {"man", "round", "lambda"};
  for (std::size_t i = 0; i < r.lambda_schedule.size(); ++i)
    t.rows.push_back({static_cast<double>(r.man), static_cast<double>(i + 1),
                      r.lambda_schedule[i]});
  return t;
}

// -- scenario files ---------------------------------------------------------

void reject_unknown_keys(const json& obj, const std::vector<std::string>& known,
                         const std::string& path) {
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    if (std::find(known.begin(), known.end(), key) == known.end())
      throw std::invalid_argument("unknown key " + path + "." + key);
  }
}

struct Scenario {
  int receivers = 0;
  DisentangleParams etas;
  std::optional<double> f_min;
  // Per round: explicit lambda, or none meaning "minimal lambda for f_min".
  std::vector<std::optional<double>> lambdas;
  std::vector<std::optional<std::vector<bool>>> accepts;
};

Scenario parse_scenario(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("cannot open config file: " + path);
  json doc;
  try {
    doc = json::parse(f);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("config is not valid JSON: ") +
                                e.what());
  }
  if (!doc.is_object()) throw std::invalid_argument("config root must be an object");
  reject_unknown_keys(doc, {"receivers", "eta", "rounds", "f_min"}, "$");
  if (!doc.contains("receivers") || !doc["receivers"].is_number_integer())
    throw std::invalid_argument("$.receivers must be an integer");
  Scenario sc;
  sc.receivers = doc["receivers"].get<int>();
  if (sc.receivers < 1)
    throw std::invalid_argument("$.receivers must be >= 1");
  sc.etas = DisentangleParams::optimal(sc.receivers);

  if (doc.contains("eta")) {
    const json& eta = doc["eta"];
    if (!eta.is_object()) throw std::invalid_argument("$.eta must be an object");
    reject_unknown_keys(eta, {"P", "A", "C"}, "$.eta");
    if (eta.contains("P")) {
      if (!eta["P"].is_number())
        throw std::invalid_argument("$.eta.P must be a number");
      sc.etas.eta_P = eta["P"].get<double>();
    }
    if (eta.contains("A")) {
      if (!eta["A"].is_number())
        throw std::invalid_argument("$.eta.A must be a number");
      sc.etas.eta_A = eta["A"].get<double>();
    }
    if (eta.contains("C")) {
      if (!eta["C"].is_array())
        throw std::invalid_argument("$.eta.C must be an array of numbers");
      std::vector<double> c;
      for (const auto& v : eta["C"]) {
        if (!v.is_number())
          throw std::invalid_argument("$.eta.C entries must be numbers");
        c.push_back(v.get<double>());
      }
      if (static_cast<int>(c.size()) != sc.receivers)
        throw std::invalid_argument("$.eta.C must list one value per receiver");
      sc.etas.eta_C = std::move(c);
    }
  }
  try {
    sc.etas.validate(sc.receivers);
  } catch (const std::exception& e) {
    throw std::invalid_argument(std::string("$.eta: ") + e.what());
  }

  if (doc.contains("f_min")) {
    if (!doc["f_min"].is_number())
      throw std::invalid_argument("$.f_min must be a number");
    sc.f_min = doc["f_min"].get<double>();
    if (!(*sc.f_min > 0.5 && *sc.f_min <= 1.0))
      throw std::invalid_argument("$.f_min must lie in (0.5, 1]");
  }

  if (!doc.contains("rounds") || !doc["rounds"].is_array() ||
      doc["rounds"].empty())
    throw std::invalid_argument("$.rounds must be a nonempty array");
  int idx = 0;
  for (const auto& r : doc["rounds"]) {
    const std::string rpath = "$.rounds[" + std::to_string(idx) + "]";
    if (!r.is_object())
      throw std::invalid_argument(rpath + " must be an object");
    reject_unknown_keys(r, {"lambda", "accept"}, rpath);
    std::optional<double> lam;
    if (r.contains("lambda")) {
      if (!r["lambda"].is_number())
        throw std::invalid_argument(rpath + ".lambda must be a number");
      lam = r["lambda"].get<double>();
    } else if (!sc.f_min) {
      throw std::invalid_argument(rpath +
                                  ".lambda is required when $.f_min is absent");
    }
    std::optional<std::vector<bool>> acc;
    if (r.contains("accept")) {
      if (!r["accept"].is_array())
        throw std::invalid_argument(rpath + ".accept must be a boolean array");
      std::vector<bool> bits;
      for (const auto& b : r["accept"]) {
        if (!b.is_boolean())
          throw std::invalid_argument(rpath + ".accept entries must be booleans");
        bits.push_back(b.get<bool>());
      }
      acc = std::move(bits);
    }
    sc.lambdas.push_back(lam);
    sc.accepts.push_back(std::move(acc));
    ++idx;
  }
  return sc;
}

int run_simulate(const std::string& path, bool verify,
                 const std::string& out_path) {
  Scenario sc = parse_scenario(path);

  // Resolve per-round lambdas. Omitted lambdas take the minimal value
  // reaching f_min given the accumulated attenuation.
  int remaining = sc.receivers;
  double attenuation = 1.0;
  RoundSchedule schedule;
  for (std::size_t i = 0; i < sc.lambdas.size(); ++i) {
    const std::string rpath = "$.rounds[" + std::to_string(i) + "]";
    if (remaining == 0)
      throw std::domain_error(rpath + ": no receivers remain");
    double lam;
    if (sc.lambdas[i]) {
      lam = *sc.lambdas[i];
    } else {
      const double pref =
          receiver_prefactor(sc.receivers, sc.etas, 1) * attenuation;
      lam = min_lambda(*sc.f_min, pref);
      if (lam > 1.0)
        throw std::domain_error(rpath + ".lambda: minimal sharpness " +
                                format_number(lam) +
                                " for f_min exceeds 1; round infeasible");
    }
    if (!(lam > 0.0 && lam <= 1.0))
      throw std::domain_error(rpath + ".lambda must lie in (0,1]");
    AcceptanceMask mask = AcceptanceMask::all_refuse(remaining);
    if (sc.accepts[i]) {
      if (static_cast<int>(sc.accepts[i]->size()) != remaining)
        throw std::domain_error(rpath + ".accept needs " +
                                std::to_string(remaining) + " entries");
      mask.bits = *sc.accepts[i];
    }
    remaining -= mask.accepted_count();
    schedule.push_back({lam, mask});
    attenuation *= p_kernel(lam);
  }

  auto reports = run_schedule(sc.receivers, sc.etas, schedule);
  OutputTable t;
  t.headers = {"round", "receiver", "f_sim", "f_closed", "abs_diff"};
  for (const auto& r : reports)
    t.rows.push_back({static_cast<double>(r.round),
                      static_cast<double>(std::stoi(r.receiver.substr(1))),
                      r.f_sim, r.f_closed, r.abs_diff});
  emit(t, out_path);

  if (verify) {
    const double tolerance = verify_tolerance();
    for (const auto& r : reports) {
      if (r.abs_diff > tolerance) {
        std::cerr << "verification failed: round " << r.round << " receiver "
                  << r.receiver << " |f_sim - f_closed| = "
                  << format_number(r.abs_diff) << " > "
                  << format_number(tolerance) << "\n";
        return kExitVerifyFailure;
      }
      if (sc.f_min && r.f_sim + tolerance < *sc.f_min) {
        std::cerr << "verification failed: round " << r.round << " receiver "
                  << r.receiver << " f_sim " << format_number(r.f_sim)
                  << " below f_min " << format_number(*sc.f_min) << "\n";
        return kExitVerifyFailure;
      }
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sequential telecloning simulator and analysis toolkit"};
  app.require_subcommand(1);

  std::string which;
  auto* tables = app.add_subcommand(
      "tables", "Recompute the MAN boundary tables next to reference values");
  tables->add_option("--which", which, "Table id: I, II or III")
      ->required()
      ->check(CLI::IsMember({"I", "II", "III"}));

  std::string fig_id;
  int grid = 100;
  std::string fig_out;
  auto* fig = app.add_subcommand("fig", "Sampled curve/surface data as CSV");
  fig->add_option("--id", fig_id, "Figure id: 2, 3, 4a, 4b or 5")
      ->required()
      ->check(CLI::IsMember({"2", "3", "4a", "4b", "5"}));
  fig->add_option("--grid", grid, "Samples per axis (>= 2)");
  fig->add_option("--out", fig_out, "Output path (default: stdout)");

  int receivers = 2;
  double f_min = 0.0, eta_p = 1.0, eta_c = 1.0;
  auto* man_cmd = app.add_subcommand(
      "man", "Maximal attempting number and its minimal sharpness schedule");
  man_cmd->add_option("--receivers", receivers, "Receiver count M")->required();
  man_cmd->add_option("--f-min", f_min, "Per-round fidelity floor")->required();
  man_cmd->add_option("--eta-p", eta_p, "Port disentangling parameter");
  man_cmd->add_option("--eta-c", eta_c,
                      "Common receiver disentangling parameter");

  std::string config_path, sim_out;
  bool verify = false;
  auto* sim = app.add_subcommand("simulate", "Run a JSON-described schedule");
  sim->add_option("--config", config_path, "Scenario JSON path")->required();
  sim->add_flag("--verify", verify,
                "Exit 1 if simulation and closed form disagree");
  sim->add_option("--out", sim_out, "Output path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*tables) {
      std::cerr << "tables --which " << which << "\n";
      emit(run_tables(which), "");
    } else if (*fig) {
      std::cerr << "fig --id " << fig_id << " --grid " << grid << "\n";
      emit(figure_data(parse_figure_id(fig_id), grid), fig_out);
    } else if (*man_cmd) {
      std::cerr << "man --receivers " << receivers << " --f-min "
                << format_number(f_min) << " --eta-p " << format_number(eta_p)
                << " --eta-c " << format_number(eta_c) << "\n";
      emit(run_man(receivers, f_min, eta_p, eta_c), "");
    } else if (*sim) {
      std::cerr << "simulate --config " << config_path
                << (verify ? " --verify" : "") << "\n";
      return run_simulate(config_path, verify, sim_out);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return 0;
}
