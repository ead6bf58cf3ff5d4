// Command-line surface: sector spectra, protocol rates, figure sweeps, and
// the verification battery.
//
// Exit codes: 0 success, 1 verification failure, 2 usage error,
// 3 oracle disagreement beyond tolerance.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "permdist/csvfmt.hpp"
#include "permdist/oracle.hpp"
#include "permdist/rates.hpp"
#include "permdist/spectra.hpp"
#include "permdist/sweep.hpp"
#include "permdist/verify.hpp"

namespace {

using namespace permdist;

struct GlobalOpts {
  int jobs = std::max(1u, std::thread::hardware_concurrency());
  std::string output;
  std::string format = "csv";
};

void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << content;
}

int usage_error(const std::string& message) {
  std::cerr << "error: " << message << "\n";
  return 2;
}

struct OracleCluster {
  double mean = 0.0;
  std::int64_t count = 0;
};

std::vector<OracleCluster> cluster(const std::vector<double>& sorted,
                                   double tol) {
  std::vector<OracleCluster> out;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (i == 0 || sorted[i] - sorted[i - 1] > tol) {
      out.push_back({sorted[i], 1});
    } else {
      OracleCluster& c = out.back();
      c.mean = (c.mean * c.count + sorted[i]) / (c.count + 1);
      ++c.count;
    }
  }
  return out;
}

int run_spectrum(const GlobalOpts& g, int n, int l, double p, bool oracle) {
  if (n < 1 || n > 16 || l < 0 || l > n || std::abs(p) > 1.0) {
    return usage_error("spectrum requires 1 <= n <= 16, 0 <= l <= n, |p| <= 1");
  }
  if (oracle && n > 12) {
    return usage_error("--oracle supports n <= 12 only");
  }

  const Spectrum spec = spectra::rho_spectrum({n, l}, MixParam{p});

  struct OutRow {
    int j;
    double value;
    std::int64_t mult;
    const char* source;
  };
  std::vector<OutRow> rows;
  for (std::size_t j = 0; j < spec.entries.size(); ++j) {
    rows.push_back({static_cast<int>(j), spec.entries[j].value,
                    spec.entries[j].multiplicity, "closed_form"});
  }

  double max_abs_diff = 0.0;
  if (oracle) {
    const oracle::WeightBasis basis(n, l);
    const std::vector<double> numeric =
        oracle::eigenvalues(oracle::build_rho_sector(basis, MixParam{p}));
    std::vector<double> analytic;
    for (const auto& e : spec.entries) {
      analytic.insert(analytic.end(), e.multiplicity, e.value);
    }
    std::sort(analytic.begin(), analytic.end());
    for (std::size_t i = 0; i < numeric.size(); ++i) {
      max_abs_diff = std::max(max_abs_diff, std::abs(numeric[i] - analytic[i]));
    }
    for (const OracleCluster& c : cluster(numeric, 1e-7)) {
      int nearest_j = 0;
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < spec.entries.size(); ++j) {
        const double d = std::abs(spec.entries[j].value - c.mean);
        if (d < best) {
          best = d;
          nearest_j = static_cast<int>(j);
        }
      }
      rows.push_back({nearest_j, c.mean, c.count, "oracle"});
    }
  }

  std::ostringstream out;
  if (g.format == "json") {
    nlohmann::json jrows = nlohmann::json::array();
    for (const OutRow& row : rows) {
      jrows.push_back({{"j", row.j},
                       {"eigenvalue", row.value},
                       {"multiplicity", row.mult},
                       {"source", row.source}});
    }
    if (oracle) {
      nlohmann::json j{{"rows", jrows}, {"max_abs_diff", max_abs_diff}};
      out << j.dump(2) << "\n";
    } else {
      out << jrows.dump(2) << "\n";
    }
  } else {
    out << "j,eigenvalue,multiplicity,source\n";
    for (const OutRow& row : rows) {
      out << row.j << "," << fmt_double(row.value) << "," << row.mult << ","
          << row.source << "\n";
    }
    if (oracle) out << "# max_abs_diff=" << fmt_double(max_abs_diff) << "\n";
  }
  write_output(g.output, out.str());

  if (oracle && max_abs_diff > 1e-9) {
    std::cerr << "oracle disagreement: max_abs_diff = " << max_abs_diff
              << "\n";
    return 3;
  }
  return 0;
}

int to_k(int n_copies) {
  if (n_copies < 2 || (n_copies & (n_copies - 1)) != 0) return -1;
  int k = 0;
  for (int v = n_copies; v > 1; v >>= 1) ++k;
  return k;
}

int run_rate(const GlobalOpts& g, double x, double q, double alpha,
             int n_copies, int qudit_d, std::string variant) {
  const int k = to_k(n_copies);
  if (k < 0) return usage_error("-N must be a power of two >= 2");
  if (x < 0 || x > 1 || q < 0 || q > 1 || alpha < 0 || alpha > 1) {
    return usage_error("x, q, alpha must lie in [0, 1]");
  }

  rates::RateResult result;
  if (qudit_d == 0) {
    if (!variant.empty()) {
      return usage_error("--variant requires --qudit");
    }
    if (n_copies > 16) {
      return usage_error("qubit rate supports N <= 16");
    }
    result = rates::qubit_protocol({x, q, alpha, k, 2});
  } else {
    if (qudit_d < 2) return usage_error("--qudit dimension must be >= 2");
    if (n_copies > 64) return usage_error("qudit rate supports N <= 64");
    if (variant.empty()) variant = "zero";
    rates::QuditVariant v;
    if (variant == "zero") {
      v = rates::QuditVariant::zero;
    } else if (variant == "parity") {
      if (qudit_d % 2 != 0) {
        return usage_error("--variant parity requires even d");
      }
      v = rates::QuditVariant::parity;
    } else if (variant == "naive") {
      v = rates::QuditVariant::naive;
    } else {
      return usage_error("--variant must be naive, zero, or parity");
    }
    result = rates::qudit_protocol({x, q, alpha, k, qudit_d}, v);
  }

  std::ostringstream out;
  if (g.format == "json") {
    nlohmann::json j;
    j["partials"] = nlohmann::json::array();
    for (std::size_t i = 0; i < result.partials.size(); ++i) {
      j["partials"].push_back({{"i", i + 1},
                               {"n_i", rates::group_size(k, i + 1)},
                               {"R_i", result.partials[i]}});
    }
    j["total"] = result.total;
    out << j.dump(2) << "\n";
  } else {
    out << "i,n_i,R_i\n";
    for (std::size_t i = 0; i < result.partials.size(); ++i) {
      out << (i + 1) << "," << rates::group_size(k, i + 1) << ","
          << fmt_double(result.partials[i]) << "\n";
    }
    out << "total,," << fmt_double(result.total) << "\n";
  }
  write_output(g.output, out.str());
  return 0;
}

int run_sweep(const GlobalOpts& g, int figure, const std::string& config_path,
              const std::vector<std::string>& overrides) {
  std::vector<sweep::SweepConfig> configs;
  std::string output = g.output;
  if (figure != 0) {
    if (!config_path.empty() || !overrides.empty()) {
      return usage_error("--figure excludes --config and --set");
    }
    configs = sweep::figure_preset(figure);
  } else {
    sweep::SweepConfig cfg;
    if (!config_path.empty()) cfg = sweep::parse_config_file(config_path);
    for (const std::string& kv : overrides) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) {
        return usage_error("--set expects key=value, got '" + kv + "'");
      }
      const std::string key = kv.substr(0, eq);
      const std::string value = kv.substr(eq + 1);
      if (key == "swept") {
        cfg.swept = value;
      } else if (key == "lo") {
        cfg.lo = std::stod(value);
      } else if (key == "hi") {
        cfg.hi = std::stod(value);
      } else if (key == "steps") {
        cfg.steps = std::stoi(value);
      } else if (key == "output") {
        cfg.output = value;
      } else if (key == "x" || key == "q" || key == "alpha" || key == "N") {
        cfg.fixed[key] = std::stod(value);
      } else {
        return usage_error("unknown sweep key '" + key + "'");
      }
    }
    configs.push_back(cfg);
    if (output.empty()) output = cfg.output;
  }

  std::vector<std::vector<sweep::Row>> results;
  for (const auto& cfg : configs) results.push_back(sweep::run(cfg, g.jobs));

  if (g.format == "json") {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& rows : results) {
      for (const sweep::Row& row : rows) {
        j.push_back({{"x", row.params.x},
                     {"q", row.params.q},
                     {"alpha", row.params.alpha},
                     {"N", 1 << row.params.k},
                     {"rate", row.total}});
      }
    }
    write_output(output, j.dump(2) + "\n");
  } else {
    write_output(output, sweep::to_csv(configs, results));
  }
  return 0;
}

int run_verify(const GlobalOpts& g, int max_n,
               const std::string& sections_csv) {
  verify::Options opt;
  opt.max_n = max_n;
  opt.jobs = g.jobs;
  if (!sections_csv.empty()) {
    std::stringstream ss(sections_csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (item != "spectra" && item != "cas" && item != "characters" &&
          item != "rates") {
        std::cerr << "error: unknown section '" << item << "'\n";
        return 2;
      }
      opt.sections.push_back(item);
    }
  }

  const verify::VerificationReport rep = verify::run(opt, &std::cout);
  const std::string path =
      g.output.empty() ? "verification_report.json" : g.output;
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot write report to " << path << "\n";
    return 1;
  }
  out << verify::to_json(rep) << "\n";

  int passed = 0;
  for (const auto& c : rep.checks) passed += c.pass ? 1 : 0;
  std::cout << passed << "/" << rep.checks.size() << " checks passed; report: "
            << path << "\n";
  return rep.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact sector spectra and distillation rates of "
               "permutation-invariant projected states"};
  app.require_subcommand(1);
  app.fallthrough(true);

  GlobalOpts g;
  app.add_option("--jobs", g.jobs, "Worker threads for sweeps and batteries")
      ->check(CLI::PositiveNumber);
  app.add_option("--output", g.output, "Output path (default stdout)");
  app.add_option("--format", g.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));

  // spectrum
  auto* spectrum = app.add_subcommand(
      "spectrum", "Eigenvalues and multiplicities of one weight sector");
  int sp_n = 4, sp_l = 2;
  double sp_p = 0.5;
  bool sp_oracle = false;
  spectrum->add_option("-n", sp_n, "Number of copies (<= 16)")->required();
  spectrum->add_option("-l", sp_l, "Hamming weight of the sector")->required();
  spectrum->add_option("-p", sp_p, "Purity parameter, |p| <= 1")->required();
  spectrum->add_flag("--oracle", sp_oracle,
                     "Cross-check against the dense eigensolver (n <= 12)");

  // rate
  auto* rate = app.add_subcommand(
      "rate", "Partial and total distillation rates of one parameter point");
  double rt_x = 1.0, rt_q = 1.0, rt_alpha = 0.5;
  int rt_copies = 16, rt_qudit = 0;
  std::string rt_variant;
  rate->add_option("-x", rt_x, "Entangled-component weight")->required();
  rate->add_option("-q", rt_q, "Mixing parameter (qubit protocol)");
  rate->add_option("-a,--alpha", rt_alpha, "Schmidt coefficient");
  rate->add_option("-N", rt_copies, "Initial copies (power of two)")
      ->required();
  rate->add_option("--qudit", rt_qudit, "Qudit dimension d (enables the "
                                        "qudit protocols)");
  rate->add_option("--variant", rt_variant,
                   "Qudit measurement: naive|zero|parity");

  // sweep
  auto* sweep_cmd = app.add_subcommand(
      "sweep", "Parameter sweeps; CSV rows x,q,alpha,N,rate");
  int sw_figure = 0;
  std::string sw_config;
  std::vector<std::string> sw_set;
  sweep_cmd->add_option("--figure", sw_figure, "Preset grid 1..5")
      ->check(CLI::Range(1, 5));
  sweep_cmd->add_option("--config", sw_config,
                        "Flat key=value config file");
  sweep_cmd->add_option("--set", sw_set,
                        "Override config entries, e.g. --set swept=q");

  // verify
  auto* verify_cmd = app.add_subcommand(
      "verify", "Run the verification battery and write a JSON report");
  int vf_max_n = 12;
  std::string vf_sections;
  verify_cmd->add_option("--max-n", vf_max_n, "Oracle ceiling (<= 12)")
      ->check(CLI::Range(1, 12));
  verify_cmd->add_option("--sections", vf_sections,
                         "Comma list of spectra,cas,characters,rates");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (spectrum->parsed()) {
      return run_spectrum(g, sp_n, sp_l, sp_p, sp_oracle);
    }
    if (rate->parsed()) {
      return run_rate(g, rt_x, rt_q, rt_alpha, rt_copies, rt_qudit,
                      rt_variant);
    }
    if (sweep_cmd->parsed()) {
      return run_sweep(g, sw_figure, sw_config, sw_set);
    }
    if (verify_cmd->parsed()) {
      return run_verify(g, vf_max_n, vf_sections);
    }
  } catch (const std::domain_error& e) {
    return usage_error(e.what());
  } catch (const std::invalid_argument& e) {
    return usage_error(e.what());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
