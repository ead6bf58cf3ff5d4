#include "permdist/sweep.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "permdist/csvfmt.hpp"
#include "permdist/parallel.hpp"

namespace permdist::sweep {

namespace {

const char* kParams[] = {"x", "q", "alpha", "N"};

bool known_param(const std::string& name) {
  for (const char* p : kParams) {
    if (name == p) return true;
  }
  return false;
}

int to_k(double n_value) {
  const int n = static_cast<int>(n_value);
  if (n < 2 || static_cast<double>(n) != n_value || (n & (n - 1)) != 0) {
    throw std::domain_error("sweep: N must be a power of two >= 2");
  }
  int k = 0;
  for (int v = n; v > 1; v >>= 1) ++k;
  return k;
}

rates::ProtocolParams params_at(const SweepConfig& cfg, double swept_value) {
  auto get = [&](const std::string& name, double fallback) {
    if (cfg.swept == name) return swept_value;
    auto it = cfg.fixed.find(name);
    return it == cfg.fixed.end() ? fallback : it->second;
  };
  rates::ProtocolParams par;
  par.x = get("x", 1.0);
  par.q = get("q", 1.0);
  par.alpha = get("alpha", 0.5);
  par.k = to_k(get("N", 16.0));
  par.d = 2;
  return par;
}

}  // namespace

int grid_size(const SweepConfig& cfg) {
  if (cfg.swept == "N") {
    int count = 0;
    for (double v = 2.0; v <= cfg.hi + 0.5; v *= 2.0) {
      if (v >= cfg.lo - 0.5) ++count;
    }
    return count;
  }
  return cfg.steps;
}

double grid_value(const SweepConfig& cfg, int t) {
  if (cfg.swept == "N") {
    double v = 2.0;
    while (v < cfg.lo - 0.5) v *= 2.0;
    for (int i = 0; i < t; ++i) v *= 2.0;
    return v;
  }
  if (cfg.steps == 1) return cfg.lo;
  return cfg.lo + (cfg.hi - cfg.lo) * t / (cfg.steps - 1);
}

std::vector<Row> run(const SweepConfig& cfg, int jobs) {
  if (!known_param(cfg.swept)) {
    throw std::domain_error("sweep: unknown swept parameter '" + cfg.swept +
                            "'");
  }
  for (const auto& [key, value] : cfg.fixed) {
    (void)value;
    if (!known_param(key)) {
      throw std::domain_error("sweep: unknown fixed parameter '" + key + "'");
    }
  }
  if (cfg.steps < 1 || cfg.lo > cfg.hi) {
    throw std::domain_error("sweep: bad grid bounds");
  }

  const int count = grid_size(cfg);
  std::vector<Row> rows(count);
  parallel_for(jobs, count, [&](int t) {
    Row& row = rows[t];
    row.params = params_at(cfg, grid_value(cfg, t));
    const rates::RateResult res = rates::qubit_protocol(row.params);
    row.partials = res.partials;
    row.total = res.total;
    for (double r : row.partials) {
      if (!(r >= -1e-12)) {
        throw std::logic_error("sweep: negative partial rate");
      }
    }
    if (!(row.total >= -1e-12 && row.total <= 1.0 + 1e-9)) {
      throw std::logic_error("sweep: total rate outside [0, 1]");
    }
  });
  return rows;
}

std::vector<SweepConfig> figure_preset(int figure) {
  std::vector<SweepConfig> family;
  auto base = [](double n_copies) {
    SweepConfig cfg;
    cfg.fixed["N"] = n_copies;
    cfg.fixed["alpha"] = 0.5;
    cfg.steps = 101;
    return cfg;
  };
  switch (figure) {
    case 1:
      for (double x : {0.8, 0.6, 0.4, 0.2}) {
        SweepConfig cfg = base(16);
        cfg.fixed["x"] = x;
        cfg.swept = "q";
        family.push_back(cfg);
      }
      break;
    case 2:
      for (double q : {0.1, 0.2, 0.3, 0.4}) {
        SweepConfig cfg = base(16);
        cfg.fixed["q"] = q;
        cfg.swept = "x";
        family.push_back(cfg);
      }
      break;
    case 3: {
      SweepConfig cfg = base(16);
      cfg.fixed["q"] = 0.2;
      cfg.fixed["x"] = 0.8;
      cfg.swept = "alpha";
      family.push_back(cfg);
      break;
    }
    case 4:
      for (double n_copies : {16.0, 8.0, 4.0, 2.0}) {
        SweepConfig cfg = base(n_copies);
        cfg.fixed["x"] = 0.9;
        cfg.swept = "q";
        family.push_back(cfg);
      }
      break;
    case 5:
      for (double n_copies : {16.0, 8.0, 4.0, 2.0}) {
        SweepConfig cfg = base(n_copies);
        cfg.fixed["q"] = 0.1;
        cfg.swept = "x";
        family.push_back(cfg);
      }
      break;
    default:
      throw std::domain_error("figure preset must be 1..5");
  }
  for (SweepConfig& cfg : family) cfg.fixed.erase(cfg.swept);
  return family;
}

SweepConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  SweepConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    // Trim.
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r");
    line = line.substr(first, last - first + 1);
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": expected key=value");
    }
    std::string key = line.substr(0, eq);
    std::string value = line.substr(eq + 1);
    auto trim = [](std::string& s) {
      const auto b = s.find_first_not_of(" \t");
      const auto e = s.find_last_not_of(" \t");
      s = (b == std::string::npos) ? "" : s.substr(b, e - b + 1);
    };
    trim(key);
    trim(value);
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
    } else if (known_param(key)) {
      cfg.fixed[key] = std::stod(value);
    } else {
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": unknown key '" + key + "'");
    }
  }
  return cfg;
}

std::string to_csv(const std::vector<SweepConfig>& configs,
                   const std::vector<std::vector<Row>>& results) {
  std::ostringstream out;
  for (std::size_t c = 0; c < configs.size(); ++c) {
    const SweepConfig& cfg = configs[c];
    out << "# sweep " << c << ": swept=" << cfg.swept << " lo="
        << fmt_double(cfg.lo) << " hi=" << fmt_double(cfg.hi)
        << " steps=" << grid_size(cfg);
    for (const auto& [key, value] : cfg.fixed) {
      out << " " << key << "=" << fmt_double(value);
    }
    out << "\n";
  }
  out << "x,q,alpha,N,rate\n";
  for (const auto& rows : results) {
    for (const Row& row : rows) {
      out << fmt_double(row.params.x) << "," << fmt_double(row.params.q)
          << "," << fmt_double(row.params.alpha) << ","
          << (1 << row.params.k) << "," << fmt_double(row.total) << "\n";
    }
  }
  return out.str();
}

}  // namespace permdist::sweep
