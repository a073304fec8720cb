#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <sstream>

#include "multipole/sweep.hpp"
#include "multipole/text.hpp"

namespace multipole {

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, sep)) parts.push_back(item);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

std::vector<double> expand_range(const std::string& token) {
  const auto parts = split(token, ':');
  if (parts.size() < 3 || parts.size() > 4) {
    throw ConfigError("range spec must be start:stop:count[:log], got '" + token + "'");
  }
  const double start = parse_real(parts[0]);
  const double stop = parse_real(parts[1]);
  const int count = parse_int(parts[2]);
  bool log_spaced = false;
  if (parts.size() == 4) {
    if (parts[3] != "log" && parts[3] != "lin") throw ConfigError("range spacing must be 'log' or 'lin'");
    log_spaced = parts[3] == "log";
  }
  if (count < 1) throw ConfigError("range count must be >= 1 in '" + token + "'");
  if (log_spaced && !(start > 0.0 && stop > 0.0)) throw ConfigError("log range needs positive ends in '" + token + "'");

  std::vector<double> values(count);
  for (int k = 0; k < count; ++k) {
    const double f = count == 1 ? 0.0 : double(k) / double(count - 1);
    values[k] = log_spaced ? std::exp(std::log(start) + f * (std::log(stop) - std::log(start)))
                           : start + f * (stop - start);
  }
  if (count > 1) values.back() = stop;
  return values;
}

}  // namespace

std::vector<double> parse_grid(std::span<const std::string> tokens) {
  std::vector<double> values;
  for (const auto& token : tokens) {
    try {
      if (token.find(':') != std::string::npos) {
        const auto range = expand_range(token);
        values.insert(values.end(), range.begin(), range.end());
      } else {
        values.push_back(parse_real(token));
      }
    } catch (const ConfigError&) {
      throw;
    } catch (const InputError& e) {
      throw ConfigError(e.what());
    }
  }
  return values;
}

StateSpec parse_state(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw ConfigError("state must be coherent:<list> or fock:<list>, got '" + text + "'");
  const std::string kind = text.substr(0, colon);
  const auto items = split(text.substr(colon + 1), ',');
  StateSpec spec;
  try {
    if (kind == "coherent") {
      spec.kind = StateSpec::Kind::coherent;
      for (const auto& item : items) spec.amplitudes.push_back(parse_complex(item));
    } else if (kind == "fock") {
      spec.kind = StateSpec::Kind::fock;
      for (const auto& item : items) spec.occupations.push_back(parse_int(item));
    } else {
      throw ConfigError("unknown state kind '" + kind + "'");
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const InputError& e) {
    throw ConfigError(std::string("state spec: ") + e.what());
  }
  return spec;
}

ObservableSet parse_observables(std::span<const std::string> tokens) {
  ObservableSet set{false, false, false, false};
  for (const auto& token : tokens) {
    if (token == "q") {
      set.q = true;
    } else if (token == "stokes") {
      set.stokes = true;
    } else if (token == "polarization") {
      set.polarization = true;
    } else if (token == "alpha") {
      set.alpha = true;
    } else {
      throw ConfigError("unknown observable '" + token + "' (expected q, stokes, polarization, alpha)");
    }
  }
  return set;
}

void SweepConfig::validate() const {
  if (j < 1) throw ConfigError("--j must be >= 1");
  if (!std::isfinite(gamma.real()) || !std::isfinite(gamma.imag())) throw ConfigError("--gamma must be finite");
  if (kr.empty()) throw ConfigError("kr grid is empty");
  if (theta.empty()) throw ConfigError("theta grid is empty");
  if (phi.empty()) throw ConfigError("phi grid is empty");
  for (double x : kr) {
    if (!(x > 0.0) || !std::isfinite(x)) throw ConfigError("kr values must be positive and finite");
  }
  for (double t : theta) {
    if (!(t >= 0.0 && t <= std::numbers::pi)) throw ConfigError("theta values must lie in [0, pi]");
  }
  for (double p : phi) {
    if (!std::isfinite(p)) throw ConfigError("phi values must be finite");
  }
  const std::size_t modes = static_cast<std::size_t>(2 * j + 1);
  if (state.kind == StateSpec::Kind::coherent) {
    if (state.amplitudes.size() != modes) {
      throw ConfigError("coherent state needs 2j+1 = " + std::to_string(modes) + " amplitudes, got " +
                        std::to_string(state.amplitudes.size()));
    }
    for (auto a : state.amplitudes) {
      if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) throw ConfigError("coherent amplitudes must be finite");
    }
  } else {
    if (state.occupations.size() != modes) {
      throw ConfigError("fock state needs 2j+1 = " + std::to_string(modes) + " occupations, got " +
                        std::to_string(state.occupations.size()));
    }
    for (int n : state.occupations) {
      if (n < 0) throw ConfigError("occupations must be non-negative");
      if (n_max && n > *n_max) throw ConfigError("occupation exceeds --n-max");
    }
  }
  if (!(w_epsilon > 0.0 && w_epsilon < 1.0)) throw ConfigError("--w-epsilon must lie in (0, 1)");
  if (n_max && *n_max < 1) throw ConfigError("--n-max must be >= 1");
  if (!(near_bound > 0.0 && near_bound < far_bound)) throw ConfigError("zone bounds must satisfy 0 < near < far");
  if (threads < 1) throw ConfigError("--threads must be >= 1");
}

int SweepConfig::effective_n_max() const {
  if (n_max) return *n_max;
  int needed = 1;
  if (state.kind == StateSpec::Kind::coherent) {
    for (auto a : state.amplitudes) {
      const double r = std::abs(a);
      needed = std::max(needed, static_cast<int>(std::ceil(r * r + 6.0 * r + 8.0)));
    }
  } else {
    for (int n : state.occupations) needed = std::max(needed, n + 2);
  }
  return needed;
}

std::optional<SweepConfig> parse_command_line(int argc, const char* const* argv, std::string* out_path,
                                              std::ostream& out) {
  CLI::App app{"Local observables of quantum multipole radiation on a grid of observation points", "mqsweep"};
  app.set_config("--config", "", "Read options from a key = value file (command-line flags win)");

  int j = 1;
  std::string parity = "electric";
  std::vector<std::string> kr, theta, phi, observables{"q", "stokes", "polarization", "alpha"};
  std::string state = "coherent:";
  std::string gamma = "1";
  double w_epsilon = 1e-8;
  int n_max = 0;
  std::string format = "csv";
  std::string out_file;
  double near_bound = 0.1;
  double far_bound = 100.0;
  unsigned threads = 1;

  app.add_option("--j", j, "Multipole order j >= 1");
  app.add_option("--parity", parity, "electric | magnetic")->check(CLI::IsMember({"electric", "magnetic"}));
  app.add_option("--kr", kr, "kr grid: value, comma list, or start:stop:count[:log]")->delimiter(',');
  app.add_option("--theta", theta, "theta grid (radians)")->delimiter(',');
  app.add_option("--phi", phi, "phi grid (radians)")->delimiter(',');
  app.add_option("--state", state, "coherent:<complex list> | fock:<int list>, ordered m=-j..j");
  app.add_option("--observables", observables, "Subset of q,stokes,polarization,alpha")->delimiter(',');
  app.add_option("--w-epsilon", w_epsilon, "Relative eigenvalue threshold for suppressed modes");
  auto* n_max_opt = app.add_option("--n-max", n_max, "Per-mode occupation cutoff (default: tail-safe)");
  app.add_option("--format", format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--gamma", gamma, "Overall mode normalization, complex re+imj");
  app.add_option("--out", out_file, "Write output to this path instead of standard output");
  app.add_option("--near-bound", near_bound, "kr below this is the near zone");
  app.add_option("--far-bound", far_bound, "kr above this is the far zone");
  app.add_option("--threads", threads, "Worker threads for the grid sweep");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    throw ConfigError(e.what());
  }

  SweepConfig config;
  config.j = j;
  config.parity = parity == "magnetic" ? Parity::magnetic : Parity::electric;
  try {
    config.gamma = parse_complex(gamma);
  } catch (const InputError& e) {
    throw ConfigError(std::string("--gamma: ") + e.what());
  }
  config.kr = parse_grid(kr);
  config.theta = parse_grid(theta);
  config.phi = parse_grid(phi);
  config.state = parse_state(state);
  config.observables = parse_observables(observables);
  config.w_epsilon = w_epsilon;
  if (n_max_opt->count() > 0) config.n_max = n_max;
  config.format = format == "json" ? OutputFormat::json : OutputFormat::csv;
  config.near_bound = near_bound;
  config.far_bound = far_bound;
  config.threads = threads;
  if (out_path) *out_path = out_file;
  return config;
}

}  // namespace multipole
