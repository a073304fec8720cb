#pragma once

// Grid sweeps over observation points: configuration, evaluation and CSV/JSON output.

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "multipole/errors.hpp"
#include "multipole/modes.hpp"

namespace multipole {

class ConfigError : public InputError {
 public:
  using InputError::InputError;
};

enum ExitCode : int { kExitOk = 0, kExitConfig = 2, kExitNumerical = 3 };

enum class OutputFormat { csv, json };

struct StateSpec {
  enum class Kind { coherent, fock };
  Kind kind = Kind::coherent;
  std::vector<cdouble> amplitudes;  // coherent, indexed m + j
  std::vector<int> occupations;     // fock, indexed m + j
};

struct ObservableSet {
  bool q = true;
  bool stokes = true;
  bool polarization = true;
  bool alpha = true;

  bool needs_fock() const { return q || stokes || polarization; }
};

struct SweepConfig {
  int j = 1;
  Parity parity = Parity::electric;
  cdouble gamma{1.0, 0.0};
  std::vector<double> kr;
  std::vector<double> theta;
  std::vector<double> phi;
  StateSpec state;
  ObservableSet observables;
  double w_epsilon = 1e-8;
  std::optional<int> n_max;
  OutputFormat format = OutputFormat::csv;
  double near_bound = 0.1;
  double far_bound = 100.0;
  unsigned threads = 1;

  /// Throws ConfigError describing the first violated constraint.
  void validate() const;
  /// Explicit --n-max, else the smallest cutoff that keeps the state tail-safe.
  int effective_n_max() const;
};

/// Expands grid tokens: a single value, or "start:stop:count[:log]" (inclusive ends).
std::vector<double> parse_grid(std::span<const std::string> tokens);

/// "coherent:<complex list>" or "fock:<int list>", comma separated, ordered m = -j..j.
StateSpec parse_state(const std::string& text);

ObservableSet parse_observables(std::span<const std::string> tokens);

// One output record: an ordered list of named values, identical field set for every point.
struct Null {};
using FieldValue = std::variant<Null, double, std::string, cdouble, bool>;

struct Field {
  std::string name;
  FieldValue value;
};

using Record = std::vector<Field>;

/// Field names in output order.
const std::vector<std::string>& record_schema();

/// Evaluates every grid point (kr outer, theta middle, phi inner).
/// Throws DarkPointError / DimensionError on numerical refusal.
std::vector<Record> evaluate_sweep(const SweepConfig& config, std::ostream* warnings = nullptr);

void write_csv(const std::vector<Record>& records, std::ostream& out);
void write_json(const std::vector<Record>& records, std::ostream& out);

/// Parses the command line (and optional --config file) into a SweepConfig.
/// Returns std::nullopt when the invocation only asked for help.
std::optional<SweepConfig> parse_command_line(int argc, const char* const* argv, std::string* out_path,
                                              std::ostream& out);

/// Full CLI entry point; returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Evaluates and writes the sweep; returns the process exit code.
int run_sweep(const SweepConfig& config, std::ostream& out, std::ostream& err);

}  // namespace multipole
