#include "multipole/sweep.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <mutex>
#include <ostream>
#include <thread>

#include "multipole/effective.hpp"
#include "multipole/fock.hpp"
#include "multipole/observables.hpp"
#include "multipole/text.hpp"

namespace multipole {

namespace {

const char* label_suffix(int mu) { return mu > 0 ? "p1" : (mu < 0 ? "m1" : "0"); }
const char* label_text(int mu) { return mu > 0 ? "+1" : (mu < 0 ? "-1" : "0"); }

std::vector<std::string> build_schema() {
  std::vector<std::string> names{"kr", "theta", "phi", "zone"};
  for (int mu : kLabels) names.push_back(std::string("W_") + label_suffix(mu));
  names.emplace_back("suppressed");
  for (int mu : kLabels) names.push_back(std::string("alpha_abs_") + label_suffix(mu));
  for (int mu : kLabels) names.push_back(std::string("alpha_arg_") + label_suffix(mu));
  for (int mu : kLabels) names.push_back(std::string("Q_") + label_suffix(mu));
  for (const char* name : {"S1_mean", "S2_mean", "var_s1_oracle", "var_s1_moment_expansion", "var_s1_far_zone_formula",
                           "var_s1_plane_wave", "extra_terms", "radial_occupation", "far_zone_assumption"}) {
    names.emplace_back(name);
  }
  for (const char* prefix : {"Pn_", "Pan_"}) {
    for (int a : kLabels) {
      for (int b : kLabels) names.push_back(std::string(prefix) + label_suffix(a) + "_" + label_suffix(b));
    }
  }
  return names;
}

struct SharedInputs {
  const SweepConfig& config;
  std::optional<FockState> state;
};

Record evaluate_point(const SharedInputs& in, const SpatialPoint& p) {
  const SweepConfig& cfg = in.config;
  const ModeMatrix v = mode_matrix(cfg.j, cfg.parity, p, cfg.gamma, Frame::local);
  const Diagonalization d = diagonalize_fluctuation(fluctuation_matrix(v), cfg.w_epsilon);
  const EffectiveTransform t = effective_transform(v, d);

  Record r;
  r.reserve(record_schema().size());
  auto push = [&r](std::string name, FieldValue value) { r.push_back(Field{std::move(name), std::move(value)}); };

  push("kr", p.kr);
  push("theta", p.theta);
  push("phi", p.phi);
  push("zone", std::string(zone_name(zone_classify(p.kr, cfg.near_bound, cfg.far_bound))));
  for (int mu : kLabels) push(std::string("W_") + label_suffix(mu), t.W(mu));

  std::string suppressed;
  for (int mu : kLabels) {
    if (!t.suppressed(mu)) continue;
    if (!suppressed.empty()) suppressed += ";";
    suppressed += label_text(mu);
  }
  push("suppressed", suppressed.empty() ? std::string("none") : suppressed);

  std::optional<CoherentParameters> alpha;
  if (cfg.observables.alpha && cfg.state.kind == StateSpec::Kind::coherent) {
    alpha = coherent_parameters(t, cfg.state.amplitudes);
  }
  for (int mu : kLabels) {
    const bool defined = alpha && !alpha->suppressed[label_row(mu)];
    push(std::string("alpha_abs_") + label_suffix(mu), defined ? FieldValue(std::abs((*alpha)(mu))) : Null{});
  }
  for (int mu : kLabels) {
    const bool defined = alpha && !alpha->suppressed[label_row(mu)];
    push(std::string("alpha_arg_") + label_suffix(mu), defined ? FieldValue(std::arg((*alpha)(mu))) : Null{});
  }

  for (int mu : kLabels) {
    FieldValue q = Null{};
    if (cfg.observables.q && in.state && !t.suppressed(mu)) {
      try {
        q = mandel_q(*in.state, t, mu);
      } catch (const UndefinedQError&) {
      }
    }
    push(std::string("Q_") + label_suffix(mu), q);
  }

  if (cfg.observables.stokes && in.state) {
    const StokesReport s = stokes_variance_report(*in.state, t);
    push("S1_mean", s.mean_s1);
    push("S2_mean", s.mean_s2);
    push("var_s1_oracle", s.var_s1_oracle);
    push("var_s1_moment_expansion", s.var_s1_moment_expansion);
    push("var_s1_far_zone_formula", s.var_s1_far_zone_formula);
    push("var_s1_plane_wave", s.var_s1_plane_wave);
    push("extra_terms", s.extra_terms);
    push("radial_occupation", s.radial_occupation);
    push("far_zone_assumption", s.far_zone_assumption);
  } else {
    for (const char* name : {"S1_mean", "S2_mean", "var_s1_oracle", "var_s1_moment_expansion", "var_s1_far_zone_formula",
                             "var_s1_plane_wave", "extra_terms", "radial_occupation", "far_zone_assumption"}) {
      push(name, Null{});
    }
  }

  std::optional<PolarizationMatrices> pol;
  if (cfg.observables.polarization && in.state) pol = polarization_matrices(*in.state, v);
  for (int which = 0; which < 2; ++which) {
    for (int a : kLabels) {
      for (int b : kLabels) {
        const std::string name = std::string(which == 0 ? "Pn_" : "Pan_") + label_suffix(a) + "_" + label_suffix(b);
        if (!pol) {
          push(name, Null{});
          continue;
        }
        const Eigen::Matrix3cd& m = which == 0 ? pol->normal : pol->antinormal;
        push(name, m(label_row(a), label_row(b)));
      }
    }
  }
  return r;
}

std::string json_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

std::string csv_text(const FieldValue& value) {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Null>) {
          return "null";
        } else if constexpr (std::is_same_v<T, double>) {
          return std::isfinite(x) ? format_real(x) : "null";
        } else if constexpr (std::is_same_v<T, std::string>) {
          return x;
        } else if constexpr (std::is_same_v<T, cdouble>) {
          return format_complex(x);
        } else {
          return x ? "true" : "false";
        }
      },
      value);
}

std::string json_text(const FieldValue& value) {
  if (std::holds_alternative<std::string>(value)) return "\"" + json_escape(std::get<std::string>(value)) + "\"";
  if (std::holds_alternative<cdouble>(value)) return "\"" + format_complex(std::get<cdouble>(value)) + "\"";
  return csv_text(value);
}

}  // namespace

const std::vector<std::string>& record_schema() {
  static const std::vector<std::string> schema = build_schema();
  return schema;
}

std::vector<Record> evaluate_sweep(const SweepConfig& config, std::ostream* warnings) {
  config.validate();

  SharedInputs inputs{config, std::nullopt};
  if (config.observables.needs_fock()) {
    const FockSpace space(config.j, config.effective_n_max());
    if (config.state.kind == StateSpec::Kind::coherent) {
      const auto unsafe = coherent_tail_violations(space, config.state.amplitudes);
      if (warnings && !unsafe.empty()) {
        *warnings << "warning: n_max=" << space.n_max() << " is below the tail-safe cutoff for " << unsafe.size()
                  << " coherent mode(s); truncation error may be visible\n";
      }
      inputs.state = coherent_state(space, config.state.amplitudes);
    } else {
      inputs.state = basis_state(space, config.state.occupations);
    }
  }

  std::vector<SpatialPoint> points;
  points.reserve(config.kr.size() * config.theta.size() * config.phi.size());
  for (double kr : config.kr) {
    for (double theta : config.theta) {
      for (double phi : config.phi) points.push_back(SpatialPoint{kr, theta, phi});
    }
  }

  std::vector<Record> records(points.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_lock;
  auto work = [&] {
    for (std::size_t i = next++; i < points.size(); i = next++) {
      try {
        records[i] = evaluate_point(inputs, points[i]);
      } catch (...) {
        const std::lock_guard lock(failure_lock);
        if (!failure) failure = std::current_exception();
        next = points.size();
      }
    }
  };
  const unsigned workers = std::min<std::size_t>(config.threads, points.size());
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned k = 0; k < workers; ++k) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);
  return records;
}

void write_csv(const std::vector<Record>& records, std::ostream& out) {
  const auto& schema = record_schema();
  for (std::size_t k = 0; k < schema.size(); ++k) out << (k ? "," : "") << schema[k];
  out << "\n";
  for (const auto& record : records) {
    for (std::size_t k = 0; k < record.size(); ++k) out << (k ? "," : "") << csv_text(record[k].value);
    out << "\n";
  }
}

void write_json(const std::vector<Record>& records, std::ostream& out) {
  out << "[";
  for (std::size_t i = 0; i < records.size(); ++i) {
    out << (i ? ",\n  {" : "\n  {");
    for (std::size_t k = 0; k < records[i].size(); ++k) {
      out << (k ? ", " : "") << "\"" << records[i][k].name << "\": " << json_text(records[i][k].value);
    }
    out << "}";
  }
  out << "\n]\n";
}

int run_sweep(const SweepConfig& config, std::ostream& out, std::ostream& err) {
  try {
    const auto records = evaluate_sweep(config, &err);
    if (config.format == OutputFormat::json) {
      write_json(records, out);
    } else {
      write_csv(records, out);
    }
    return kExitOk;
  } catch (const DimensionError& e) {
    err << "refused: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const DarkPointError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const SingularityError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const InputError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  }
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::optional<SweepConfig> config;
  std::string out_path;
  try {
    config = parse_command_line(argc, argv, &out_path, out);
  } catch (const InputError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  }
  if (!config) return kExitOk;
  if (out_path.empty()) return run_sweep(*config, out, err);

  std::ofstream file(out_path, std::ios::binary);
  if (!file) {
    err << "config error: cannot open output file '" << out_path << "'\n";
    return kExitConfig;
  }
  return run_sweep(*config, file, err);
}

}  // namespace multipole
