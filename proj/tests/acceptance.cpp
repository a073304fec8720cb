// Acceptance suite: one PASS/FAIL line per criterion.

#include <Eigen/SVD>
#include <array>
#include <boost/math/quadrature/gauss.hpp>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <numbers>
#include <random>
#include <sstream>

#include "multipole/angular.hpp"
#include "multipole/errors.hpp"
#include "multipole/observables.hpp"
#include "multipole/sweep.hpp"
#include "multipole/text.hpp"
#include "support.hpp"

using namespace multipole;
using std::numbers::pi;
using testing_support::max_abs;
using testing_support::row_coefficients;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

Outcome commutator_contract() {
  const auto start = Clock::now();
  double worst = 0.0;
  double completed = 0.0;
  int checked = 0;
  int skipped = 0;
  for (int j = 1; j <= 3; ++j) {
    for (auto parity : {Parity::electric, Parity::magnetic}) {
      for (int i = 1; i <= 200; ++i) {
        const double kr = std::pow(10.0, -1.0 + 4.0 * testing_support::halton(i, 2));
        const double theta = 0.05 + (pi - 0.1) * testing_support::halton(i, 3);
        const double phi = 2 * pi * testing_support::halton(i, 5);
        const EffectiveTransform t = effective_transform(mode_matrix(j, parity, {kr, theta, phi}));
        completed = std::max(completed, max_abs(t.operator_rows() * t.operator_rows().adjoint() -
                                                Eigen::MatrixXcd::Identity(3, 3)));
        if (t.any_suppressed()) {
          ++skipped;
          continue;
        }
        Eigen::MatrixXcd rows(3, t.columns());
        for (int mu : kLabels) rows.row(label_row(mu)) = t.row(mu);
        worst = std::max(worst, max_abs(rows * rows.adjoint() - Eigen::MatrixXcd::Identity(3, 3)));
        ++checked;
      }
    }
  }
  const double elapsed = seconds_since(start);
  return {worst < 1e-10 && elapsed < 5.0,
          "max|TT^+ - I| = " + sci(worst) + " over " + std::to_string(checked) + " points (" +
              std::to_string(skipped) + " skipped with a suppressed mode; completed rows there " + sci(completed) + "), " +
              sci(elapsed) + " s"};
}

Outcome fluctuation_identity() {
  const auto start = Clock::now();
  std::mt19937_64 rng(2024);
  const FockSpace space(1, 5);
  double worst = 0.0;
  for (int point = 0; point < 10; ++point) {
    const ModeMatrix v = mode_matrix(1, point % 2 ? Parity::magnetic : Parity::electric,
                                     testing_support::random_point(rng, 0.1, 1e3));
    const Eigen::Matrix3cd f = fluctuation_matrix(v).entries;
    for (int s = 0; s < 20; ++s) {
      const PolarizationMatrices p = polarization_matrices(testing_support::random_protected_state(space, rng, 1), v);
      worst = std::max(worst, max_abs(p.antinormal - p.normal - f.transpose()));
    }
  }
  const double elapsed = seconds_since(start);
  return {worst < 1e-9 && elapsed < 10.0,
          "max|P(an) - P(n) - V| = " + sci(worst) + " over 200 state/point pairs, " + sci(elapsed) + " s"};
}

Outcome far_zone_ratio() {
  const std::vector<cdouble> alpha{0.0, 0.0, 1.0};
  double worst = 0.0;
  double worst_half_angle = 0.0;
  for (double phi : {0.0, pi / 3, 1.7}) {
    for (int k = 0; k < 9; ++k) {
      const double theta = 0.2 + (pi - 0.4) * k / 8.0;
      const EffectiveTransform t = effective_transform(mode_matrix(1, Parity::electric, {1e4, theta, phi}));
      const CoherentParameters a = coherent_parameters(t, alpha);
      const cdouble ratio = a(-1) / a(+1);
      const double c2 = std::cos(theta) * std::cos(theta);
      const cdouble expected = (1 - c2) / (1 + c2) * std::polar(1.0, 2 * phi);
      worst = std::max(worst, std::abs(ratio - expected));
      const cdouble half_angle = std::pow(std::tan(theta / 2), 2) * std::polar(1.0, 2 * phi);
      worst_half_angle = std::max(worst_half_angle, std::abs(ratio - half_angle));
    }
  }
  return {worst < 5e-3, "max|ratio - (1-cos^2)/(1+cos^2) e^{2i phi}| = " + sci(worst) +
                            "; measured ratio follows tan^2(theta/2) e^{2i phi} to " + sci(worst_half_angle)};
}

Outcome coherent_q() {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<cdouble> alpha(3);
  for (auto& a : alpha) a = std::polar(u(rng), 2 * pi * u(rng));
  const FockState truncated = coherent_state(FockSpace(1, 6), alpha);
  const FockState tail_safe = coherent_state(FockSpace(1, 15), alpha);

  double worst = 0.0;
  double worst_safe = 0.0;
  double worst_single = 0.0;
  const FockSpace single_space(1, 6);
  for (int point = 0; point < 10; ++point) {
    const EffectiveTransform t = effective_transform(
        mode_matrix(1, point % 2 ? Parity::magnetic : Parity::electric, testing_support::random_point(rng, 0.1, 1e3)));
    for (int mu : kLabels) {
      if (t.suppressed(mu)) continue;
      try {
        worst = std::max(worst, std::abs(mandel_q(truncated, t, mu)));
        worst_safe = std::max(worst_safe, std::abs(mandel_q(tail_safe, t, mu)));
      } catch (const UndefinedQError&) {
      }
      const Eigen::VectorXcd one =
          apply_creator(single_space, row_coefficients(t.row(mu)), vacuum_state(single_space).amplitudes());
      worst_single = std::max(worst_single, std::abs(mandel_q(FockState(single_space, one), t, mu) + 1.0));
    }
  }
  return {worst < 1e-9 && worst_single < 1e-9,
          "coherent max|Q| = " + sci(worst) + " at n_max=6 (max|alpha_m| = " +
              sci(std::max({std::abs(alpha[0]), std::abs(alpha[1]), std::abs(alpha[2])})) +
              "); tail-safe n_max=15 gives " + sci(worst_safe) + "; one-photon max|Q+1| = " + sci(worst_single)};
}

Outcome stokes_commutativity() {
  std::mt19937_64 rng(5);
  const FockSpace space(1, 5);
  const OperatorMatrix guard = protected_projector(space, 2);
  double worst = 0.0;
  for (int point = 0; point < 10; ++point) {
    const EffectiveTransform t = effective_transform(
        mode_matrix(1, point % 2 ? Parity::magnetic : Parity::electric, testing_support::random_point(rng, 0.1, 1e4)));
    const StokesOperators s = stokes_operators(space, t);
    worst = std::max(worst, max_abs((commutator(s.s1, s.s2) * guard).dense()));
  }
  return {worst < 1e-10, "max|[S1,S2] P| = " + sci(worst) + " at 10 points"};
}

Outcome stokes_averages() {
  std::mt19937_64 rng(6);
  const FockSpace space(1, 5);
  double worst = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    const EffectiveTransform t = effective_transform(
        mode_matrix(1, trial % 2 ? Parity::magnetic : Parity::electric, testing_support::random_point(rng, 1e3, 1e4)));
    const FockState s = testing_support::random_transversal_state(space, t, rng, 3);
    const Eigen::VectorXcd& psi = s.amplitudes();
    const cdouble cross = psi.dot(apply_creator(space, row_coefficients(t.operator_row(-1)),
                                                apply_annihilator(space, row_coefficients(t.operator_row(+1)), psi)));
    const StokesMeans m = stokes_means(s, t);
    worst = std::max({worst, std::abs(m.s1 - 2 * cross.real()), std::abs(m.s2 - 2 * cross.imag())});
  }
  return {worst < 1e-10, "max deviation from 2Re/2Im<a+_- a_+> = " + sci(worst) + " over 10 transversal states"};
}

Outcome variance_report() {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const FockSpace space(1, 13);
  nlohmann::json report = {{"generic", nlohmann::json::array()}, {"transversal", nlohmann::json::array()}};
  double worst_self = 0.0;
  std::array<int, 2> flagged{};
  std::array<int, 2> flagged_in_far_zone{};
  for (int trial = 0; trial < 10; ++trial) {
    const SpatialPoint p = testing_support::random_point(rng, 1e4, 1e4);
    const EffectiveTransform t = effective_transform(mode_matrix(1, Parity::electric, p));
    std::vector<cdouble> generic(3);
    for (auto& a : generic) a = std::polar(0.7 * u(rng), 2 * pi * u(rng));
    // same state with its effective radial amplitude projected out
    Eigen::Map<const Eigen::Vector3cd> g(generic.data());
    Eigen::Vector3cd effective = t.operator_rows() * g;
    effective(label_row(0)) = 0.0;
    const Eigen::Vector3cd projected = t.operator_rows().adjoint() * effective;
    const std::vector<cdouble> transversal(projected.data(), projected.data() + 3);

    int set = 0;
    for (const auto* alpha : std::array<const std::vector<cdouble>*, 2>{&generic, &transversal}) {
      const StokesReport r = stokes_variance_report(coherent_state(space, *alpha), t);
      worst_self = std::max(worst_self, std::abs(r.var_s1_oracle - r.var_s1_moment_expansion));
      const bool exceeds = std::abs(r.discrepancy()) > 1e-8 * (1 + r.var_s1_oracle);
      flagged[set] += exceeds;
      flagged_in_far_zone[set] += exceeds && r.far_zone_assumption;
      nlohmann::json alpha_text = nlohmann::json::array();
      for (auto a : *alpha) alpha_text.push_back(format_complex(a));
      report[set == 0 ? "generic" : "transversal"].push_back({{"kr", p.kr},
                                                             {"theta", p.theta},
                                                             {"phi", p.phi},
                                                             {"alpha", alpha_text},
                                                             {"n_max", space.n_max()},
                                                             {"mean_s1", r.mean_s1},
                                                             {"mean_s2", r.mean_s2},
                                                             {"var_s1_oracle", r.var_s1_oracle},
                                                             {"var_s1_moment_expansion", r.var_s1_moment_expansion},
                                                             {"var_s1_far_zone_formula", r.var_s1_far_zone_formula},
                                                             {"var_s1_plane_wave", r.var_s1_plane_wave},
                                                             {"extra_terms", r.extra_terms},
                                                             {"radial_occupation", r.radial_occupation},
                                                             {"far_zone_assumption", r.far_zone_assumption},
                                                             {"discrepancy", r.discrepancy()},
                                                             {"exceeds_tolerance", exceeds}});
      ++set;
    }
  }
  {
    std::ofstream out(REPORT_PATH);
    out << report.dump(2) << "\n";
  }
  std::ifstream back(REPORT_PATH);
  bool archived = false;
  if (back.good()) {
    const auto doc = nlohmann::json::parse(back);
    archived = doc["generic"].size() == 10 && doc["transversal"].size() == 10;
  }
  return {archived && worst_self < 1e-10,
          "self-consistency " + sci(worst_self) + "; far-zone formula off by more than 1e-8(1+var) for " +
              std::to_string(flagged[0]) + "/10 generic coherent states (" + std::to_string(flagged_in_far_zone[0]) +
              " with radial mode in vacuum) and " + std::to_string(flagged[1]) +
              "/10 with the radial amplitude projected out; report at " + REPORT_PATH};
}

Outcome radial_suppression() {
  double worst = 0.0;
  for (auto parity : {Parity::electric, Parity::magnetic}) {
    for (double kr : {10.0, 1e2, 1e3, 1e4}) {
      for (int k = 0; k <= 8; ++k) {
        const double theta = pi * k / 8.0;
        const ModeMatrix v = mode_matrix(1, parity, {kr, theta, 0.4});
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(v.entries);
        const double value = v.entries.row(label_row(0)).cwiseAbs().maxCoeff() * kr / svd.singularValues()(0);
        worst = std::max(worst, value);
      }
    }
  }
  return {worst < 10.0, "max_m|V_0m| kr / sigma_max = " + sci(worst)};
}

Outcome special_functions() {
  double cg = 0.0;
  for (int j1 = 0; j1 <= 4; ++j1)
    for (int j2 = 0; j2 <= 4; ++j2)
      for (int J = std::abs(j1 - j2); J <= j1 + j2; ++J)
        for (int Jp = std::abs(j1 - j2); Jp <= j1 + j2; ++Jp)
          for (int M = -std::min(J, Jp); M <= std::min(J, Jp); ++M) {
            double s = 0.0;
            for (int m1 = -j1; m1 <= j1; ++m1) {
              const int m2 = M - m1;
              if (std::abs(m2) <= j2) s += clebsch_gordan(j1, m1, j2, m2, J, M) * clebsch_gordan(j1, m1, j2, m2, Jp, M);
            }
            cg = std::max(cg, std::abs(s - (J == Jp ? 1.0 : 0.0)));
          }

  double wronskian = 0.0;
  for (int l = 0; l <= 10; ++l) {
    for (double lx = -2.0; lx <= 4.0; lx += 0.01) {
      const double x = std::pow(10.0, lx);
      auto f = [&](BesselKind kind, int n) { return spherical_bessel(kind, n, x).real(); };
      auto d = [&](BesselKind kind) { return l == 0 ? -f(kind, 1) : f(kind, l - 1) - (l + 1) / x * f(kind, l); };
      const double w = f(BesselKind::j, l) * d(BesselKind::y) - d(BesselKind::j) * f(BesselKind::y, l);
      wronskian = std::max(wronskian, std::abs(w * x * x - 1.0));
    }
  }

  double norm = 0.0;
  constexpr int kPhi = 16;
  for (int l = 0; l <= 4; ++l) {
    for (int m = -l; m <= l; ++m) {
      double total = 0.0;
      for (int k = 0; k < kPhi; ++k) {
        const double phi = 2 * pi * k / kPhi;
        total += boost::math::quadrature::gauss<double, 20>::integrate(
                     [&](double x) { return std::norm(spherical_harmonic(l, m, std::acos(x), phi)); }, -1.0, 1.0) *
                 (2 * pi / kPhi);
      }
      norm = std::max(norm, std::abs(total - 1.0));
    }
  }
  return {cg < 1e-12 && wronskian < 1e-10 && norm < 1e-8,
          "CG orthogonality " + sci(cg) + ", Wronskian " + sci(wronskian) + ", harmonic norm " + sci(norm)};
}

std::string shell(const std::string& command) {
  std::string output;
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) return output;
  std::array<char, 4096> buffer{};
  std::size_t n;
  while ((n = fread(buffer.data(), 1, buffer.size(), pipe)) > 0) output.append(buffer.data(), n);
  pclose(pipe);
  return output;
}

std::vector<std::vector<std::string>> read_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

Outcome cli_determinism() {
  const std::string base = std::string(MQSWEEP_PATH) +
                           " --j 1 --parity electric --kr 1e4 --theta 1.5707963267948966 --phi 0 --state coherent:0,0,1";
  const std::string first = shell(base);
  const std::string second = shell(base);
  const bool identical = !first.empty() && first == second;

  const auto rows = read_csv(first);
  bool same_values = rows.size() == 2;
  try {
    const auto doc = nlohmann::json::parse(shell(base + " --format json"));
    same_values = same_values && doc.size() == 1;
    for (std::size_t k = 0; same_values && k < rows[0].size(); ++k) {
      const auto& v = doc[0].at(rows[0][k]);
      const std::string& cell = rows[1][k];
      if (v.is_null()) {
        same_values = cell == "null";
      } else if (v.is_string()) {
        same_values = v.get<std::string>() == cell;
      } else if (v.is_boolean()) {
        same_values = (v.get<bool>() ? "true" : "false") == cell;
      } else {
        same_values = v.get<double>() == parse_real(cell);
      }
    }
  } catch (const std::exception&) {
    same_values = false;
  }

  std::ifstream f(std::string(GOLDEN_DIR) + "/minimal_far_zone.csv");
  std::stringstream golden_text;
  golden_text << f.rdbuf();
  const auto golden = read_csv(golden_text.str());
  bool golden_ok = golden.size() == 2 && rows.size() == 2 && golden[0] == rows[0];
  for (std::size_t k = 0; golden_ok && k < golden[1].size(); ++k) {
    if (golden[1][k] == rows[1][k]) continue;
    try {
      const cdouble a = parse_complex(rows[1][k]);
      const cdouble b = parse_complex(golden[1][k]);
      golden_ok = std::abs(a - b) <= 1e-9 * std::abs(b) + 1e-20;
    } catch (const InputError&) {
      golden_ok = false;
    }
  }
  return {identical && same_values && golden_ok, std::string("byte-identical ") + (identical ? "yes" : "no") +
                                                     ", csv/json equal " + (same_values ? "yes" : "no") +
                                                     ", golden match " + (golden_ok ? "yes" : "no")};
}

}  // namespace

int main() {
  const std::array<std::pair<const char*, Outcome (*)()>, 10> criteria{{
      {"canonical commutator contract", commutator_contract},
      {"fluctuation identity", fluctuation_identity},
      {"far-zone coherent ratio", far_zone_ratio},
      {"Mandel Q on coherent states", coherent_q},
      {"Stokes commutativity", stokes_commutativity},
      {"far-zone Stokes averages", stokes_averages},
      {"Stokes variance comparison", variance_report},
      {"radial suppression", radial_suppression},
      {"special-function suite", special_functions},
      {"CLI determinism and schema", cli_determinism},
  }};
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    std::cout << "criterion " << (i + 1) << " " << (o.pass ? "PASS" : "FAIL") << " [" << criteria[i].first
              << "] " << o.detail << "\n";
  }
  std::cout << (criteria.size() - failures) << "/" << criteria.size() << " criteria passed\n";
  return failures == 0 ? 0 : 1;
}
