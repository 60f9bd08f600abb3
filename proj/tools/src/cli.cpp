#include "kgwave/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "kgwave/errors.hpp"
#include "kgwave/evolve.hpp"
#include "kgwave/floquet.hpp"
#include "kgwave/io.hpp"
#include "kgwave/log.hpp"
#include "kgwave/period.hpp"
#include "kgwave/spectra.hpp"
#include "kgwave/stability.hpp"
#include "kgwave/waves.hpp"

namespace kgwave::cli {
namespace {

using nlohmann::json;

// Flags every subcommand accepts.
struct Common {
  std::string format = "csv";
  std::string out;
  std::uint64_t seed = 0;
  unsigned jobs = 1;

  [[nodiscard]] bool is_json() const { return format == "json"; }
  [[nodiscard]] std::string path(const std::string& command) const {
    return out.empty() ? "kgwave_" + command + "." + format : out;
  }
};

// One wave, named by (k, L0, kappa), (k, omega, B) or (k, omega, L0).
struct WaveFlags {
  int k = 1;
  double L0 = 0.0;
  double kappa = 0.0;
  double omega = 0.0;
  double B = 0.0;
  std::size_t N = kDefaultGridSize;
  CLI::Option* L0_opt = nullptr;
  CLI::Option* kappa_opt = nullptr;
  CLI::Option* omega_opt = nullptr;
  CLI::Option* B_opt = nullptr;

  [[nodiscard]] bool has_L0() const { return L0_opt->count() > 0; }
  [[nodiscard]] bool has_kappa() const { return kappa_opt->count() > 0; }
  [[nodiscard]] bool has_omega() const { return omega_opt->count() > 0; }
  [[nodiscard]] bool has_B() const { return B_opt->count() > 0; }
};

std::string brief(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

void add_common(CLI::App* app, Common& c) {
  app->add_option("--format", c.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  app->add_option("--out", c.out,
                  "Output file (default kgwave_<command>.<format>)");
  app->add_option("--seed", c.seed, "Seed for random perturbations")
      ->capture_default_str();
  app->add_option("--jobs", c.jobs, "Worker threads for sweeps")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
}

void add_wave_flags(CLI::App* app, WaveFlags& w) {
  app->add_option("--k", w.k, "Nonlinearity exponent, phi^{2k+1}")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  w.L0_opt = app->add_option("--L0", w.L0, "Period")
                 ->check(CLI::PositiveNumber);
  w.kappa_opt = app->add_option("--kappa", w.kappa,
                                "Elliptic modulus of the closed-form wave");
  w.omega_opt = app->add_option("--omega", w.omega, "omega = 1 - c^2")
                    ->check(CLI::PositiveNumber);
  w.B_opt = app->add_option("--B", w.B, "Energy level in (0, B_omega)");
  w.kappa_opt->excludes(w.omega_opt)->excludes(w.B_opt);
  w.B_opt->excludes(w.L0_opt);
  app->add_option("--N", w.N, "Grid points")->capture_default_str();
}

PeriodicWave build_wave(const WaveFlags& w) {
  if (w.has_kappa()) {
    if (!w.has_L0()) throw UsageError("--kappa needs --L0");
    if (w.k != 1 && w.k != 2) {
      throw UsageError("--kappa names a closed-form wave; these exist for "
                       "--k 1 and --k 2 only");
    }
    const Modulus m(w.kappa);
    return w.k == 1 ? explicit_phi4(w.L0, m, w.N) : explicit_phi6(w.L0, m, w.N);
  }
  if (w.has_omega() && w.has_B()) return wave_from_energy(w.k, w.omega, w.B, w.N);
  if (w.has_omega() && w.has_L0()) {
    return wave_from_energy(w.k, w.omega,
                            energy_from_period(w.k, w.omega, w.L0), w.N);
  }
  throw UsageError(
      "name the wave by --kappa with --L0, or by --omega with --B or --L0");
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error("cannot open '" + path + "' for writing");
  f << content;
  f.close();
  if (!f) throw Error("write to '" + path + "' failed");
}

std::string sidecar(const std::string& path, const char* suffix) {
  std::filesystem::path p(path);
  p.replace_extension(suffix);
  return p.string();
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

// wave

struct WaveCommand {
  Common common;
  WaveFlags flags;
};

int cmd_wave(const WaveCommand& cmd, std::ostream& out) {
  const PeriodicWave wave = build_wave(cmd.flags);
  const WaveParams& p = wave.params();
  const std::string path = cmd.common.path("wave");
  json params = wave_to_json(wave);
  params.erase("h");
  params.erase("hprime");
  params["energy_bound"] = p.energy_bound();
  params["quadrature_defect"] = wave.quadrature_defect();
  params["oddness_defect"] = wave.oddness_defect();

  std::string written = path;
  if (cmd.common.is_json()) {
    json j = wave_to_json(wave);
    j["energy_bound"] = params["energy_bound"];
    j["quadrature_defect"] = params["quadrature_defect"];
    j["oddness_defect"] = params["oddness_defect"];
    write_file(path, dump(j));
  } else {
    std::ostringstream csv;
    write_wave_csv(csv, wave);
    write_file(path, csv.str());
    const std::string params_path = sidecar(path, ".params.json");
    write_file(params_path, dump(params));
    written += ", " + params_path;
  }
  out << "wave: k=" << p.k << " omega=" << brief(p.omega)
      << " B=" << brief(p.B) << " L=" << brief(p.L);
  if (p.c) out << " c=" << brief(*p.c);
  out << " origin=" << to_string(wave.origin()) << "\n";
  out << "residual = " << sci(wave.diagnostics().residual) << "\n";
  if (wave.diagnostics().amplitude_fallback) {
    out << "note: closed-form amplitude replaced by the coefficient-matched "
           "value\n";
  }
  out << "wrote " << written << "\n";
  return kExitOk;
}

// period-sweep

struct PeriodSweepCommand {
  Common common;
  std::vector<int> ks{1, 2, 3, 5};
  std::vector<double> omegas{0.25, 1.0, 4.0};
  std::vector<double> fractions{0.1, 0.5, 0.9};
  std::vector<double> levels;
  std::string fraction_range;
  std::size_t N = kDefaultGridSize;
  CLI::Option* fraction_opt = nullptr;
  CLI::Option* levels_opt = nullptr;
  CLI::Option* range_opt = nullptr;
};

struct SweepRow {
  int k = 0;
  double omega = 0.0;
  double B = 0.0;
  double fraction = 0.0;
  std::string status = "ok";
  std::string detail;
  PeriodMapSample sample;
  ThetaResult theta;
  double defect = 0.0;  // |L_B + theta| / |theta|
};

SweepRow sweep_point(int k, double omega, double B, double fraction,
                     std::size_t N) {
  SweepRow r;
  r.k = k;
  r.omega = omega;
  r.B = B;
  r.fraction = fraction;
  if (!(fraction > 0.0 && fraction < 1.0)) {
    r.status = "skipped";
    r.detail = "B outside (0, B_omega)";
    return r;
  }
  try {
    r.sample = sample_period_map(k, omega, B);
    r.theta = theta(wave_from_energy(k, omega, B, N));
    r.defect = std::abs(r.sample.L_B.value + r.theta.theta) /
               std::abs(r.theta.theta);
  } catch (const StencilError& e) {
    r.status = "skipped";
    r.detail = e.what();
  } catch (const Error& e) {
    r.status = "error";
    r.detail = e.what();
  }
  return r;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string s =
      "k,omega,B,B_fraction,L_quad,L_shoot,L_B,L_B_half,theta,"
      "rel_defect,status\n";
  for (const SweepRow& r : rows) {
    s += std::to_string(r.k) + ',' + format_double(r.omega) + ',' +
         format_double(r.B) + ',' + format_double(r.fraction) + ',';
    if (r.status == "ok") {
      s += format_double(r.sample.L_quadrature) + ',' +
           format_double(r.sample.L_shooting) + ',' +
           format_double(r.sample.L_B.value) + ',' +
           format_double(r.sample.L_B.half_step_value) + ',' +
           format_double(r.theta.theta) + ',' + format_double(r.defect) + ',';
    } else {
      s += ",,,,,,";
    }
    s += r.status + '\n';
  }
  return s;
}

json sweep_json(const std::vector<SweepRow>& rows) {
  json arr = json::array();
  for (const SweepRow& r : rows) {
    json j{{"k", r.k},
           {"omega", r.omega},
           {"B", r.B},
           {"B_fraction", r.fraction},
           {"status", r.status}};
    if (r.status == "ok") {
      j["L_quad"] = r.sample.L_quadrature;
      j["L_shoot"] = r.sample.L_shooting;
      j["L_B"] = r.sample.L_B.value;
      j["L_B_half"] = r.sample.L_B.half_step_value;
      j["L_B_richardson_ok"] = r.sample.L_B.richardson_ok;
      j["theta"] = r.theta.theta;
      j["rel_defect"] = r.defect;
      j["wronskian_drift"] = r.theta.wronskian_drift;
    } else {
      j["detail"] = r.detail;
    }
    arr.push_back(std::move(j));
  }
  return {{"rows", arr}};
}

int cmd_period_sweep(const PeriodSweepCommand& cmd, std::ostream& out) {
  if (cmd.levels_opt->count() > 0 &&
      (cmd.ks.size() != 1 || cmd.omegas.size() != 1)) {
    throw UsageError("--B needs a single --k and a single --omega");
  }
  std::vector<double> fractions = cmd.fractions;
  if (cmd.range_opt->count() > 0) fractions = parse_grid(cmd.fraction_range);

  struct Point {
    int k;
    double omega;
    double B;
    double fraction;
  };
  std::vector<Point> points;
  for (int k : cmd.ks) {
    for (double omega : cmd.omegas) {
      const double bound = energy_bound(k, omega);
      if (cmd.levels_opt->count() > 0) {
        for (double B : cmd.levels) points.push_back({k, omega, B, B / bound});
      } else {
        for (double f : fractions) points.push_back({k, omega, f * bound, f});
      }
    }
  }

  std::vector<SweepRow> rows(points.size());
  parallel_for(points.size(), cmd.common.jobs, [&](std::size_t i) {
    const Point& p = points[i];
    rows[i] = sweep_point(p.k, p.omega, p.B, p.fraction, cmd.N);
  });

  const std::string path = cmd.common.path("period-sweep");
  write_file(path, cmd.common.is_json() ? dump(sweep_json(rows))
                                        : sweep_csv(rows));

  std::size_t ok = 0;
  std::size_t skipped = 0;
  std::size_t failed = 0;
  bool all_positive = true;
  double worst_gap = 0.0;
  double worst_defect = 0.0;
  for (const SweepRow& r : rows) {
    if (r.status == "skipped") {
      ++skipped;
      continue;
    }
    if (r.status != "ok") {
      ++failed;
      continue;
    }
    ++ok;
    all_positive = all_positive && r.sample.L_B.value > 0.0;
    worst_gap = std::max(worst_gap, std::abs(r.sample.L_quadrature -
                                             r.sample.L_shooting) /
                                        r.sample.L_quadrature);
    worst_defect = std::max(worst_defect, r.defect);
  }
  out << "period-sweep: " << rows.size() << " rows (" << ok << " ok, "
      << skipped << " skipped, " << failed << " error)\n";
  if (ok > 0) {
    out << "L_B > 0 on every row: " << (all_positive ? "yes" : "no") << "\n"
        << "max |L_quad - L_shoot| / L = " << sci(worst_gap) << "\n"
        << "max |L_B + theta| / |theta| = " << sci(worst_defect) << "\n";
  }
  out << "wrote " << path << "\n";
  return failed == 0 ? kExitOk : kExitError;
}

// floquet

struct FloquetCommand {
  Common common;
  WaveFlags flags;
};

int cmd_floquet(const FloquetCommand& cmd, std::ostream& out) {
  const PeriodicWave wave = build_wave(cmd.flags);
  const WaveParams& p = wave.params();
  const ThetaResult t = theta(wave);
  const std::string kernel =
      kernel_dimension_criterion(t) == KernelDimension::kSimple ? "simple"
                                                                : "double";
  // L_B needs B-stencil room; report its absence rather than failing.
  std::optional<PeriodDerivative> lb;
  try {
    lb = dL_dB(p.k, p.omega, p.B);
  } catch (const StencilError&) {
  }

  const std::string path = cmd.common.path("floquet");
  if (cmd.common.is_json()) {
    json j{{"k", p.k},
           {"omega", p.omega},
           {"B", p.B},
           {"L", p.L},
           {"theta", t.theta},
           {"ybar_at_L", t.ybar_at_L},
           {"hprime_at_0", t.hprime_at_0},
           {"wronskian_drift", t.wronskian_drift},
           {"relation_defect", t.relation_defect},
           {"kernel", kernel},
           {"L_B", lb ? json(lb->value) : json(nullptr)}};
    write_file(path, dump(j));
  } else {
    std::string s =
        "k,omega,B,L,theta,ybar_at_L,hprime_at_0,wronskian_drift,"
        "relation_defect,kernel,L_B\n";
    s += std::to_string(p.k) + ',' + format_double(p.omega) + ',' +
         format_double(p.B) + ',' + format_double(p.L) + ',' +
         format_double(t.theta) + ',' + format_double(t.ybar_at_L) + ',' +
         format_double(t.hprime_at_0) + ',' + format_double(t.wronskian_drift) +
         ',' + format_double(t.relation_defect) + ',' + kernel + ',' +
         (lb ? format_double(lb->value) : std::string()) + '\n';
    write_file(path, s);
  }
  out << "floquet: theta = " << brief(t.theta) << ", periodic kernel "
      << kernel << "\n";
  if (lb) {
    out << "L_B = " << brief(lb->value) << ", |L_B + theta| / |theta| = "
        << sci(std::abs(lb->value + t.theta) / std::abs(t.theta)) << "\n";
  }
  out << "wronskian drift = " << sci(t.wronskian_drift) << "\n";
  out << "wrote " << path << "\n";
  return kExitOk;
}

// spectrum

struct SpectrumCommand {
  Common common;
  WaveFlags flags;
  std::string kind = "kg";
  std::size_t spectral_N = 256;
  bool coercivity = false;
};

OperatorKind parse_kind(const std::string& s) {
  if (s == "hill") return OperatorKind::kHill;
  if (s == "kg") return OperatorKind::kKgBlock;
  if (s == "hill-odd") return OperatorKind::kHillOdd;
  return OperatorKind::kKgBlockOdd;
}

int cmd_spectrum(const SpectrumCommand& cmd, std::ostream& out) {
  const PeriodicWave wave = build_wave(cmd.flags);
  const OperatorKind kind = parse_kind(cmd.kind);
  double c = 0.0;
  if (kind == OperatorKind::kKgBlock || kind == OperatorKind::kKgBlockOdd) {
    if (!wave.params().c) {
      throw ParameterError("omega > 1: the Klein-Gordon block needs a real "
                           "speed c = sqrt(1 - omega)");
    }
    c = *wave.params().c;
  }
  const SpectrumReport r = spectrum(kind, wave, c, cmd.spectral_N);
  std::optional<CoercivityReport> coercive;
  if (cmd.coercivity) {
    coercive = coercivity_constants(wave, cmd.common.seed, 50, cmd.spectral_N);
  }

  const std::string path = cmd.common.path("spectrum");
  if (cmd.common.is_json()) {
    json j = spectrum_to_json(r);
    j["eigenvalues"] = r.eigenvalues;
    if (coercive) j["coercivity"] = coercivity_to_json(*coercive);
    write_file(path, dump(j));
  } else {
    std::string s = "index,eigenvalue\n";
    for (std::size_t i = 0; i < r.eigenvalues.size(); ++i) {
      s += std::to_string(i) + ',' + format_double(r.eigenvalues[i]) + '\n';
    }
    write_file(path, s);
  }
  out << "spectrum: kind=" << to_string(r.kind) << " N=" << r.N
      << " n_neg=" << r.n_negative << " n_zero=" << r.n_zero << "\n";
  out << "lowest eigenvalues:";
  for (std::size_t i = 0; i < std::min<std::size_t>(4, r.eigenvalues.size());
       ++i) {
    out << ' ' << brief(r.eigenvalues[i]);
  }
  out << "\n";
  if (kind == OperatorKind::kHill || kind == OperatorKind::kKgBlock) {
    out << "zero-mode match = " << format_double(r.zero_eigenvector_match)
        << "\n";
  }
  if (coercive) {
    out << "coercivity: sigma=" << brief(coercive->sigma)
        << " gamma_tilde=" << brief(coercive->gamma_tilde)
        << " violations=" << coercive->violations << "/" << coercive->samples
        << "\n";
  }
  out << "wrote " << path << "\n";
  return kExitOk;
}

// ddc

struct DdcCommand {
  Common common;
  int k = 1;
  double L0 = 2.0 * 3.141592653589793;
  std::string kappa_grid;
  std::string omega_grid;
  std::size_t spectral_N = 256;
  CLI::Option* kappa_opt = nullptr;
  CLI::Option* omega_opt = nullptr;
};

int cmd_ddc(const DdcCommand& cmd, std::ostream& out) {
  struct Point {
    std::optional<double> kappa;
    double omega;
  };
  std::vector<Point> points;
  if (cmd.kappa_opt->count() > 0) {
    if (cmd.k != 1 && cmd.k != 2) {
      throw UsageError("--kappa-grid needs --k 1 or --k 2; use --omega-grid");
    }
    for (double kappa : parse_grid(cmd.kappa_grid)) {
      const double omega = cmd.k == 1 ? phi4_omega(cmd.L0, kappa)
                                      : phi6_omega(cmd.L0, kappa);
      points.push_back({kappa, omega});
    }
  } else if (cmd.omega_opt->count() > 0) {
    for (double omega : parse_grid(cmd.omega_grid)) {
      points.push_back({std::nullopt, omega});
    }
  } else {
    throw UsageError("give --kappa-grid or --omega-grid");
  }

  std::vector<StabilityReport> reports(points.size());
  parallel_for(points.size(), cmd.common.jobs, [&](std::size_t i) {
    reports[i] = classify(cmd.k, cmd.L0, points[i].omega, cmd.spectral_N);
    if (points[i].kappa) reports[i].kappa = points[i].kappa;
  });

  const std::string path = cmd.common.path("ddc");
  if (cmd.common.is_json()) {
    json arr = json::array();
    for (const auto& r : reports) arr.push_back(stability_to_json(r));
    write_file(path, dump(json{{"rows", arr}}));
  } else {
    std::string s = stability_csv_header() + "\n";
    for (const auto& r : reports) s += stability_csv_row(r) + "\n";
    write_file(path, s);
  }

  char line[160];
  std::snprintf(line, sizeof line, "%10s %12s %14s %16s  %s\n", "kappa",
                "omega", "d''(c)", "verdict", "note");
  out << line;
  std::size_t unstable = 0;
  std::size_t stable = 0;
  for (const auto& r : reports) {
    const std::string kappa = r.kappa ? brief(*r.kappa) : "-";
    const std::string d2 =
        r.reason.rfind("omega > 1", 0) == 0 ? "-" : brief(r.d2_direct.value);
    const std::string note =
        r.verdict == Verdict::kUndetermined ? r.reason : std::string();
    std::snprintf(line, sizeof line, "%10s %12s %14s %16s  %s\n", kappa.c_str(),
                  brief(r.omega).c_str(), d2.c_str(),
                  std::string(to_string(r.verdict)).c_str(), note.c_str());
    out << line;
    if (r.verdict == Verdict::kUnstableInX) ++unstable;
    if (r.verdict == Verdict::kStableInXOdd) ++stable;
  }
  out << "ddc: " << reports.size() << " rows, " << unstable
      << " unstable_in_X, " << stable << " stable_in_X_odd, "
      << reports.size() - unstable - stable << " undetermined\n";
  out << "wrote " << path << "\n";
  return kExitOk;
}

// evolve

struct EvolveCommand {
  Common common;
  WaveFlags flags;
  double c = 0.0;
  double epsilon = 0.0;
  std::string mode = "generic";
  double T = 200.0;
  double sample_dt = 1.0;
  double dt_factor = 0.25;
  CLI::Option* c_opt = nullptr;
};

int cmd_evolve(const EvolveCommand& cmd, std::ostream& out) {
  const WaveFlags& w = cmd.flags;
  const bool speed_only =
      cmd.c_opt->count() > 0 && !w.has_kappa() && !w.has_omega();
  // A bare --c fixes omega = 1 - c^2; the period then defaults to 8.
  const PeriodicWave wave = [&] {
    if (!speed_only) return build_wave(w);
    const double omega = 1.0 - cmd.c * cmd.c;
    const double L0 = w.has_L0() ? w.L0 : 8.0;
    return wave_from_energy(w.k, omega, energy_from_period(w.k, omega, L0),
                            w.N);
  }();
  double c = cmd.c;
  if (cmd.c_opt->count() == 0) {
    if (!wave.params().c) {
      throw ParameterError("omega > 1: no real speed for this wave");
    }
    c = *wave.params().c;
  } else if (std::abs(c * c - (1.0 - wave.params().omega)) > 1e-12) {
    throw ParameterError("--c " + format_double(c) +
                         " does not satisfy c^2 = 1 - omega for this wave");
  }

  ExperimentConfig config;
  config.c = c;
  config.epsilon = cmd.epsilon;
  config.mode = cmd.mode == "odd" ? PerturbationMode::kOdd
                                  : PerturbationMode::kGeneric;
  config.T = cmd.T;
  config.sample_dt = cmd.sample_dt;
  config.dt_factor = cmd.dt_factor;
  config.seed = cmd.common.seed;
  const OrbitTrace trace = run_experiment(wave, config);

  double max_distance = 0.0;
  for (double d : trace.distances) max_distance = std::max(max_distance, d);
  double drift = 0.0;
  if (!trace.energies.empty()) {
    const double e0 = trace.energies.front();
    for (double e : trace.energies) {
      drift = std::max(drift, std::abs(e - e0) / std::max(1.0, std::abs(e0)));
    }
  }

  const WaveParams& p = wave.params();
  json manifest{{"wave", {{"k", p.k},
                          {"omega", p.omega},
                          {"B", p.B},
                          {"L", p.L},
                          {"N", wave.size()},
                          {"origin", std::string(to_string(wave.origin()))}}},
                {"c", c},
                {"epsilon", cmd.epsilon},
                {"mode", std::string(to_string(config.mode))},
                {"T", cmd.T},
                {"sample_dt", cmd.sample_dt},
                {"dt", trace.dt},
                {"steps", trace.steps},
                {"seed", cmd.common.seed},
                {"termination", trace.termination},
                {"blew_up", trace.blew_up},
                {"max_distance", max_distance},
                {"energy_drift", drift}};
  if (config.mode == PerturbationMode::kOdd) {
    manifest["max_parity_defect"] = trace.max_parity_defect;
  }

  const std::string path = cmd.common.path("evolve");
  std::string written = path;
  if (cmd.common.is_json()) {
    json j = manifest;
    j["trace"] = {{"t", trace.times},
                  {"distance", trace.distances},
                  {"E", trace.energies},
                  {"F", trace.momenta}};
    write_file(path, dump(j));
  } else {
    std::ostringstream csv;
    write_trace_csv(csv, trace);
    write_file(path, csv.str());
    const std::string manifest_path = sidecar(path, ".manifest.json");
    write_file(manifest_path, dump(manifest));
    written += ", " + manifest_path;
  }
  out << "evolve: mode=" << to_string(config.mode) << " c=" << brief(c)
      << " epsilon=" << brief(cmd.epsilon) << " T=" << brief(cmd.T)
      << " steps=" << trace.steps << " (" << trace.termination << ")\n";
  out << "max orbit distance = " << sci(max_distance)
      << ", final = " << sci(trace.distances.empty() ? 0.0
                                                     : trace.distances.back())
      << "\n";
  out << "relative energy drift = " << sci(drift) << "\n";
  out << "wrote " << written << "\n";
  return kExitOk;
}

}  // namespace

std::vector<double> parse_grid(std::string_view spec) {
  const std::string text(spec);
  const auto bad = [&] {
    return UsageError("grid '" + text + "' is not of the form a:b:n");
  };
  const std::size_t c1 = text.find(':');
  const std::size_t c2 =
      c1 == std::string::npos ? std::string::npos : text.find(':', c1 + 1);
  if (c2 == std::string::npos || text.find(':', c2 + 1) != std::string::npos) {
    throw bad();
  }
  double a = 0.0;
  double b = 0.0;
  long n = 0;
  try {
    std::size_t used = 0;
    const std::string sa = text.substr(0, c1);
    const std::string sb = text.substr(c1 + 1, c2 - c1 - 1);
    const std::string sn = text.substr(c2 + 1);
    a = std::stod(sa, &used);
    if (used != sa.size()) throw bad();
    b = std::stod(sb, &used);
    if (used != sb.size()) throw bad();
    n = std::stol(sn, &used);
    if (used != sn.size()) throw bad();
  } catch (const std::logic_error&) {
    throw bad();
  }
  if (n < 1 || !std::isfinite(a) || !std::isfinite(b)) throw bad();
  std::vector<double> grid(static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i) {
    grid[static_cast<std::size_t>(i)] =
        n == 1 ? a : a + (b - a) * static_cast<double>(i) / (n - 1);
  }
  return grid;
}

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  configure_logging_from_env();

  CLI::App app{"Odd periodic waves of phi_tt - phi_xx - phi + phi^{2k+1} = 0",
               "kgwave"};
  app.require_subcommand(1);

  WaveCommand wave_cmd;
  auto* wave = app.add_subcommand("wave", "Build one wave; write samples and "
                                          "parameters");
  add_common(wave, wave_cmd.common);
  add_wave_flags(wave, wave_cmd.flags);

  PeriodSweepCommand sweep_cmd;
  auto* sweep = app.add_subcommand(
      "period-sweep", "Period map, L_B and theta over a (k, omega, B) grid");
  add_common(sweep, sweep_cmd.common);
  sweep->add_option("--k", sweep_cmd.ks, "Exponents")
      ->delimiter(',')
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sweep->add_option("--omega", sweep_cmd.omegas, "omega values")
      ->delimiter(',')
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sweep_cmd.fraction_opt =
      sweep->add_option("--B-fraction", sweep_cmd.fractions,
                        "Levels as fractions of B_omega")
          ->delimiter(',')
          ->capture_default_str();
  sweep_cmd.range_opt = sweep->add_option(
      "--B-range", sweep_cmd.fraction_range, "Fractions of B_omega as a:b:n");
  sweep_cmd.levels_opt =
      sweep->add_option("--B", sweep_cmd.levels, "Absolute energy levels")
          ->delimiter(',');
  sweep_cmd.fraction_opt->excludes(sweep_cmd.range_opt)
      ->excludes(sweep_cmd.levels_opt);
  sweep_cmd.range_opt->excludes(sweep_cmd.levels_opt);
  sweep->add_option("--N", sweep_cmd.N, "Grid points for theta")
      ->capture_default_str();

  FloquetCommand floquet_cmd;
  auto* floquet =
      app.add_subcommand("floquet", "theta-constant and kernel dimension");
  add_common(floquet, floquet_cmd.common);
  add_wave_flags(floquet, floquet_cmd.flags);

  SpectrumCommand spectrum_cmd;
  auto* spec = app.add_subcommand("spectrum", "Periodic spectrum of the "
                                              "linearized operators");
  add_common(spec, spectrum_cmd.common);
  add_wave_flags(spec, spectrum_cmd.flags);
  spec->add_option("--kind", spectrum_cmd.kind, "Operator")
      ->check(CLI::IsMember({"hill", "kg", "hill-odd", "kg-odd"}))
      ->capture_default_str();
  spec->add_option("--spectral-N", spectrum_cmd.spectral_N,
                   "Collocation points of the operator")
      ->capture_default_str();
  spec->add_flag("--coercivity", spectrum_cmd.coercivity,
                 "Also check the odd-sector coercivity bound (c = 0)");

  DdcCommand ddc_cmd;
  auto* ddc = app.add_subcommand("ddc", "Stability index d''(c) and verdict "
                                        "along the fixed-period family");
  add_common(ddc, ddc_cmd.common);
  ddc->add_option("--k", ddc_cmd.k, "Nonlinearity exponent")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  ddc->add_option("--L0", ddc_cmd.L0, "Period")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  ddc_cmd.kappa_opt = ddc->add_option("--kappa-grid", ddc_cmd.kappa_grid,
                                      "Closed-form moduli as a:b:n");
  ddc_cmd.omega_opt =
      ddc->add_option("--omega-grid", ddc_cmd.omega_grid, "omega as a:b:n");
  ddc_cmd.kappa_opt->excludes(ddc_cmd.omega_opt);
  ddc->add_option("--spectral-N", ddc_cmd.spectral_N,
                  "Collocation points for the inertial index")
      ->capture_default_str();

  EvolveCommand evolve_cmd;
  auto* evolve = app.add_subcommand(
      "evolve", "Evolve a perturbed wave and trace its orbit distance");
  add_common(evolve, evolve_cmd.common);
  add_wave_flags(evolve, evolve_cmd.flags);
  evolve_cmd.c_opt = evolve->add_option(
      "--c", evolve_cmd.c, "Speed; alone it fixes omega = 1 - c^2, L0 = 8");
  evolve->add_option("--epsilon", evolve_cmd.epsilon, "Perturbation size")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  evolve->add_option("--mode", evolve_cmd.mode, "Perturbation direction")
      ->check(CLI::IsMember({"generic", "odd"}))
      ->capture_default_str();
  evolve->add_option("--T", evolve_cmd.T, "Final time")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  evolve->add_option("--sample-dt", evolve_cmd.sample_dt, "Trace spacing")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  evolve->add_option("--dt-factor", evolve_cmd.dt_factor, "dt / dx")
      ->check(CLI::Range(1e-6, 0.5))
      ->capture_default_str();

  // CLI11 consumes its argument vector from the back.
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  CLI::App* active = app.get_subcommands().front();
  try {
    if (active == wave) return cmd_wave(wave_cmd, out);
    if (active == sweep) return cmd_period_sweep(sweep_cmd, out);
    if (active == floquet) return cmd_floquet(floquet_cmd, out);
    if (active == spec) return cmd_spectrum(spectrum_cmd, out);
    if (active == ddc) return cmd_ddc(ddc_cmd, out);
    return cmd_evolve(evolve_cmd, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n\n" << active->help();
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
}

}  // namespace kgwave::cli
