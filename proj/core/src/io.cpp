#include "kgwave/io.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "kgwave/errors.hpp"

namespace kgwave {
namespace {

nlohmann::json optional_json(const std::optional<double>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

std::string optional_csv(const std::optional<double>& v) {
  return v ? format_double(*v) : std::string();
}

WaveOrigin origin_from_string(const std::string& s) {
  if (s == "explicit_phi4") return WaveOrigin::kExplicitPhi4;
  if (s == "explicit_phi6") return WaveOrigin::kExplicitPhi6;
  if (s == "shooting") return WaveOrigin::kShooting;
  if (s == "user") return WaveOrigin::kUser;
  throw ParameterError("unknown wave origin '" + s + "'");
}

}  // namespace

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string_view to_string(WaveOrigin origin) {
  switch (origin) {
    case WaveOrigin::kExplicitPhi4:
      return "explicit_phi4";
    case WaveOrigin::kExplicitPhi6:
      return "explicit_phi6";
    case WaveOrigin::kShooting:
      return "shooting";
    case WaveOrigin::kUser:
      return "user";
  }
  return "user";
}

void write_wave_csv(std::ostream& out, const PeriodicWave& wave) {
  out << "x,h,hprime\n";
  for (std::size_t j = 0; j < wave.size(); ++j) {
    out << format_double(wave.x(j)) << ',' << format_double(wave.h()[j]) << ','
        << format_double(wave.hprime()[j]) << '\n';
  }
}

nlohmann::json wave_to_json(const PeriodicWave& wave) {
  const WaveParams& p = wave.params();
  const WaveDiagnostics& d = wave.diagnostics();
  nlohmann::json j;
  j["params"] = {{"k", p.k},
                 {"omega", p.omega},
                 {"B", p.B},
                 {"L", p.L},
                 {"A", p.quadrature_constant()},
                 {"kappa", optional_json(p.kappa)},
                 {"c", optional_json(p.c)}};
  j["origin"] = std::string(to_string(wave.origin()));
  j["diagnostics"] = {{"residual", d.residual},
                      {"amplitude", d.amplitude},
                      {"formula_amplitude", d.formula_amplitude},
                      {"amplitude_fallback", d.amplitude_fallback}};
  j["N"] = wave.size();
  j["h"] = std::vector<double>(wave.h().begin(), wave.h().end());
  j["hprime"] = std::vector<double>(wave.hprime().begin(), wave.hprime().end());
  return j;
}

PeriodicWave wave_from_json(const nlohmann::json& j) {
  try {
    const auto& p = j.at("params");
    WaveParams params;
    params.k = p.at("k").get<int>();
    params.omega = p.at("omega").get<double>();
    params.B = p.at("B").get<double>();
    params.L = p.at("L").get<double>();
    if (p.contains("kappa") && !p["kappa"].is_null()) {
      params.kappa = p["kappa"].get<double>();
    }
    if (p.contains("c") && !p["c"].is_null()) params.c = p["c"].get<double>();
    WaveDiagnostics diag;
    if (j.contains("diagnostics")) {
      const auto& d = j["diagnostics"];
      diag.residual = d.value("residual", 0.0);
      diag.amplitude = d.value("amplitude", 0.0);
      diag.formula_amplitude = d.value("formula_amplitude", 0.0);
      diag.amplitude_fallback = d.value("amplitude_fallback", false);
    }
    const WaveOrigin origin =
        origin_from_string(j.value("origin", std::string("user")));
    return PeriodicWave(params, j.at("h").get<std::vector<double>>(),
                        j.at("hprime").get<std::vector<double>>(), origin, diag);
  } catch (const nlohmann::json::exception& e) {
    throw ParameterError(std::string("malformed wave JSON: ") + e.what());
  }
}

nlohmann::json spectrum_to_json(const SpectrumReport& r) {
  const std::size_t shown = std::min<std::size_t>(r.eigenvalues.size(), 11);
  return {{"kind", std::string(to_string(r.kind))},
          {"k", r.k},
          {"omega", r.omega},
          {"B", r.B},
          {"c", r.c},
          {"N", r.N},
          {"eigenvalues", std::vector<double>(r.eigenvalues.begin(),
                                              r.eigenvalues.begin() +
                                                  static_cast<std::ptrdiff_t>(shown))},
          {"n_negative", r.n_negative},
          {"n_zero", r.n_zero},
          {"zero_match", r.zero_eigenvector_match},
          {"tol_zero", r.tol_zero}};
}

nlohmann::json stability_to_json(const StabilityReport& r) {
  auto est = [](const Estimate& e) {
    return nlohmann::json{{"value", e.value},
                          {"half_step_value", e.half_step_value},
                          {"richardson_ok", e.richardson_ok}};
  };
  return {{"k", r.k},
          {"L0", r.L0},
          {"kappa", optional_json(r.kappa)},
          {"omega", r.omega},
          {"c", r.c},
          {"B", r.B},
          {"A", r.omega * r.B},
          {"d2_direct", est(r.d2_direct)},
          {"d2_closed", optional_json(r.d2_closed)},
          {"d2_simplified", est(r.d2_simplified)},
          {"p", optional_json(r.p)},
          {"q", optional_json(r.q)},
          {"beta", optional_json(r.beta)},
          {"tau", optional_json(r.tau)},
          {"n_negative", r.n_negative},
          {"n_zero", r.n_zero},
          {"sigma", optional_json(r.sigma)},
          {"verdict", std::string(to_string(r.verdict))},
          {"reason", r.reason}};
}

std::string stability_csv_header() {
  return "k,L0,kappa,omega,c,d2_direct,d2_closed,d2_simplified,beta,tau_sign,"
         "n_neg,n_zero,verdict";
}

std::string stability_csv_row(const StabilityReport& r) {
  std::string tau_sign;
  if (r.tau) tau_sign = *r.tau > 0.0 ? "1" : (*r.tau < 0.0 ? "-1" : "0");
  std::string row;
  row += std::to_string(r.k) + ',' + format_double(r.L0) + ',' +
         optional_csv(r.kappa) + ',' + format_double(r.omega) + ',' +
         format_double(r.c) + ',' + format_double(r.d2_direct.value) + ',' +
         optional_csv(r.d2_closed) + ',' + format_double(r.d2_simplified.value) +
         ',' + optional_csv(r.beta) + ',' + tau_sign + ',' +
         std::to_string(r.n_negative) + ',' + std::to_string(r.n_zero) + ',' +
         std::string(to_string(r.verdict));
  return row;
}

void write_trace_csv(std::ostream& out, const OrbitTrace& trace) {
  out << "t,distance,E,F\n";
  for (std::size_t i = 0; i < trace.times.size(); ++i) {
    out << format_double(trace.times[i]) << ','
        << format_double(trace.distances[i]) << ','
        << format_double(trace.energies[i]) << ','
        << format_double(trace.momenta[i]) << '\n';
  }
}

nlohmann::json coercivity_to_json(const CoercivityReport& r) {
  return {{"sigma", r.sigma},
          {"M_k", r.M_k},
          {"chain_feasible", r.chain_feasible},
          {"a", r.a},
          {"b", r.b},
          {"gamma_interpolation", r.gamma_interpolation},
          {"gamma", r.gamma},
          {"gamma_tilde", r.gamma_tilde},
          {"samples", r.samples},
          {"violations", r.violations},
          {"min_ratio", r.min_ratio}};
}

}  // namespace kgwave
