#pragma once

// CSV and JSON serialization. Floats are written with 17 significant digits.

#include <iosfwd>
#include <string>

#include <nlohmann/json.hpp>

#include "kgwave/evolve.hpp"
#include "kgwave/period.hpp"
#include "kgwave/spectra.hpp"
#include "kgwave/stability.hpp"
#include "kgwave/waves.hpp"

namespace kgwave {

// "%.17g"
std::string format_double(double x);

std::string_view to_string(WaveOrigin origin);

// Columns x, h, hprime.
void write_wave_csv(std::ostream& out, const PeriodicWave& wave);

nlohmann::json wave_to_json(const PeriodicWave& wave);
// Inverse of wave_to_json; throws ParameterError on malformed input.
PeriodicWave wave_from_json(const nlohmann::json& j);

// {kind, k, omega, B, c, N, eigenvalues[0..10], n_negative, n_zero,
//  zero_match, tol_zero}
nlohmann::json spectrum_to_json(const SpectrumReport& r);

nlohmann::json stability_to_json(const StabilityReport& r);
// k, L0, kappa, omega, c, d2_direct, d2_closed, d2_simplified, beta,
// tau_sign, n_neg, n_zero, verdict
std::string stability_csv_header();
std::string stability_csv_row(const StabilityReport& r);

// t, distance, E, F
void write_trace_csv(std::ostream& out, const OrbitTrace& trace);

nlohmann::json coercivity_to_json(const CoercivityReport& r);

}  // namespace kgwave
