#pragma once

#include "landau/config.hpp"
#include "landau/diagnostics.hpp"
#include "landau/oracles.hpp"

#include <string>
#include <vector>

namespace landau {

/// One pass/fail line of a report. `pass` means |value − target| ≤ tolerance
/// for two-sided checks and value ≥ target − tolerance for lower bounds.
struct Check {
    std::string name;
    double value = 0.0;
    double target = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::string detail;
};

bool all_pass(const std::vector<Check> &checks);
Check two_sided(std::string name, double value, double target, double tolerance, std::string detail = {});
Check at_least(std::string name, double value, double bound, std::string detail = {});
Check at_most(std::string name, double value, double bound, std::string detail = {});

/// Fitted slopes of the diagnostic series against the d_x-adjusted targets:
/// ρ, m, e decay like (1+t)^{−d_x}; ā (when recorded) like (1+t)^{−1} with
/// a null-structure gain of min{2+γ, 1}. Fitter errors become failed checks.
std::vector<Check> fit_report(const SimulationConfig &config, const std::vector<DiagnosticRecord> &records);

struct SeriesPoint {
    double t = 0.0;
    double value = 0.0;
    double reference = 0.0; ///< companion value (data norm, or the ε/2 run)
};

struct SeriesReport {
    std::vector<SeriesPoint> series;
    std::vector<Check> checks;
};

/// Maxwellian fit of f♯ at t = 0 and t_final (every output time when
/// `every`); value = residual, reference = data norm. Maxwellian data must
/// fit to 1e−8 of its norm; seed data must keep at least half its initial
/// relative residual.
SeriesReport maxfit_report(const SimulationConfig &config, bool every = false);

/// sup ⟨v⟩^ℓ ⟨x − tv⟩^m |f − f_free| over the output times. With `scaling`
/// the run is repeated at ε/2 (reference column) and the ratio of the
/// series maxima must reach 0.85·2^{3/2}.
SeriesReport compare_free_report(const SimulationConfig &config, bool scaling);

struct OracleResults {
    std::vector<oracles::RatioReport> interpolation;
    std::vector<oracles::DispersionPoint> dispersion;
    std::vector<oracles::RatioReport> hls;
    std::vector<Check> checks;
};

/// Interpolation sweep over the catalog and ν ∈ {0.5, 1, 1.5, 2.5}, the
/// transported-Gaussian dispersion series on [0, 100] and the HLS ratios of
/// the radial, rapidly decaying catalog entries.
OracleResults oracle_report();

} // namespace landau
