#pragma once

#include "landau/kernel.hpp"
#include "landau/phase_state.hpp"

#include <array>
#include <limits>
#include <string>
#include <vector>

namespace landau {

struct HierarchyParams {
    double gamma = -1.0;
    double delta = 0.1;
    int M_max = 0;
    int M_int = 0;
    std::vector<double> zeta;  ///< k = 0..M_max−4
    std::vector<double> theta; ///< k = 0..M_max−4
    double p_star = std::numeric_limits<double>::infinity();
    double p_star_star = 0.0;
};

/// Throws GammaOutOfRange unless γ ∈ (−2, 0).
HierarchyParams hierarchy_params(double gamma);

/// ∂_x^α ∂_v^β Y^σ with Y_i = t∂_{x_i} + ∂_{v_i}; α has d_x entries, β and σ
/// have d_v entries. Directions i ≥ d_x of Y carry no x part.
struct Derivative {
    std::array<int, 3> alpha{};
    std::array<int, 3> beta{};
    std::array<int, 3> sigma{};

    [[nodiscard]] int order() const { return abs_alpha() + abs_beta() + abs_sigma(); }
    [[nodiscard]] int abs_alpha() const { return alpha[0] + alpha[1] + alpha[2]; }
    [[nodiscard]] int abs_beta() const { return beta[0] + beta[1] + beta[2]; }
    [[nodiscard]] int abs_sigma() const { return sigma[0] + sigma[1] + sigma[2]; }
};

/// Every derivative of total order k on the grid's dimensions.
std::vector<Derivative> derivatives_of_order(const Grid &g, int k);

/// Centred differences (periodic in x, zero outside the velocity box).
std::vector<double> apply_derivative(const DistributionField &g, const Derivative &D, int max_order = 2);

struct NormOptions {
    int max_order = 2; ///< K_diag
    /// Cells where |D g| is below this fraction of its grid maximum are
    /// treated as zero (transform round-off times large ⟨x − tv⟩ powers).
    double noise_floor = 0.0;
};

/// sup (1+t)^{−ζ−|β|} ⟨v⟩^{1−θ} ⟨x−tv⟩^{M_max+5−|σ|} |∂^α∂^β Y^σ g|.
/// Throws OrderTooHigh when D exceeds opts.max_order.
double z_norm(const DistributionField &g, const Derivative &D, const HierarchyParams &hp, double zeta, double theta,
              const NormOptions &opts = {});

struct EnergyPieces {
    double fixed = 0.0; ///< (1+t)^{−|β|} ‖⟨x−tv⟩^{M_max+5−|σ|} D g‖_{L²}
    double rate = 0.0;  ///< (1+t)^{−1−δ} ‖⟨v⟩ (same)‖²_{L²}, the running integrand
};

EnergyPieces energy_pieces(const DistributionField &g, const Derivative &D, const HierarchyParams &hp,
                           const NormOptions &opts = {});

/// Trapezoid accumulation of the running energy piece over output times.
class EnergyTracker {
public:
    /// Adds a sample at time t; returns the running piece ‖·‖_{L²_t L²_x L²_v}.
    double add(double t, double rate);
    [[nodiscard]] double running() const;

private:
    bool started_ = false;
    double t_last_ = 0.0;
    double rate_last_ = 0.0;
    double integral_ = 0.0;
};

/// (fixed-time piece, running piece), advancing `tracker` by one sample.
std::pair<double, double> e_norm(const DistributionField &g, const Derivative &D, const HierarchyParams &hp,
                                 EnergyTracker &tracker, const NormOptions &opts = {});

struct MacroFields {
    std::vector<double> rho;
    std::vector<double> momentum; ///< d_v entries per spatial cell
    std::vector<double> energy;
    double rho_sup = 0.0;
    double m_sup = 0.0; ///< sup of |m|
    double e_sup = 0.0;
};

MacroFields macroscopic_fields(const DistributionField &f);

struct FitResult {
    double slope = 0.0;
    double stderr_ = 0.0;
    int points = 0;
};

/// Least-squares slope of log(value) against log(1+t) for t in [t_lo, t_hi].
/// Throws InsufficientPoints (< 5 points) and NonPositiveValue.
FitResult fit_decay_rate(const std::vector<double> &t, const std::vector<double> &values, double t_lo, double t_hi);

/// slope(plain) − slope(weighted) of the two ā sup-norm series.
double null_structure_gain(const std::vector<double> &t, const std::vector<double> &plain,
                           const std::vector<double> &weighted, double t_lo, double t_hi);

/// sup ⟨v⟩^ℓ ⟨x⟩^m |a − b|. Throws GridMismatch.
double sharp_cauchy_diff(const DistributionField &a, const DistributionField &b, double ell, double m);

struct DiagnosticRecord {
    double t = 0.0;
    double mass = 0.0;
    std::array<double, 3> momentum{};
    double energy = 0.0;
    double rho_sup = 0.0;
    double m_sup = 0.0;
    double e_sup = 0.0;
    std::vector<std::array<double, 2>> E_norms; ///< per order k: (fixed, running)
    std::vector<double> Z_norms;                ///< per order k: max over derivatives of that order
    double a_bar_plain_sup = 0.0;
    double a_bar_weighted_sup = 0.0;
    double c_bar_sup = 0.0;
    double null_term_sup = 0.0;
    double sharp_diff_vs_t0 = 0.0;
    double h_value = 0.0;
    double clipped_mass = 0.0;
};

struct DiagnosticSettings {
    double gamma = -1.0;
    double d0 = 0.1;
    int K_diag = 2;
    double sharp_v_power = 2.0;   ///< ℓ in sharp_diff_vs_t0
    double sharp_x_power = 2.0;   ///< m in sharp_diff_vs_t0
    double noise_floor = 1e-12;
    bool coefficients = true;     ///< ā, c̄ and null-term series (costly)
};

/// Stateful record builder: keeps f♯ of the initial data and the running
/// energy integrals.
class DiagnosticsRecorder {
public:
    DiagnosticsRecorder(const DistributionField &initial, const DiagnosticSettings &settings);

    DiagnosticRecord record(const DistributionField &f, double clipped_mass);
    [[nodiscard]] const HierarchyParams &hierarchy() const { return hp_; }

private:
    DiagnosticSettings settings_;
    HierarchyParams hp_;
    DistributionField sharp0_;
    std::vector<EnergyTracker> trackers_;
};

} // namespace landau
