#pragma once

#include "landau/diagnostics.hpp"
#include "landau/kernel.hpp"
#include "landau/phase_state.hpp"
#include "landau/stepper.hpp"

#include <json.hpp>

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace landau {

enum class InitialKind { gaussian, seed, maxwellian };

/// One localized bump ε·w·e^{−|x−x₀|²/s_x² − |v−u|²/s_v²}.
struct Bump {
    std::array<double, 3> x0{};
    std::array<double, 3> u{};
    double s_x = 1.0;
    double s_v = 1.0;
    double weight = 1.0;
};

struct SimulationConfig {
    double gamma = -1.0;
    double d0 = 0.1;
    double epsilon = 1e-3;
    int d_x = 1;
    int d_v = 2;
    int n_x = 64;
    int n_v = 16;
    double L_x = 64.0;
    double v_max = 6.0;
    double t_final = 10.0;
    double cfl_safety = 0.5;
    double dt_max = 0.5;
    double output_every = 1.0;
    bool collisions = true;
    CollisionForm form = CollisionForm::divergence;

    InitialKind initial_kind = InitialKind::gaussian;
    nlohmann::json initial_parameters = nlohmann::json::object();

    int K_diag = 2;
    std::array<double, 2> fit_window{5.0, 8.0};
    double weight_v_power = 2.0;
    double weight_x_power = 2.0;
    bool coefficient_diagnostics = true;

    std::uint64_t seed = 0;
    std::string output_directory = "landau-out";
    double checkpoint_every = 0.0; ///< 0 disables periodic checkpoints

    [[nodiscard]] Grid grid() const;
    [[nodiscard]] KernelParams kernel() const;
    [[nodiscard]] StepControl control() const;
    [[nodiscard]] DiagnosticSettings diagnostics() const;
    /// Bumps of the gaussian / seed data (empty for maxwellian).
    [[nodiscard]] std::vector<Bump> bumps() const;
};

/// Reads JSON (see README for the schema). Throws ParseError with the line
/// of malformed text, ConfigInvalid naming the violated gate.
SimulationConfig parse_config(const std::string &path);
SimulationConfig parse_config_text(const std::string &text);

/// Gate checks: γ range, dimensions, no-wrap, Gaussian-dominated data and
/// boundary smallness. Throws ConfigInvalid.
void validate(const SimulationConfig &config);

/// f_in sampled on the config grid at t = 0.
DistributionField initial_data(const SimulationConfig &config);

} // namespace landau
