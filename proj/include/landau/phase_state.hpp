#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace landau {

/// Uniform phase-space grid: periodic spatial box x ∈ [−L_x/2, L_x/2)^{d_x}
/// with nodes x_i = −L_x/2 + iΔx, and a truncated velocity box
/// v ∈ [−v_max, v_max)^{d_v} with cell centres v_j = −v_max + (j + ½)Δv.
/// d_x = 0 is the spatially homogeneous mode (one spatial cell).
struct Grid {
    int d_x = 0;
    int d_v = 2;
    int n_x = 1;
    int n_v = 16;
    double L_x = 1.0;
    double v_max = 6.0;

    /// Validated construction; throws InvalidGrid. d_v = 1 is accepted for
    /// transport-only use; the collision path requires d_v ∈ {2, 3}.
    static Grid make(int d_x, int d_v, int n_x, int n_v, double L_x, double v_max);

    [[nodiscard]] double dx() const { return L_x / n_x; }
    [[nodiscard]] double dv() const { return 2.0 * v_max / n_v; }
    [[nodiscard]] std::size_t spatial_cells() const;
    [[nodiscard]] std::size_t velocity_cells() const;
    [[nodiscard]] std::size_t size() const { return spatial_cells() * velocity_cells(); }
    /// Δx^{d_x} Δv^{d_v}
    [[nodiscard]] double cell_volume() const;
    [[nodiscard]] double velocity_volume() const;
    [[nodiscard]] double spatial_volume() const;

    [[nodiscard]] double x_node(int i) const { return -0.5 * L_x + i * dx(); }
    [[nodiscard]] double v_center(int j) const { return -v_max + (j + 0.5) * dv(); }

    /// Coordinates of spatial cell `ix` (first d_x entries used).
    [[nodiscard]] std::array<double, 3> position(std::size_t ix) const;
    /// Coordinates of velocity cell `iv` (first d_v entries used).
    [[nodiscard]] std::array<double, 3> velocity(std::size_t iv) const;
    /// Per-axis indices of velocity cell `iv` (last axis fastest).
    [[nodiscard]] std::array<int, 3> velocity_index(std::size_t iv) const;
    [[nodiscard]] std::array<int, 3> spatial_index(std::size_t ix) const;

    [[nodiscard]] bool operator==(const Grid &) const = default;
};

/// Sampled f(t, x, v) ≥ 0, spatial-cell-major with velocity contiguous:
/// values[ix * velocity_cells() + iv].
struct DistributionField {
    Grid grid;
    double time = 0.0;
    std::vector<double> values;

    DistributionField() = default;
    explicit DistributionField(const Grid &g, double t = 0.0) : grid(g), time(t), values(g.size(), 0.0) {}

    [[nodiscard]] std::span<double> slice(std::size_t ix)
    {
        return {values.data() + ix * grid.velocity_cells(), grid.velocity_cells()};
    }
    [[nodiscard]] std::span<const double> slice(std::size_t ix) const
    {
        return {values.data() + ix * grid.velocity_cells(), grid.velocity_cells()};
    }
    [[nodiscard]] double max_abs() const;
    /// True when every value is finite.
    [[nodiscard]] bool finite() const;
};

/// Weight ⟨v⟩^ℓ ⟨x − tv⟩^m e^{d(t)⟨v⟩²} (the Gaussian factor optional).
struct WeightSpec {
    int v_power = 0;
    double xtv_power = 0.0;
    bool gaussian = false;
    double d0 = 0.1;
    double delta = 0.1;

    /// δ = min{(2 + γ)/4, 1/10}.
    static double delta_for(double gamma);
    static WeightSpec from_gamma(double gamma, double d0, int v_power = 0, double xtv_power = 0.0,
                                 bool gaussian = false);
};

/// ⟨u⟩ = (1 + |u|²)^{1/2}
double japanese(std::span<const double> u);

/// d(t) = d0 (1 + (1 + t)^{−δ})
double gaussian_exponent(double t, const WeightSpec &spec);

/// x − tv with the periodic minimal image on a box of side L_x (L_x ≤ 0 for
/// no wrap). Uses the first x.size() components of v; directions beyond d_x
/// are spatially homogeneous and carry no transport.
std::array<double, 3> x_minus_tv(double t, std::span<const double> x, std::span<const double> v, double L_x);

double weight_value(double t, std::span<const double> x, std::span<const double> v, const WeightSpec &spec,
                    double L_x = 0.0);

/// g = e^{d(t)⟨v⟩²} f. Throws Overflow when the factor leaves double range
/// anywhere on the velocity box.
DistributionField to_g(const DistributionField &f, const WeightSpec &spec);
DistributionField from_g(const DistributionField &g, const WeightSpec &spec);

} // namespace landau
