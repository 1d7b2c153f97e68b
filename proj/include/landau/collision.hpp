#pragma once

#include "landau/coefficients.hpp"
#include "landau/phase_state.hpp"

#include <array>
#include <span>
#include <vector>

namespace landau {

enum class CollisionForm { divergence, nonconservative };

struct CollisionOutput {
    std::vector<double> q_values;
    CollisionForm form = CollisionForm::divergence;
};

/// Coefficients of one spatial cell: component c over the velocity cells at
/// coeffs[c * n_v^{d_v} + iv], as produced by SliceConvolver.
///
/// Q = ∂_i(ā_ij ∂_j f − b̄_i f) with face fluxes: arithmetic-mean ā and b̄,
/// one-sided normal difference, tangential differences averaged from the
/// two adjacent cells, and zero flux through the velocity-box boundary.
/// Cells outside the box count as f = 0.
CollisionOutput apply_collision_divergence(std::span<const double> f_slice, std::span<const double> coeffs,
                                           const Grid &grid);

/// Q = ā_ij D²_ij f − c̄ f with centred second differences.
CollisionOutput apply_collision_nonconservative(std::span<const double> f_slice, std::span<const double> coeffs,
                                                const Grid &grid);

/// Whole-field versions over every spatial cell.
CollisionOutput apply_collision(const DistributionField &f, const CoefficientFields &c, CollisionForm form);

struct Moments {
    double mass = 0.0;
    std::array<double, 3> momentum{};
    double energy = 0.0;
};

/// Σ f Δv^{d_v}, Σ v f Δv^{d_v}, Σ ½|v|² f Δv^{d_v} over one velocity slice.
Moments conserved_moments(std::span<const double> f_slice, const Grid &grid);

/// Moments integrated over the whole phase-space grid (weights Δx^{d_x}).
Moments total_moments(const DistributionField &f);

/// Σ f log f Δx^{d_x} Δv^{d_v}, with 0 log 0 = 0 (non-positive values skipped).
double h_functional(const DistributionField &f);

} // namespace landau
