#pragma once

#include "landau/phase_state.hpp"

#include <array>
#include <span>

namespace landau {

/// M(t, x, v) = (m √det Q / (2π)^d) exp(−½ q(v, x − tv)) with the block form
///   q(v, y) = σ|v|² + 2β v·y + 2 vᵀB y + α|y|²,
/// i.e. [[σI, βI + B], [βI − B, αI]]; Q = (ασ − β²)I + B² must be positive
/// definite and B skew. The prefactor makes m the total mass.
struct TravelingMaxwellianParams {
    int d = 3;
    double m = 1.0;
    double alpha = 1.0;
    double sigma = 1.0;
    double beta = 0.0;
    std::array<double, 9> B{}; ///< row-major d×d, skew

    [[nodiscard]] double b(int i, int j) const { return B[3 * i + j]; }
    /// Sets B_ij = s and B_ji = −s.
    void set_b(int i, int j, double s);
    /// √det Q, or a non-positive value when Q is not positive definite.
    [[nodiscard]] double sqrt_det_q() const;
};

/// Throws ConstraintViolated when Q is not positive definite, α or σ are not
/// positive, m is negative, or B is not skew.
double eval_maxwellian(const TravelingMaxwellianParams &p, double t, std::span<const double> x,
                       std::span<const double> v);

/// M♯(x, v) = M(0, x, v) = M(t, x + tv, v) for every t.
double maxwellian_sharp(const TravelingMaxwellianParams &p, std::span<const double> x, std::span<const double> v);

/// Samples M♯ on the grid (d_x = d_v = d required); time stamp 0.
DistributionField sample_maxwellian_sharp(const TravelingMaxwellianParams &p, const Grid &g);

struct MaxwellianFit {
    TravelingMaxwellianParams params;
    double residual = 0.0;   ///< ‖⟨v⟩²⟨x⟩²(f♯ − M♯)‖_{L²}
    double data_norm = 0.0;  ///< ‖⟨v⟩²⟨x⟩² f♯‖_{L²}
    int iterations = 0;
    bool converged = false;
};

struct FitOptions {
    int max_iterations = 200;
    double tolerance = 1e-13; ///< relative objective change that stops the iteration
};

/// Moment matching followed by Levenberg–Marquardt on log M♯, which is linear
/// in (log prefactor, α, σ, β, B). Throws ZeroMass and GridMismatch
/// (d_x ≠ d_v). `converged` is false when the iteration cap is hit.
MaxwellianFit fit_maxwellian(const DistributionField &sharp, const FitOptions &opts = {});

struct StateFit {
    MaxwellianFit fit;
    double clipped_fraction = 0.0; ///< ‖min(f♯, 0)‖_{L¹} / ‖f♯‖_{L¹} removed before fitting
};

/// Fits f♯ of a (possibly collisional) state. The spectral pullback of a
/// state with grid-scale structure rings slightly negative, so f♯ is clipped
/// at zero first and the removed fraction is reported.
StateFit fit_state(const DistributionField &f, const FitOptions &opts = {});

/// Weighted L² residual of a given parameter set against the field.
double maxwellian_residual(const DistributionField &sharp, const TravelingMaxwellianParams &p);

} // namespace landau
