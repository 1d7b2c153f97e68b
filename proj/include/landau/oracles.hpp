#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

namespace landau::oracles {

enum class Shape {
    gaussian,         ///< e^{−a r²}
    ball,             ///< 1_{r ≤ a}
    shell,            ///< 1_{a ≤ r ≤ b}
    bump,             ///< (1 − r²/a²)_+^k
    algebraic,        ///< ⟨r⟩^{−k}
    exponential,      ///< e^{−a r}
    gaussian_product, ///< e^{−Σ w_i v_i²}
    bump_product,     ///< Π (1 − v_i²/w_i²)_+^k
};

/// Analytic test function on ℝ³ with closed-form L¹, L², L∞ norms.
struct TestFunction {
    std::string name;
    Shape shape = Shape::gaussian;
    double a = 1.0;
    double b = 0.0;
    int k = 0;
    std::array<double, 3> w{1.0, 1.0, 1.0};
    std::array<double, 3> center{};
    double amplitude = 1.0;

    [[nodiscard]] bool radial() const;
    [[nodiscard]] double value(std::span<const double, 3> v) const;
    /// Radial profile (radial shapes only), without the centre shift.
    [[nodiscard]] double profile(double r) const;
    [[nodiscard]] double l1() const;
    [[nodiscard]] double l2() const;
    [[nodiscard]] double linf() const;
    /// Radius beyond which the function is zero or below 1e−17 of its max.
    [[nodiscard]] double reach() const;
    /// Radial discontinuities or kinks of the profile.
    [[nodiscard]] std::vector<double> breakpoints() const;
    [[nodiscard]] TestFunction scaled(double lambda) const;
    [[nodiscard]] TestFunction translated(std::array<double, 3> shift) const;
};

/// Twenty catalog entries: radial Gaussians, balls, shells, bumps, algebraic
/// and exponential tails, and anisotropic Gaussian and bump products.
std::vector<TestFunction> interpolation_catalog();

/// U(v) = ∫ |v − v*|^{−ν} h(v*) dv* in 3D. `resolution` scales every panel
/// count (2 doubles them). Radial shapes use the exact angular reduction.
double potential(const TestFunction &h, double nu, std::span<const double, 3> v, int resolution = 1);

/// Radial shapes: U at distance s from the centre.
double radial_potential(const TestFunction &h, double nu, double s, int resolution = 1);

struct RatioReport {
    std::string name;
    double nu = 0.0;
    double lhs = 0.0;
    double rhs = 0.0;
    double ratio = 0.0;
    double lhs_refined = 0.0;   ///< LHS with doubled resolution
    double refinement_change = 0.0; ///< |lhs_refined − lhs| / lhs_refined
    std::array<double, 3> argmax{};
};

/// sup_v U(v) against ‖h‖₁^{1−ν/3} ‖h‖_∞^{ν/3}, ν ∈ (0, 3). Throws
/// QuadratureFailure on non-finite or unstable quadrature.
RatioReport check_interpolation(const TestFunction &h, double nu);

/// Sharp constant of the interpolation bound, attained by ball indicators
/// (bathtub principle): (4π)^{ν/3} 3^{1−ν/3} / (3 − ν).
double interpolation_sharp_constant(double nu);

struct DispersionPoint {
    double t = 0.0;
    double lhs = 0.0;          ///< ‖h‖_{L∞_x L¹_v} by quadrature
    double lhs_closed = 0.0;   ///< (π/(a t² + b))^{3/2}, scaled by the amplitude
    double v_weighted = 0.0;   ///< ‖⟨v⟩⁴ h‖_∞
    double xtv_weighted = 0.0; ///< ‖⟨x − tv⟩⁴ h‖_∞
    double ratio = 0.0;
};

/// h(t, x, v) = e^{−a|x − tv|² − b|v|²} in 3D: ratio of ‖h‖_{L∞_x L¹_v} to
/// (1+t)^{−3}(‖⟨v⟩⁴h‖_∞ + ‖⟨x−tv⟩⁴h‖_∞) at each t. `amplitude` scales h.
std::vector<DispersionPoint> check_dispersion(const std::vector<double> &times, double a = 1.0, double b = 1.0,
                                              double amplitude = 1.0);

enum class HlsBranch { L2, L15over4nu };

/// ‖U‖_{L^q} against the interpolated L¹/L² norms: q = 2 with
/// ‖h‖₁^{2−2ν/3}‖h‖₂^{2ν/3−1} for ν ∈ (3/2, 3), or q = 15/(4ν) with
/// ‖h‖₁^{1−2ν/15}‖h‖₂^{2ν/15} for ν ∈ [0, 3/2]. Radial shapes with compact
/// or exponentially decaying profiles only (the far field is mapped assuming
/// U ~ ‖h‖₁ s^{−ν}).
/// Throws BranchMismatch when ν is outside the branch.
RatioReport check_hls(const TestFunction &h, double nu, HlsBranch branch);

/// Branch that owns ν.
HlsBranch hls_branch_for(double nu);

} // namespace landau::oracles
