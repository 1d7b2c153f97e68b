#pragma once

#include <array>
#include <span>
#include <vector>

namespace landau {

/// Kernel exponent and velocity dimension. gamma ∈ (−2, 0), d ∈ {2, 3}.
struct KernelParams {
    double gamma = -1.0;
    int d = 3;

    /// Validated construction; throws InvalidParams.
    static KernelParams make(double gamma, int d);
};

using Vec3 = std::array<double, 3>;

/// d×d symmetric matrix stored in a fixed 3×3 block.
struct KernelMatrix {
    int d = 3;
    std::array<double, 9> entries{};

    [[nodiscard]] double operator()(int i, int j) const { return entries[3 * i + j]; }
    double &operator()(int i, int j) { return entries[3 * i + j]; }
    [[nodiscard]] double trace() const;
};

/// a_ij(z) = (δ_ij − z_i z_j / |z|²) |z|^{γ+2}; zero at z = 0.
KernelMatrix kernel_matrix(std::span<const double> z, const KernelParams &p);

/// b_i(z) = ∂_{z_j} a_ij(z) = (1 − d) |z|^γ z_i.
/// At z = 0: zero when γ > −1, SingularPoint otherwise.
Vec3 kernel_divergence(std::span<const double> z, const KernelParams &p);

/// c(z) = ∂_{z_i} b_i(z) = −(d − 1)(d + γ) |z|^γ. SingularPoint at z = 0.
double kernel_c(std::span<const double> z, const KernelParams &p);

enum class KernelPart { matrix, divergence, c };

/// Cell average of one kernel part over the box center ± spacing/2.
/// matrix → d·d entries (row-major), divergence → d entries, c → 1 entry.
/// Cells within two spacings of the origin use adaptive quadrature with the
/// homogeneity split at z = 0; the rest use the midpoint value.
std::vector<double> cell_averaged_kernel(std::span<const double> cell_center, std::span<const double> spacing,
                                         const KernelParams &p, KernelPart which);

/// Number of scalar kernel components used by the convolution tables:
/// d(d+1)/2 upper-triangular a entries, then d entries of b, then c.
constexpr int kernel_component_count(int d) { return d * (d + 1) / 2 + d + 1; }

/// Index of a_ij (i ≤ j or not) in the packed component list.
int packed_matrix_index(int i, int j, int d);

/// Packed cell average of every component (see kernel_component_count).
/// `force_adaptive` bypasses the distance test.
std::vector<double> cell_averaged_components(std::span<const double> cell_center, std::span<const double> spacing,
                                             const KernelParams &p, bool force_adaptive = false);

/// Both sides of the contraction identities used to bound ā·v and ā:vv.
struct ContractionReport {
    Vec3 a_dot_v_lhs{};       ///< a_ij(v − v*) v_i
    Vec3 a_dot_v_rhs{};       ///< |v − v*|^γ (−v_j (v*·(v − v*)) + (v·(v − v*)) v*_j)
    double a_vv_lhs = 0.0;    ///< a_ij(v − v*) v_i v_j
    double a_vv_rhs = 0.0;    ///< |v − v*|^γ (|v|²|v*|² − (v·v*)²)
    double pythagorean_lhs = 0.0; ///< |v|²|v*|² − (v·v*)²
    double pythagorean_rhs = 0.0; ///< 2 |v − v*|² |v*|²
    double a_dot_v_residual = 0.0; ///< relative
    double a_vv_residual = 0.0;    ///< relative
    bool pythagorean_ok = false;
};

ContractionReport contraction_identities(std::span<const double> v, std::span<const double> v_star,
                                         const KernelParams &p);

} // namespace landau
