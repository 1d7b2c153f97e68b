#pragma once

#include "landau/fft.hpp"
#include "landau/kernel.hpp"
#include "landau/phase_state.hpp"

#include <complex>
#include <memory>
#include <span>
#include <vector>

namespace landau {

enum class ConvolutionMethod { direct, fft };

/// Cell-averaged kernel components on the velocity offset lattice
/// k ∈ [−(n_v−1), n_v−1]^{d_v}, laid out for circular convolution on the
/// zero-padded (2 n_v)^{d_v} lattice, together with their transforms.
class KernelTables {
public:
    KernelTables(const Grid &grid, const KernelParams &params);

    [[nodiscard]] const KernelParams &params() const { return params_; }
    [[nodiscard]] int n_v() const { return n_v_; }
    [[nodiscard]] int components() const { return ncomp_; }
    [[nodiscard]] const fft::RealTransform &transform() const { return *transform_; }
    /// Padded real table of component c (index with padded_index).
    [[nodiscard]] std::span<const double> table(int c) const;
    [[nodiscard]] std::span<const std::complex<double>> spectrum(int c) const;
    /// Padded-lattice index of offset k (each entry in (−2n, 2n)).
    [[nodiscard]] std::size_t padded_index(const std::array<int, 3> &k) const;
    /// Velocity cell volume Δv^{d_v}.
    [[nodiscard]] double cell_volume() const { return cell_volume_; }

private:
    KernelParams params_;
    int n_v_ = 0;
    int ncomp_ = 0;
    double cell_volume_ = 0.0;
    std::unique_ptr<fft::RealTransform> transform_;
    std::vector<double> tables_;
    std::vector<std::complex<double>> spectra_;
};

/// Shared table for (n_v, d_v, v_max, γ), built on first request.
std::shared_ptr<const KernelTables> kernel_tables(const Grid &grid, const KernelParams &params);

/// ā_ij, b̄_i, c̄ over every (x, v), stored component-major in the packed
/// order of kernel_component_count.
struct CoefficientFields {
    Grid grid;
    double time = 0.0;
    int d = 2;
    std::vector<double> values;

    [[nodiscard]] std::size_t cells() const { return grid.size(); }
    [[nodiscard]] double a(int i, int j, std::size_t cell) const
    {
        return values[packed_matrix_index(i, j, d) * cells() + cell];
    }
    [[nodiscard]] double b(int i, std::size_t cell) const
    {
        return values[(d * (d + 1) / 2 + i) * cells() + cell];
    }
    [[nodiscard]] double c(std::size_t cell) const { return values[(kernel_component_count(d) - 1) * cells() + cell]; }
    /// Component `comp` of spatial cell `ix` (contiguous over velocity).
    [[nodiscard]] std::span<const double> slice(int comp, std::size_t ix) const
    {
        const std::size_t nv = grid.velocity_cells();
        return {values.data() + comp * cells() + ix * nv, nv};
    }
};

/// Per-slice coefficients: out[c] receives component c over the n_v^{d_v}
/// velocity cells. Reusable work buffers keep the hot loop allocation-free.
class SliceConvolver {
public:
    explicit SliceConvolver(std::shared_ptr<const KernelTables> tables);

    void compute(std::span<const double> f_slice, ConvolutionMethod method, std::span<double> out);
    [[nodiscard]] const KernelTables &tables() const { return *tables_; }

private:
    std::shared_ptr<const KernelTables> tables_;
    fft::Buffer<double> padded_;
    fft::Buffer<std::complex<double>> f_hat_;
    fft::Buffer<std::complex<double>> product_;
    fft::Buffer<double> result_;
};

/// Throws NegativeInput if any f < −1e−14·max f.
CoefficientFields compute_coefficients(const DistributionField &f, const KernelParams &p,
                                       ConvolutionMethod method = ConvolutionMethod::fft);

struct CoefficientNorms {
    double plain = 0.0;         ///< sup ⟨v⟩^{−(2+γ)} |ā|
    double weighted_down = 0.0; ///< sup ⟨x−tv⟩^{−min{1,2+γ}} ⟨v⟩^{−max{0,1+γ}} |ā|
    double c_sup = 0.0;         ///< sup |c̄|
};

/// Suprema over the grid (max over matrix entries for ā), evaluated at the
/// fields' time stamp.
CoefficientNorms coefficient_sup_norms(const CoefficientFields &c, double gamma);

} // namespace landau
