#include "landau/stepper.hpp"

#include "landau/coefficients.hpp"
#include "landau/errors.hpp"
#include "landau/parallel.hpp"
#include "landau/transport.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace landau {

namespace {

struct SliceLimits {
    double a_max = 0.0;
    double c_max = 0.0;
};

SliceLimits limits(std::span<const double> coeffs, int d, std::size_t nv)
{
    SliceLimits out;
    const int nmat = d * (d + 1) / 2;
    const int ncomp = kernel_component_count(d);
    for (std::size_t k = 0; k < static_cast<std::size_t>(nmat) * nv; ++k)
        out.a_max = std::max(out.a_max, std::abs(coeffs[k]));
    for (std::size_t k = (ncomp - 1) * nv; k < ncomp * nv; ++k)
        out.c_max = std::max(out.c_max, std::abs(coeffs[k]));
    return out;
}

} // namespace

DistributionField collision_substep(const DistributionField &f, double dt, const KernelParams &p,
                                    const StepControl &ctrl, StepStats *stats)
{
    const Grid &g = f.grid;
    DistributionField out = f;
    if (dt <= 0.0)
        return out;
    auto tables = kernel_tables(g, p);
    const std::size_t nv = g.velocity_cells();
    const int d = g.d_v;
    const int ncomp = kernel_component_count(d);
    const double h2 = g.dv() * g.dv();
    std::vector<int> cycles(g.spatial_cells(), 0);

    auto rhs = [&](std::span<const double> slice, std::span<const double> coeffs) {
        return ctrl.form == CollisionForm::divergence ? apply_collision_divergence(slice, coeffs, g).q_values
                                                      : apply_collision_nonconservative(slice, coeffs, g).q_values;
    };

    parallel_blocks(g.spatial_cells(), [&](unsigned, std::size_t begin, std::size_t end) {
        SliceConvolver conv(tables);
        std::vector<double> coeffs(static_cast<std::size_t>(ncomp) * nv);
        std::vector<double> mid(nv);
        for (std::size_t ix = begin; ix < end; ++ix) {
            auto slice = out.slice(ix);
            if (std::all_of(slice.begin(), slice.end(), [](double v) { return v == 0.0; }))
                continue;
            double remaining = dt;
            int count = 0;
            while (remaining > 0.0) {
                conv.compute(slice, ConvolutionMethod::fft, coeffs);
                const SliceLimits lim = limits(coeffs, d, nv);
                double h_cfl = std::numeric_limits<double>::infinity();
                if (lim.a_max > 0.0)
                    h_cfl = std::min(h_cfl, ctrl.cfl_safety * h2 / (2.0 * d * lim.a_max));
                if (lim.c_max > 0.0)
                    h_cfl = std::min(h_cfl, ctrl.cfl_safety / lim.c_max);
                const double h = h_cfl >= remaining * (1.0 - 1e-12) ? remaining : h_cfl;
                if (++count > ctrl.max_subcycles) {
                    std::ostringstream os;
                    os << "spatial cell " << ix << " needs more than " << ctrl.max_subcycles
                       << " collision sub-steps for dt = " << dt;
                    throw CflViolation(os.str());
                }
                const auto k1 = rhs(slice, coeffs);
                for (std::size_t iv = 0; iv < nv; ++iv)
                    mid[iv] = slice[iv] + 0.5 * h * k1[iv];
                conv.compute(mid, ConvolutionMethod::fft, coeffs);
                const auto k2 = rhs(mid, coeffs);
                for (std::size_t iv = 0; iv < nv; ++iv)
                    slice[iv] += h * k2[iv];
                remaining = h == remaining ? 0.0 : remaining - h;
            }
            cycles[ix] = count;
        }
    });
    if (stats)
        stats->max_subcycles = std::max(stats->max_subcycles, *std::max_element(cycles.begin(), cycles.end()));
    return out;
}

DistributionField strang_step(const DistributionField &f, double dt, const KernelParams &p, const StepControl &ctrl,
                              StepStats *stats)
{
    DistributionField half = transport_shift(f, 0.5 * dt);
    DistributionField collided = collision_substep(half, dt, p, ctrl, stats);
    DistributionField out = transport_shift(collided, 0.5 * dt);
    out.time = f.time + dt;
    if (!out.finite())
        throw NanDetected("non-finite value after step at t = " + std::to_string(out.time));
    double clipped = 0.0;
    for (double &v : out.values) {
        if (v < 0.0) {
            clipped -= v;
            v = 0.0;
        }
    }
    if (stats)
        stats->clipped_mass += clipped * f.grid.cell_volume();
    return out;
}

DistributionField run(DistributionField f, const KernelParams &p, const StepControl &ctrl,
                      const RunObserver &observer, double initial_clipped_mass)
{
    const double initial_mass = total_moments(f).mass;
    double clipped = initial_clipped_mass;
    int steps = 0;
    if (observer)
        observer(RunProgress{f, clipped, steps});
    if (ctrl.output_every <= 0.0 || ctrl.dt_max <= 0.0)
        throw CflViolation("output_every and dt_max must be positive");

    // Output times are k·output_every (and t_final); the step count is fixed
    // by the time grid so runs are reproducible.
    long k = static_cast<long>(std::floor(f.time / ctrl.output_every + 1e-9)) + 1;
    if (!ctrl.collisions) {
        const DistributionField start = f;
        while (f.time < ctrl.t_final - 1e-12 * std::max(1.0, ctrl.t_final)) {
            const double t_out = std::min(k * ctrl.output_every, ctrl.t_final);
            f = free_solution(start, t_out - start.time);
            f.time = t_out;
            ++k;
            ++steps;
            if (observer)
                observer(RunProgress{f, clipped, steps});
        }
        return f;
    }
    while (f.time < ctrl.t_final - 1e-12 * std::max(1.0, ctrl.t_final)) {
        const double t_out = std::min(k * ctrl.output_every, ctrl.t_final);
        const double span = t_out - f.time;
        const int n = std::max(1, static_cast<int>(std::ceil(span / ctrl.dt_max - 1e-9)));
        const double dt = span / n;
        for (int i = 0; i < n; ++i) {
            StepStats stats;
            f = strang_step(f, dt, p, ctrl, &stats);
            clipped += stats.clipped_mass;
            ++steps;
            if (clipped > ctrl.clip_abort_fraction * initial_mass) {
                std::ostringstream os;
                os << "clipped mass " << clipped << " exceeds " << ctrl.clip_abort_fraction
                   << " of the initial mass " << initial_mass;
                throw ClippedMassExceeded(os.str());
            }
        }
        f.time = t_out;
        ++k;
        if (observer)
            observer(RunProgress{f, clipped, steps});
    }
    return f;
}

} // namespace landau
