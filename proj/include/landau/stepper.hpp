#pragma once

#include "landau/collision.hpp"
#include "landau/kernel.hpp"
#include "landau/phase_state.hpp"

#include <functional>

namespace landau {

struct StepControl {
    double cfl_safety = 0.5;
    double dt_max = 0.5;
    double t_final = 1.0;
    double output_every = 1.0;
    /// Collision sub-steps allowed in one spatial cell per step.
    int max_subcycles = 10000;
    /// Abort once the cumulative clipped mass exceeds this fraction of the
    /// initial mass.
    double clip_abort_fraction = 1e-8;
    CollisionForm form = CollisionForm::divergence;
    /// false: free streaming only, taken as one exact shift from the start
    /// state to each output time.
    bool collisions = true;
};

struct StepStats {
    double clipped_mass = 0.0; ///< mass added by clipping negatives, this step
    int max_subcycles = 0;     ///< largest per-cell sub-step count
};

/// Collision-only evolution over dt: explicit midpoint rule per spatial cell,
/// coefficients recomputed at both stages, sub-cycled to respect the
/// diffusion and reaction limits of `ctrl`. Throws CflViolation when a cell
/// needs more than ctrl.max_subcycles sub-steps.
DistributionField collision_substep(const DistributionField &f, double dt, const KernelParams &p,
                                    const StepControl &ctrl, StepStats *stats = nullptr);

/// T(dt/2) ∘ C(dt) ∘ T(dt/2). Negative values are clipped to zero and the
/// added mass reported in `stats`. Throws NanDetected on non-finite output.
DistributionField strang_step(const DistributionField &f, double dt, const KernelParams &p, const StepControl &ctrl,
                              StepStats *stats = nullptr);

struct RunProgress {
    const DistributionField &f;
    double clipped_mass = 0.0; ///< cumulative
    int steps = 0;
};

/// Called at every output time, including the start and t_final.
using RunObserver = std::function<void(const RunProgress &)>;

/// Advances f from f.time to ctrl.t_final, landing exactly on each multiple
/// of output_every. Throws ClippedMassExceeded, and propagates step errors.
DistributionField run(DistributionField f, const KernelParams &p, const StepControl &ctrl,
                      const RunObserver &observer = {}, double initial_clipped_mass = 0.0);

} // namespace landau
