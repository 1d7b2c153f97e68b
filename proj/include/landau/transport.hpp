#pragma once

#include "landau/phase_state.hpp"

namespace landau {

/// Free streaming ∂_t f + v·∂_x f = 0 over `dt` (any sign) by a Fourier-phase
/// shift of each velocity cell's spatial slice: f(x, v) ← f(x − v dt, v).
/// Exact on the trigonometric interpolant except the Nyquist modes, which
/// keep their real (cosine) part. The time stamp advances by dt.
DistributionField transport_shift(const DistributionField &f, double dt);

/// f_free(t, x, v) = data(x − tv, v) by a single shift of the stored data.
DistributionField free_solution(const DistributionField &data, double t);

/// f♯(x, v) = f(t, x + tv, v). Keeps f's time stamp as metadata.
DistributionField pullback_sharp(const DistributionField &f);

} // namespace landau
