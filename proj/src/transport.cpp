#include "landau/transport.hpp"

#include "landau/fft.hpp"
#include "landau/parallel.hpp"

#include <cmath>
#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

namespace landau {

namespace {

std::shared_ptr<const fft::RealTransform> spatial_transform(const Grid &g)
{
    static std::mutex mutex;
    static std::map<std::pair<int, int>, std::shared_ptr<const fft::RealTransform>> cache;
    std::lock_guard lock(mutex);
    const auto key = std::make_pair(g.d_x, g.n_x);
    auto it = cache.find(key);
    if (it == cache.end()) {
        std::vector<int> shape(g.d_x, g.n_x);
        it = cache.emplace(key, std::make_shared<const fft::RealTransform>(shape)).first;
    }
    return it->second;
}

// Wavenumber of index m on an axis with n points; Nyquist flagged.
struct Mode {
    double k;
    bool nyquist;
};

Mode mode_of(int m, int n, double L)
{
    const bool nyquist = (n % 2 == 0) && m == n / 2;
    const int signed_m = m <= n / 2 ? m : m - n;
    return {2.0 * std::numbers::pi * signed_m / L, nyquist};
}

} // namespace

DistributionField transport_shift(const DistributionField &f, double dt)
{
    const Grid &g = f.grid;
    DistributionField out(g, f.time + dt);
    if (g.d_x == 0 || dt == 0.0) {
        out.values = f.values;
        return out;
    }

    const auto plan = spatial_transform(g);
    const std::size_t nx = g.spatial_cells();
    const std::size_t nv = g.velocity_cells();
    const std::size_t nc = plan->complex_size();
    const int n = g.n_x;
    const int half = n / 2 + 1;
    const double norm = 1.0 / static_cast<double>(nx);

    std::vector<Mode> modes(n);
    for (int m = 0; m < n; ++m)
        modes[m] = mode_of(m, n, g.L_x);

    parallel_blocks(nv, [&](unsigned, std::size_t begin, std::size_t end) {
        auto real = fft::alloc_real(nx);
        auto spec = fft::alloc_complex(nc);
        for (std::size_t iv = begin; iv < end; ++iv) {
            const auto v = g.velocity(iv);
            for (std::size_t ix = 0; ix < nx; ++ix)
                real[ix] = f.values[ix * nv + iv];
            plan->forward(real.get(), spec.get());

            // per-axis factors; the last axis is stored as 0..n/2
            std::array<std::vector<std::complex<double>>, 3> axis_factor;
            for (int a = 0; a < g.d_x; ++a) {
                const int len = a == g.d_x - 1 ? half : n;
                axis_factor[a].resize(len);
                const double s = v[a] * dt;
                for (int m = 0; m < len; ++m) {
                    const Mode md = modes[m];
                    axis_factor[a][m] = md.nyquist ? std::complex<double>(std::cos(md.k * s), 0.0)
                                                   : std::polar(1.0, -md.k * s);
                }
            }
            std::size_t idx = 0;
            if (g.d_x == 1) {
                for (int m = 0; m < half; ++m)
                    spec[idx++] *= axis_factor[0][m] * norm;
            } else if (g.d_x == 2) {
                for (int m0 = 0; m0 < n; ++m0)
                    for (int m1 = 0; m1 < half; ++m1)
                        spec[idx++] *= axis_factor[0][m0] * axis_factor[1][m1] * norm;
            } else {
                for (int m0 = 0; m0 < n; ++m0)
                    for (int m1 = 0; m1 < n; ++m1) {
                        const auto f01 = axis_factor[0][m0] * axis_factor[1][m1] * norm;
                        for (int m2 = 0; m2 < half; ++m2)
                            spec[idx++] *= f01 * axis_factor[2][m2];
                    }
            }
            plan->inverse(spec.get(), real.get());
            for (std::size_t ix = 0; ix < nx; ++ix)
                out.values[ix * nv + iv] = real[ix];
        }
    });
    return out;
}

DistributionField free_solution(const DistributionField &data, double t) { return transport_shift(data, t); }

DistributionField pullback_sharp(const DistributionField &f)
{
    DistributionField out = transport_shift(f, -f.time);
    out.time = f.time;
    return out;
}

} // namespace landau
