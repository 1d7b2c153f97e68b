#include "landau/collision.hpp"

#include "landau/parallel.hpp"

#include <cmath>

namespace landau {

namespace {

// Velocity-lattice stencil helper; out-of-box neighbours read as zero.
struct Lattice {
    int d;
    int n;
    std::array<std::size_t, 3> stride{};

    explicit Lattice(const Grid &g) : d(g.d_v), n(g.n_v)
    {
        std::size_t s = 1;
        for (int a = d - 1; a >= 0; --a) {
            stride[a] = s;
            s *= static_cast<std::size_t>(n);
        }
    }

    [[nodiscard]] std::array<int, 3> index(std::size_t iv) const
    {
        std::array<int, 3> idx{};
        for (int a = d - 1; a >= 0; --a) {
            idx[a] = static_cast<int>(iv % n);
            iv /= n;
        }
        return idx;
    }

    // f at idx shifted by s_a along axis a and s_b along axis b.
    [[nodiscard]] double at(std::span<const double> f, std::size_t iv, const std::array<int, 3> &idx, int a, int sa,
                            int b = 0, int sb = 0) const
    {
        const int ia = idx[a] + sa;
        if (ia < 0 || ia >= n)
            return 0.0;
        std::ptrdiff_t off = static_cast<std::ptrdiff_t>(sa) * static_cast<std::ptrdiff_t>(stride[a]);
        if (sb != 0) {
            const int ib = idx[b] + sb;
            if (ib < 0 || ib >= n)
                return 0.0;
            off += static_cast<std::ptrdiff_t>(sb) * static_cast<std::ptrdiff_t>(stride[b]);
        }
        return f[static_cast<std::size_t>(static_cast<std::ptrdiff_t>(iv) + off)];
    }
};

} // namespace

CollisionOutput apply_collision_divergence(std::span<const double> f, std::span<const double> coeffs,
                                           const Grid &grid)
{
    const Lattice lat(grid);
    const int d = grid.d_v;
    const std::size_t nv = f.size();
    const double h = grid.dv();
    const int nmat = d * (d + 1) / 2;
    auto A = [&](int i, int j, std::size_t iv) { return coeffs[packed_matrix_index(i, j, d) * nv + iv]; };
    auto B = [&](int i, std::size_t iv) { return coeffs[(nmat + i) * nv + iv]; };

    CollisionOutput out;
    out.form = CollisionForm::divergence;
    out.q_values.assign(nv, 0.0);

    for (std::size_t iv = 0; iv < nv; ++iv) {
        const auto idx = lat.index(iv);
        for (int i = 0; i < d; ++i) {
            if (idx[i] + 1 >= lat.n)
                continue; // boundary face: zero flux
            const std::size_t jv = iv + lat.stride[i];
            const auto jdx = lat.index(jv);
            double flux = 0.0;
            for (int j = 0; j < d; ++j) {
                const double a_face = 0.5 * (A(i, j, iv) + A(i, j, jv));
                double df;
                if (j == i) {
                    df = (f[jv] - f[iv]) / h;
                } else {
                    const double d_here = lat.at(f, iv, idx, j, 1) - lat.at(f, iv, idx, j, -1);
                    const double d_there = lat.at(f, jv, jdx, j, 1) - lat.at(f, jv, jdx, j, -1);
                    df = 0.25 * (d_here + d_there) / h;
                }
                flux += a_face * df;
            }
            flux -= 0.5 * (B(i, iv) + B(i, jv)) * 0.5 * (f[iv] + f[jv]);
            out.q_values[jv] -= flux / h;
            out.q_values[iv] += flux / h;
        }
    }
    return out;
}

CollisionOutput apply_collision_nonconservative(std::span<const double> f, std::span<const double> coeffs,
                                                const Grid &grid)
{
    const Lattice lat(grid);
    const int d = grid.d_v;
    const std::size_t nv = f.size();
    const double h2 = grid.dv() * grid.dv();
    const int ncomp = kernel_component_count(d);

    CollisionOutput out;
    out.form = CollisionForm::nonconservative;
    out.q_values.assign(nv, 0.0);
    for (std::size_t iv = 0; iv < nv; ++iv) {
        const auto idx = lat.index(iv);
        double q = 0.0;
        for (int i = 0; i < d; ++i) {
            const double a_ii = coeffs[packed_matrix_index(i, i, d) * nv + iv];
            q += a_ii * (lat.at(f, iv, idx, i, 1) - 2.0 * f[iv] + lat.at(f, iv, idx, i, -1)) / h2;
            for (int j = i + 1; j < d; ++j) {
                const double a_ij = coeffs[packed_matrix_index(i, j, d) * nv + iv];
                const double mixed = (lat.at(f, iv, idx, i, 1, j, 1) - lat.at(f, iv, idx, i, 1, j, -1) -
                                      lat.at(f, iv, idx, i, -1, j, 1) + lat.at(f, iv, idx, i, -1, j, -1)) /
                                     (4.0 * h2);
                q += 2.0 * a_ij * mixed;
            }
        }
        q -= coeffs[(ncomp - 1) * nv + iv] * f[iv];
        out.q_values[iv] = q;
    }
    return out;
}

CollisionOutput apply_collision(const DistributionField &f, const CoefficientFields &c, CollisionForm form)
{
    const Grid &g = f.grid;
    const std::size_t nv = g.velocity_cells();
    const int ncomp = kernel_component_count(g.d_v);
    CollisionOutput out;
    out.form = form;
    out.q_values.assign(g.size(), 0.0);
    parallel_blocks(g.spatial_cells(), [&](unsigned, std::size_t begin, std::size_t end) {
        std::vector<double> local(static_cast<std::size_t>(ncomp) * nv);
        for (std::size_t ix = begin; ix < end; ++ix) {
            for (int k = 0; k < ncomp; ++k) {
                const auto s = c.slice(k, ix);
                std::copy(s.begin(), s.end(), local.begin() + k * nv);
            }
            const auto q = form == CollisionForm::divergence ? apply_collision_divergence(f.slice(ix), local, g)
                                                             : apply_collision_nonconservative(f.slice(ix), local, g);
            std::copy(q.q_values.begin(), q.q_values.end(), out.q_values.begin() + ix * nv);
        }
    });
    return out;
}

Moments conserved_moments(std::span<const double> f, const Grid &grid)
{
    Moments m;
    const double vol = grid.velocity_volume();
    for (std::size_t iv = 0; iv < f.size(); ++iv) {
        const auto v = grid.velocity(iv);
        double v2 = 0.0;
        for (int a = 0; a < grid.d_v; ++a) {
            m.momentum[a] += v[a] * f[iv] * vol;
            v2 += v[a] * v[a];
        }
        m.mass += f[iv] * vol;
        m.energy += 0.5 * v2 * f[iv] * vol;
    }
    return m;
}

Moments total_moments(const DistributionField &f)
{
    Moments total;
    const double sx = f.grid.spatial_volume();
    for (std::size_t ix = 0; ix < f.grid.spatial_cells(); ++ix) {
        const Moments m = conserved_moments(f.slice(ix), f.grid);
        total.mass += m.mass * sx;
        total.energy += m.energy * sx;
        for (int a = 0; a < 3; ++a)
            total.momentum[a] += m.momentum[a] * sx;
    }
    return total;
}

double h_functional(const DistributionField &f)
{
    const double vol = f.grid.cell_volume();
    double h = 0.0;
    for (double v : f.values)
        if (v > 0.0)
            h += v * std::log(v);
    return h * vol;
}

} // namespace landau
