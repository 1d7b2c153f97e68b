#include "landau/kernel.hpp"

#include "landau/errors.hpp"
#include "landau/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace landau {

namespace {

double norm2(std::span<const double> z)
{
    double s = 0.0;
    for (double c : z)
        s += c * c;
    return s;
}

void check_dim(std::span<const double> z, const KernelParams &p, const char *what)
{
    if (static_cast<int>(z.size()) != p.d) {
        std::ostringstream os;
        os << what << " has " << z.size() << " components, expected d = " << p.d;
        throw InvalidParams(os.str());
    }
}

// Packed components at z ≠ 0 (or z = 0 for the matrix part only).
void fill_components(std::span<const double> z, const KernelParams &p, std::span<double> out)
{
    const int d = p.d;
    const double r2 = norm2(z);
    const double r = std::sqrt(r2);
    const double rg = std::pow(r, p.gamma);
    int k = 0;
    for (int i = 0; i < d; ++i)
        for (int j = i; j < d; ++j)
            out[k++] = ((i == j ? 1.0 : 0.0) * r2 - z[i] * z[j]) * rg;
    for (int i = 0; i < d; ++i)
        out[k++] = (1.0 - d) * rg * z[i];
    out[k] = -(d - 1.0) * (d + p.gamma) * rg;
}

} // namespace

KernelParams KernelParams::make(double gamma, int d)
{
    if (!(gamma > -2.0 && gamma < 0.0)) {
        std::ostringstream os;
        os << "gamma must lie in (-2,0), got " << gamma;
        throw InvalidParams(os.str());
    }
    if (d != 2 && d != 3) {
        std::ostringstream os;
        os << "velocity dimension must be 2 or 3, got " << d;
        throw InvalidParams(os.str());
    }
    return KernelParams{gamma, d};
}

double KernelMatrix::trace() const
{
    double t = 0.0;
    for (int i = 0; i < d; ++i)
        t += (*this)(i, i);
    return t;
}

KernelMatrix kernel_matrix(std::span<const double> z, const KernelParams &p)
{
    check_dim(z, p, "z");
    KernelMatrix m;
    m.d = p.d;
    const double r2 = norm2(z);
    if (r2 == 0.0)
        return m;
    const double rg = std::pow(r2, 0.5 * p.gamma);
    for (int i = 0; i < p.d; ++i)
        for (int j = 0; j < p.d; ++j)
            m(i, j) = ((i == j ? r2 : 0.0) - z[i] * z[j]) * rg;
    return m;
}

Vec3 kernel_divergence(std::span<const double> z, const KernelParams &p)
{
    check_dim(z, p, "z");
    Vec3 b{};
    const double r2 = norm2(z);
    if (r2 == 0.0) {
        if (p.gamma <= -1.0)
            throw SingularPoint("kernel_divergence is unbounded at z = 0 for gamma <= -1");
        return b;
    }
    const double rg = std::pow(r2, 0.5 * p.gamma);
    for (int i = 0; i < p.d; ++i)
        b[i] = (1.0 - p.d) * rg * z[i];
    return b;
}

double kernel_c(std::span<const double> z, const KernelParams &p)
{
    check_dim(z, p, "z");
    const double r2 = norm2(z);
    if (r2 == 0.0)
        throw SingularPoint("kernel_c is singular at z = 0");
    return -(p.d - 1.0) * (p.d + p.gamma) * std::pow(r2, 0.5 * p.gamma);
}

int packed_matrix_index(int i, int j, int d)
{
    if (i > j)
        std::swap(i, j);
    // rows 0..i-1 hold d, d-1, ... entries
    return i * d - i * (i - 1) / 2 + (j - i);
}

std::vector<double> cell_averaged_components(std::span<const double> cell_center, std::span<const double> spacing,
                                             const KernelParams &p, bool force_adaptive)
{
    check_dim(cell_center, p, "cell_center");
    check_dim(spacing, p, "spacing");
    const int d = p.d;
    const int ncomp = kernel_component_count(d);
    std::vector<double> out(ncomp, 0.0);

    bool near = true;
    for (int i = 0; i < d; ++i) {
        if (!(spacing[i] > 0.0))
            throw InvalidParams("cell spacing must be positive");
        near = near && std::abs(cell_center[i]) <= 2.0 * spacing[i] + 1e-12 * spacing[i];
    }

    if (!near && !force_adaptive) {
        fill_components(cell_center, p, out);
        return out;
    }

    std::array<double, 3> lo{}, hi{};
    double volume = 1.0;
    for (int i = 0; i < d; ++i) {
        lo[i] = cell_center[i] - 0.5 * spacing[i];
        hi[i] = cell_center[i] + 0.5 * spacing[i];
        volume *= spacing[i];
    }
    std::vector<double> degrees;
    for (int k = 0; k < d * (d + 1) / 2; ++k)
        degrees.push_back(p.gamma + 2.0);
    for (int k = 0; k < d; ++k)
        degrees.push_back(p.gamma + 1.0);
    degrees.push_back(p.gamma);

    quad::VectorIntegrand integrand = [&p](std::span<const double> z, std::span<double> vals) {
        fill_components(z, p, vals);
    };
    quad::CubatureOptions opts;
    opts.rel_tol = 1e-8;
    opts.max_depth = 24;
    quad::homogeneous_box(integrand, degrees, std::span<const double>(lo.data(), d),
                          std::span<const double>(hi.data(), d), ncomp, out, opts);
    for (double &v : out)
        v /= volume;
    return out;
}

std::vector<double> cell_averaged_kernel(std::span<const double> cell_center, std::span<const double> spacing,
                                         const KernelParams &p, KernelPart which)
{
    const auto packed = cell_averaged_components(cell_center, spacing, p);
    const int d = p.d;
    std::vector<double> out;
    switch (which) {
    case KernelPart::matrix:
        out.resize(d * d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                out[i * d + j] = packed[packed_matrix_index(i, j, d)];
        break;
    case KernelPart::divergence:
        out.assign(packed.begin() + d * (d + 1) / 2, packed.begin() + d * (d + 1) / 2 + d);
        break;
    case KernelPart::c:
        out.push_back(packed.back());
        break;
    }
    return out;
}

ContractionReport contraction_identities(std::span<const double> v, std::span<const double> v_star,
                                         const KernelParams &p)
{
    check_dim(v, p, "v");
    check_dim(v_star, p, "v_star");
    const int d = p.d;
    std::array<double, 3> z{};
    for (int i = 0; i < d; ++i)
        z[i] = v[i] - v_star[i];
    const std::span<const double> zs(z.data(), d);
    const double r2 = norm2(zs);
    if (r2 == 0.0)
        throw SingularPoint("contraction identities need v != v_star");

    const KernelMatrix a = kernel_matrix(zs, p);
    const double rg = std::pow(r2, 0.5 * p.gamma);
    double vv = 0.0, ss = 0.0, vs = 0.0, sz = 0.0, vz = 0.0;
    for (int i = 0; i < d; ++i) {
        vv += v[i] * v[i];
        ss += v_star[i] * v_star[i];
        vs += v[i] * v_star[i];
        sz += v_star[i] * z[i];
        vz += v[i] * z[i];
    }

    ContractionReport r;
    double res_num = 0.0;
    for (int j = 0; j < d; ++j) {
        double lhs = 0.0;
        for (int i = 0; i < d; ++i)
            lhs += a(i, j) * v[i];
        r.a_dot_v_lhs[j] = lhs;
        r.a_dot_v_rhs[j] = rg * (-v[j] * sz + vz * v_star[j]);
        res_num = std::max(res_num, std::abs(lhs - r.a_dot_v_rhs[j]));
    }
    // magnitude of the terms that cancel on either side
    const double scale_v = rg * (std::sqrt(vv) * (r2 + std::sqrt(r2 * ss)) + std::abs(vz) * std::sqrt(ss)) +
                           std::numeric_limits<double>::min();
    r.a_dot_v_residual = res_num / scale_v;

    double avv = 0.0;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            avv += a(i, j) * v[i] * v[j];
    r.a_vv_lhs = avv;
    r.pythagorean_lhs = vv * ss - vs * vs;
    r.a_vv_rhs = rg * r.pythagorean_lhs;
    const double scale_vv = rg * vv * (r2 + ss) + std::numeric_limits<double>::min();
    r.a_vv_residual = std::abs(r.a_vv_lhs - r.a_vv_rhs) / scale_vv;
    r.pythagorean_rhs = 2.0 * r2 * ss;
    r.pythagorean_ok = r.pythagorean_lhs <= r.pythagorean_rhs * (1.0 + 1e-14) + 1e-300;
    return r;
}

} // namespace landau
