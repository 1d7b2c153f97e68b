#include "landau/phase_state.hpp"

#include "landau/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace landau {

namespace {

std::size_t ipow(int base, int exp)
{
    std::size_t r = 1;
    for (int i = 0; i < exp; ++i)
        r *= static_cast<std::size_t>(base);
    return r;
}

std::array<int, 3> unravel(std::size_t idx, int n, int dims)
{
    std::array<int, 3> out{};
    for (int a = dims - 1; a >= 0; --a) {
        out[a] = static_cast<int>(idx % n);
        idx /= n;
    }
    return out;
}

} // namespace

Grid Grid::make(int d_x, int d_v, int n_x, int n_v, double L_x, double v_max)
{
    std::ostringstream os;
    if (d_x < 0 || d_x > 3)
        os << "d_x must be in 0..3 (got " << d_x << "); ";
    if (d_v < 1 || d_v > 3)
        os << "d_v must be in 1..3 (got " << d_v << "); ";
    if (n_v < 1)
        os << "n_v must be positive; ";
    if (d_x > 0 && n_x < 1)
        os << "n_x must be positive; ";
    if (d_x > 0 && !(L_x > 0.0))
        os << "L_x must be positive; ";
    if (!(v_max > 0.0))
        os << "v_max must be positive; ";
    if (!os.str().empty())
        throw InvalidGrid(os.str());
    Grid g;
    g.d_x = d_x;
    g.d_v = d_v;
    g.n_x = d_x == 0 ? 1 : n_x;
    g.n_v = n_v;
    g.L_x = d_x == 0 ? 1.0 : L_x;
    g.v_max = v_max;
    return g;
}

std::size_t Grid::spatial_cells() const { return ipow(n_x, d_x); }
std::size_t Grid::velocity_cells() const { return ipow(n_v, d_v); }

double Grid::spatial_volume() const { return std::pow(dx(), d_x); }
double Grid::velocity_volume() const { return std::pow(dv(), d_v); }
double Grid::cell_volume() const { return spatial_volume() * velocity_volume(); }

std::array<int, 3> Grid::velocity_index(std::size_t iv) const { return unravel(iv, n_v, d_v); }
std::array<int, 3> Grid::spatial_index(std::size_t ix) const { return unravel(ix, n_x, d_x); }

std::array<double, 3> Grid::position(std::size_t ix) const
{
    const auto idx = spatial_index(ix);
    std::array<double, 3> x{};
    for (int a = 0; a < d_x; ++a)
        x[a] = x_node(idx[a]);
    return x;
}

std::array<double, 3> Grid::velocity(std::size_t iv) const
{
    const auto idx = velocity_index(iv);
    std::array<double, 3> v{};
    for (int a = 0; a < d_v; ++a)
        v[a] = v_center(idx[a]);
    return v;
}

double DistributionField::max_abs() const
{
    double m = 0.0;
    for (double v : values)
        m = std::max(m, std::abs(v));
    return m;
}

bool DistributionField::finite() const
{
    return std::all_of(values.begin(), values.end(), [](double v) { return std::isfinite(v); });
}

double WeightSpec::delta_for(double gamma) { return std::min((2.0 + gamma) / 4.0, 0.1); }

WeightSpec WeightSpec::from_gamma(double gamma, double d0, int v_power, double xtv_power, bool gaussian)
{
    WeightSpec w;
    w.v_power = v_power;
    w.xtv_power = xtv_power;
    w.gaussian = gaussian;
    w.d0 = d0;
    w.delta = delta_for(gamma);
    return w;
}

double japanese(std::span<const double> u)
{
    double s = 1.0;
    for (double c : u)
        s += c * c;
    return std::sqrt(s);
}

double gaussian_exponent(double t, const WeightSpec &spec)
{
    return spec.d0 * (1.0 + std::pow(1.0 + t, -spec.delta));
}

std::array<double, 3> x_minus_tv(double t, std::span<const double> x, std::span<const double> v, double L_x)
{
    std::array<double, 3> y{};
    for (std::size_t a = 0; a < x.size(); ++a) {
        double c = x[a] - t * v[a];
        if (L_x > 0.0)
            c -= L_x * std::round(c / L_x);
        y[a] = c;
    }
    return y;
}

double weight_value(double t, std::span<const double> x, std::span<const double> v, const WeightSpec &spec,
                    double L_x)
{
    double w = 1.0;
    if (spec.v_power != 0)
        w *= std::pow(japanese(v), spec.v_power);
    if (spec.xtv_power != 0.0) {
        const auto y = x_minus_tv(t, x, v, L_x);
        w *= std::pow(japanese(std::span<const double>(y.data(), x.size())), spec.xtv_power);
    }
    if (spec.gaussian) {
        const double bracket2 = 1.0 + std::inner_product(v.begin(), v.end(), v.begin(), 0.0);
        w *= std::exp(gaussian_exponent(t, spec) * bracket2);
    }
    return w;
}

namespace {

DistributionField apply_gaussian(const DistributionField &in, const WeightSpec &spec, bool divide)
{
    const Grid &g = in.grid;
    const double dt = gaussian_exponent(in.time, spec);
    const std::size_t nv = g.velocity_cells();
    std::vector<double> factor(nv);
    for (std::size_t iv = 0; iv < nv; ++iv) {
        const auto v = g.velocity(iv);
        double b2 = 1.0;
        for (int a = 0; a < g.d_v; ++a)
            b2 += v[a] * v[a];
        const double exponent = dt * b2;
        if (exponent > std::log(std::numeric_limits<double>::max())) {
            std::ostringstream os;
            os << "e^{d(t)<v>^2} = e^" << exponent << " overflows at |v| = " << std::sqrt(b2 - 1.0)
               << "; reduce v_max or d0";
            throw Overflow(os.str());
        }
        factor[iv] = std::exp(exponent);
    }
    DistributionField out(g, in.time);
    for (std::size_t ix = 0; ix < g.spatial_cells(); ++ix) {
        auto src = in.slice(ix);
        auto dst = out.slice(ix);
        for (std::size_t iv = 0; iv < nv; ++iv)
            dst[iv] = divide ? src[iv] / factor[iv] : src[iv] * factor[iv];
    }
    return out;
}

} // namespace

DistributionField to_g(const DistributionField &f, const WeightSpec &spec) { return apply_gaussian(f, spec, false); }
DistributionField from_g(const DistributionField &g, const WeightSpec &spec) { return apply_gaussian(g, spec, true); }

} // namespace landau
