#include "landau/coefficients.hpp"
#include "landau/errors.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace landau;

namespace {

DistributionField homogeneous(int d, int n, double v_max, auto &&fn)
{
    const Grid g = Grid::make(0, d, 1, n, 1.0, v_max);
    DistributionField f(g);
    for (std::size_t iv = 0; iv < g.velocity_cells(); ++iv)
        f.values[iv] = fn(g.velocity(iv));
    return f;
}

} // namespace

TEST_CASE("zero field gives zero coefficients and norms")
{
    const auto f = homogeneous(2, 8, 3.0, [](auto) { return 0.0; });
    const auto c = compute_coefficients(f, KernelParams::make(-1.0, 2));
    for (double v : c.values)
        CHECK(v == 0.0);
    const auto n = coefficient_sup_norms(c, -1.0);
    CHECK(n.plain == 0.0);
    CHECK(n.weighted_down == 0.0);
    CHECK(n.c_sup == 0.0);
}

TEST_CASE("a single occupied cell reproduces the cell-averaged kernel")
{
    const auto p = KernelParams::make(-1.0, 2);
    const Grid g = Grid::make(0, 2, 1, 12, 1.0, 3.0);
    DistributionField f(g);
    const std::size_t hot = 5 * 12 + 7;
    f.values[hot] = 1.0 / g.velocity_volume();
    for (auto method : {ConvolutionMethod::direct, ConvolutionMethod::fft}) {
        const auto c = compute_coefficients(f, p, method);
        const auto v0 = g.velocity(hot);
        for (std::size_t iv : {std::size_t(0), std::size_t(40), std::size_t(143)}) {
            const auto v = g.velocity(iv);
            const double z[2] = {v[0] - v0[0], v[1] - v0[1]};
            const double sp[2] = {g.dv(), g.dv()};
            const auto a = cell_averaged_kernel(z, sp, p, KernelPart::matrix);
            CHECK(c.a(0, 0, iv) == doctest::Approx(a[0]).epsilon(1e-10));
            CHECK(c.a(0, 1, iv) == doctest::Approx(a[1]).epsilon(1e-10));
            CHECK(c.a(1, 1, iv) == doctest::Approx(a[3]).epsilon(1e-10));
        }
    }
}

TEST_CASE("radial data gives an isotropic matrix at the centre")
{
    const auto f = homogeneous(2, 15, 4.5, [](auto v) { return std::exp(-(v[0] * v[0] + v[1] * v[1])); });
    const auto c = compute_coefficients(f, KernelParams::make(-1.0, 2));
    const std::size_t centre = 7 * 15 + 7;
    const double tr = c.a(0, 0, centre) + c.a(1, 1, centre);
    CHECK(std::abs(c.a(0, 1, centre)) <= 1e-10 * tr);
    CHECK(std::abs(c.a(0, 0, centre) - c.a(1, 1, centre)) <= 1e-10 * tr);
}

TEST_CASE("c-bar of a 3D Maxwellian at the origin")
{
    // −2(γ+3) ∫ |v|^{-1} e^{-|v|²} dv = −4 · 2π at γ = −1
    const double exact = -8.0 * std::numbers::pi;
    auto error = [&](int n) {
        const auto f = homogeneous(3, n, 4.5, [](auto v) { return std::exp(-(v[0] * v[0] + v[1] * v[1] + v[2] * v[2])); });
        const auto c = compute_coefficients(f, KernelParams::make(-1.0, 3));
        const std::size_t centre = (std::size_t(n / 2) * n + n / 2) * n + n / 2;
        return std::abs(c.c(centre) - exact) / std::abs(exact);
    };
    // midpoint sampling of f limits this to second order: 2.7e-3 at n = 49
    const double e25 = error(25), e49 = error(49);
    CHECK(std::log2(e25 / e49) / std::log2(48.0 / 24.0) >= 1.8);
    CHECK(error(85) <= 1e-3);
}

TEST_CASE("coefficients are linear and PSD")
{
    const auto p = KernelParams::make(-1.5, 2);
    const auto f = homogeneous(2, 16, 4.0, [](auto v) {
        return std::exp(-(v[0] - 0.5) * (v[0] - 0.5) - 2.0 * v[1] * v[1]) + 0.3 * std::exp(-4.0 * (v[0] + 1) * (v[0] + 1));
    });
    auto f3 = f;
    for (double &v : f3.values)
        v *= 3.0;
    const auto c1 = compute_coefficients(f, p);
    const auto c3 = compute_coefficients(f3, p);
    const auto n1 = coefficient_sup_norms(c1, -1.5);
    const auto n3 = coefficient_sup_norms(c3, -1.5);
    CHECK(n3.plain == doctest::Approx(3.0 * n1.plain).epsilon(1e-12));
    CHECK(n3.weighted_down == doctest::Approx(3.0 * n1.weighted_down).epsilon(1e-12));
    CHECK(n3.c_sup == doctest::Approx(3.0 * n1.c_sup).epsilon(1e-12));
    for (std::size_t i = 0; i < c1.cells(); ++i) {
        const double a = c1.a(0, 0, i), b = c1.a(0, 1, i), d = c1.a(1, 1, i);
        const double tr = a + d;
        const double lmin = 0.5 * (tr - std::sqrt((a - d) * (a - d) + 4 * b * b));
        CHECK(lmin >= -1e-12 * tr);
    }
}

TEST_CASE("negative input is rejected")
{
    auto f = homogeneous(2, 8, 3.0, [](auto) { return 1.0; });
    f.values[3] = -0.5;
    CHECK_THROWS_AS(compute_coefficients(f, KernelParams::make(-1.0, 2)), NegativeInput);
}
