#include "landau/errors.hpp"
#include "landau/phase_state.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace landau;

TEST_CASE("grid layout")
{
    const Grid g = Grid::make(1, 2, 8, 4, 16.0, 2.0);
    CHECK(g.dx() == 2.0);
    CHECK(g.dv() == 1.0);
    CHECK(g.size() == 8 * 16);
    CHECK(g.x_node(0) == -8.0);
    CHECK(g.v_center(0) == -1.5);
    CHECK(g.cell_volume() == doctest::Approx(2.0));
    const auto idx = g.velocity_index(5);
    CHECK(idx[0] == 1);
    CHECK(idx[1] == 1);
    CHECK_THROWS_AS(Grid::make(1, 2, 0, 4, 16.0, 2.0), InvalidGrid);
    CHECK_THROWS_AS(Grid::make(1, 2, 8, 4, -1.0, 2.0), InvalidGrid);
}

TEST_CASE("gaussian exponent and delta")
{
    const WeightSpec s = WeightSpec::from_gamma(-1.0, 1.0);
    CHECK(WeightSpec::delta_for(-1.0) == doctest::Approx(0.1));
    CHECK(WeightSpec::delta_for(-1.8) == doctest::Approx(0.05));
    CHECK(gaussian_exponent(0.0, s) == doctest::Approx(2.0));
    double prev = gaussian_exponent(0.0, s);
    for (double t : {1.0, 10.0, 1e3, 1e8}) {
        const double d = gaussian_exponent(t, s);
        CHECK(d < prev);
        CHECK(d > 1.0);
        prev = d;
    }
    CHECK(gaussian_exponent(1e30, s) == doctest::Approx(1.0).epsilon(1e-2));
}

TEST_CASE("weight values")
{
    const double t = 2.5;
    const double v[2] = {0.0, 0.0};
    const double x_on[1] = {0.0};
    CHECK(weight_value(t, x_on, v, WeightSpec{1, 1.0, false, 0.1, 0.1}) == doctest::Approx(1.0));

    const double x3[3] = {1.0, 1.0, 1.0};
    const double v3[3] = {0.0, 0.0, 0.0};
    CHECK(weight_value(0.0, x3, v3, WeightSpec{0, 2.0, false, 0.1, 0.1}) == doctest::Approx(4.0));

    const double xv[2] = {0.0, 0.0};
    const double vu[2] = {0.6, 0.8};
    const WeightSpec g = WeightSpec::from_gamma(-1.0, 1.0, 2, 0.0, true);
    CHECK(weight_value(0.0, xv, vu, g) == doctest::Approx(2.0 * std::exp(4.0)));
}

TEST_CASE("x - tv rides the characteristics")
{
    const double v[1] = {1.7};
    const double x0[1] = {0.4};
    for (double t : {0.0, 1.0, 3.0}) {
        const double x[1] = {x0[0] + t * v[0]};
        CHECK(x_minus_tv(t, x, v, 0.0)[0] == doctest::Approx(0.4));
    }
    // minimal image on a periodic box
    const double x[1] = {9.0};
    CHECK(x_minus_tv(0.0, x, v, 10.0)[0] == doctest::Approx(-1.0));
}

TEST_CASE("g transform")
{
    const Grid grid = Grid::make(1, 2, 4, 8, 4.0, 3.0);
    const WeightSpec s = WeightSpec::from_gamma(-1.0, 0.1);

    DistributionField zero(grid);
    for (double v : to_g(zero, s).values)
        CHECK(v == 0.0);

    DistributionField f(grid);
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (double &v : f.values)
        v = u(rng);
    const DistributionField back = from_g(to_g(f, s), s);
    for (std::size_t i = 0; i < f.values.size(); ++i)
        CHECK(std::abs(back.values[i] - f.values[i]) <= 1e-12 * f.values[i]);

    const double d = gaussian_exponent(0.0, s);
    for (std::size_t iv = 0; iv < grid.velocity_cells(); ++iv) {
        const auto vv = grid.velocity(iv);
        const double b2 = 1.0 + vv[0] * vv[0] + vv[1] * vv[1];
        f.values[iv] = std::exp(-2.0 * d * b2);
    }
    const DistributionField g = to_g(f, s);
    for (std::size_t iv = 0; iv < grid.velocity_cells(); ++iv) {
        const auto vv = grid.velocity(iv);
        const double b2 = 1.0 + vv[0] * vv[0] + vv[1] * vv[1];
        CHECK(g.values[iv] == doctest::Approx(std::exp(-d * b2)).epsilon(1e-12));
    }

    const Grid wide = Grid::make(0, 2, 1, 8, 1.0, 60.0);
    CHECK_THROWS_AS(to_g(DistributionField(wide), WeightSpec::from_gamma(-1.0, 0.5)), Overflow);
}
