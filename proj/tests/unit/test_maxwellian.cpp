#include "landau/errors.hpp"
#include "landau/maxwellian.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace landau;

namespace {

TravelingMaxwellianParams sample_params()
{
    TravelingMaxwellianParams p;
    p.d = 2;
    p.m = 1.3;
    p.alpha = 0.8;
    p.sigma = 3.0;
    p.beta = 0.4;
    p.set_b(0, 1, 0.3);
    return p;
}

} // namespace

TEST_CASE("prefactor at the centre")
{
    for (int d : {2, 3}) {
        TravelingMaxwellianParams p;
        p.d = d;
        p.m = 2.0;
        p.alpha = 1.5;
        p.sigma = 0.7;
        const double t = 1.9;
        const double v[3] = {0, 0, 0}, x[3] = {0, 0, 0};
        CHECK(eval_maxwellian(p, t, std::span<const double>(x, d), std::span<const double>(v, d)) ==
              doctest::Approx(2.0 * std::pow(1.5 * 0.7, 0.5 * d) / std::pow(2 * std::numbers::pi, d)));
    }
}

TEST_CASE("3D factorisation without coupling")
{
    TravelingMaxwellianParams p;
    p.d = 3;
    p.alpha = 2.0;
    p.sigma = 0.5;
    const double x[3] = {0.3, -0.2, 1.0}, v[3] = {0.5, 0.1, -0.4};
    const double t = 0.7;
    double yy = 0.0, vv = 0.0;
    for (int i = 0; i < 3; ++i) {
        yy += (x[i] - t * v[i]) * (x[i] - t * v[i]);
        vv += v[i] * v[i];
    }
    const double expected = std::pow(1.0, 1.5) / std::pow(2 * std::numbers::pi, 3) * std::exp(-0.25 * vv - yy);
    CHECK(eval_maxwellian(p, t, x, v) == doctest::Approx(expected).epsilon(1e-13));
}

TEST_CASE("f-sharp of a traveling Maxwellian is time independent")
{
    const auto p = sample_params();
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int n = 0; n < 50; ++n) {
        const double x[2] = {u(rng), u(rng)}, v[2] = {u(rng), u(rng)};
        const double t = 7.3;
        const double moved[2] = {x[0] + t * v[0], x[1] + t * v[1]};
        const double sharp = maxwellian_sharp(p, x, v);
        CHECK(std::abs(eval_maxwellian(p, t, moved, v) - sharp) <= 1e-12 * sharp);
        CHECK(eval_maxwellian(p, 0.0, x, v) == sharp);
    }
}

TEST_CASE("free transport annihilates the Maxwellian")
{
    const auto p = sample_params();
    const double x[2] = {0.4, -0.3}, v[2] = {0.7, 0.2};
    const double t = 1.1;
    auto residual = [&](double h) {
        const double dt = (eval_maxwellian(p, t + h, x, v) - eval_maxwellian(p, t - h, x, v)) / (2 * h);
        double adv = 0.0;
        for (int i = 0; i < 2; ++i) {
            double xp[2] = {x[0], x[1]}, xm[2] = {x[0], x[1]};
            xp[i] += h;
            xm[i] -= h;
            adv += v[i] * (eval_maxwellian(p, t, xp, v) - eval_maxwellian(p, t, xm, v)) / (2 * h);
        }
        return std::abs(dt + adv);
    };
    CHECK(std::log2(residual(1e-2) / residual(5e-3)) >= 1.8);
}

TEST_CASE("rotations commuting with B leave the form unchanged")
{
    auto p = sample_params();
    const double c = std::cos(0.8), s = std::sin(0.8);
    const double x[2] = {0.5, -1.0}, v[2] = {0.3, 0.9};
    const double rx[2] = {c * x[0] - s * x[1], s * x[0] + c * x[1]};
    const double rv[2] = {c * v[0] - s * v[1], s * v[0] + c * v[1]};
    CHECK(maxwellian_sharp(p, rx, rv) == doctest::Approx(maxwellian_sharp(p, x, v)).epsilon(1e-13));
}

TEST_CASE("invalid parameters")
{
    auto p = sample_params();
    p.alpha = -1.0;
    const double x[2] = {0, 0};
    CHECK_THROWS_AS(maxwellian_sharp(p, x, x), ConstraintViolated);
    p = sample_params();
    p.B[1] = 0.5; // no longer skew
    CHECK_THROWS_AS(maxwellian_sharp(p, x, x), ConstraintViolated);
}

TEST_CASE("fit recovers a family member")
{
    const auto p = sample_params();
    const Grid g = Grid::make(2, 2, 24, 16, 16.0, 4.0);
    const DistributionField f = sample_maxwellian_sharp(p, g);
    const MaxwellianFit fit = fit_maxwellian(f);
    CHECK(fit.converged);
    CHECK(fit.residual <= 1e-8 * fit.data_norm);
    CHECK(fit.params.m == doctest::Approx(p.m).epsilon(1e-4));
    CHECK(fit.params.alpha == doctest::Approx(p.alpha).epsilon(1e-4));
    CHECK(fit.params.sigma == doctest::Approx(p.sigma).epsilon(1e-4));
    CHECK(fit.params.beta == doctest::Approx(p.beta).epsilon(1e-4));
    CHECK(fit.params.b(0, 1) == doctest::Approx(p.b(0, 1)).epsilon(1e-4));

    DistributionField f5 = f;
    for (double &v : f5.values)
        v *= 5.0;
    const MaxwellianFit fit5 = fit_maxwellian(f5);
    CHECK(fit5.params.m == doctest::Approx(5.0 * fit.params.m).epsilon(1e-6));
    CHECK(fit5.params.alpha == doctest::Approx(fit.params.alpha).epsilon(1e-6));
}

TEST_CASE("two separated Maxwellians are far from the family")
{
    TravelingMaxwellianParams p;
    p.d = 2;
    p.alpha = 4.0;
    p.sigma = 4.0;
    const Grid g = Grid::make(2, 2, 24, 16, 16.0, 4.0);
    DistributionField f = sample_maxwellian_sharp(p, g);
    const std::size_t nv = g.velocity_cells();
    for (std::size_t ix = 0; ix < g.spatial_cells(); ++ix) {
        const auto x = g.position(ix);
        for (std::size_t iv = 0; iv < nv; ++iv) {
            const auto v = g.velocity(iv);
            const double y[2] = {x[0] - 3.0, x[1]}, w[2] = {v[0] + 1.5, v[1]};
            f.values[ix * nv + iv] += maxwellian_sharp(p, y, w);
        }
    }
    const MaxwellianFit fit = fit_maxwellian(f);
    CHECK(fit.residual >= 0.1 * fit.data_norm);

    DistributionField f2 = f;
    for (double &v : f2.values)
        v *= 2.0;
    CHECK(fit_maxwellian(f2).residual == doctest::Approx(2.0 * fit.residual).epsilon(1e-6));
}

TEST_CASE("fit preconditions")
{
    const Grid g = Grid::make(2, 2, 8, 8, 8.0, 3.0);
    CHECK_THROWS_AS(fit_maxwellian(DistributionField(g)), ZeroMass);
    CHECK_THROWS_AS(fit_maxwellian(DistributionField(Grid::make(1, 2, 8, 8, 8.0, 3.0))), GridMismatch);
}
