#include "landau/errors.hpp"
#include "landau/oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace landau;
using namespace landau::oracles;

namespace {

TestFunction ball()
{
    TestFunction h;
    h.name = "ball";
    h.shape = Shape::ball;
    h.a = 1.0;
    return h;
}

TestFunction gaussian()
{
    TestFunction h;
    h.name = "gaussian";
    h.shape = Shape::gaussian;
    h.a = 1.0;
    return h;
}

} // namespace

TEST_CASE("potential of the unit ball at its centre")
{
    CHECK(std::abs(radial_potential(ball(), 1.0, 0.0) - 2.0 * std::numbers::pi) <= 1e-3);
    const std::array<double, 3> origin{};
    CHECK(std::abs(potential(ball(), 1.0, origin) - 2.0 * std::numbers::pi) <= 1e-3);
}

TEST_CASE("catalog")
{
    const auto cat = interpolation_catalog();
    CHECK(cat.size() == 20);
    for (const auto &h : cat) {
        CHECK(h.l1() > 0.0);
        CHECK(h.linf() > 0.0);
    }
}

TEST_CASE("interpolation ratio is scale invariant")
{
    const auto a = check_interpolation(gaussian(), 1.5);
    const auto b = check_interpolation(gaussian().scaled(7.0), 1.5);
    CHECK(b.ratio == doctest::Approx(a.ratio).epsilon(1e-10));
    CHECK(a.ratio <= interpolation_sharp_constant(1.5));
    CHECK(a.refinement_change <= 1e-3);
    // balls attain the sharp constant
    CHECK(check_interpolation(ball(), 1.0).ratio == doctest::Approx(interpolation_sharp_constant(1.0)).epsilon(1e-3));
}

TEST_CASE("dispersion")
{
    const auto a = check_dispersion({0.0, 1.0, 10.0, 100.0});
    const auto b = check_dispersion({0.0, 1.0, 10.0, 100.0}, 1.0, 1.0, 3.0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(std::abs(a[i].lhs - a[i].lhs_closed) <= 1e-8 * a[i].lhs_closed);
        CHECK(std::isfinite(a[i].ratio));
        CHECK(b[i].ratio == doctest::Approx(a[i].ratio).epsilon(1e-12));
    }
    // at t = 0 only the ⟨v⟩⁴ bound is active: ‖h‖_{L¹_v} = π^{3/2}
    CHECK(a[0].lhs == doctest::Approx(std::pow(std::numbers::pi, 1.5)).epsilon(1e-8));
}

TEST_CASE("HLS branches")
{
    CHECK(hls_branch_for(1.5 + 1e-6) == HlsBranch::L2);
    CHECK(hls_branch_for(1.5) == HlsBranch::L15over4nu);
    CHECK_THROWS_AS(check_hls(gaussian(), 1.0, HlsBranch::L2), BranchMismatch);
    CHECK_THROWS_AS(check_hls(gaussian(), 2.0, HlsBranch::L15over4nu), BranchMismatch);
    const auto r = check_hls(gaussian(), 2.0, HlsBranch::L2);
    CHECK(r.ratio <= 10.0);
    CHECK(check_hls(gaussian().scaled(0.25), 2.0, HlsBranch::L2).ratio == doctest::Approx(r.ratio).epsilon(1e-10));
}
