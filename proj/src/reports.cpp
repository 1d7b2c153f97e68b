#include "landau/reports.hpp"

#include "landau/driver.hpp"
#include "landau/errors.hpp"
#include "landau/maxwellian.hpp"
#include "landau/transport.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace landau {

bool all_pass(const std::vector<Check> &checks)
{
    for (const auto &c : checks)
        if (!c.pass)
            return false;
    return true;
}

Check two_sided(std::string name, double value, double target, double tolerance, std::string detail)
{
    return {std::move(name), value, target, tolerance, std::abs(value - target) <= tolerance, std::move(detail)};
}

Check at_least(std::string name, double value, double bound, std::string detail)
{
    return {std::move(name), value, bound, 0.0, value >= bound, std::move(detail)};
}

Check at_most(std::string name, double value, double bound, std::string detail)
{
    return {std::move(name), value, bound, 0.0, value <= bound, std::move(detail)};
}

namespace {

Check failed(std::string name, double target, const std::exception &e)
{
    return {std::move(name), std::nan(""), target, 0.0, false, e.what()};
}

} // namespace

std::vector<Check> fit_report(const SimulationConfig &config, const std::vector<DiagnosticRecord> &records)
{
    std::vector<double> t, rho, m, e, plain, weighted;
    bool have_coefficients = false;
    for (const auto &r : records) {
        t.push_back(r.t);
        rho.push_back(r.rho_sup);
        m.push_back(r.m_sup);
        e.push_back(r.e_sup);
        plain.push_back(r.a_bar_plain_sup);
        weighted.push_back(r.a_bar_weighted_sup);
        have_coefficients = have_coefficients || r.a_bar_plain_sup > 0.0;
    }
    const double lo = config.fit_window[0], hi = config.fit_window[1];
    const double target = -static_cast<double>(config.d_x);
    std::vector<Check> out;
    auto slope_check = [&](const char *name, const std::vector<double> &v, double tgt, double tol,
                           const char *paper) {
        try {
            const FitResult fr = fit_decay_rate(t, v, lo, hi);
            std::ostringstream os;
            os << fr.points << " points, stderr " << fr.stderr_ << ", paper 3D target " << paper;
            out.push_back(two_sided(name, fr.slope, tgt, tol, os.str()));
        } catch (const Error &err) {
            out.push_back(failed(name, tgt, err));
        }
    };
    slope_check("slope rho_sup", rho, target, 0.1, "-3");
    slope_check("slope m_sup", m, target, 0.1, "-3");
    slope_check("slope e_sup", e, target, 0.1, "-3");
    if (have_coefficients) {
        slope_check("slope a_bar_plain_sup", plain, -1.0, 0.15, "-1");
        const double gain_target = std::min(2.0 + config.gamma, 1.0);
        try {
            const double gain = null_structure_gain(t, plain, weighted, lo, hi);
            std::ostringstream os;
            os << "target min{2+gamma,1} = " << gain_target << " less 0.15";
            out.push_back(at_least("null-structure gain", gain, gain_target - 0.15, os.str()));
        } catch (const Error &err) {
            out.push_back(failed("null-structure gain", gain_target - 0.15, err));
        }
    }
    return out;
}

SeriesReport maxfit_report(const SimulationConfig &config, bool every)
{
    if (config.d_x != config.d_v)
        throw ConfigInvalid("maxfit needs d_x = d_v");
    SeriesReport rep;
    double clipped = 0.0;
    auto fit_at = [&](const DistributionField &f) {
        const StateFit sf = fit_state(f);
        clipped = std::max(clipped, sf.clipped_fraction);
        rep.series.push_back({f.time, sf.fit.residual, sf.fit.data_norm});
    };
    RunOptions opts;
    opts.on_record = [&](const DiagnosticRecord &, const DistributionField &f) {
        if (every || f.time == 0.0)
            fit_at(f);
    };
    const RunResult res = run_simulation(config, opts);
    if (!every && config.t_final > 0.0)
        fit_at(res.final_state);

    auto rel = [](const SeriesPoint &p) { return p.reference > 0.0 ? p.value / p.reference : 0.0; };
    const SeriesPoint &first = rep.series.front();
    const SeriesPoint &last = rep.series.back();
    if (config.initial_kind == InitialKind::maxwellian) {
        rep.checks.push_back(at_most("exact Maxwellian data: relative residual at t=0", rel(first), 1e-8));
    } else {
        std::ostringstream os;
        os << "relative residual " << rel(first) << " at t=0, " << rel(last) << " at t=" << last.t
           << "; negative f-sharp mass clipped before fitting " << clipped;
        rep.checks.push_back(at_least("seed data: final / initial relative residual", rel(last) / rel(first), 0.5,
                                      os.str()));
    }
    return rep;
}

SeriesReport compare_free_report(const SimulationConfig &config, bool scaling)
{
    SeriesReport rep;
    const double ell = config.weight_v_power, m = config.weight_x_power;
    auto series = [&](const SimulationConfig &c) {
        std::vector<SeriesPoint> s;
        DistributionField initial = initial_data(c);
        RunOptions opts;
        opts.on_record = [&](const DiagnosticRecord &, const DistributionField &f) {
            s.push_back({f.time, free_deviation(f, initial, ell, m), 0.0});
        };
        run_simulation(c, opts);
        return s;
    };
    rep.series = series(config);
    if (scaling) {
        SimulationConfig half = config;
        half.epsilon = 0.5 * config.epsilon;
        const auto other = series(half);
        double sup_full = 0.0, sup_half = 0.0;
        for (std::size_t i = 0; i < rep.series.size(); ++i) {
            rep.series[i].reference = i < other.size() ? other[i].value : std::nan("");
            sup_full = std::max(sup_full, rep.series[i].value);
            if (i < other.size())
                sup_half = std::max(sup_half, other[i].value);
        }
        const double ratio = sup_half > 0.0 ? sup_full / sup_half : std::nan("");
        std::ostringstream os;
        os << "sup over t at eps: " << sup_full << ", at eps/2: " << sup_half;
        rep.checks.push_back(at_least("free-deviation ratio eps vs eps/2", ratio, 0.85 * std::pow(2.0, 1.5),
                                      os.str()));
    }
    return rep;
}

OracleResults oracle_report()
{
    using namespace oracles;
    OracleResults out;
    const auto catalog = interpolation_catalog();

    TestFunction ball;
    ball.name = "unit ball";
    ball.shape = Shape::ball;
    ball.a = 1.0;
    const std::array<double, 3> origin{};
    const double two_pi = potential(ball, 1.0, std::span<const double, 3>(origin));
    out.checks.push_back(two_sided("unit ball potential at 0, nu=1", two_pi, 2.0 * std::numbers::pi, 1e-3));

    bool finite = true, stable = true, bounded = true;
    double worst_change = 0.0, worst_excess = 0.0;
    for (double nu : {0.5, 1.0, 1.5, 2.5}) {
        const double sharp = interpolation_sharp_constant(nu);
        for (const auto &h : catalog) {
            RatioReport r = check_interpolation(h, nu);
            finite = finite && std::isfinite(r.ratio);
            stable = stable && r.refinement_change <= 1e-3;
            bounded = bounded && r.ratio <= sharp * (1.0 + 1e-6);
            worst_change = std::max(worst_change, r.refinement_change);
            worst_excess = std::max(worst_excess, r.ratio / sharp);
            out.interpolation.push_back(std::move(r));
        }
    }
    out.checks.push_back(at_most("interpolation: largest refinement change", worst_change, 1e-3));
    out.checks.push_back(at_most("interpolation: largest ratio / sharp constant", worst_excess, 1.0 + 1e-6,
                                 finite ? "all ratios finite" : "non-finite ratio"));

    out.dispersion = check_dispersion({0.0, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0, 50.0, 100.0});
    double closed_err = 0.0, ratio_max = 0.0;
    for (const auto &p : out.dispersion) {
        closed_err = std::max(closed_err, std::abs(p.lhs - p.lhs_closed) / p.lhs_closed);
        ratio_max = std::isfinite(p.ratio) ? std::max(ratio_max, p.ratio) : std::nan("");
    }
    out.checks.push_back(at_most("dispersion: quadrature vs closed form", closed_err, 1e-8));
    out.checks.push_back(at_least("dispersion: ratio finite on [0,100]", std::isfinite(ratio_max) ? 1.0 : 0.0, 1.0,
                                  "largest ratio " + std::to_string(ratio_max)));

    double hls_change = 0.0;
    bool hls_finite = true;
    for (double nu : {0.75, 1.5, 2.0, 2.5}) {
        for (const auto &h : catalog) {
            if (!h.radial() || h.shape == Shape::algebraic)
                continue;
            RatioReport r = check_hls(h, nu, hls_branch_for(nu));
            hls_finite = hls_finite && std::isfinite(r.ratio);
            hls_change = std::max(hls_change, r.refinement_change);
            out.hls.push_back(std::move(r));
        }
    }
    out.checks.push_back(at_most("hls: largest refinement change", hls_change, 1e-3,
                                 hls_finite ? "all ratios finite" : "non-finite ratio"));
    return out;
}

} // namespace landau
