// Acceptance checks, one per criterion. Usage: acceptance <n> [<n> ...].
// Prints one PASS/FAIL line per criterion; exits non-zero if any fails.

#include "landau/coefficients.hpp"
#include "landau/collision.hpp"
#include "landau/config.hpp"
#include "landau/diagnostics.hpp"
#include "landau/driver.hpp"
#include "landau/errors.hpp"
#include "landau/kernel.hpp"
#include "landau/maxwellian.hpp"
#include "landau/reports.hpp"
#include "landau/stepper.hpp"
#include "landau/transport.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

using namespace landau;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char *f, double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

// 1. Contraction identities and the Pythagorean bound on random samples.
Outcome kernel_identities()
{
    std::mt19937_64 rng(20240501);
    std::uniform_real_distribution<double> coord(-5.0, 5.0), gam(-1.999, -0.001);
    double worst_v = 0.0, worst_vv = 0.0;
    int violations = 0;
    for (int n = 0; n < 10000; ++n) {
        const int d = n % 2 == 0 ? 2 : 3;
        const KernelParams p = KernelParams::make(gam(rng), d);
        std::array<double, 3> v{}, w{};
        for (int i = 0; i < d; ++i) {
            v[i] = coord(rng);
            w[i] = coord(rng);
        }
        const auto r = contraction_identities(std::span<const double>(v.data(), d),
                                              std::span<const double>(w.data(), d), p);
        worst_v = std::max(worst_v, r.a_dot_v_residual);
        worst_vv = std::max(worst_vv, r.a_vv_residual);
        violations += r.pythagorean_ok ? 0 : 1;
    }
    Outcome o;
    o.pass = worst_v <= 1e-12 && worst_vv <= 1e-12 && violations == 0;
    o.detail = "a.v residual " + fmt("%.2e", worst_v) + ", a:vv residual " + fmt("%.2e", worst_vv) +
               ", Pythagorean violations " + std::to_string(violations) + " (10^4 samples)";
    return o;
}

// 2. b = div a and c = div b against fourth-order differences; c in 3D.
Outcome kernel_calculus()
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> coord(-3.0, 3.0), gam(-1.95, -0.05);
    double worst_b = 0.0, worst_c = 0.0, worst_const = 0.0;
    for (int n = 0; n < 2000; ++n) {
        const int d = n % 2 == 0 ? 2 : 3;
        const KernelParams p = KernelParams::make(gam(rng), d);
        std::array<double, 3> z{};
        double r = 0.0;
        for (int i = 0; i < d; ++i) {
            z[i] = coord(rng);
            r += z[i] * z[i];
        }
        r = std::sqrt(r);
        if (r < 0.1)
            continue;
        const double h = 1e-3 * r;
        auto shifted = [&](int j, double s) {
            std::array<double, 3> y = z;
            y[j] += s;
            return y;
        };
        auto diff = [&](const std::function<double(const std::array<double, 3> &)> &g, int j) {
            return (-g(shifted(j, 2 * h)) + 8 * g(shifted(j, h)) - 8 * g(shifted(j, -h)) + g(shifted(j, -2 * h))) /
                   (12 * h);
        };
        const auto b = kernel_divergence(std::span<const double>(z.data(), d), p);
        double bnorm = 0.0;
        for (int i = 0; i < d; ++i)
            bnorm = std::max(bnorm, std::abs(b[i]));
        for (int i = 0; i < d; ++i) {
            double fd = 0.0;
            for (int j = 0; j < d; ++j)
                fd += diff([&](const std::array<double, 3> &y) {
                    return kernel_matrix(std::span<const double>(y.data(), d), p)(i, j);
                }, j);
            worst_b = std::max(worst_b, std::abs(fd - b[i]) / bnorm);
        }
        const double c = kernel_c(std::span<const double>(z.data(), d), p);
        double fd = 0.0;
        for (int j = 0; j < d; ++j)
            fd += diff([&](const std::array<double, 3> &y) {
                return kernel_divergence(std::span<const double>(y.data(), d), p)[j];
            }, j);
        worst_c = std::max(worst_c, std::abs(fd - c) / std::abs(c));
        if (d == 3)
            worst_const = std::max(worst_const,
                                   std::abs(c / std::pow(r, p.gamma) + 2.0 * (p.gamma + 3.0)) / (2.0 * (p.gamma + 3.0)));
    }
    Outcome o;
    o.pass = worst_b <= 1e-6 && worst_c <= 1e-6 && worst_const <= 1e-12;
    o.detail = "div a vs b " + fmt("%.2e", worst_b) + ", div b vs c " + fmt("%.2e", worst_c) +
               ", 3D c|z|^-gamma vs -2(gamma+3) " + fmt("%.2e", worst_const);
    return o;
}

// 3. Mass exactness and convergence order of momentum, energy and Q(M).
Outcome collision_structure()
{
    const KernelParams p = KernelParams::make(-1.0, 2);
    double worst_mass = 0.0;
    std::vector<double> err_mom, err_en, err_max;
    for (int n : {16, 32, 64}) {
        const Grid g = Grid::make(0, 2, 1, n, 1.0, 6.0);
        DistributionField f(g), m(g);
        for (std::size_t iv = 0; iv < g.velocity_cells(); ++iv) {
            const auto v = g.velocity(iv);
            f.values[iv] = std::exp(-(v[0] - 0.5) * (v[0] - 0.5) / 0.8 - v[1] * v[1] / 0.5) +
                           0.6 * std::exp(-(v[0] + 0.8) * (v[0] + 0.8) / 0.5 - (v[1] - 0.4) * (v[1] - 0.4) / 1.2);
            m.values[iv] = std::exp(-0.5 * (v[0] * v[0] + v[1] * v[1]));
        }
        const auto q = apply_collision(f, compute_coefficients(f, p), CollisionForm::divergence).q_values;
        const auto qm = apply_collision(m, compute_coefficients(m, p), CollisionForm::divergence).q_values;
        const double vol = g.velocity_volume();
        double mass = 0.0, mass_abs = 0.0, mom = 0.0, mom_scale = 0.0, en = 0.0, en_scale = 0.0, qm_l1 = 0.0;
        double mom_x = 0.0, mom_y = 0.0;
        for (std::size_t iv = 0; iv < g.velocity_cells(); ++iv) {
            const auto v = g.velocity(iv);
            const double v2 = v[0] * v[0] + v[1] * v[1];
            mass += q[iv];
            mass_abs += std::abs(q[iv]);
            mom_x += v[0] * q[iv] * vol;
            mom_y += v[1] * q[iv] * vol;
            mom_scale += std::sqrt(v2) * std::abs(q[iv]) * vol;
            en += 0.5 * v2 * q[iv] * vol;
            en_scale += 0.5 * v2 * std::abs(q[iv]) * vol;
            qm_l1 += std::abs(qm[iv]) * vol;
        }
        mom = std::hypot(mom_x, mom_y);
        worst_mass = std::max(worst_mass, std::abs(mass) / mass_abs);
        err_mom.push_back(mom / mom_scale);
        err_en.push_back(std::abs(en) / en_scale);
        err_max.push_back(qm_l1);
    }
    // Order over the refinement sequence (least squares on three halvings =
    // end-point slope). Errors already at the round-off floor count as
    // converged.
    auto order = [](const std::vector<double> &e) { return 0.5 * std::log2(e[0] / e[2]); };
    auto converged = [&](const std::vector<double> &e) {
        return order(e) >= 1.8 || *std::max_element(e.begin(), e.end()) <= 1e-10;
    };
    const double om = order(err_mom), oe = order(err_en), oq = order(err_max);
    Outcome o;
    o.pass = worst_mass <= 1e-12 && converged(err_mom) && converged(err_en) && converged(err_max);
    std::ostringstream os;
    os << "mass " << fmt("%.2e", worst_mass) << "; orders (n_v 16/32/64): momentum " << fmt("%.2f", om) << " ["
       << fmt("%.2e", err_mom[0]) << " " << fmt("%.2e", err_mom[1]) << " " << fmt("%.2e", err_mom[2])
       << "], energy " << fmt("%.2f", oe) << " [" << fmt("%.2e", err_en[0]) << " " << fmt("%.2e", err_en[1]) << " "
       << fmt("%.2e", err_en[2]) << "], Q(M) " << fmt("%.2f", oq) << " [" << fmt("%.2e", err_max[0]) << " "
       << fmt("%.2e", err_max[1]) << " " << fmt("%.2e", err_max[2]) << "]";
    o.detail = os.str();
    return o;
}

// 4. Discrete H-theorem for a homogeneous anisotropic Gaussian, run
// through the relaxation. The clipping abort is lifted so H stays
// measurable; the clipped mass is reported instead.
Outcome h_theorem()
{
    const Grid g = Grid::make(0, 2, 1, 64, 1.0, 6.0);
    DistributionField f(g);
    for (std::size_t iv = 0; iv < g.velocity_cells(); ++iv) {
        const auto v = g.velocity(iv);
        f.values[iv] = std::exp(-v[0] * v[0] / 2.0 - 2.0 * v[1] * v[1]);
    }
    StepControl ctrl;
    ctrl.dt_max = 0.05;
    ctrl.output_every = 0.05;
    ctrl.t_final = 2.0;
    ctrl.clip_abort_fraction = 1.0;
    std::vector<double> h, t;
    double clipped = 0.0;
    run(f, KernelParams::make(-1.0, 2), ctrl, [&](const RunProgress &pr) {
        h.push_back(h_functional(pr.f));
        t.push_back(pr.f.time);
        clipped = pr.clipped_mass;
    });
    double worst_rise = -std::numeric_limits<double>::infinity(), first_rise = -1.0;
    for (std::size_t k = 1; k < h.size(); ++k) {
        if (h[k] > h[k - 1] && first_rise < 0.0)
            first_rise = t[k];
        worst_rise = std::max(worst_rise, h[k] - h[k - 1]);
    }
    const double tol = 1e-10 * std::abs(h.front());
    Outcome o;
    o.pass = worst_rise <= tol;
    o.detail = "H(0) " + fmt("%.8f", h.front()) + ", H(2) " + fmt("%.8f", h.back()) + ", largest step change " +
               fmt("%.3e", worst_rise) + " (allowed " + fmt("%.1e", tol) + ")" +
               (first_rise >= 0.0 ? ", first rise at t=" + fmt("%.2f", first_rise) : std::string()) +
               ", clipped mass " + fmt("%.2e", clipped) + ", n_v 64";
    return o;
}

SimulationConfig transport_config(int d_x, int d_v, int n_x, int n_v, double L_x, double v_max, double t_final)
{
    SimulationConfig c;
    c.gamma = -1.0;
    c.epsilon = 1.0;
    c.d_x = d_x;
    c.d_v = d_v;
    c.n_x = n_x;
    c.n_v = n_v;
    c.L_x = L_x;
    c.v_max = v_max;
    c.t_final = t_final;
    c.dt_max = 1.0;
    c.output_every = 1.0;
    c.collisions = false;
    c.initial_kind = InitialKind::gaussian;
    c.initial_parameters = {{"s_x", 1.0}, {"s_v", 1.0}};
    return c;
}

// 5. Shift round trip, frozen f-sharp and the d_x = 1 density law.
Outcome transport_exactness()
{
    const SimulationConfig c = transport_config(1, 1, 2048, 512, 640.0, 6.0, 50.0);
    validate(c);
    const DistributionField f0 = initial_data(c);
    const double peak = f0.max_abs();

    const DistributionField back = transport_shift(transport_shift(f0, 37.25), -37.25);
    double round_trip = 0.0;
    for (std::size_t i = 0; i < f0.values.size(); ++i)
        round_trip = std::max(round_trip, std::abs(back.values[i] - f0.values[i]));
    round_trip /= peak;

    double drift = 0.0, rho_err = 0.0;
    run(f0, c.kernel(), c.control(), [&](const RunProgress &pr) {
        const DistributionField s = pullback_sharp(pr.f);
        for (std::size_t i = 0; i < f0.values.size(); ++i)
            drift = std::max(drift, std::abs(s.values[i] - f0.values[i]) / peak);
        const double t = pr.f.time;
        const double exact = std::sqrt(std::numbers::pi / (1.0 + t * t));
        rho_err = std::max(rho_err, std::abs(macroscopic_fields(pr.f).rho_sup - exact) / exact);
    });
    Outcome o;
    o.pass = round_trip <= 1e-12 && drift <= 1e-12 && rho_err <= 0.02;
    o.detail = "round trip " + fmt("%.2e", round_trip) + ", sharp drift " + fmt("%.2e", drift) +
               ", rho_sup vs sqrt(pi/(1+t^2)) on t<=50 " + fmt("%.2e", rho_err) + " (relative)";
    return o;
}

// 6. Free-streaming decay rates in d_x = d_v = 2 on a 48^2 x 48^2 grid.
// Resolving e^{-|x-tv|^2} in v up to t = 50 needs t*dv of order s_x, and
// keeping the box free of wrap needs L_x of order 2 v_max t; on 48 cells
// per axis both hold for a narrow Maxwellian (s_v = 0.35 s_x) on a box
// truncated at v_max = 0.45 s_x. The t^{-2} law does not depend on the
// velocity profile, so the truncation is harmless. Exact slopes for the
// untruncated data on [5,50] against log(1+t) are about -2.05.
Outcome dispersion_rates()
{
    const double v_max = 0.45, T = 50.0, L = 50.0;
    SimulationConfig c = transport_config(2, 2, 48, 48, L, v_max, T);
    c.initial_parameters = {{"s_x", 1.0}, {"s_v", 0.35}};
    std::vector<double> t, rho, m, e;
    run(initial_data(c), c.kernel(), c.control(), [&](const RunProgress &pr) {
        const MacroFields mf = macroscopic_fields(pr.f);
        t.push_back(pr.f.time);
        rho.push_back(mf.rho_sup);
        m.push_back(mf.m_sup);
        e.push_back(mf.e_sup);
    });
    std::ostringstream os;
    bool pass = true;
    const char *names[] = {"rho", "m", "e"};
    const std::vector<double> *series[] = {&rho, &m, &e};
    for (int k = 0; k < 3; ++k) {
        try {
            const double s = fit_decay_rate(t, *series[k], 5.0, 50.0).slope;
            pass = pass && std::abs(s + 2.0) <= 0.1;
            os << names[k] << " slope " << fmt("%.3f", s) << (k < 2 ? ", " : "");
        } catch (const Error &err) {
            pass = false;
            os << names[k] << ": " << err.what() << (k < 2 ? ", " : "");
        }
    }
    os << " (target -2 +/- 0.1, L_x " << fmt("%.1f", L) << ", dx " << fmt("%.2f", L / 48) << ")";
    return {pass, os.str()};
}

SimulationConfig near_vacuum(double gamma)
{
    SimulationConfig c;
    c.gamma = gamma;
    c.epsilon = 1e-3;
    c.d_x = 1;
    c.d_v = 2;
    c.n_x = 256;
    c.n_v = 128;
    c.L_x = 230.0;
    c.v_max = 3.2;
    c.t_final = 30.0;
    c.dt_max = 0.5;
    c.output_every = 1.0;
    c.K_diag = 0;
    c.fit_window = {10.0, 30.0};
    c.initial_kind = InitialKind::gaussian;
    c.initial_parameters = {{"s_x", 3.0}, {"s_v", 0.5}};
    return c;
}

// 7. Coefficient decay and the null-structure gain at γ = −1 and −1.5.
Outcome coefficient_decay()
{
    bool pass = true;
    std::ostringstream os;
    for (double gamma : {-1.0, -1.5}) {
        const SimulationConfig c = near_vacuum(gamma);
        validate(c);
        const RunResult res = run_simulation(c);
        const auto checks = fit_report(c, res.records);
        const double gain_bound = gamma == -1.0 ? 0.85 : 0.35;
        for (const auto &ch : checks) {
            if (ch.name == "slope a_bar_plain_sup") {
                pass = pass && ch.pass;
                os << "gamma " << gamma << ": a_bar slope " << fmt("%.3f", ch.value) << " (target -1 +/- 0.15), ";
            } else if (ch.name == "null-structure gain") {
                pass = pass && ch.value >= gain_bound;
                os << "gain " << fmt("%.3f", ch.value) << " (need >= " << gain_bound << ")"
                   << (gamma == -1.0 ? "; " : "");
            }
        }
    }
    return {pass, os.str()};
}

// 8. ε-scaling of the f-sharp Cauchy difference between T = 5 and T = 50.
Outcome sharp_scaling()
{
    auto diff_for = [](double eps) {
        SimulationConfig c;
        c.gamma = -1.0;
        c.epsilon = eps;
        c.d_x = 1;
        c.d_v = 2;
        c.n_x = 256;
        c.n_v = 128;
        c.L_x = 440.0;
        c.v_max = 3.2;
        c.t_final = 50.0;
        c.dt_max = 0.5;
        c.output_every = 5.0;
        c.initial_kind = InitialKind::seed;
        c.initial_parameters = {{"bumps",
                                 {{{"u", {0.6, 0.0}}, {"s_x", 10.0}, {"s_v", 0.4}},
                                  {{"u", {-0.6, 0.2}}, {"x0", {5.0}}, {"s_x", 8.0}, {"s_v", 0.4}}}}};
        validate(c);
        DistributionField at5;
        DistributionField at50;
        run(initial_data(c), c.kernel(), c.control(), [&](const RunProgress &pr) {
            if (std::abs(pr.f.time - 5.0) < 1e-9)
                at5 = pullback_sharp(pr.f);
            if (std::abs(pr.f.time - 50.0) < 1e-9)
                at50 = pullback_sharp(pr.f);
        });
        return sharp_cauchy_diff(at5, at50, 2.0, 2.0);
    };
    const double d1 = diff_for(1e-3), d2 = diff_for(5e-4);
    const double exponent = std::log2(d1 / d2);
    Outcome o;
    o.pass = exponent >= 1.5 * 0.85;
    o.detail = "diff(1e-3) " + fmt("%.4e", d1) + ", diff(5e-4) " + fmt("%.4e", d2) + ", exponent " +
               fmt("%.3f", exponent) + " (need >= 1.5 within 15%)";
    return o;
}

// 9. Seed data keeps its distance from the Maxwellian family; exact M-sharp
// data fits to round-off.
Outcome non_maxwellian_limit()
{
    SimulationConfig c;
    c.gamma = -1.0;
    c.epsilon = 1e-3;
    c.d_x = 2;
    c.d_v = 2;
    c.n_x = 96;
    c.n_v = 48;
    c.L_x = 40.0;
    c.v_max = 4.5;
    c.t_final = 2.0;
    c.dt_max = 0.5;
    c.output_every = 1.0;
    c.initial_kind = InitialKind::seed;
    c.initial_parameters = {{"bumps",
                             {{{"u", {0.7, 0.0}}, {"s_x", 1.5}, {"s_v", 0.6}},
                              {{"u", {-0.7, 0.3}}, {"x0", {1.0, -1.0}}, {"s_x", 1.5}, {"s_v", 0.6}}}}};
    validate(c);
    const DistributionField f0 = initial_data(c);
    const DistributionField fT = run(f0, c.kernel(), c.control());
    double clipped = 0.0;
    auto relative = [&](const DistributionField &f) {
        const StateFit sf = fit_state(f);
        clipped = std::max(clipped, sf.clipped_fraction);
        return sf.fit.residual / sf.fit.data_norm;
    };
    const double r0 = relative(f0), rT = relative(fT);

    SimulationConfig mc = c;
    mc.initial_kind = InitialKind::maxwellian;
    mc.initial_parameters = {{"m", 1.0}, {"alpha", 1.0}, {"sigma", 4.0}, {"beta", 0.5},
                             {"B", {{0.0, 0.5}, {-0.5, 0.0}}}};
    validate(mc);
    const double rm = relative(initial_data(mc));

    Outcome o;
    o.pass = rT >= 0.5 * r0 && rm <= 1e-8;
    o.detail = "seed relative residual " + fmt("%.4e", r0) + " at t=0, " + fmt("%.4e", rT) + " at t=2; exact M-sharp " +
               fmt("%.2e", rm) + "; clipped f-sharp fraction " + fmt("%.1e", clipped);
    return o;
}

// 10. Hierarchy constants.
Outcome hierarchy_constants()
{
    const HierarchyParams hp = hierarchy_params(-1.0);
    bool pass = hp.M_max == 14 && hp.M_int == 8 && hp.zeta.size() > 10 && hp.zeta[10] == 1.5 && hp.zeta[9] == 0.75;
    for (int k = 0; k <= 8 && k < static_cast<int>(hp.zeta.size()); ++k)
        pass = pass && hp.zeta[k] == 0.0;
    int ok = 0;
    for (int i = 1; i <= 50; ++i) {
        const double gamma = -2.0 + 2.0 * i / 51.0;
        const HierarchyParams h = hierarchy_params(gamma);
        ok += h.M_max + 2 >= 2 * h.M_int ? 1 : 0;
    }
    pass = pass && ok == 50;
    std::ostringstream os;
    os << "gamma=-1: M_max " << hp.M_max << ", M_int " << hp.M_int << ", zeta_10 " << hp.zeta.at(10) << ", zeta_9 "
       << hp.zeta.at(9) << "; M_max+2 >= 2 M_int for " << ok << "/50 gammas";
    return {pass, os.str()};
}

// 11. Oracles.
Outcome oracles_check()
{
    const OracleResults res = oracle_report();
    bool pass = true;
    std::ostringstream os;
    for (const auto &c : res.checks) {
        // The bathtub bound is logged, not asserted: the criterion asks for
        // finite, refinement-stable ratios.
        pass = pass && c.pass;
        os << c.name << " " << fmt("%.3g", c.value) << (c.pass ? "" : " [fail]") << "; ";
    }
    return {pass, os.str()};
}

using Criterion = Outcome (*)();
constexpr Criterion criteria[] = {kernel_identities,  kernel_calculus,   collision_structure,  h_theorem,
                                  transport_exactness, dispersion_rates, coefficient_decay,    sharp_scaling,
                                  non_maxwellian_limit, hierarchy_constants, oracles_check};

} // namespace

int main(int argc, char **argv)
{
    std::vector<int> which;
    for (int i = 1; i < argc; ++i)
        which.push_back(std::atoi(argv[i]));
    if (which.empty())
        for (int i = 1; i <= 11; ++i)
            which.push_back(i);
    int failures = 0;
    for (int n : which) {
        if (n < 1 || n > 11) {
            std::fprintf(stderr, "no criterion %d\n", n);
            return 1;
        }
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[n - 1]();
        } catch (const std::exception &e) {
            o = {false, std::string("error: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("criterion %d: %s  %s  [%.1f s]\n", n, o.pass ? "PASS" : "FAIL", o.detail.c_str(), secs);
        std::fflush(stdout);
        failures += o.pass ? 0 : 1;
    }
    return failures == 0 ? 0 : 1;
}
