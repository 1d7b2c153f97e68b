#include "landau/diagnostics.hpp"

#include "landau/coefficients.hpp"
#include "landau/collision.hpp"
#include "landau/errors.hpp"
#include "landau/parallel.hpp"
#include "landau/transport.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace landau {

HierarchyParams hierarchy_params(double gamma)
{
    if (!(gamma > -2.0 && gamma < 0.0)) {
        std::ostringstream os;
        os << "gamma = " << gamma << " must lie in (-2, 0)";
        throw GammaOutOfRange(os.str());
    }
    HierarchyParams hp;
    hp.gamma = gamma;
    hp.delta = WeightSpec::delta_for(gamma);
    const bool very_soft = gamma <= -1.0;
    const int bracket = static_cast<int>(std::ceil((very_soft ? 2.0 / (2.0 + gamma) : 1.0 / std::abs(gamma)) + 4.0));
    hp.M_max = 2 + 2 * bracket;
    hp.M_int = hp.M_max - bracket;
    const int top = hp.M_max - 4;
    hp.zeta.assign(top + 1, 0.0);
    hp.theta.assign(top + 1, 0.0);
    for (int k = hp.M_int + 1; k <= top; ++k) {
        const int below = top - k;
        if (very_soft) {
            hp.zeta[k] = std::max(0.0, 1.5 - 0.75 * (2.0 + gamma) * below);
        } else if (k <= hp.M_max - 6) {
            hp.theta[k] = std::max(0.0, 1.0 + below * gamma);
        } else if (k == hp.M_max - 5) {
            hp.zeta[k] = 0.75;
            hp.theta[k] = 1.0 + gamma;
        }
    }
    hp.zeta[top] = 1.5;
    hp.theta[top] = 1.0;
    hp.p_star = gamma >= -1.0 ? std::numeric_limits<double>::infinity() : -15.0 / (4.0 * (gamma + 1.0));
    hp.p_star_star = gamma >= -1.5 ? -15.0 / (4.0 * gamma) : 2.0;
    return hp;
}

namespace {

// First-order direction: 0 = ∂_x, 1 = ∂_v, 2 = Y, on `axis`.
struct Direction {
    int kind;
    int axis;
};

std::vector<Direction> directions_of(const Derivative &D)
{
    std::vector<Direction> dirs;
    for (int a = 0; a < 3; ++a) {
        for (int n = 0; n < D.alpha[a]; ++n)
            dirs.push_back({0, a});
        for (int n = 0; n < D.beta[a]; ++n)
            dirs.push_back({1, a});
        for (int n = 0; n < D.sigma[a]; ++n)
            dirs.push_back({2, a});
    }
    return dirs;
}

std::array<std::size_t, 3> strides(int n, int d)
{
    std::array<std::size_t, 3> s{};
    std::size_t acc = 1;
    for (int a = d - 1; a >= 0; --a) {
        s[a] = acc;
        acc *= static_cast<std::size_t>(n);
    }
    return s;
}

void diff_x(const Grid &g, int axis, std::span<const double> in, std::span<double> out, double scale)
{
    const auto sx = strides(g.n_x, g.d_x);
    const std::size_t nv = g.velocity_cells();
    const int n = g.n_x;
    const double c = scale / (2.0 * g.dx());
    parallel_for(g.spatial_cells(), [&](std::size_t ix) {
        const int i = static_cast<int>(ix / sx[axis]) % n;
        const std::size_t base = ix - static_cast<std::size_t>(i) * sx[axis];
        const std::size_t up = base + static_cast<std::size_t>((i + 1) % n) * sx[axis];
        const std::size_t dn = base + static_cast<std::size_t>((i + n - 1) % n) * sx[axis];
        for (std::size_t iv = 0; iv < nv; ++iv)
            out[ix * nv + iv] += c * (in[up * nv + iv] - in[dn * nv + iv]);
    });
}

void diff_v(const Grid &g, int axis, std::span<const double> in, std::span<double> out)
{
    const auto sv = strides(g.n_v, g.d_v);
    const std::size_t nv = g.velocity_cells();
    const int n = g.n_v;
    const double c = 1.0 / (2.0 * g.dv());
    parallel_for(g.spatial_cells(), [&](std::size_t ix) {
        const double *f = in.data() + ix * nv;
        double *o = out.data() + ix * nv;
        for (std::size_t iv = 0; iv < nv; ++iv) {
            const int i = static_cast<int>(iv / sv[axis]) % n;
            const double up = i + 1 < n ? f[iv + sv[axis]] : 0.0;
            const double dn = i > 0 ? f[iv - sv[axis]] : 0.0;
            o[iv] += c * (up - dn);
        }
    });
}

void check_order(const Derivative &D, int max_order)
{
    if (D.order() > max_order) {
        std::ostringstream os;
        os << "derivative order " << D.order() << " exceeds the configured maximum " << max_order;
        throw OrderTooHigh(os.str());
    }
}

double max_abs(const std::vector<double> &v)
{
    double m = 0.0;
    for (double x : v)
        m = std::max(m, std::abs(x));
    return m;
}

// ⟨x − tv⟩ for every (ix, iv).
template <class Fn>
void for_each_weight(const Grid &g, double t, Fn &&fn)
{
    const std::size_t nv = g.velocity_cells();
    for (std::size_t ix = 0; ix < g.spatial_cells(); ++ix) {
        const auto x = g.position(ix);
        for (std::size_t iv = 0; iv < nv; ++iv) {
            const auto v = g.velocity(iv);
            const auto y = x_minus_tv(t, std::span<const double>(x.data(), g.d_x),
                                      std::span<const double>(v.data(), g.d_v), g.L_x);
            fn(ix * nv + iv, japanese(std::span<const double>(y.data(), g.d_x)),
               japanese(std::span<const double>(v.data(), g.d_v)), x, v);
        }
    }
}

} // namespace

std::vector<Derivative> derivatives_of_order(const Grid &g, int k)
{
    std::vector<Direction> dirs;
    for (int a = 0; a < g.d_x; ++a)
        dirs.push_back({0, a});
    for (int a = 0; a < g.d_v; ++a)
        dirs.push_back({1, a});
    for (int a = 0; a < g.d_v; ++a)
        dirs.push_back({2, a});
    std::vector<Derivative> out;
    // multisets of size k over dirs, by nondecreasing index sequences
    std::vector<int> pick(k, 0);
    while (true) {
        Derivative D;
        for (int p : pick) {
            auto &arr = dirs[p].kind == 0 ? D.alpha : dirs[p].kind == 1 ? D.beta : D.sigma;
            ++arr[dirs[p].axis];
        }
        out.push_back(D);
        int i = k - 1;
        while (i >= 0 && pick[i] == static_cast<int>(dirs.size()) - 1)
            --i;
        if (i < 0)
            break;
        ++pick[i];
        for (int j = i + 1; j < k; ++j)
            pick[j] = pick[i];
    }
    return out;
}

std::vector<double> apply_derivative(const DistributionField &g, const Derivative &D, int max_order)
{
    check_order(D, max_order);
    const Grid &grid = g.grid;
    for (int a = grid.d_x; a < 3; ++a)
        if (D.alpha[a] != 0)
            throw OrderTooHigh("x derivative along a direction beyond d_x");
    for (int a = grid.d_v; a < 3; ++a)
        if (D.beta[a] != 0 || D.sigma[a] != 0)
            throw OrderTooHigh("v derivative along a direction beyond d_v");
    std::vector<double> cur = g.values;
    std::vector<double> next(cur.size());
    for (const Direction &dir : directions_of(D)) {
        std::fill(next.begin(), next.end(), 0.0);
        if (dir.kind == 0) {
            diff_x(grid, dir.axis, cur, next, 1.0);
        } else {
            diff_v(grid, dir.axis, cur, next);
            if (dir.kind == 2 && dir.axis < grid.d_x)
                diff_x(grid, dir.axis, cur, next, g.time);
        }
        std::swap(cur, next);
    }
    return cur;
}

double z_norm(const DistributionField &g, const Derivative &D, const HierarchyParams &hp, double zeta, double theta,
              const NormOptions &opts)
{
    const auto dg = apply_derivative(g, D, opts.max_order);
    const double floor = opts.noise_floor * max_abs(dg);
    const double t = g.time;
    const double time_factor = std::pow(1.0 + t, -zeta - D.abs_beta());
    const double m = hp.M_max + 5 - D.abs_sigma();
    double sup = 0.0;
    for_each_weight(g.grid, t, [&](std::size_t cell, double bxtv, double bv, const auto &, const auto &) {
        const double val = std::abs(dg[cell]);
        if (val == 0.0 || val < floor)
            return;
        sup = std::max(sup, std::pow(bv, 1.0 - theta) * std::pow(bxtv, m) * val);
    });
    return time_factor * sup;
}

EnergyPieces energy_pieces(const DistributionField &g, const Derivative &D, const HierarchyParams &hp,
                           const NormOptions &opts)
{
    const auto dg = apply_derivative(g, D, opts.max_order);
    const double floor = opts.noise_floor * max_abs(dg);
    const double t = g.time;
    const double m = hp.M_max + 5 - D.abs_sigma();
    double plain = 0.0, with_v = 0.0;
    for_each_weight(g.grid, t, [&](std::size_t cell, double bxtv, double bv, const auto &, const auto &) {
        const double val = std::abs(dg[cell]);
        if (val == 0.0 || val < floor)
            return;
        const double w = std::pow(bxtv, m) * val;
        plain += w * w;
        with_v += bv * bv * w * w;
    });
    const double vol = g.grid.cell_volume();
    const double tb = std::pow(1.0 + t, -D.abs_beta());
    EnergyPieces out;
    out.fixed = tb * std::sqrt(plain * vol);
    out.rate = std::pow(1.0 + t, -1.0 - hp.delta) * tb * tb * with_v * vol;
    return out;
}

double EnergyTracker::add(double t, double rate)
{
    if (started_)
        integral_ += 0.5 * (t - t_last_) * (rate + rate_last_);
    started_ = true;
    t_last_ = t;
    rate_last_ = rate;
    return running();
}

double EnergyTracker::running() const { return std::sqrt(std::max(0.0, integral_)); }

std::pair<double, double> e_norm(const DistributionField &g, const Derivative &D, const HierarchyParams &hp,
                                 EnergyTracker &tracker, const NormOptions &opts)
{
    const EnergyPieces p = energy_pieces(g, D, hp, opts);
    return {p.fixed, tracker.add(g.time, p.rate)};
}

MacroFields macroscopic_fields(const DistributionField &f)
{
    const Grid &g = f.grid;
    MacroFields out;
    const std::size_t nx = g.spatial_cells();
    out.rho.assign(nx, 0.0);
    out.momentum.assign(nx * g.d_v, 0.0);
    out.energy.assign(nx, 0.0);
    for (std::size_t ix = 0; ix < nx; ++ix) {
        const Moments m = conserved_moments(f.slice(ix), g);
        out.rho[ix] = m.mass;
        out.energy[ix] = m.energy;
        double m2 = 0.0;
        for (int a = 0; a < g.d_v; ++a) {
            out.momentum[ix * g.d_v + a] = m.momentum[a];
            m2 += m.momentum[a] * m.momentum[a];
        }
        out.rho_sup = std::max(out.rho_sup, std::abs(m.mass));
        out.m_sup = std::max(out.m_sup, std::sqrt(m2));
        out.e_sup = std::max(out.e_sup, std::abs(m.energy));
    }
    return out;
}

FitResult fit_decay_rate(const std::vector<double> &t, const std::vector<double> &values, double t_lo, double t_hi)
{
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < t.size() && i < values.size(); ++i) {
        if (t[i] < t_lo || t[i] > t_hi)
            continue;
        if (!(values[i] > 0.0)) {
            std::ostringstream os;
            os << "value " << values[i] << " at t = " << t[i] << " is not positive";
            throw NonPositiveValue(os.str());
        }
        xs.push_back(std::log1p(t[i]));
        ys.push_back(std::log(values[i]));
    }
    const std::size_t n = xs.size();
    if (n < 5) {
        std::ostringstream os;
        os << n << " points in [" << t_lo << ", " << t_hi << "], need at least 5";
        throw InsufficientPoints(os.str());
    }
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    if (sxx <= 0.0)
        throw InsufficientPoints("fit window holds a single distinct time");
    FitResult r;
    r.points = static_cast<int>(n);
    r.slope = sxy / sxx;
    const double intercept = my - r.slope * mx;
    double sse = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double e = ys[i] - intercept - r.slope * xs[i];
        sse += e * e;
    }
    r.stderr_ = std::sqrt(sse / static_cast<double>(n - 2) / sxx);
    return r;
}

double null_structure_gain(const std::vector<double> &t, const std::vector<double> &plain,
                           const std::vector<double> &weighted, double t_lo, double t_hi)
{
    return fit_decay_rate(t, plain, t_lo, t_hi).slope - fit_decay_rate(t, weighted, t_lo, t_hi).slope;
}

double sharp_cauchy_diff(const DistributionField &a, const DistributionField &b, double ell, double m)
{
    if (!(a.grid == b.grid))
        throw GridMismatch("sharp_cauchy_diff needs fields on the same grid");
    const Grid &g = a.grid;
    const std::size_t nv = g.velocity_cells();
    double sup = 0.0;
    for (std::size_t ix = 0; ix < g.spatial_cells(); ++ix) {
        const auto x = g.position(ix);
        const double wx = std::pow(japanese(std::span<const double>(x.data(), g.d_x)), m);
        for (std::size_t iv = 0; iv < nv; ++iv) {
            const std::size_t cell = ix * nv + iv;
            const double diff = std::abs(a.values[cell] - b.values[cell]);
            if (diff == 0.0)
                continue;
            const auto v = g.velocity(iv);
            sup = std::max(sup, std::pow(japanese(std::span<const double>(v.data(), g.d_v)), ell) * wx * diff);
        }
    }
    return sup;
}

DiagnosticsRecorder::DiagnosticsRecorder(const DistributionField &initial, const DiagnosticSettings &settings)
    : settings_(settings), hp_(hierarchy_params(settings.gamma)), sharp0_(pullback_sharp(initial)),
      trackers_(static_cast<std::size_t>(settings.K_diag + 1))
{
}

DiagnosticRecord DiagnosticsRecorder::record(const DistributionField &f, double clipped_mass)
{
    const Grid &grid = f.grid;
    DiagnosticRecord r;
    r.t = f.time;
    const Moments tm = total_moments(f);
    r.mass = tm.mass;
    r.momentum = tm.momentum;
    r.energy = tm.energy;
    const MacroFields macro = macroscopic_fields(f);
    r.rho_sup = macro.rho_sup;
    r.m_sup = macro.m_sup;
    r.e_sup = macro.e_sup;

    const WeightSpec ws = WeightSpec::from_gamma(settings_.gamma, settings_.d0, 0, 0.0, true);
    const DistributionField g = to_g(f, ws);
    NormOptions opts;
    opts.max_order = settings_.K_diag;
    opts.noise_floor = settings_.noise_floor;
    for (int k = 0; k <= settings_.K_diag; ++k) {
        double z = 0.0, fixed2 = 0.0, rate = 0.0;
        const double zeta = k < static_cast<int>(hp_.zeta.size()) ? hp_.zeta[k] : hp_.zeta.back();
        const double theta = k < static_cast<int>(hp_.theta.size()) ? hp_.theta[k] : hp_.theta.back();
        for (const Derivative &D : derivatives_of_order(grid, k)) {
            z = std::max(z, z_norm(g, D, hp_, zeta, theta, opts));
            const EnergyPieces e = energy_pieces(g, D, hp_, opts);
            fixed2 += e.fixed * e.fixed;
            rate += e.rate;
        }
        r.Z_norms.push_back(z);
        r.E_norms.push_back({std::sqrt(fixed2), trackers_[k].add(f.time, rate)});
    }

    if (settings_.coefficients && grid.d_v >= 2) {
        const KernelParams p = KernelParams::make(settings_.gamma, grid.d_v);
        const CoefficientFields c = compute_coefficients(f, p);
        const CoefficientNorms cn = coefficient_sup_norms(c, settings_.gamma);
        r.a_bar_plain_sup = cn.plain;
        r.a_bar_weighted_sup = cn.weighted_down;
        r.c_bar_sup = cn.c_sup;
        const CollisionOutput q = apply_collision(f, c, CollisionForm::nonconservative);
        const std::size_t nv = grid.velocity_cells();
        for (std::size_t cell = 0; cell < grid.size(); ++cell) {
            const auto v = grid.velocity(cell % nv);
            const double diffusion = q.q_values[cell] + c.c(cell) * f.values[cell];
            const double w = std::pow(japanese(std::span<const double>(v.data(), grid.d_v)), -(2.0 + settings_.gamma));
            r.null_term_sup = std::max(r.null_term_sup, w * std::abs(diffusion));
        }
    }
    r.sharp_diff_vs_t0 = sharp_cauchy_diff(pullback_sharp(f), sharp0_, settings_.sharp_v_power, settings_.sharp_x_power);
    r.h_value = h_functional(f);
    r.clipped_mass = clipped_mass;
    return r;
}

} // namespace landau
