#include "landau/maxwellian.hpp"

#include "landau/errors.hpp"
#include "landau/parallel.hpp"
#include "landau/transport.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

namespace landau {

namespace {

using Mat = std::array<double, 9>;

Mat q_matrix(const TravelingMaxwellianParams &p)
{
    Mat q{};
    const int d = p.d;
    const double c = p.alpha * p.sigma - p.beta * p.beta;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            double s = i == j ? c : 0.0;
            for (int k = 0; k < d; ++k)
                s += p.b(i, k) * p.b(k, j);
            q[3 * i + j] = s;
        }
    return q;
}

// Leading principal minors (Sylvester); returns det or −1 if not PD.
double pd_det(const Mat &a, int d)
{
    const double m1 = a[0];
    if (!(m1 > 0.0))
        return -1.0;
    if (d == 1)
        return m1;
    const double m2 = a[0] * a[4] - a[1] * a[3];
    if (!(m2 > 0.0))
        return -1.0;
    if (d == 2)
        return m2;
    const double m3 = a[0] * (a[4] * a[8] - a[5] * a[7]) - a[1] * (a[3] * a[8] - a[5] * a[6]) +
                      a[2] * (a[3] * a[7] - a[4] * a[6]);
    return m3 > 0.0 ? m3 : -1.0;
}

bool admissible(const TravelingMaxwellianParams &p)
{
    if (!(p.alpha > 0.0 && p.sigma > 0.0 && p.m >= 0.0))
        return false;
    return p.sqrt_det_q() > 0.0;
}

void require(const TravelingMaxwellianParams &p)
{
    for (int i = 0; i < p.d; ++i)
        for (int j = 0; j < p.d; ++j)
            if (p.b(i, j) != -p.b(j, i))
                throw ConstraintViolated("B must be skew-symmetric");
    if (!admissible(p)) {
        std::ostringstream os;
        os << "parameters (m=" << p.m << ", alpha=" << p.alpha << ", sigma=" << p.sigma << ", beta=" << p.beta
           << ") violate alpha, sigma > 0, m >= 0 or Q positive definite";
        throw ConstraintViolated(os.str());
    }
}

double prefactor(const TravelingMaxwellianParams &p)
{
    return p.m * p.sqrt_det_q() / std::pow(2.0 * std::numbers::pi, p.d);
}

double exponent(const TravelingMaxwellianParams &p, std::span<const double> y, std::span<const double> v)
{
    double vv = 0.0, yy = 0.0, vy = 0.0, vBy = 0.0;
    for (int i = 0; i < p.d; ++i) {
        vv += v[i] * v[i];
        yy += y[i] * y[i];
        vy += v[i] * y[i];
        for (int j = 0; j < p.d; ++j)
            vBy += v[i] * p.b(i, j) * y[j];
    }
    return -0.5 * (p.sigma * vv + 2.0 * p.beta * vy + 2.0 * vBy + p.alpha * yy);
}

// Gauss–Jordan inverse of a small dense matrix; false when singular.
bool invert(std::vector<double> &a, int n)
{
    std::vector<double> inv(n * n, 0.0);
    for (int i = 0; i < n; ++i)
        inv[i * n + i] = 1.0;
    for (int c = 0; c < n; ++c) {
        int piv = c;
        for (int r = c + 1; r < n; ++r)
            if (std::abs(a[r * n + c]) > std::abs(a[piv * n + c]))
                piv = r;
        if (a[piv * n + c] == 0.0)
            return false;
        for (int k = 0; k < n; ++k) {
            std::swap(a[c * n + k], a[piv * n + k]);
            std::swap(inv[c * n + k], inv[piv * n + k]);
        }
        const double s = 1.0 / a[c * n + c];
        for (int k = 0; k < n; ++k) {
            a[c * n + k] *= s;
            inv[c * n + k] *= s;
        }
        for (int r = 0; r < n; ++r) {
            if (r == c)
                continue;
            const double f = a[r * n + c];
            if (f == 0.0)
                continue;
            for (int k = 0; k < n; ++k) {
                a[r * n + k] -= f * a[c * n + k];
                inv[r * n + k] -= f * inv[c * n + k];
            }
        }
    }
    a = std::move(inv);
    return true;
}

// Per-cell data for the weighted least-squares objective.
struct FitData {
    int d = 0;
    std::vector<double> x, v; ///< d entries per cell
    std::vector<double> w2f;  ///< w² f vol
    std::vector<double> w2;   ///< w² vol
    double f_norm2 = 0.0;     ///< Σ w² f² vol
    double mass = 0.0;
};

struct Evaluation {
    double m = 0.0;
    double residual2 = std::numeric_limits<double>::infinity();
};

Evaluation evaluate(const FitData &data, const TravelingMaxwellianParams &shape, double m_floor)
{
    Evaluation e;
    TravelingMaxwellianParams p = shape;
    p.m = 1.0;
    if (!admissible(p))
        return e;
    const double pre = prefactor(p);
    const std::size_t n = data.w2.size();
    const int d = data.d;
    // Σ w² f φ and Σ w² φ² in fixed blocks so the sum order is deterministic.
    const std::size_t blocks = 64;
    std::vector<double> fp(blocks, 0.0), pp(blocks, 0.0);
    parallel_for(blocks, [&](std::size_t b) {
        const std::size_t lo = n * b / blocks, hi = n * (b + 1) / blocks;
        double s1 = 0.0, s2 = 0.0;
        for (std::size_t i = lo; i < hi; ++i) {
            const double phi = pre * std::exp(exponent(p, std::span<const double>(data.x.data() + i * d, d),
                                                       std::span<const double>(data.v.data() + i * d, d)));
            s1 += data.w2f[i] * phi;
            s2 += data.w2[i] * phi * phi;
        }
        fp[b] = s1;
        pp[b] = s2;
    });
    double sfp = 0.0, spp = 0.0;
    for (std::size_t b = 0; b < blocks; ++b) {
        sfp += fp[b];
        spp += pp[b];
    }
    if (!(spp > 0.0))
        return e;
    e.m = std::max(m_floor, sfp / spp);
    e.residual2 = std::max(0.0, data.f_norm2 - 2.0 * e.m * sfp + e.m * e.m * spp);
    return e;
}

// Exact residual (no expansion), for reporting.
double direct_residual(const FitData &data, const TravelingMaxwellianParams &p)
{
    const double pre = prefactor(p);
    const int d = data.d;
    double s = 0.0;
    for (std::size_t i = 0; i < data.w2.size(); ++i) {
        if (data.w2[i] == 0.0)
            continue;
        const double phi = pre * std::exp(exponent(p, std::span<const double>(data.x.data() + i * d, d),
                                                   std::span<const double>(data.v.data() + i * d, d)));
        const double f = data.w2f[i] / data.w2[i];
        s += data.w2[i] * (f - phi) * (f - phi);
    }
    return std::sqrt(s);
}

FitData prepare(const DistributionField &sharp)
{
    const Grid &g = sharp.grid;
    if (g.d_x != g.d_v)
        throw GridMismatch("Maxwellian fit needs d_x = d_v");
    FitData data;
    data.d = g.d_v;
    const std::size_t nv = g.velocity_cells();
    const double vol = g.cell_volume();
    data.x.reserve(g.size() * data.d);
    data.v.reserve(g.size() * data.d);
    for (std::size_t ix = 0; ix < g.spatial_cells(); ++ix) {
        const auto x = g.position(ix);
        const double bx = japanese(std::span<const double>(x.data(), g.d_x));
        for (std::size_t iv = 0; iv < nv; ++iv) {
            const auto v = g.velocity(iv);
            const double bv = japanese(std::span<const double>(v.data(), g.d_v));
            const double w2 = std::pow(bx * bv, 4.0) * vol;
            const double f = sharp.values[ix * nv + iv];
            for (int a = 0; a < data.d; ++a) {
                data.x.push_back(x[a]);
                data.v.push_back(v[a]);
            }
            data.w2.push_back(w2);
            data.w2f.push_back(w2 * f);
            data.f_norm2 += w2 * f * f;
            data.mass += f * g.cell_volume();
        }
    }
    return data;
}

TravelingMaxwellianParams moment_match(const DistributionField &sharp, const FitData &data)
{
    const int d = data.d;
    const int n = 2 * d;
    std::vector<double> cov(n * n, 0.0);
    const Grid &g = sharp.grid;
    const double vol = g.cell_volume();
    for (std::size_t i = 0; i < data.w2.size(); ++i) {
        const double f = sharp.values[i] * vol;
        if (f == 0.0)
            continue;
        std::array<double, 6> z{};
        for (int a = 0; a < d; ++a) {
            z[a] = data.v[i * d + a];
            z[d + a] = data.x[i * d + a];
        }
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c)
                cov[r * n + c] += f * z[r] * z[c];
    }
    for (double &c : cov)
        c /= data.mass;

    TravelingMaxwellianParams p;
    p.d = d;
    p.m = data.mass;
    std::vector<double> prec = cov;
    if (invert(prec, n)) {
        double tv = 0.0, tx = 0.0, tk = 0.0;
        for (int a = 0; a < d; ++a) {
            tv += prec[a * n + a];
            tx += prec[(d + a) * n + d + a];
            tk += prec[a * n + d + a];
        }
        p.sigma = tv / d;
        p.alpha = tx / d;
        p.beta = tk / d;
        for (int i = 0; i < d; ++i)
            for (int j = i + 1; j < d; ++j)
                p.set_b(i, j, 0.5 * (prec[i * n + d + j] - prec[j * n + d + i]));
        if (admissible(p))
            return p;
    }
    // Fall back to the isotropic, uncorrelated member with the same spreads.
    double sv = 0.0, sx = 0.0;
    for (int a = 0; a < d; ++a) {
        sv += cov[a * n + a];
        sx += cov[(d + a) * n + d + a];
    }
    p = TravelingMaxwellianParams{};
    p.d = d;
    p.m = data.mass;
    p.sigma = d / std::max(sv, 1e-300);
    p.alpha = d / std::max(sx, 1e-300);
    return p;
}

// Log-linear form of M♯: log M♯ = θ·φ(x, v) with θ = (log prefactor, α, σ, β,
// B_ij for i < j) and φ = (1, −|x|²/2, −|v|²/2, −v·x, −(v_i x_j − v_j x_i)).
int theta_size(int d) { return 4 + d * (d - 1) / 2; }

std::vector<double> to_theta(const TravelingMaxwellianParams &p)
{
    std::vector<double> th{std::log(prefactor(p)), p.alpha, p.sigma, p.beta};
    for (int i = 0; i < p.d; ++i)
        for (int j = i + 1; j < p.d; ++j)
            th.push_back(p.b(i, j));
    return th;
}

// Parameters for θ, with m recovered from the prefactor; m = −1 when the
// shape is not admissible.
TravelingMaxwellianParams from_theta(const std::vector<double> &th, int d)
{
    TravelingMaxwellianParams p;
    p.d = d;
    p.alpha = th[1];
    p.sigma = th[2];
    p.beta = th[3];
    int k = 4;
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j)
            p.set_b(i, j, th[k++]);
    p.m = 1.0;
    if (!admissible(p)) {
        p.m = -1.0;
        return p;
    }
    p.m = std::exp(th[0]) / prefactor(p);
    return p;
}

// Weighted cost Σ w²(f − g)² at θ together with the Gauss–Newton system
// H = Σ w² g² φφᵀ and r = Σ w² (f − g) g φ.
struct Linearisation {
    double cost = std::numeric_limits<double>::infinity();
    std::vector<double> h, r;
};

Linearisation linearise(const FitData &data, const std::vector<double> &th)
{
    const int d = data.d;
    const int n = theta_size(d);
    const std::size_t cells = data.w2.size();
    const std::size_t blocks = 64;
    std::vector<Linearisation> part(blocks);
    parallel_for(blocks, [&](std::size_t b) {
        Linearisation &out = part[b];
        out.cost = 0.0;
        out.h.assign(n * n, 0.0);
        out.r.assign(n, 0.0);
        std::array<double, 7> phi{};
        const std::size_t lo = cells * b / blocks, hi = cells * (b + 1) / blocks;
        for (std::size_t i = lo; i < hi; ++i) {
            const double *x = data.x.data() + i * d;
            const double *v = data.v.data() + i * d;
            double xx = 0.0, vv = 0.0, vx = 0.0;
            for (int a = 0; a < d; ++a) {
                xx += x[a] * x[a];
                vv += v[a] * v[a];
                vx += v[a] * x[a];
            }
            phi[0] = 1.0;
            phi[1] = -0.5 * xx;
            phi[2] = -0.5 * vv;
            phi[3] = -vx;
            int k = 4;
            for (int p = 0; p < d; ++p)
                for (int q = p + 1; q < d; ++q)
                    phi[k++] = -(v[p] * x[q] - v[q] * x[p]);
            double e = 0.0;
            for (int a = 0; a < n; ++a)
                e += th[a] * phi[a];
            const double g = std::exp(e);
            const double w2 = data.w2[i];
            const double res = data.w2f[i] / w2 - g;
            out.cost += w2 * res * res;
            const double wg = w2 * g;
            for (int a = 0; a < n; ++a) {
                out.r[a] += wg * res * phi[a];
                for (int c = 0; c <= a; ++c)
                    out.h[a * n + c] += wg * g * phi[a] * phi[c];
            }
        }
    });
    Linearisation sum;
    sum.cost = 0.0;
    sum.h.assign(n * n, 0.0);
    sum.r.assign(n, 0.0);
    for (const auto &p : part) {
        sum.cost += p.cost;
        for (int a = 0; a < n * n; ++a)
            sum.h[a] += p.h[a];
        for (int a = 0; a < n; ++a)
            sum.r[a] += p.r[a];
    }
    for (int a = 0; a < n; ++a)
        for (int c = a + 1; c < n; ++c)
            sum.h[a * n + c] = sum.h[c * n + a];
    if (!std::isfinite(sum.cost))
        sum.cost = std::numeric_limits<double>::infinity();
    return sum;
}

} // namespace

void TravelingMaxwellianParams::set_b(int i, int j, double s)
{
    B[3 * i + j] = s;
    B[3 * j + i] = -s;
}

double TravelingMaxwellianParams::sqrt_det_q() const
{
    const double det = pd_det(q_matrix(*this), d);
    return det > 0.0 ? std::sqrt(det) : -1.0;
}

double eval_maxwellian(const TravelingMaxwellianParams &p, double t, std::span<const double> x,
                       std::span<const double> v)
{
    require(p);
    std::array<double, 3> y{};
    for (int i = 0; i < p.d; ++i)
        y[i] = x[i] - t * v[i];
    return prefactor(p) * std::exp(exponent(p, std::span<const double>(y.data(), p.d), v));
}

double maxwellian_sharp(const TravelingMaxwellianParams &p, std::span<const double> x, std::span<const double> v)
{
    require(p);
    return prefactor(p) * std::exp(exponent(p, x, v));
}

DistributionField sample_maxwellian_sharp(const TravelingMaxwellianParams &p, const Grid &g)
{
    if (g.d_x != p.d || g.d_v != p.d)
        throw GridMismatch("Maxwellian sampling needs d_x = d_v = d");
    require(p);
    DistributionField f(g, 0.0);
    const std::size_t nv = g.velocity_cells();
    const double pre = prefactor(p);
    for (std::size_t ix = 0; ix < g.spatial_cells(); ++ix) {
        const auto x = g.position(ix);
        for (std::size_t iv = 0; iv < nv; ++iv) {
            const auto v = g.velocity(iv);
            f.values[ix * nv + iv] =
                pre * std::exp(exponent(p, std::span<const double>(x.data(), p.d), std::span<const double>(v.data(), p.d)));
        }
    }
    return f;
}

double maxwellian_residual(const DistributionField &sharp, const TravelingMaxwellianParams &p)
{
    require(p);
    return direct_residual(prepare(sharp), p);
}

MaxwellianFit fit_maxwellian(const DistributionField &sharp, const FitOptions &opts)
{
    const FitData data = prepare(sharp);
    if (!(data.mass > 0.0) || !std::isfinite(data.mass))
        throw ZeroMass("field has no positive mass");
    // Spectral pullbacks leave round-off negatives; tolerate those.
    const double top = *std::max_element(sharp.values.begin(), sharp.values.end());
    for (double f : sharp.values)
        if (f < -1e-13 * top)
            throw ZeroMass("field has negative values");
    const double m_floor = 1e-12 * data.mass;

    TravelingMaxwellianParams start = moment_match(sharp, data);
    start.m = evaluate(data, start, m_floor).m;
    const int n = theta_size(data.d);
    std::vector<double> th = to_theta(start);
    Linearisation cur = linearise(data, th);

    // Levenberg–Marquardt with multiplicative damping on diag(H).
    MaxwellianFit fit;
    double lambda = 1e-3;
    for (int it = 0; it < opts.max_iterations && lambda < 1e16; ++it) {
        fit.iterations = it + 1;
        std::vector<double> a = cur.h;
        for (int k = 0; k < n; ++k)
            a[k * n + k] += lambda * std::max(cur.h[k * n + k], 1e-300);
        if (!invert(a, n)) {
            lambda *= 10.0;
            continue;
        }
        std::vector<double> trial = th;
        double step = 0.0, size = 0.0;
        for (int r = 0; r < n; ++r) {
            double dl = 0.0;
            for (int c = 0; c < n; ++c)
                dl += a[r * n + c] * cur.r[c];
            trial[r] += dl;
            step += dl * dl;
            size += th[r] * th[r];
        }
        if (from_theta(trial, data.d).m < 0.0) {
            lambda *= 10.0;
            continue;
        }
        Linearisation next = linearise(data, trial);
        if (!(next.cost < cur.cost)) {
            lambda *= 10.0;
            if (cur.cost <= opts.tolerance * data.f_norm2 || step <= 1e-28 * size) {
                fit.converged = true;
                break;
            }
            continue;
        }
        const double drop = cur.cost - next.cost;
        const double before = cur.cost;
        th = std::move(trial);
        cur = std::move(next);
        lambda = std::max(lambda / 3.0, 1e-12);
        if (drop <= opts.tolerance * before || step <= 1e-28 * size) {
            fit.converged = true;
            break;
        }
    }
    fit.params = from_theta(th, data.d);
    fit.residual = direct_residual(data, fit.params);
    fit.data_norm = std::sqrt(data.f_norm2);
    return fit;
}

StateFit fit_state(const DistributionField &f, const FitOptions &opts)
{
    DistributionField sharp = pullback_sharp(f);
    double neg = 0.0, total = 0.0;
    for (double &v : sharp.values) {
        total += std::abs(v);
        if (v < 0.0) {
            neg -= v;
            v = 0.0;
        }
    }
    StateFit out;
    out.fit = fit_maxwellian(sharp, opts);
    out.clipped_fraction = total > 0.0 ? neg / total : 0.0;
    return out;
}

} // namespace landau
