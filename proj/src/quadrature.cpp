#include "landau/quadrature.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace landau::quad {

namespace {

GaussRule make_rule(int n)
{
    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) {
                p1 = x;
                p0 = 1.0;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16)
                break;
        }
        rule.nodes[i] = x;
        rule.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return rule;
}

double panel(const std::function<double(double)> &f, double a, double b, const GaussRule &rule)
{
    const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
    double s = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        s += rule.weights[i] * f(mid + half * rule.nodes[i]);
    return s * half;
}

// Breakpoints on [0,1], geometrically refined towards 0.
std::vector<double> graded_unit(int panels)
{
    constexpr double ratio = 0.15;
    std::vector<double> pts{0.0};
    // 0.15^17 ≈ 1e−14: finer panels would collapse onto the endpoint in
    // double precision.
    const int geometric = std::clamp(panels / 2, 1, 17);
    std::vector<double> geo;
    double x = 1.0;
    for (int i = 0; i < geometric; ++i) {
        x *= ratio;
        geo.push_back(x);
    }
    std::reverse(geo.begin(), geo.end());
    pts.insert(pts.end(), geo.begin(), geo.end());
    const int uniform = std::max(1, panels - geometric);
    const double start = pts.back();
    for (int i = 1; i <= uniform; ++i)
        pts.push_back(start + (1.0 - start) * i / uniform);
    return pts;
}

} // namespace

const GaussRule &gauss_legendre(int n)
{
    static std::mutex mutex;
    static std::map<int, GaussRule> cache;
    std::lock_guard lock(mutex);
    auto it = cache.find(n);
    if (it == cache.end())
        it = cache.emplace(n, make_rule(n)).first;
    return it->second;
}

double integrate(const std::function<double(double)> &f, double a, double b, int panels, int order,
                 bool grade_a, bool grade_b)
{
    if (a == b)
        return 0.0;
    const GaussRule &rule = gauss_legendre(order);
    if (grade_a && grade_b) {
        const double mid = 0.5 * (a + b);
        return integrate(f, a, mid, panels, order, true, false) +
               integrate(f, mid, b, panels, order, false, true);
    }
    std::vector<double> unit;
    if (grade_a || grade_b) {
        unit = graded_unit(panels);
    } else {
        for (int i = 0; i <= panels; ++i)
            unit.push_back(static_cast<double>(i) / panels);
    }
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < unit.size(); ++i) {
        double lo, hi;
        if (grade_b) {
            lo = b - (b - a) * unit[i + 1];
            hi = b - (b - a) * unit[i];
        } else {
            lo = a + (b - a) * unit[i];
            hi = a + (b - a) * unit[i + 1];
        }
        s += panel(f, lo, hi, rule);
    }
    return s;
}

double integrate_to_infinity(const std::function<double(double)> &f, double a, int panels, int order)
{
    auto mapped = [&](double u) {
        const double one_minus = 1.0 - u;
        if (one_minus <= 1e-15)
            return 0.0; // beyond double resolution of the map; f decays there
        const double s = a + u / one_minus;
        return f(s) / (one_minus * one_minus);
    };
    return integrate(mapped, 0.0, 1.0, panels, order, false, true);
}

namespace {

struct BoxEstimator {
    const VectorIntegrand &f;
    int d;
    int ncomp;
    const GaussRule &rule;

    void estimate(std::span<const double> lo, std::span<const double> hi, std::span<double> out) const
    {
        std::fill(out.begin(), out.end(), 0.0);
        const int q = static_cast<int>(rule.nodes.size());
        int total = 1;
        for (int i = 0; i < d; ++i)
            total *= q;
        std::array<double, 3> z{};
        std::array<double, 16> val{};
        std::span<double> vals(val.data(), ncomp);
        double jac = 1.0;
        for (int i = 0; i < d; ++i)
            jac *= 0.5 * (hi[i] - lo[i]);
        for (int idx = 0; idx < total; ++idx) {
            int rem = idx;
            double w = jac;
            for (int i = 0; i < d; ++i) {
                const int k = rem % q;
                rem /= q;
                z[i] = 0.5 * (lo[i] + hi[i]) + 0.5 * (hi[i] - lo[i]) * rule.nodes[k];
                w *= rule.weights[k];
            }
            f(std::span<const double>(z.data(), d), vals);
            for (int c = 0; c < ncomp; ++c)
                out[c] += w * vals[c];
        }
    }

    void recurse(std::span<const double> lo, std::span<const double> hi, std::span<const double> parent,
                 int depth, const CubatureOptions &opts, std::span<double> acc) const
    {
        std::array<double, 16> sum{};
        std::array<double, 16> child{};
        std::vector<std::array<double, 16>> kids(1u << d);
        std::vector<std::array<double, 6>> bounds(1u << d);
        for (unsigned m = 0; m < (1u << d); ++m) {
            std::array<double, 3> clo{}, chi{};
            for (int i = 0; i < d; ++i) {
                const double mid = 0.5 * (lo[i] + hi[i]);
                const bool upper = (m >> i) & 1u;
                clo[i] = upper ? mid : lo[i];
                chi[i] = upper ? hi[i] : mid;
                bounds[m][i] = clo[i];
                bounds[m][3 + i] = chi[i];
            }
            estimate(std::span<const double>(clo.data(), d), std::span<const double>(chi.data(), d),
                     std::span<double>(child.data(), ncomp));
            kids[m] = child;
            for (int c = 0; c < ncomp; ++c)
                sum[c] += child[c];
        }
        double err = 0.0, scale = 0.0;
        for (int c = 0; c < ncomp; ++c) {
            err = std::max(err, std::abs(sum[c] - parent[c]));
            scale = std::max(scale, std::abs(sum[c]));
        }
        if (err <= opts.rel_tol * scale || depth >= opts.max_depth || scale == 0.0) {
            for (int c = 0; c < ncomp; ++c)
                acc[c] += sum[c];
            return;
        }
        for (unsigned m = 0; m < (1u << d); ++m) {
            recurse(std::span<const double>(bounds[m].data(), d),
                    std::span<const double>(bounds[m].data() + 3, d),
                    std::span<const double>(kids[m].data(), ncomp), depth + 1, opts, acc);
        }
    }
};

} // namespace

void adaptive_box(const VectorIntegrand &f, std::span<const double> lo, std::span<const double> hi,
                  int ncomp, std::span<double> result, const CubatureOptions &opts)
{
    const int d = static_cast<int>(lo.size());
    if (d < 1 || d > 3 || ncomp > 16)
        throw std::invalid_argument("adaptive_box: dimension must be 1..3 and ncomp <= 16");
    BoxEstimator est{f, d, ncomp, gauss_legendre(opts.order)};
    std::array<double, 16> parent{};
    est.estimate(lo, hi, std::span<double>(parent.data(), ncomp));
    std::fill(result.begin(), result.end(), 0.0);
    est.recurse(lo, hi, std::span<const double>(parent.data(), ncomp), 1, opts, result);
}

namespace {

// Box with a corner at the origin: extends from 0 to w[i] (w may be negative).
void corner_box(const VectorIntegrand &f, std::span<const double> degrees, std::span<const double> w,
                int ncomp, std::span<double> result, const CubatureOptions &opts)
{
    const int d = static_cast<int>(w.size());
    std::array<double, 16> rest{};
    std::array<double, 16> piece{};
    for (unsigned m = 1; m < (1u << d); ++m) {
        std::array<double, 3> lo{}, hi{};
        for (int i = 0; i < d; ++i) {
            const bool outer = (m >> i) & 1u;
            const double a = outer ? 0.5 * w[i] : 0.0;
            const double b = outer ? w[i] : 0.5 * w[i];
            lo[i] = std::min(a, b);
            hi[i] = std::max(a, b);
        }
        adaptive_box(f, std::span<const double>(lo.data(), d), std::span<const double>(hi.data(), d), ncomp,
                     std::span<double>(piece.data(), ncomp), opts);
        for (int c = 0; c < ncomp; ++c)
            rest[c] += piece[c];
    }
    for (int c = 0; c < ncomp; ++c)
        result[c] = rest[c] / (1.0 - std::pow(2.0, -(d + degrees[c])));
}

} // namespace

void homogeneous_box(const VectorIntegrand &f, std::span<const double> degrees, std::span<const double> lo,
                     std::span<const double> hi, int ncomp, std::span<double> result, const CubatureOptions &opts)
{
    const int d = static_cast<int>(lo.size());
    bool contains_origin = true;
    for (int i = 0; i < d; ++i)
        contains_origin = contains_origin && lo[i] <= 0.0 && hi[i] >= 0.0;
    if (!contains_origin) {
        adaptive_box(f, lo, hi, ncomp, result, opts);
        return;
    }
    std::fill(result.begin(), result.end(), 0.0);
    std::array<double, 16> piece{};
    for (unsigned m = 0; m < (1u << d); ++m) {
        std::array<double, 3> w{};
        bool degenerate = false;
        for (int i = 0; i < d; ++i) {
            w[i] = ((m >> i) & 1u) ? hi[i] : lo[i];
            degenerate = degenerate || w[i] == 0.0;
        }
        if (degenerate)
            continue;
        corner_box(f, degrees, std::span<const double>(w.data(), d), ncomp,
                   std::span<double>(piece.data(), ncomp), opts);
        for (int c = 0; c < ncomp; ++c)
            result[c] += piece[c];
    }
}

} // namespace landau::quad
