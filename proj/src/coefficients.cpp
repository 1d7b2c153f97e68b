#include "landau/coefficients.hpp"

#include "landau/errors.hpp"
#include "landau/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>
#include <tuple>

namespace landau {

KernelTables::KernelTables(const Grid &grid, const KernelParams &params)
    : params_(params), n_v_(grid.n_v), ncomp_(kernel_component_count(params.d))
{
    if (grid.d_v != params.d)
        throw InvalidParams("kernel tables: grid d_v differs from kernel dimension");
    const int d = params.d;
    const int n = grid.n_v;
    const int m = 2 * n;
    const double h = grid.dv();
    cell_volume_ = std::pow(h, d);

    transform_ = std::make_unique<fft::RealTransform>(std::vector<int>(d, m));
    const std::size_t real_size = transform_->real_size();
    const std::size_t complex_size = transform_->complex_size();
    tables_.assign(static_cast<std::size_t>(ncomp_) * real_size, 0.0);
    spectra_.assign(static_cast<std::size_t>(ncomp_) * complex_size, {});

    const std::array<double, 3> spacing{h, h, h};
    std::size_t offsets = 1;
    for (int a = 0; a < d; ++a)
        offsets *= static_cast<std::size_t>(2 * n - 1);

    parallel_for(offsets, [&](std::size_t o) {
        std::array<int, 3> k{};
        std::size_t rem = o;
        for (int a = d - 1; a >= 0; --a) {
            k[a] = static_cast<int>(rem % (2 * n - 1)) - (n - 1);
            rem /= (2 * n - 1);
        }
        std::array<double, 3> center{};
        for (int a = 0; a < d; ++a)
            center[a] = k[a] * h;
        const auto comps = cell_averaged_components(std::span<const double>(center.data(), d),
                                                    std::span<const double>(spacing.data(), d), params_);
        const std::size_t pi = padded_index(k);
        for (int c = 0; c < ncomp_; ++c)
            tables_[c * real_size + pi] = comps[c];
    });

    auto in = fft::alloc_real(real_size);
    auto out = fft::alloc_complex(complex_size);
    for (int c = 0; c < ncomp_; ++c) {
        std::copy_n(tables_.data() + c * real_size, real_size, in.get());
        transform_->forward(in.get(), out.get());
        std::copy_n(out.get(), complex_size, spectra_.data() + c * complex_size);
    }
}

std::span<const double> KernelTables::table(int c) const
{
    const std::size_t rs = transform_->real_size();
    return {tables_.data() + c * rs, rs};
}

std::span<const std::complex<double>> KernelTables::spectrum(int c) const
{
    const std::size_t cs = transform_->complex_size();
    return {spectra_.data() + c * cs, cs};
}

std::size_t KernelTables::padded_index(const std::array<int, 3> &k) const
{
    const int m = 2 * n_v_;
    std::size_t idx = 0;
    for (int a = 0; a < params_.d; ++a)
        idx = idx * m + static_cast<std::size_t>((k[a] % m + m) % m);
    return idx;
}

std::shared_ptr<const KernelTables> kernel_tables(const Grid &grid, const KernelParams &params)
{
    using Key = std::tuple<int, int, double, double>;
    static std::mutex mutex;
    static std::map<Key, std::shared_ptr<const KernelTables>> cache;
    const Key key{grid.n_v, grid.d_v, grid.v_max, params.gamma};
    {
        std::lock_guard lock(mutex);
        auto it = cache.find(key);
        if (it != cache.end())
            return it->second;
    }
    auto tables = std::make_shared<const KernelTables>(grid, params);
    std::lock_guard lock(mutex);
    return cache.emplace(key, std::move(tables)).first->second;
}

SliceConvolver::SliceConvolver(std::shared_ptr<const KernelTables> tables) : tables_(std::move(tables))
{
    const auto &tr = tables_->transform();
    padded_ = fft::alloc_real(tr.real_size());
    result_ = fft::alloc_real(tr.real_size());
    f_hat_ = fft::alloc_complex(tr.complex_size());
    product_ = fft::alloc_complex(tr.complex_size());
}

void SliceConvolver::compute(std::span<const double> f_slice, ConvolutionMethod method, std::span<double> out)
{
    const KernelTables &kt = *tables_;
    const int d = kt.params().d;
    const int n = kt.n_v();
    const int m = 2 * n;
    const int ncomp = kt.components();
    const std::size_t nv = f_slice.size();
    const double vol = kt.cell_volume();

    if (method == ConvolutionMethod::direct) {
        std::fill(out.begin(), out.end(), 0.0);
        std::array<int, 3> iv_idx{}, jv_idx{}, k{};
        for (std::size_t i = 0; i < nv; ++i) {
            std::size_t rem = i;
            for (int a = d - 1; a >= 0; --a) {
                iv_idx[a] = static_cast<int>(rem % n);
                rem /= n;
            }
            for (std::size_t j = 0; j < nv; ++j) {
                const double fj = f_slice[j];
                if (fj == 0.0)
                    continue;
                rem = j;
                for (int a = d - 1; a >= 0; --a) {
                    jv_idx[a] = static_cast<int>(rem % n);
                    rem /= n;
                }
                for (int a = 0; a < d; ++a)
                    k[a] = iv_idx[a] - jv_idx[a];
                const std::size_t pi = kt.padded_index(k);
                for (int c = 0; c < ncomp; ++c)
                    out[c * nv + i] += kt.table(c)[pi] * fj;
            }
        }
        for (double &v : out)
            v *= vol;
        return;
    }

    const auto &tr = kt.transform();
    std::fill_n(padded_.get(), tr.real_size(), 0.0);
    for (std::size_t i = 0; i < nv; ++i) {
        std::size_t rem = i, pidx = 0, stride = 1;
        for (int a = d - 1; a >= 0; --a) {
            pidx += static_cast<std::size_t>(rem % n) * stride;
            rem /= n;
            stride *= m;
        }
        padded_[pidx] = f_slice[i];
    }
    tr.forward(padded_.get(), f_hat_.get());
    const double scale = vol / static_cast<double>(tr.real_size());
    const std::size_t cs = tr.complex_size();
    for (int c = 0; c < ncomp; ++c) {
        const auto spec = kt.spectrum(c);
        for (std::size_t q = 0; q < cs; ++q)
            product_[q] = f_hat_[q] * spec[q];
        tr.inverse(product_.get(), result_.get());
        for (std::size_t i = 0; i < nv; ++i) {
            std::size_t rem = i, pidx = 0, stride = 1;
            for (int a = d - 1; a >= 0; --a) {
                pidx += static_cast<std::size_t>(rem % n) * stride;
                rem /= n;
                stride *= m;
            }
            out[c * nv + i] = result_[pidx] * scale;
        }
    }
}

CoefficientFields compute_coefficients(const DistributionField &f, const KernelParams &p, ConvolutionMethod method)
{
    const Grid &g = f.grid;
    const double fmax = f.max_abs();
    for (double v : f.values) {
        if (v < -1e-14 * fmax) {
            std::ostringstream os;
            os << "distribution has negative value " << v << " (max " << fmax << ")";
            throw NegativeInput(os.str());
        }
    }
    auto tables = kernel_tables(g, p);
    CoefficientFields out;
    out.grid = g;
    out.time = f.time;
    out.d = p.d;
    const int ncomp = tables->components();
    const std::size_t cells = g.size();
    const std::size_t nv = g.velocity_cells();
    out.values.assign(static_cast<std::size_t>(ncomp) * cells, 0.0);

    parallel_blocks(g.spatial_cells(), [&](unsigned, std::size_t begin, std::size_t end) {
        SliceConvolver conv(tables);
        std::vector<double> buf(static_cast<std::size_t>(ncomp) * nv);
        for (std::size_t ix = begin; ix < end; ++ix) {
            conv.compute(f.slice(ix), method, buf);
            for (int c = 0; c < ncomp; ++c)
                std::copy_n(buf.data() + c * nv, nv, out.values.data() + c * cells + ix * nv);
        }
    });
    return out;
}

CoefficientNorms coefficient_sup_norms(const CoefficientFields &c, double gamma)
{
    const Grid &g = c.grid;
    const int d = c.d;
    const double t = c.time;
    const double plain_pow = -(2.0 + gamma);
    const double xtv_pow = -std::min(1.0, 2.0 + gamma);
    const double v_pow = -std::max(0.0, 1.0 + gamma);
    const std::size_t nv = g.velocity_cells();
    const int nmat = d * (d + 1) / 2;

    std::vector<double> bracket_v(nv);
    for (std::size_t iv = 0; iv < nv; ++iv) {
        const auto v = g.velocity(iv);
        bracket_v[iv] = japanese(std::span<const double>(v.data(), g.d_v));
    }

    CoefficientNorms norms;
    for (std::size_t ix = 0; ix < g.spatial_cells(); ++ix) {
        const auto x = g.position(ix);
        for (std::size_t iv = 0; iv < nv; ++iv) {
            const std::size_t cell = ix * nv + iv;
            double amax = 0.0;
            for (int k = 0; k < nmat; ++k)
                amax = std::max(amax, std::abs(c.values[k * c.cells() + cell]));
            const auto v = g.velocity(iv);
            const auto y = x_minus_tv(t, std::span<const double>(x.data(), g.d_x),
                                      std::span<const double>(v.data(), g.d_v), g.L_x);
            const double bxtv = japanese(std::span<const double>(y.data(), g.d_x));
            norms.plain = std::max(norms.plain, std::pow(bracket_v[iv], plain_pow) * amax);
            norms.weighted_down =
                std::max(norms.weighted_down, std::pow(bxtv, xtv_pow) * std::pow(bracket_v[iv], v_pow) * amax);
            norms.c_sup = std::max(norms.c_sup, std::abs(c.c(cell)));
        }
    }
    (void)d;
    return norms;
}

} // namespace landau
