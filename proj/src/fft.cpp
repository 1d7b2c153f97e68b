#include "landau/fft.hpp"

#include <fftw3.h>

#include <mutex>
#include <new>
#include <stdexcept>

namespace landau::fft {

namespace {
std::mutex &planner_mutex()
{
    static std::mutex m;
    return m;
}
} // namespace

void FftwDeleter::operator()(void *p) const noexcept { fftw_free(p); }

Buffer<double> alloc_real(std::size_t n)
{
    auto *p = fftw_alloc_real(std::max<std::size_t>(n, 1));
    if (!p)
        throw std::bad_alloc();
    return Buffer<double>(p);
}

Buffer<std::complex<double>> alloc_complex(std::size_t n)
{
    auto *p = fftw_alloc_complex(std::max<std::size_t>(n, 1));
    if (!p)
        throw std::bad_alloc();
    return Buffer<std::complex<double>>(reinterpret_cast<std::complex<double> *>(p));
}

RealTransform::RealTransform(std::vector<int> shape) : shape_(std::move(shape))
{
    if (shape_.empty())
        throw std::invalid_argument("RealTransform needs at least one axis");
    real_size_ = 1;
    for (int n : shape_)
        real_size_ *= static_cast<std::size_t>(n);
    complex_size_ = real_size_ / shape_.back() * (shape_.back() / 2 + 1);

    auto in = alloc_real(real_size_);
    auto out = alloc_complex(complex_size_);
    std::lock_guard lock(planner_mutex());
    const int rank = static_cast<int>(shape_.size());
    forward_plan_ = fftw_plan_dft_r2c(rank, shape_.data(), in.get(), reinterpret_cast<fftw_complex *>(out.get()),
                                      FFTW_ESTIMATE);
    inverse_plan_ = fftw_plan_dft_c2r(rank, shape_.data(), reinterpret_cast<fftw_complex *>(out.get()), in.get(),
                                      FFTW_ESTIMATE);
    if (!forward_plan_ || !inverse_plan_)
        throw std::runtime_error("FFTW planning failed");
}

RealTransform::~RealTransform()
{
    std::lock_guard lock(planner_mutex());
    if (forward_plan_)
        fftw_destroy_plan(static_cast<fftw_plan>(forward_plan_));
    if (inverse_plan_)
        fftw_destroy_plan(static_cast<fftw_plan>(inverse_plan_));
}

void RealTransform::forward(double *in, std::complex<double> *out) const
{
    fftw_execute_dft_r2c(static_cast<fftw_plan>(forward_plan_), in, reinterpret_cast<fftw_complex *>(out));
}

void RealTransform::inverse(std::complex<double> *in, double *out) const
{
    fftw_execute_dft_c2r(static_cast<fftw_plan>(inverse_plan_), reinterpret_cast<fftw_complex *>(in), out);
}

} // namespace landau::fft
