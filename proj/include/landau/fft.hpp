#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <vector>

namespace landau::fft {

struct FftwDeleter {
    void operator()(void *p) const noexcept;
};

/// SIMD-aligned buffer from the FFTW allocator.
template <class T>
using Buffer = std::unique_ptr<T[], FftwDeleter>;

Buffer<double> alloc_real(std::size_t n);
Buffer<std::complex<double>> alloc_complex(std::size_t n);

/// Real-to-complex / complex-to-real transforms of one row-major shape.
/// Plans are built once (FFTW_ESTIMATE, deterministic) under a global lock;
/// execution on caller-owned buffers from alloc_* is thread-safe. The
/// inverse is unnormalized and overwrites its complex input.
class RealTransform {
public:
    explicit RealTransform(std::vector<int> shape);
    ~RealTransform();
    RealTransform(const RealTransform &) = delete;
    RealTransform &operator=(const RealTransform &) = delete;

    [[nodiscard]] const std::vector<int> &shape() const { return shape_; }
    [[nodiscard]] std::size_t real_size() const { return real_size_; }
    /// prod(shape[:-1]) * (shape.back()/2 + 1)
    [[nodiscard]] std::size_t complex_size() const { return complex_size_; }

    void forward(double *in, std::complex<double> *out) const;
    void inverse(std::complex<double> *in, double *out) const;

private:
    std::vector<int> shape_;
    std::size_t real_size_ = 0;
    std::size_t complex_size_ = 0;
    void *forward_plan_ = nullptr;
    void *inverse_plan_ = nullptr;
};

} // namespace landau::fft
