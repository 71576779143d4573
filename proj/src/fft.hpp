#pragma once

#include <complex>
#include <cstddef>

namespace ptkr {

/// Fixed-size 1D complex DFT backed by FFTW. forward() applies
/// sum_j in[j] e^{-2 pi i jk/n}, backward() the +i sign; both unnormalized.
///
/// Plan creation is serialized internally (FFTW planning is not
/// thread-safe); execution goes through the new-array interface on
/// per-thread scratch buffers, so a single Fft may be shared across tasks.
class Fft {
public:
    explicit Fft(std::size_t n);
    ~Fft();

    Fft(const Fft&) = delete;
    Fft& operator=(const Fft&) = delete;

    void forward(const std::complex<double>* in, std::complex<double>* out) const;
    void backward(const std::complex<double>* in, std::complex<double>* out) const;

    std::size_t size() const { return n_; }

private:
    void execute(const void* plan, const std::complex<double>* in, std::complex<double>* out) const;

    std::size_t n_;
    void* fwd_ = nullptr;  // fftw_plan
    void* bwd_ = nullptr;
};

}  // namespace ptkr
