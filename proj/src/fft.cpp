#include "fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <mutex>
#include <unordered_map>

#include "errors.hpp"

namespace ptkr {

namespace {

std::mutex& plan_mutex() {
    static std::mutex m;
    return m;
}

// Per-thread scratch pair, grown on demand. fftw_malloc guarantees the same
// alignment the plans were created with.
struct Scratch {
    fftw_complex* in = nullptr;
    fftw_complex* out = nullptr;
    std::size_t cap = 0;

    void ensure(std::size_t n) {
        if (cap >= n) return;
        fftw_free(in);
        fftw_free(out);
        in = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n));
        out = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n));
        require(in != nullptr && out != nullptr, ErrorCode::internal, "fftw_malloc failed");
        cap = n;
    }

    ~Scratch() {
        fftw_free(in);
        fftw_free(out);
    }
};

Scratch& scratch() {
    thread_local Scratch s;
    return s;
}

}  // namespace

Fft::Fft(std::size_t n) : n_(n) {
    require(n >= 2, ErrorCode::invalid_argument, "FFT size must be >= 2");
    std::lock_guard<std::mutex> lock(plan_mutex());
    fftw_complex* buf = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n));
    fftw_complex* buf2 = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n));
    require(buf != nullptr && buf2 != nullptr, ErrorCode::internal, "fftw_malloc failed");
    fwd_ = fftw_plan_dft_1d(static_cast<int>(n), buf, buf2, FFTW_FORWARD, FFTW_ESTIMATE);
    bwd_ = fftw_plan_dft_1d(static_cast<int>(n), buf, buf2, FFTW_BACKWARD, FFTW_ESTIMATE);
    fftw_free(buf);
    fftw_free(buf2);
    require(fwd_ != nullptr && bwd_ != nullptr, ErrorCode::internal, "FFTW plan creation failed");
}

Fft::~Fft() {
    std::lock_guard<std::mutex> lock(plan_mutex());
    if (fwd_) fftw_destroy_plan(static_cast<fftw_plan>(fwd_));
    if (bwd_) fftw_destroy_plan(static_cast<fftw_plan>(bwd_));
}

void Fft::execute(const void* plan, const std::complex<double>* in, std::complex<double>* out) const {
    Scratch& s = scratch();
    s.ensure(n_);
    std::memcpy(s.in, in, sizeof(fftw_complex) * n_);
    fftw_execute_dft(static_cast<fftw_plan>(const_cast<void*>(plan)), s.in, s.out);
    std::memcpy(out, s.out, sizeof(fftw_complex) * n_);
}

void Fft::forward(const std::complex<double>* in, std::complex<double>* out) const {
    execute(fwd_, in, out);
}

void Fft::backward(const std::complex<double>* in, std::complex<double>* out) const {
    execute(bwd_, in, out);
}

}  // namespace ptkr
