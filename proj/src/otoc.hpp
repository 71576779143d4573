#pragma once

#include <iosfwd>
#include <limits>

#include "floquet.hpp"

namespace ptkr {

/// Stroboscopic OTOC series. c_raw[t] = C(t) = -Re <Psi|[p(t), p]^2|Psi>
/// with the adjoint Heisenberg form p(t) = F^dagger^t p F^t, norm[t] is the
/// squared norm of F^t|Psi>, and c_norm[t] = exp(-4 alpha t) c_raw[t].
struct OtocSeries {
    std::vector<double> c_raw;
    std::vector<double> norm;
    std::vector<double> c_norm;

    double alpha_fit = 0.0;
    bool alpha_clamped = false;
    double lambda_fit = std::numeric_limits<double>::quiet_NaN();
    long fit_start = -1;  // Lyapunov fit window [fit_start, fit_end]
    long fit_end = -1;

    double max_imag_ratio = 0.0;       // max |Im C| / |Re C| over t >= 1
    double max_edge_occupation = 0.0;  // basis-edge weight of F^t|Psi>
    bool edge_warning = false;

    long steps() const { return static_cast<long>(c_raw.size()) - 1; }
};

/// F^steps |psi> (or its adjoint powers); no renormalization, norm growth is
/// data. Amplitudes beyond ~1e300 abort with a norm-overflow error naming
/// the offending step.
StateVector evolve(const SplitStepApplicator& applicator, StateVector state, long steps,
                   bool adjoint = false);

/// Full series up to time T. Evaluation per t is matrix-free and O(t)
/// operator applications, O(T^2) overall. The second commutator pass is
/// evaluated explicitly, so a residual imaginary part of C(t) is measured
/// and reported rather than assumed away.
OtocSeries otoc_series(const RotorParams& params, const WavepacketSpec& wavepacket, long T,
                       std::span<const double> jitter);

/// Convenience overload: zero jitter (the default for dynamics).
OtocSeries otoc_series(const RotorParams& params, const WavepacketSpec& wavepacket, long T);

/// Slope of ln C(t) over the last quartile of finite positive samples,
/// divided by 4; clamped at 0 (flagged) when the slope is negative.
double fit_alpha(const OtocSeries& series, bool* clamped = nullptr);

/// Fills c_norm[t] = exp(-4 alpha t) c_raw[t].
void normalize(OtocSeries& series, double alpha);

/// Lyapunov exponent from ln C~(t) = ln a + 2 Lambda (t - 1) fitted over
/// t = 1..t_slow, where t_slow is the first t >= 2 whose log-increment drops
/// below half the increment at t = 1. Throws when no exponential window of
/// at least 3 points exists. Records the window in the series.
double lyapunov(OtocSeries& series);

/// Fit helpers operating on a bare C~(t) sequence (t = index), for refitting
/// exported series.
double lyapunov_fit(std::span<const double> c_norm, long* t_start = nullptr, long* t_end = nullptr);
double alpha_fit_raw(std::span<const double> c_raw, bool* clamped = nullptr);

/// CSV columns: t, c_raw, norm, c_norm.
void write_otoc_csv(const OtocSeries& series, std::ostream& out);

OtocSeries read_otoc_csv(std::istream& in);

}  // namespace ptkr
