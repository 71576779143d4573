#include "otoc.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "io.hpp"

namespace ptkr {

namespace {

constexpr double kAmplitudeLimit = 1e300;
constexpr double kEdgeLimit = 1e-8;

void check_overflow(const StateVector& state, long step) {
    double m = state.cwiseAbs().maxCoeff();
    require(std::isfinite(m) && m < kAmplitudeLimit, ErrorCode::norm_overflow,
            "norm overflow at step " + std::to_string(step) +
                "; use the normalized OTOC or fewer steps");
}

/// Least-squares slope of y against t over the given index range.
double ls_slope(std::span<const double> y, std::span<const double> t) {
    double n = static_cast<double>(y.size());
    double st = 0, sy = 0, stt = 0, sty = 0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        st += t[i];
        sy += y[i];
        stt += t[i] * t[i];
        sty += t[i] * y[i];
    }
    return (n * sty - st * sy) / (n * stt - st * st);
}

}  // namespace

StateVector evolve(const SplitStepApplicator& applicator, StateVector state, long steps,
                   bool adjoint) {
    require(steps >= 0, ErrorCode::invalid_argument, "steps must be >= 0");
    for (long s = 0; s < steps; ++s) {
        state = applicator.apply(state, adjoint);
        check_overflow(state, s + 1);
    }
    return state;
}

OtocSeries otoc_series(const RotorParams& params, const WavepacketSpec& wavepacket, long T,
                       std::span<const double> jitter) {
    require(T >= 1, ErrorCode::invalid_argument, "need at least one time step");
    StateVector psi0 = gaussian_state(wavepacket, params);
    SplitStepApplicator applicator(params, jitter);
    long m = params.dim();

    OtocSeries series;
    series.c_raw.assign(T + 1, 0.0);
    series.norm.assign(T + 1, 0.0);
    series.c_norm.assign(T + 1, 0.0);
    series.norm[0] = psi0.squaredNorm();

    StateVector p_psi0 = psi0;
    apply_momentum(p_psi0, params);

    StateVector psi_t = psi0;    // F^t |Psi>
    StateVector phi_t = p_psi0;  // F^t p |Psi>

    for (long t = 1; t <= T; ++t) {
        psi_t = applicator.apply(psi_t);
        check_overflow(psi_t, t);
        phi_t = applicator.apply(phi_t);
        check_overflow(phi_t, t);
        series.norm[t] = psi_t.squaredNorm();

        double edge = (std::norm(psi_t[0]) + std::norm(psi_t[m - 1])) / series.norm[t];
        series.max_edge_occupation = std::max(series.max_edge_occupation, edge);

        // u = [p(t), p] |Psi> = F^dag^t p F^t p|Psi> - p F^dag^t p F^t|Psi>
        StateVector w1 = phi_t;
        apply_momentum(w1, params);
        w1 = evolve(applicator, std::move(w1), t, true);
        StateVector w2 = psi_t;
        apply_momentum(w2, params);
        w2 = evolve(applicator, std::move(w2), t, true);
        apply_momentum(w2, params);
        StateVector u = w1 - w2;

        // C(t) = -Re <Psi| [p(t), p] |u>, one more operator pass.
        StateVector pu = u;
        apply_momentum(pu, params);
        StateVector r1 = evolve(applicator, std::move(pu), t, false);
        apply_momentum(r1, params);
        r1 = evolve(applicator, std::move(r1), t, true);
        StateVector r2 = evolve(applicator, u, t, false);
        apply_momentum(r2, params);
        r2 = evolve(applicator, std::move(r2), t, true);
        apply_momentum(r2, params);

        Complex c = psi0.dot(r1 - r2);  // Eigen: conjugates the left factor
        series.c_raw[t] = -c.real();
        if (c.real() != 0.0)
            series.max_imag_ratio =
                std::max(series.max_imag_ratio, std::abs(c.imag()) / std::abs(c.real()));
    }
    series.edge_warning = series.max_edge_occupation > kEdgeLimit;

    series.alpha_fit = fit_alpha(series, &series.alpha_clamped);
    normalize(series, series.alpha_fit);
    try {
        lyapunov(series);
    } catch (const Error&) {
        // No exponential window (integrable regime): leave lambda_fit NaN.
    }
    return series;
}

OtocSeries otoc_series(const RotorParams& params, const WavepacketSpec& wavepacket, long T) {
    std::vector<double> zeros(static_cast<std::size_t>(params.dim()), 0.0);
    return otoc_series(params, wavepacket, T, zeros);
}

double alpha_fit_raw(std::span<const double> c_raw, bool* clamped) {
    std::vector<double> ts, ys;
    for (std::size_t t = 1; t < c_raw.size(); ++t) {
        if (std::isfinite(c_raw[t]) && c_raw[t] > 0.0) {
            ts.push_back(static_cast<double>(t));
            ys.push_back(std::log(c_raw[t]));
        }
    }
    std::size_t quartile = (ts.size() + 3) / 4;
    require(quartile >= 4, ErrorCode::invalid_argument,
            "too few finite points to fit the late-time growth rate");
    std::span<const double> tq(ts.data() + (ts.size() - quartile), quartile);
    std::span<const double> yq(ys.data() + (ys.size() - quartile), quartile);
    double alpha = ls_slope(yq, tq) / 4.0;
    bool clip = alpha < 0.0;
    if (clamped) *clamped = clip;
    return clip ? 0.0 : alpha;
}

double fit_alpha(const OtocSeries& series, bool* clamped) {
    return alpha_fit_raw(series.c_raw, clamped);
}

void normalize(OtocSeries& series, double alpha) {
    require(std::isfinite(alpha), ErrorCode::invalid_argument, "alpha must be finite");
    series.c_norm.resize(series.c_raw.size());
    for (std::size_t t = 0; t < series.c_raw.size(); ++t)
        series.c_norm[t] = std::exp(-4.0 * alpha * static_cast<double>(t)) * series.c_raw[t];
}

double lyapunov_fit(std::span<const double> c_norm, long* t_start, long* t_end) {
    long T = static_cast<long>(c_norm.size()) - 1;
    auto log_at = [&](long t) -> double {
        if (t > T || !std::isfinite(c_norm[t]) || c_norm[t] <= 0.0)
            return std::numeric_limits<double>::quiet_NaN();
        return std::log(c_norm[t]);
    };
    require(T >= 3, ErrorCode::no_exponential_regime, "series too short for a Lyapunov fit");
    double d1 = log_at(2) - log_at(1);
    require(std::isfinite(d1) && d1 > 0.0, ErrorCode::no_exponential_regime,
            "no initial exponential growth in the normalized OTOC");

    // First time the log-increment falls below half the t = 1 increment.
    long t_slow = T;
    for (long t = 2; t < T; ++t) {
        double d = log_at(t + 1) - log_at(t);
        if (!std::isfinite(d) || d < 0.5 * d1) {
            t_slow = t;
            break;
        }
    }
    require(t_slow >= 3, ErrorCode::no_exponential_regime,
            "exponential window shorter than 3 points");

    std::vector<double> ts, ys;
    for (long t = 1; t <= t_slow; ++t) {
        double y = log_at(t);
        require(std::isfinite(y), ErrorCode::no_exponential_regime,
                "non-positive OTOC inside the fit window");
        ts.push_back(static_cast<double>(t - 1));
        ys.push_back(y);
    }
    double lambda = 0.5 * ls_slope(ys, ts);
    if (t_start) *t_start = 1;
    if (t_end) *t_end = t_slow;
    return lambda;
}

double lyapunov(OtocSeries& series) {
    long a = -1, b = -1;
    double lambda = lyapunov_fit(series.c_norm, &a, &b);
    series.lambda_fit = lambda;
    series.fit_start = a;
    series.fit_end = b;
    return lambda;
}

void write_otoc_csv(const OtocSeries& series, std::ostream& out) {
    out << "t,c_raw,norm,c_norm\n";
    for (std::size_t t = 0; t < series.c_raw.size(); ++t) {
        out << t << ',' << fmt17(series.c_raw[t]) << ',' << fmt17(series.norm[t]) << ','
            << fmt17(series.c_norm[t]) << '\n';
    }
}

OtocSeries read_otoc_csv(std::istream& in) {
    std::string line;
    require(static_cast<bool>(std::getline(in, line)), ErrorCode::io_error, "empty OTOC file");
    require(line.rfind("t,", 0) == 0, ErrorCode::io_error, "missing OTOC CSV header");
    OtocSeries series;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string field;
        double v[4];
        for (int c = 0; c < 4; ++c) {
            require(static_cast<bool>(std::getline(row, field, ',')), ErrorCode::io_error,
                    "short OTOC CSV row");
            v[c] = std::stod(field);
        }
        series.c_raw.push_back(v[1]);
        series.norm.push_back(v[2]);
        series.c_norm.push_back(v[3]);
    }
    require(!series.c_raw.empty(), ErrorCode::io_error, "no OTOC rows");
    return series;
}

}  // namespace ptkr
