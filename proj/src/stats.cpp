#include "stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "errors.hpp"
#include "neighbors.hpp"

namespace ptkr {

namespace {

double spectrum_scale(std::span<const std::complex<double>> z) {
    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    for (const auto& p : z) {
        xmin = std::min(xmin, p.real());
        xmax = std::max(xmax, p.real());
        ymin = std::min(ymin, p.imag());
        ymax = std::max(ymax, p.imag());
    }
    return std::hypot(xmax - xmin, ymax - ymin);
}

}  // namespace

RatioStats clsr(std::span<const std::complex<double>> z) {
    require(z.size() >= 3, ErrorCode::invalid_argument, "CLSR needs at least 3 eigenvalues");
    double dup_threshold = 1e-13 * spectrum_scale(z);
    PlaneIndex index(z);
    RatioStats stats;
    stats.xis.resize(z.size());
    stats.count = z.size();
    double sum_r = 0.0, sum_cos = 0.0;
    for (std::size_t g = 0; g < z.size(); ++g) {
        NeighborPair nb = index.two_nearest(g);
        require(nb.d_nn > dup_threshold, ErrorCode::degenerate_spectrum,
                "degenerate spectrum: duplicate eigenvalues; enable mass jitter to break "
                "degeneracies");
        std::complex<double> xi = (z[nb.nn] - z[g]) / (z[nb.nnn] - z[g]);
        stats.xis[g] = xi;
        double r = std::abs(xi);
        sum_r += r;
        sum_cos += xi.real() / r;
    }
    stats.mean_r = sum_r / static_cast<double>(z.size());
    stats.mean_neg_cos = -sum_cos / static_cast<double>(z.size());
    return stats;
}

double rlsr(std::span<const double> levels) {
    require(levels.size() >= 3, ErrorCode::invalid_argument, "RLSR needs at least 3 levels");
    std::vector<double> sorted(levels.begin(), levels.end());
    std::sort(sorted.begin(), sorted.end());
    double sum = 0.0;
    for (std::size_t b = 0; b + 2 < sorted.size(); ++b) {
        double g0 = sorted[b + 1] - sorted[b];
        double g1 = sorted[b + 2] - sorted[b + 1];
        require(g0 > 0.0 && g1 > 0.0, ErrorCode::degenerate_spectrum,
                "degenerate spectrum: zero gap; enable mass jitter to break degeneracies");
        sum += std::min(g0, g1) / std::max(g0, g1);
    }
    return sum / static_cast<double>(levels.size() - 2);
}

UnfoldedSpectrum unfold_real(std::span<const double> levels, int window) {
    require(levels.size() >= 2, ErrorCode::invalid_argument, "need at least 2 levels");
    require(window >= 1, ErrorCode::invalid_argument, "window must be >= 1");
    std::vector<double> sorted(levels.begin(), levels.end());
    std::sort(sorted.begin(), sorted.end());
    std::size_t ns = sorted.size() - 1;
    std::vector<double> gaps(ns);
    for (std::size_t i = 0; i < ns; ++i) gaps[i] = sorted[i + 1] - sorted[i];

    UnfoldedSpectrum out;
    out.spacings.resize(ns);
    for (std::size_t i = 0; i < ns; ++i) {
        // Spacings between the levels within `window` of level i:
        // gap indices [i - window, i + window - 1], truncated.
        std::size_t lo = (i >= static_cast<std::size_t>(window)) ? i - window : 0;
        std::size_t hi = std::min(ns - 1, i + static_cast<std::size_t>(window) - 1);
        double mean = 0.0;
        for (std::size_t j = lo; j <= hi; ++j) mean += gaps[j];
        mean /= static_cast<double>(hi - lo + 1);
        require(mean > 0.0, ErrorCode::degenerate_spectrum, "zero local mean spacing");
        out.spacings[i] = gaps[i] / mean;
    }
    return out;
}

UnfoldedSpectrum unfold_complex(std::span<const std::complex<double>> z, int n) {
    require(n >= 2, ErrorCode::invalid_argument, "neighbor order n must be >= 2");
    require(z.size() >= static_cast<std::size_t>(n) + 2, ErrorCode::invalid_argument,
            "need at least n + 2 points");
    double dup_threshold = 1e-13 * spectrum_scale(z);
    PlaneIndex index(z);
    UnfoldedSpectrum out;
    out.spacings.resize(z.size());
    out.densities.resize(z.size());
    for (std::size_t k = 0; k < z.size(); ++k) {
        auto d = index.knn_distances(k, static_cast<std::size_t>(n) + 1);
        require(d[0] > dup_threshold, ErrorCode::degenerate_spectrum,
                "degenerate spectrum: duplicate eigenvalues; enable mass jitter to break "
                "degeneracies");
        double s2 = d[n - 2] * d[n - 2] + d[n - 1] * d[n - 1] + d[n] * d[n];
        double rho = 3.0 * static_cast<double>(n) / (M_PI * s2);
        out.densities[k] = rho;
        out.spacings[k] = d[0] * std::sqrt(rho);
    }
    return out;
}

Histogram spacing_histogram(std::span<const double> spacings, int bins) {
    require(!spacings.empty(), ErrorCode::invalid_argument, "no spacings to histogram");
    require(bins >= 1, ErrorCode::invalid_argument, "bins must be >= 1");
    double smax = *std::max_element(spacings.begin(), spacings.end());
    if (smax <= 0.0) smax = 1.0;
    Histogram h;
    h.edges.resize(bins + 1);
    h.density.assign(bins, 0.0);
    double width = smax / bins;
    for (int b = 0; b <= bins; ++b) h.edges[b] = width * b;
    for (double s : spacings) {
        int b = std::min(bins - 1, static_cast<int>(s / width));
        h.density[std::max(0, b)] += 1.0;
    }
    double norm = 1.0 / (static_cast<double>(spacings.size()) * width);
    for (double& d : h.density) d *= norm;
    return h;
}

double goe_surmise(double s) {
    return 0.5 * M_PI * s * std::exp(-0.25 * M_PI * s * s);
}

double goe_surmise_cdf(double s) {
    return 1.0 - std::exp(-0.25 * M_PI * s * s);
}

double ks_distance_goe(std::span<const double> spacings) {
    require(!spacings.empty(), ErrorCode::invalid_argument, "no spacings");
    std::vector<double> sorted(spacings.begin(), spacings.end());
    std::sort(sorted.begin(), sorted.end());
    double n = static_cast<double>(sorted.size());
    double dmax = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        double f = goe_surmise_cdf(sorted[i]);
        dmax = std::max(dmax, std::abs(static_cast<double>(i + 1) / n - f));
        dmax = std::max(dmax, std::abs(f - static_cast<double>(i) / n));
    }
    return dmax;
}

}  // namespace ptkr
