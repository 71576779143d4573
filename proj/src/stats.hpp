#pragma once

#include <complex>
#include <span>
#include <vector>

namespace ptkr {

/// Complex level-spacing ratios xi_g = (z_nn - z_g) / (z_nnn - z_g) and the
/// aggregates <r> = mean|xi| and -<cos theta> = -mean(Re xi / |xi|).
struct RatioStats {
    std::vector<std::complex<double>> xis;
    double mean_r = 0.0;
    double mean_neg_cos = 0.0;
    std::size_t count = 0;
};

/// CLSR over raw (not unfolded) eigenvalues; spacing ratios are already
/// dimensionless. Duplicate points (closer than 1e-13 of the spectrum
/// diameter) abort with a degenerate-spectrum error suggesting mass jitter.
RatioStats clsr(std::span<const std::complex<double>> z);

/// Real level-spacing ratio: mean of min/max of adjacent gaps of the sorted
/// spectrum. Requires >= 3 levels; zero gaps are degenerate.
double rlsr(std::span<const double> levels);

struct UnfoldedSpectrum {
    std::vector<double> spacings;   // dimensionless, mean ~ 1
    std::vector<double> densities;  // rho_k, complex case only
};

/// Divide each spacing by the mean spacing among the 2*window spacings
/// between levels within `window` of its left endpoint, truncated at edges.
UnfoldedSpectrum unfold_real(std::span<const double> levels, int window);

/// Complex unfolding with the three-shell density estimate
/// rho_k = 3n / (pi (r_{k,n-1}^2 + r_{k,n}^2 + r_{k,n+1}^2));
/// the unfolded nearest-neighbor spacing is r_{k,1} sqrt(rho_k).
UnfoldedSpectrum unfold_complex(std::span<const std::complex<double>> z, int n = 10);

struct Histogram {
    std::vector<double> edges;    // bins + 1
    std::vector<double> density;  // normalized to unit area
};

Histogram spacing_histogram(std::span<const double> spacings, int bins);

/// Wigner surmise for the GOE, P(s) = (pi s / 2) exp(-pi s^2 / 4).
double goe_surmise(double s);
double goe_surmise_cdf(double s);

/// Kolmogorov-Smirnov distance between the empirical CDF of the spacings and
/// the closed-form surmise CDF.
double ks_distance_goe(std::span<const double> spacings);

}  // namespace ptkr
