#include "rmt.hpp"

#include <algorithm>
#include <cmath>

#include "errors.hpp"
#include "rng.hpp"

namespace ptkr {

namespace {

Eigen::MatrixXd gaussian_real(Rng& rng, int n) {
    Eigen::MatrixXd a(n, n);
    // Column-major fill order fixes the sample for a given stream.
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) a(i, j) = rng.normal();
    return a;
}

Eigen::MatrixXcd gaussian_complex(Rng& rng, int n) {
    Eigen::MatrixXcd a(n, n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            double re = rng.normal();
            double im = rng.normal();
            a(i, j) = {re, im};
        }
    return a;
}

Rng trial_rng(const EnsembleSpec& spec, int trial) {
    return Rng(derive_stream(spec.seed, static_cast<std::uint64_t>(trial),
                             static_cast<std::uint64_t>(spec.kind)));
}

}  // namespace

void EnsembleSpec::validate() const {
    require(dim >= 8, ErrorCode::invalid_argument, "ensemble dimension must be >= 8");
    require(trials >= 1, ErrorCode::invalid_argument, "trials must be >= 1");
}

Eigen::MatrixXcd sample_matrix(const EnsembleSpec& spec, int trial) {
    require(spec.dim >= 2, ErrorCode::invalid_argument, "dimension must be >= 2");
    Rng rng = trial_rng(spec, trial);
    int n = spec.dim;
    switch (spec.kind) {
        case EnsembleKind::ginue:
            return gaussian_complex(rng, n);
        case EnsembleKind::ginoe:
            return gaussian_real(rng, n).cast<std::complex<double>>();
        case EnsembleKind::ai_dagger: {
            Eigen::MatrixXcd a = gaussian_complex(rng, n);
            return 0.5 * (a + a.transpose().eval());
        }
        case EnsembleKind::pt_symmetric: {
            // PT = (index reversal) x (complex conjugation); symmetrize so
            // that M = P conj(M) P exactly.
            Eigen::MatrixXcd a = gaussian_complex(rng, n);
            Eigen::MatrixXcd b(n, n);
            for (int j = 0; j < n; ++j)
                for (int i = 0; i < n; ++i) b(i, j) = std::conj(a(n - 1 - i, n - 1 - j));
            return 0.5 * (a + b);
        }
        case EnsembleKind::goe: {
            Eigen::MatrixXd a = gaussian_real(rng, n);
            return (0.5 * (a + a.transpose().eval())).cast<std::complex<double>>();
        }
        default:
            fail(ErrorCode::invalid_argument, "Poisson ensembles are point sets, not matrices");
    }
}

Eigen::VectorXcd sample_eigenvalues(const EnsembleSpec& spec, int trial,
                                    const EigensolverBackend& backend) {
    int n = spec.dim;
    switch (spec.kind) {
        case EnsembleKind::poisson_real: {
            Rng rng = trial_rng(spec, trial);
            std::vector<double> pts(n);
            for (double& p : pts) p = rng.uniform(0.0, static_cast<double>(n));
            std::sort(pts.begin(), pts.end());
            Eigen::VectorXcd z(n);
            for (int i = 0; i < n; ++i) z[i] = pts[i];
            return z;
        }
        case EnsembleKind::poisson_2d: {
            Rng rng = trial_rng(spec, trial);
            Eigen::VectorXcd z(n);
            for (int i = 0; i < n; ++i) {
                double r = std::sqrt(rng.uniform());
                double phi = rng.uniform(0.0, 2.0 * M_PI);
                z[i] = std::polar(r, phi);
            }
            return z;
        }
        case EnsembleKind::goe: {
            Eigen::MatrixXcd m = sample_matrix(spec, trial);
            Eigen::VectorXd e = eigenvalues_symmetric(m.real());
            return e.cast<std::complex<double>>();
        }
        case EnsembleKind::ginoe: {
            Eigen::MatrixXcd m = sample_matrix(spec, trial);
            return backend.eigenvalues_real(m.real());
        }
        default:
            return backend.eigenvalues(sample_matrix(spec, trial));
    }
}

EnsembleResult ensemble_clsr(const EnsembleSpec& spec, const EigensolverBackend& backend) {
    spec.validate();
    std::vector<double> rs(spec.trials), cs(spec.trials);
    for (int t = 0; t < spec.trials; ++t) {
        Eigen::VectorXcd z;
        try {
            z = sample_eigenvalues(spec, t, backend);
        } catch (const Error& e) {
            fail(e.code(), "trial " + std::to_string(t) + ": " + e.what());
        }
        RatioStats stats = clsr(std::span<const std::complex<double>>(z.data(), z.size()));
        rs[t] = stats.mean_r;
        cs[t] = stats.mean_neg_cos;
    }
    auto aggregate = [&](const std::vector<double>& v, double& mean, double& stdev) {
        mean = 0.0;
        for (double x : v) mean += x;
        mean /= static_cast<double>(v.size());
        double var = 0.0;
        for (double x : v) var += (x - mean) * (x - mean);
        stdev = v.size() > 1 ? std::sqrt(var / static_cast<double>(v.size() - 1)) : 0.0;
    };
    EnsembleResult result;
    result.trials = spec.trials;
    aggregate(rs, result.mean_r, result.std_r);
    aggregate(cs, result.mean_neg_cos, result.std_neg_cos);
    return result;
}

const char* ensemble_kind_name(EnsembleKind kind) {
    switch (kind) {
        case EnsembleKind::ginue: return "ginue";
        case EnsembleKind::ginoe: return "ginoe";
        case EnsembleKind::ai_dagger: return "aidagger";
        case EnsembleKind::pt_symmetric: return "ptsym";
        case EnsembleKind::goe: return "goe";
        case EnsembleKind::poisson_real: return "poisson";
        case EnsembleKind::poisson_2d: return "poisson2d";
    }
    return "unknown";
}

}  // namespace ptkr
