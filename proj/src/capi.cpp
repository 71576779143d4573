#include "../include/ptkr.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>

#include <json.hpp>

#include "errors.hpp"
#include "io.hpp"
#include "model.hpp"
#include "otoc.hpp"
#include "rmt.hpp"
#include "spectral.hpp"
#include "stats.hpp"
#include "sweep.hpp"

using nlohmann::json;

namespace {

thread_local std::string g_last_error;

ptkr_status map_code(ptkr::ErrorCode code) {
    using ptkr::ErrorCode;
    switch (code) {
        case ErrorCode::invalid_argument: return PTKR_ERR_INVALID_ARGUMENT;
        case ErrorCode::kick_overflow: return PTKR_ERR_KICK_OVERFLOW;
        case ErrorCode::degenerate_spectrum: return PTKR_ERR_DEGENERATE_SPECTRUM;
        case ErrorCode::norm_overflow: return PTKR_ERR_NORM_OVERFLOW;
        case ErrorCode::eigensolver_failure: return PTKR_ERR_EIGENSOLVER;
        case ErrorCode::no_exponential_regime: return PTKR_ERR_NO_EXPONENTIAL_REGIME;
        case ErrorCode::io_error: return PTKR_ERR_IO;
        case ErrorCode::bad_checkpoint: return PTKR_ERR_BAD_CHECKPOINT;
        case ErrorCode::internal: return PTKR_ERR_INTERNAL;
    }
    return PTKR_ERR_INTERNAL;
}

template <typename Fn>
ptkr_status guarded(Fn&& fn) {
    try {
        fn();
        g_last_error.clear();
        return PTKR_OK;
    } catch (const ptkr::Error& e) {
        g_last_error = e.what();
        return map_code(e.code());
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return PTKR_ERR_INTERNAL;
    } catch (...) {
        g_last_error = "unknown error";
        return PTKR_ERR_INTERNAL;
    }
}

ptkr::RotorParams convert(const ptkr_rotor_params& p) {
    ptkr::RotorParams out;
    out.kick_strength = p.kick_strength;
    out.non_hermiticity = p.non_hermiticity;
    out.hbar_eff = p.hbar_eff;
    out.mass = p.mass;
    out.period = p.period;
    out.half_size = static_cast<long>(p.half_size);
    out.jitter_amplitude = p.jitter_amplitude;
    out.seed = p.seed;
    return out;
}

void require_ptr(const void* p, const char* name) {
    ptkr::require(p != nullptr, ptkr::ErrorCode::invalid_argument,
                  std::string(name) + " must not be NULL");
}

/// Writes through a stream; "-" targets stdout.
void with_output(const char* path, const std::function<void(std::ostream&)>& fn) {
    require_ptr(path, "path");
    if (std::strcmp(path, "-") == 0) {
        fn(std::cout);
        std::cout.flush();
        return;
    }
    std::ofstream out(path);
    ptkr::require(out.good(), ptkr::ErrorCode::io_error,
                  std::string("cannot open for writing: ") + path);
    fn(out);
    ptkr::require(out.good(), ptkr::ErrorCode::io_error, std::string("write failed: ") + path);
}

}  // namespace

struct ptkr_spectrum {
    ptkr::QuasienergySpectrum value;
};

struct ptkr_otoc {
    ptkr::OtocSeries value;
    ptkr::RotorParams params;
    long k0 = 0;
    double sigma = 4.0;
};

extern "C" {

const char* ptkr_status_name(ptkr_status status) {
    switch (status) {
        case PTKR_OK: return "ok";
        case PTKR_ERR_INVALID_ARGUMENT: return "invalid argument";
        case PTKR_ERR_KICK_OVERFLOW: return "kick amplitude overflow";
        case PTKR_ERR_DEGENERATE_SPECTRUM: return "degenerate spectrum";
        case PTKR_ERR_NORM_OVERFLOW: return "norm overflow";
        case PTKR_ERR_EIGENSOLVER: return "eigensolver failure";
        case PTKR_ERR_NO_EXPONENTIAL_REGIME: return "no exponential regime";
        case PTKR_ERR_IO: return "I/O error";
        case PTKR_ERR_BAD_CHECKPOINT: return "bad checkpoint";
        case PTKR_ERR_INTERNAL: return "internal error";
    }
    return "unknown";
}

const char* ptkr_last_error(void) { return g_last_error.c_str(); }

void ptkr_rotor_params_init(ptkr_rotor_params* params) {
    if (!params) return;
    ptkr::RotorParams d;
    params->kick_strength = d.kick_strength;
    params->non_hermiticity = d.non_hermiticity;
    params->hbar_eff = d.hbar_eff;
    params->mass = d.mass;
    params->period = d.period;
    params->half_size = d.half_size;
    params->jitter_amplitude = d.jitter_amplitude;
    params->seed = d.seed;
}

ptkr_status ptkr_potential(double theta, const ptkr_rotor_params* params, double* re, double* im) {
    return guarded([&] {
        require_ptr(params, "params");
        ptkr::RotorParams p = convert(*params);
        p.validate();
        ptkr::Complex v = ptkr::potential(theta, p);
        if (re) *re = v.real();
        if (im) *im = v.imag();
    });
}

ptkr_status ptkr_mass_jitter(const ptkr_rotor_params* params, double* out) {
    return guarded([&] {
        require_ptr(params, "params");
        require_ptr(out, "out");
        auto jitter = ptkr::sample_mass_jitter(convert(*params));
        std::copy(jitter.begin(), jitter.end(), out);
    });
}

ptkr_status ptkr_spectrum_compute(const ptkr_rotor_params* params, int use_jitter,
                                  ptkr_spectrum** out) {
    return guarded([&] {
        require_ptr(params, "params");
        require_ptr(out, "out");
        ptkr::RotorParams p = convert(*params);
        auto jitter = use_jitter ? ptkr::sample_mass_jitter(p) : ptkr::zero_jitter(p);
        auto spectrum = ptkr::compute_spectrum(p, jitter);
        *out = new ptkr_spectrum{std::move(spectrum)};
    });
}

size_t ptkr_spectrum_size(const ptkr_spectrum* spectrum) {
    return spectrum ? static_cast<size_t>(spectrum->value.mus.size()) : 0;
}

ptkr_status ptkr_spectrum_get(const ptkr_spectrum* spectrum, double* re_mu, double* im_mu,
                              double* re_eps, double* im_eps) {
    return guarded([&] {
        require_ptr(spectrum, "spectrum");
        const auto& s = spectrum->value;
        for (Eigen::Index i = 0; i < s.mus.size(); ++i) {
            if (re_mu) re_mu[i] = s.mus[i].real();
            if (im_mu) im_mu[i] = s.mus[i].imag();
            if (re_eps) re_eps[i] = s.epsilons[i].real();
            if (im_eps) im_eps[i] = s.epsilons[i].imag();
        }
    });
}

double ptkr_spectrum_alpha(const ptkr_spectrum* spectrum) {
    return spectrum ? spectrum->value.alpha : std::numeric_limits<double>::quiet_NaN();
}

int ptkr_spectrum_pt_broken(const ptkr_spectrum* spectrum, double threshold) {
    return spectrum && ptkr::pt_broken(spectrum->value, threshold) ? 1 : 0;
}

ptkr_status ptkr_spectrum_write_csv(const ptkr_spectrum* spectrum, const char* path) {
    return guarded([&] {
        require_ptr(spectrum, "spectrum");
        with_output(path, [&](std::ostream& out) { ptkr::write_spectrum_csv(spectrum->value, out); });
    });
}

void ptkr_spectrum_free(ptkr_spectrum* spectrum) { delete spectrum; }

ptkr_status ptkr_clsr(const double* re, const double* im, size_t n, double* mean_r,
                      double* mean_neg_cos, double* xi_re, double* xi_im) {
    return guarded([&] {
        require_ptr(re, "re");
        require_ptr(im, "im");
        std::vector<std::complex<double>> z(n);
        for (size_t i = 0; i < n; ++i) z[i] = {re[i], im[i]};
        ptkr::RatioStats stats = ptkr::clsr(z);
        if (mean_r) *mean_r = stats.mean_r;
        if (mean_neg_cos) *mean_neg_cos = stats.mean_neg_cos;
        for (size_t i = 0; i < n; ++i) {
            if (xi_re) xi_re[i] = stats.xis[i].real();
            if (xi_im) xi_im[i] = stats.xis[i].imag();
        }
    });
}

ptkr_status ptkr_rlsr(const double* levels, size_t n, double* out) {
    return guarded([&] {
        require_ptr(levels, "levels");
        require_ptr(out, "out");
        *out = ptkr::rlsr(std::span<const double>(levels, n));
    });
}

ptkr_status ptkr_unfold_real(const double* levels, size_t n, int window, double* spacings) {
    return guarded([&] {
        require_ptr(levels, "levels");
        require_ptr(spacings, "spacings");
        auto u = ptkr::unfold_real(std::span<const double>(levels, n), window);
        std::copy(u.spacings.begin(), u.spacings.end(), spacings);
    });
}

ptkr_status ptkr_unfold_complex(const double* re, const double* im, size_t n, int nn,
                                double* spacings, double* densities) {
    return guarded([&] {
        require_ptr(re, "re");
        require_ptr(im, "im");
        std::vector<std::complex<double>> z(n);
        for (size_t i = 0; i < n; ++i) z[i] = {re[i], im[i]};
        auto u = ptkr::unfold_complex(z, nn);
        if (spacings) std::copy(u.spacings.begin(), u.spacings.end(), spacings);
        if (densities) std::copy(u.densities.begin(), u.densities.end(), densities);
    });
}

double ptkr_goe_surmise(double s) { return ptkr::goe_surmise(s); }

double ptkr_goe_surmise_cdf(double s) { return ptkr::goe_surmise_cdf(s); }

ptkr_status ptkr_ks_distance_goe(const double* spacings, size_t n, double* out) {
    return guarded([&] {
        require_ptr(spacings, "spacings");
        require_ptr(out, "out");
        *out = ptkr::ks_distance_goe(std::span<const double>(spacings, n));
    });
}

ptkr_status ptkr_ensemble_clsr(const ptkr_ensemble_spec* spec, ptkr_ensemble_result* out) {
    return guarded([&] {
        require_ptr(spec, "spec");
        require_ptr(out, "out");
        ptkr::EnsembleSpec s{static_cast<ptkr::EnsembleKind>(spec->kind), spec->dim, spec->trials,
                             spec->seed};
        ptkr::EnsembleResult r = ptkr::ensemble_clsr(s);
        out->mean_r = r.mean_r;
        out->std_r = r.std_r;
        out->mean_neg_cos = r.mean_neg_cos;
        out->std_neg_cos = r.std_neg_cos;
        out->trials = r.trials;
    });
}

ptkr_status ptkr_ensemble_trial_eigenvalues(const ptkr_ensemble_spec* spec, int32_t trial,
                                            double* re, double* im) {
    return guarded([&] {
        require_ptr(spec, "spec");
        ptkr::EnsembleSpec s{static_cast<ptkr::EnsembleKind>(spec->kind), spec->dim, spec->trials,
                             spec->seed};
        Eigen::VectorXcd z = ptkr::sample_eigenvalues(s, trial);
        for (Eigen::Index i = 0; i < z.size(); ++i) {
            if (re) re[i] = z[i].real();
            if (im) im[i] = z[i].imag();
        }
    });
}

ptkr_status ptkr_otoc_run(const ptkr_rotor_params* params, int64_t k0, double sigma, int64_t steps,
                          int use_jitter, ptkr_otoc** out) {
    return guarded([&] {
        require_ptr(params, "params");
        require_ptr(out, "out");
        ptkr::RotorParams p = convert(*params);
        ptkr::WavepacketSpec wp{static_cast<long>(k0), sigma};
        auto jitter = use_jitter ? ptkr::sample_mass_jitter(p) : ptkr::zero_jitter(p);
        ptkr::OtocSeries series = ptkr::otoc_series(p, wp, static_cast<long>(steps), jitter);
        *out = new ptkr_otoc{std::move(series), p, static_cast<long>(k0), sigma};
    });
}

size_t ptkr_otoc_length(const ptkr_otoc* series) {
    return series ? series->value.c_raw.size() : 0;
}

ptkr_status ptkr_otoc_get(const ptkr_otoc* series, double* c_raw, double* norm, double* c_norm) {
    return guarded([&] {
        require_ptr(series, "series");
        const auto& s = series->value;
        for (size_t t = 0; t < s.c_raw.size(); ++t) {
            if (c_raw) c_raw[t] = s.c_raw[t];
            if (norm) norm[t] = s.norm[t];
            if (c_norm) c_norm[t] = s.c_norm[t];
        }
    });
}

double ptkr_otoc_alpha_fit(const ptkr_otoc* series, int* clamped) {
    if (!series) return std::numeric_limits<double>::quiet_NaN();
    if (clamped) *clamped = series->value.alpha_clamped ? 1 : 0;
    return series->value.alpha_fit;
}

ptkr_status ptkr_otoc_lyapunov(const ptkr_otoc* series, double* lambda, int64_t* t_start,
                               int64_t* t_end) {
    return guarded([&] {
        require_ptr(series, "series");
        ptkr::require(std::isfinite(series->value.lambda_fit),
                      ptkr::ErrorCode::no_exponential_regime,
                      "series has no exponential window to fit");
        if (lambda) *lambda = series->value.lambda_fit;
        if (t_start) *t_start = series->value.fit_start;
        if (t_end) *t_end = series->value.fit_end;
    });
}

double ptkr_otoc_edge_occupation(const ptkr_otoc* series) {
    return series ? series->value.max_edge_occupation : std::numeric_limits<double>::quiet_NaN();
}

ptkr_status ptkr_otoc_write_csv(const ptkr_otoc* series, const char* path) {
    return guarded([&] {
        require_ptr(series, "series");
        with_output(path, [&](std::ostream& out) { ptkr::write_otoc_csv(series->value, out); });
    });
}

ptkr_status ptkr_otoc_write_meta_json(const ptkr_otoc* series, const char* path) {
    return guarded([&] {
        require_ptr(series, "series");
        const auto& s = series->value;
        json meta{{"alpha_fit", s.alpha_fit},
                  {"alpha_clamped", s.alpha_clamped},
                  {"max_imag_ratio", s.max_imag_ratio},
                  {"max_edge_occupation", s.max_edge_occupation},
                  {"edge_warning", s.edge_warning},
                  {"steps", s.steps()},
                  {"config",
                   {{"K", series->params.kick_strength},
                    {"lambda", series->params.non_hermiticity},
                    {"hbar_eff", series->params.hbar_eff},
                    {"m", series->params.mass},
                    {"tau", series->params.period},
                    {"N", series->params.half_size},
                    {"jitter", series->params.jitter_amplitude},
                    {"seed", series->params.seed},
                    {"k0", series->k0},
                    {"sigma", series->sigma}}}};
        if (std::isfinite(s.lambda_fit)) {
            meta["lambda_fit"] = s.lambda_fit;
            meta["fit_window"] = {{"t_start", s.fit_start}, {"t_end", s.fit_end}};
        } else {
            meta["lambda_fit"] = nullptr;
            meta["fit_window"] = nullptr;
        }
        with_output(path, [&](std::ostream& out) { out << meta.dump(2) << '\n'; });
    });
}

void ptkr_otoc_free(ptkr_otoc* series) { delete series; }

ptkr_status ptkr_lyapunov_fit(const double* c_norm, size_t n, double* lambda, int64_t* t_start,
                              int64_t* t_end) {
    return guarded([&] {
        require_ptr(c_norm, "c_norm");
        require_ptr(lambda, "lambda");
        long a = -1, b = -1;
        *lambda = ptkr::lyapunov_fit(std::span<const double>(c_norm, n), &a, &b);
        if (t_start) *t_start = a;
        if (t_end) *t_end = b;
    });
}

ptkr_status ptkr_alpha_fit(const double* c_raw, size_t n, double* alpha, int* clamped) {
    return guarded([&] {
        require_ptr(c_raw, "c_raw");
        require_ptr(alpha, "alpha");
        bool clip = false;
        *alpha = ptkr::alpha_fit_raw(std::span<const double>(c_raw, n), &clip);
        if (clamped) *clamped = clip ? 1 : 0;
    });
}

namespace {

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out) std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

std::string summarize(const ptkr::SweepResult& result) {
    json cells = json::array();
    json failed = json::array();
    for (const auto& c : result.cells) {
        cells.push_back(json::parse(ptkr::cell_to_json(c)));
        if (c.failed) failed.push_back({c.i, c.j});
    }
    json summary{{"grid", json::parse(ptkr::grid_to_json(result.grid))},
                 {"cells", cells},
                 {"failed", failed}};
    return summary.dump();
}

}  // namespace

ptkr_status ptkr_sweep_run(const char* grid_json, const char* checkpoint_path, int parallelism,
                           char** summary_json) {
    return guarded([&] {
        require_ptr(grid_json, "grid_json");
        require_ptr(checkpoint_path, "checkpoint_path");
        ptkr::GridSpec grid = ptkr::grid_from_json(grid_json);
        ptkr::SweepResult result = ptkr::run_sweep(grid, parallelism, checkpoint_path);
        if (summary_json) *summary_json = dup_string(summarize(result));
    });
}

ptkr_status ptkr_sweep_resume(const char* checkpoint_path, int parallelism, char** summary_json) {
    return guarded([&] {
        require_ptr(checkpoint_path, "checkpoint_path");
        ptkr::SweepResult result = ptkr::resume(checkpoint_path, parallelism);
        if (summary_json) *summary_json = dup_string(summarize(result));
    });
}

ptkr_status ptkr_sweep_export_csv(const char* checkpoint_path, const char* csv_path) {
    return guarded([&] {
        require_ptr(checkpoint_path, "checkpoint_path");
        // Re-reading through resume would recompute missing cells; parse only.
        std::ifstream in(checkpoint_path);
        ptkr::require(in.good(), ptkr::ErrorCode::io_error,
                      std::string("cannot open checkpoint ") + checkpoint_path);
        std::string line;
        std::vector<ptkr::CellRecord> cells;
        std::optional<ptkr::GridSpec> grid;
        std::size_t lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (line.empty()) continue;
            json record;
            try {
                record = json::parse(line);
            } catch (const json::exception& e) {
                ptkr::fail(ptkr::ErrorCode::bad_checkpoint,
                           "checkpoint line " + std::to_string(lineno) + ": " + e.what());
            }
            std::string type = record.value("type", "");
            if (type == "grid") {
                grid = ptkr::grid_from_json(record.at("grid").dump());
            } else if (type == "cell") {
                ptkr::CellRecord c;
                c.i = record.at("i").get<int>();
                c.j = record.at("j").get<int>();
                c.kick_strength = record.at("K").get<double>();
                c.non_hermiticity = record.at("lambda").get<double>();
                c.clsr = record.value("clsr", std::numeric_limits<double>::quiet_NaN());
                c.neg_cos = record.value("neg_cos", std::numeric_limits<double>::quiet_NaN());
                c.alpha = record.value("alpha", std::numeric_limits<double>::quiet_NaN());
                c.phase = record.value("phase", "");
                cells.push_back(std::move(c));
            }
        }
        ptkr::require(grid.has_value(), ptkr::ErrorCode::bad_checkpoint,
                      "checkpoint has no grid header");
        std::sort(cells.begin(), cells.end(), [](const auto& a, const auto& b) {
            return a.i != b.i ? a.i < b.i : a.j < b.j;
        });
        ptkr::SweepResult result;
        result.grid = *grid;
        result.cells = std::move(cells);
        with_output(csv_path, [&](std::ostream& out) { ptkr::write_sweep_csv(result, out); });
    });
}

void ptkr_string_free(char* s) { std::free(s); }

}  // extern "C"
