/* ptkr: spectral and dynamical chaos diagnostics of the PT-symmetric kicked
 * rotor, exposed as a C shared-library API over an internal C++ core.
 *
 * Conventions:
 *   - Every fallible call returns a ptkr_status; PTKR_OK is 0.
 *   - ptkr_last_error() describes the most recent failure on the calling
 *     thread.
 *   - Heavy results live behind opaque handles with _free() destructors;
 *     plain structs are passed by value or pointer.
 *   - Output paths accept "-" for stdout.
 */
#ifndef PTKR_H
#define PTKR_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define PTKR_API __declspec(dllexport)
#else
#define PTKR_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ptkr_status {
    PTKR_OK = 0,
    PTKR_ERR_INVALID_ARGUMENT = 1,
    PTKR_ERR_KICK_OVERFLOW = 2,
    PTKR_ERR_DEGENERATE_SPECTRUM = 3,
    PTKR_ERR_NORM_OVERFLOW = 4,
    PTKR_ERR_EIGENSOLVER = 5,
    PTKR_ERR_NO_EXPONENTIAL_REGIME = 6,
    PTKR_ERR_IO = 7,
    PTKR_ERR_BAD_CHECKPOINT = 8,
    PTKR_ERR_INTERNAL = 9,
} ptkr_status;

PTKR_API const char* ptkr_status_name(ptkr_status status);

/* Message for the last failure on this thread; empty string if none. */
PTKR_API const char* ptkr_last_error(void);

/* ------------------------------------------------------------------ model */

/* Momentum indices run over k in [-half_size, half_size - 1]; the Hilbert
 * space dimension is 2 * half_size. */
typedef struct ptkr_rotor_params {
    double kick_strength;     /* K >= 0 */
    double non_hermiticity;   /* lambda >= 0 */
    double hbar_eff;          /* > 0 */
    double mass;              /* moment of inertia */
    double period;            /* kick period tau */
    int64_t half_size;        /* N >= 2 */
    double jitter_amplitude;  /* mass-perturbation bound, >= 0 */
    uint64_t seed;
} ptkr_rotor_params;

/* Fills in the defaults: K=1, lambda=0, hbar_eff=0.2, mass=1, period=1,
 * half_size=64, jitter_amplitude=1e-3, seed=0. */
PTKR_API void ptkr_rotor_params_init(ptkr_rotor_params* params);

/* Kick potential V(theta) = K (cos th + i lambda sin th)/sqrt(1+lambda^2). */
PTKR_API ptkr_status ptkr_potential(double theta, const ptkr_rotor_params* params, double* re,
                                    double* im);

/* Mass jitter sample: out must hold 2 * half_size doubles. */
PTKR_API ptkr_status ptkr_mass_jitter(const ptkr_rotor_params* params, double* out);

/* --------------------------------------------------------------- spectral */

typedef struct ptkr_spectrum ptkr_spectrum;

/* Dense Floquet operator build + full nonsymmetric eigendecomposition.
 * use_jitter != 0 samples the mass jitter from params->seed; otherwise the
 * jitter is zero. */
PTKR_API ptkr_status ptkr_spectrum_compute(const ptkr_rotor_params* params, int use_jitter,
                                           ptkr_spectrum** out);

PTKR_API size_t ptkr_spectrum_size(const ptkr_spectrum* spectrum);

/* Any output pointer may be NULL. Arrays must hold ptkr_spectrum_size()
 * doubles. eps = i ln(mu), Re eps folded to [-pi, pi). */
PTKR_API ptkr_status ptkr_spectrum_get(const ptkr_spectrum* spectrum, double* re_mu, double* im_mu,
                                       double* re_eps, double* im_eps);

/* alpha = max Im eps. */
PTKR_API double ptkr_spectrum_alpha(const ptkr_spectrum* spectrum);

/* 1 iff alpha > threshold (the conventional threshold is 1e-10). */
PTKR_API int ptkr_spectrum_pt_broken(const ptkr_spectrum* spectrum, double threshold);

/* CSV with header index,re_mu,im_mu,re_eps,im_eps at full precision. */
PTKR_API ptkr_status ptkr_spectrum_write_csv(const ptkr_spectrum* spectrum, const char* path);

PTKR_API void ptkr_spectrum_free(ptkr_spectrum* spectrum);

/* ------------------------------------------------------------------ stats */

/* Complex level-spacing ratio over n points (re[i], im[i]). Outputs may be
 * NULL. xi_re/xi_im, when given, receive the per-point ratios. */
PTKR_API ptkr_status ptkr_clsr(const double* re, const double* im, size_t n, double* mean_r,
                               double* mean_neg_cos, double* xi_re, double* xi_im);

/* Real level-spacing ratio of n levels (sorted internally). */
PTKR_API ptkr_status ptkr_rlsr(const double* levels, size_t n, double* out);

/* Real unfolding: n levels give n-1 dimensionless spacings. */
PTKR_API ptkr_status ptkr_unfold_real(const double* levels, size_t n, int window, double* spacings);

/* Complex unfolding with the three-shell density estimate of order nn;
 * spacings and densities (either may be NULL) must hold n doubles. */
PTKR_API ptkr_status ptkr_unfold_complex(const double* re, const double* im, size_t n, int nn,
                                         double* spacings, double* densities);

/* Wigner GOE surmise density and CDF. */
PTKR_API double ptkr_goe_surmise(double s);
PTKR_API double ptkr_goe_surmise_cdf(double s);

/* Kolmogorov-Smirnov distance of the empirical spacing CDF from the GOE
 * surmise CDF. */
PTKR_API ptkr_status ptkr_ks_distance_goe(const double* spacings, size_t n, double* out);

/* -------------------------------------------------------------------- rmt */

typedef enum ptkr_ensemble_kind {
    PTKR_ENSEMBLE_GINUE = 0,
    PTKR_ENSEMBLE_GINOE = 1,
    PTKR_ENSEMBLE_AI_DAGGER = 2,
    PTKR_ENSEMBLE_PT_SYMMETRIC = 3,
    PTKR_ENSEMBLE_GOE = 4,
    PTKR_ENSEMBLE_POISSON_REAL = 5,
    PTKR_ENSEMBLE_POISSON_2D = 6,
} ptkr_ensemble_kind;

typedef struct ptkr_ensemble_spec {
    ptkr_ensemble_kind kind;
    int32_t dim;    /* >= 8 */
    int32_t trials; /* >= 1 */
    uint64_t seed;
} ptkr_ensemble_spec;

typedef struct ptkr_ensemble_result {
    double mean_r;
    double std_r;
    double mean_neg_cos;
    double std_neg_cos;
    int32_t trials;
} ptkr_ensemble_result;

/* Mean and sample standard deviation of the per-trial CLSR. Trials are
 * deterministic in (seed, trial index). */
PTKR_API ptkr_status ptkr_ensemble_clsr(const ptkr_ensemble_spec* spec,
                                        ptkr_ensemble_result* out);

/* Eigenvalues (or sampled points) of a single trial; arrays must hold
 * spec->dim doubles. */
PTKR_API ptkr_status ptkr_ensemble_trial_eigenvalues(const ptkr_ensemble_spec* spec, int32_t trial,
                                                     double* re, double* im);

/* ------------------------------------------------------------------- otoc */

typedef struct ptkr_otoc ptkr_otoc;

/* Runs the OTOC recursion up to time `steps` from a Gaussian wavepacket
 * centered at momentum index k0 with width sigma. use_jitter defaults off:
 * jitter is a spectral-statistics device. */
PTKR_API ptkr_status ptkr_otoc_run(const ptkr_rotor_params* params, int64_t k0, double sigma,
                                   int64_t steps, int use_jitter, ptkr_otoc** out);

/* Number of samples (steps + 1, t = 0..steps). */
PTKR_API size_t ptkr_otoc_length(const ptkr_otoc* series);

/* Any output may be NULL; arrays hold ptkr_otoc_length() doubles. */
PTKR_API ptkr_status ptkr_otoc_get(const ptkr_otoc* series, double* c_raw, double* norm,
                                   double* c_norm);

/* Late-time growth-rate fit used for normalization; clamped flags a negative
 * raw slope that was clipped to zero. */
PTKR_API double ptkr_otoc_alpha_fit(const ptkr_otoc* series, int* clamped);

/* Lyapunov exponent and fit window; returns PTKR_ERR_NO_EXPONENTIAL_REGIME
 * when the series has no early exponential window. */
PTKR_API ptkr_status ptkr_otoc_lyapunov(const ptkr_otoc* series, double* lambda, int64_t* t_start,
                                        int64_t* t_end);

/* Largest basis-edge occupation seen along the trajectory; values above
 * 1e-8 indicate the momentum basis is too small. */
PTKR_API double ptkr_otoc_edge_occupation(const ptkr_otoc* series);

/* CSV with header t,c_raw,norm,c_norm. */
PTKR_API ptkr_status ptkr_otoc_write_csv(const ptkr_otoc* series, const char* path);

/* Fit metadata (alpha_fit, lambda_fit, fit_window, diagnostics) as JSON. */
PTKR_API ptkr_status ptkr_otoc_write_meta_json(const ptkr_otoc* series, const char* path);

PTKR_API void ptkr_otoc_free(ptkr_otoc* series);

/* Standalone fits over an exported series. */
PTKR_API ptkr_status ptkr_lyapunov_fit(const double* c_norm, size_t n, double* lambda,
                                       int64_t* t_start, int64_t* t_end);
PTKR_API ptkr_status ptkr_alpha_fit(const double* c_raw, size_t n, double* alpha, int* clamped);

/* ------------------------------------------------------------------ sweep */

/* grid_json schema:
 *   {
 *     "k_values": [..], "lambda_values": [..],
 *     "base": {"K":1,"lambda":0,"hbar_eff":0.2,"m":1,"tau":1,"N":2001,
 *              "jitter":1e-3,"seed":0},
 *     "base_seed": 0,
 *     "diagnostics": {"clsr":true,"rlsr":false,"otoc":false},
 *     "wavepacket": {"k0":0,"sigma":4},
 *     "otoc_steps": 30
 *   }
 * Every cell derives its own seed from (base_seed, i, j); records are
 * appended to checkpoint_path as checksummed JSON lines, one per cell, and
 * summary_json (free with ptkr_string_free) reports the sorted records plus
 * failures. Refuses to overwrite an existing checkpoint. */
PTKR_API ptkr_status ptkr_sweep_run(const char* grid_json, const char* checkpoint_path,
                                    int parallelism, char** summary_json);

/* Completes the remaining cells of a checkpoint written by ptkr_sweep_run. */
PTKR_API ptkr_status ptkr_sweep_resume(const char* checkpoint_path, int parallelism,
                                       char** summary_json);

/* CSV projection (K,lambda,clsr,neg_cos,alpha,phase) of a checkpoint. */
PTKR_API ptkr_status ptkr_sweep_export_csv(const char* checkpoint_path, const char* csv_path);

PTKR_API void ptkr_string_free(char* s);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* PTKR_H */
