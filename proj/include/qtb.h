/* qtb - quantum transmission, resonances, tunneling times and I-V curves
 * for one-dimensional double-barrier potentials.
 *
 * C interface of the shared library. All functions return a qtb_status;
 * results go through out-parameters. Objects with identity are opaque
 * handles created/destroyed here. qtb_last_error() returns a thread-local
 * message for the most recent failure on the calling thread.
 *
 * Units: energies eV, lengths nm, times fs, current density A/m^2.
 */

#ifndef QTB_H
#define QTB_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qtb_status {
    QTB_OK = 0,
    QTB_ERR_INVALID_ARGUMENT = 1,
    QTB_ERR_DEGENERATE_ENERGY = 2,
    QTB_ERR_NO_TURNING_POINTS = 3,
    QTB_ERR_WKB_ASSUMPTION = 4,
    QTB_ERR_OVERFLOW = 5,
    QTB_ERR_NUMERIC = 6,
    QTB_ERR_GRID_MISMATCH = 7,
    QTB_ERR_IO = 8,
    QTB_ERR_UNKNOWN = 9
} qtb_status;

typedef enum qtb_shape {
    QTB_SHAPE_RECTANGULAR = 0,
    QTB_SHAPE_GAUSSIAN = 1,
    QTB_SHAPE_LORENTZIAN = 2
} qtb_shape;

typedef enum qtb_engine {
    QTB_ENGINE_ANALYTIC = 0,
    QTB_ENGINE_NUMERIC = 1,
    QTB_ENGINE_WKB = 2
} qtb_engine;

/* Double barrier: hump 1 anchored at x = 0, hump 2 at x = a_nm. For
 * rectangular humps the anchor is the left edge and param the width; for
 * gaussian (lorentzian) humps the anchor is the center and param sigma
 * (gamma). */
typedef struct qtb_barrier_spec {
    double v1_ev;
    double v2_ev;
    qtb_shape shape1;
    double param1_nm;
    qtb_shape shape2;
    double param2_nm;
    double a_nm;
    double mass_factor;
} qtb_barrier_spec;

typedef struct qtb_solver_options {
    double h_nm;            /* RK4 step, default 1e-4 */
    double max_flux_error;  /* relative flux tolerance, default 1e-6 */
    int n_simpson;          /* WKB quadrature subintervals, default 512 */
    int turning_point_mode; /* 0 auto, 1 gaussian-analytic, 2 numeric */
} qtb_solver_options;

/* flag values mirror the CSV flag column; 0 means clean */
typedef struct qtb_point {
    double energy_ev;
    double transmission;
    double phase_rad;
    int engine; /* qtb_engine */
    int flag;
} qtb_point;

typedef struct qtb_resonance {
    double e_peak_ev;
    double t_peak;
    double fwhm_ev;
    int censored; /* 0 none, 1 left, 2 right, 3 both */
} qtb_resonance;

typedef struct qtb_delay {
    double tau_fs;
    double energy_ev;
    int classification; /* 0 off, 1 resonance, 2 anti-resonance */
    int flag;
} qtb_delay;

typedef struct qtb_device {
    double fermi_level_ev;
    double temperature_k;
    double mass_factor;
    int engine; /* qtb_engine */
    int n_energy; /* longitudinal integral points, default 8001 */
    /* fraction of the bias by which the barrier levels drop relative to the
     * emitter (0 = plain Fermi-window model, 0.5 = symmetric structure) */
    double level_shift_alpha;
} qtb_device;

typedef struct qtb_potential qtb_potential; /* opaque */

/* ---- library ---- */

const char* qtb_version(void);
const char* qtb_status_message(qtb_status status);
/* thread-local detail message of the last failing call */
const char* qtb_last_error(void);
void qtb_constants(double* hbar2_over_2me_ev_nm2, double* hbar_ev_fs);
void qtb_default_solver_options(qtb_solver_options* opts);

/* ---- potentials ---- */

qtb_status qtb_potential_create(const qtb_barrier_spec* spec, double eps_tail_ev,
                                qtb_potential** out);
void qtb_potential_destroy(qtb_potential* p);
double qtb_potential_eval(const qtb_potential* p, double x_nm);
qtb_status qtb_potential_info(const qtb_potential* p, double* x_min_nm, double* x_max_nm,
                              double* v_max_ev);
double qtb_equivalent_gaussian_separation(double w1_nm, double w2_nm, double a_rect_nm);

/* ---- transmission engines ---- */

qtb_status qtb_transmission(const qtb_potential* p, qtb_engine engine, double energy_ev,
                            const qtb_solver_options* opts, qtb_point* out);

/* linear energy grid, n points; out must hold n entries; per-point failures
 * are flagged in out[i].flag, the call itself succeeds */
qtb_status qtb_sweep(const qtb_potential* p, qtb_engine engine, double e_min_ev,
                     double e_max_ev, int n, const qtb_solver_options* opts, int threads,
                     qtb_point* out);

qtb_status qtb_find_resonances(const qtb_point* curve, int n, double prominence,
                               qtb_resonance* out, int capacity, int* n_found);

/* ---- tunneling times ---- */

/* rectangular double barrier given directly in well-width form */
qtb_status qtb_phase_time_rect(double v1_ev, double v2_ev, double w1_nm, double w2_nm,
                               double well_nm, double mass_factor, double energy_ev,
                               double de_ev, qtb_delay* out);
qtb_status qtb_phase_time_rect_single(double v0_ev, double l_nm, double energy_ev,
                                      double de_ev, double mass_factor, qtb_delay* out);
qtb_status qtb_phase_time_wkb(const qtb_potential* p, double energy_ev, double de_ev,
                              const qtb_solver_options* opts, qtb_delay* out);
qtb_status qtb_hartman_limit(double energy_ev, double v_ev, double mass_factor,
                             double* tau_fs);

/* ---- heterostructure transport ---- */

qtb_status qtb_band_offsets(double chi1_ev, double chi2_ev, double eg1_ev, double eg2_ev,
                            double* dec_ev, double* dev_ev);
qtb_status qtb_tsu_esaki_current(const qtb_device* dev, const qtb_barrier_spec* spec,
                                 double bias_v, double* current_a_per_m2, int* flag);
/* biases strictly increasing; out must hold n entries of current density */
qtb_status qtb_iv_curve(const qtb_device* dev, const qtb_barrier_spec* spec,
                        const double* biases_v, int n, int threads,
                        double* currents_a_per_m2, int* flags);

/* ---- config-driven runs (the CLI backbone) ---- */

/* command: transmit | sweep | resonances | compare | time | iv.
 * engine1/engine2: optional engine-name selections (compare takes two),
 * pass NULL when unused. Writes CSV artifacts and a run manifest into
 * out_dir. Returns QTB_OK also when individual points were flagged. */
qtb_status qtb_run(const char* command, const char* config_path, const char* out_dir,
                   const char* engine1, const char* engine2, int threads);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* QTB_H */
