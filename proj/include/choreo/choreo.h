/*
 * choreo: music-aligned choreography search.
 *
 * C interface to libchoreo. Every object is an opaque handle created by a
 * choreo_*_create/compute/load/read call and released with the matching
 * choreo_*_free. Functions that can fail return a choreo_status; on failure
 * choreo_last_error() returns a message for the calling thread, valid until
 * that thread's next failing call.
 */
#ifndef CHOREO_CHOREO_H
#define CHOREO_CHOREO_H

#include <stddef.h>
#include <stdint.h>

#if defined(CHOREO_BUILDING_LIBRARY)
#define CHOREO_API __attribute__((visibility("default")))
#else
#define CHOREO_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum choreo_status {
  CHOREO_OK = 0,
  CHOREO_ERR_INVALID_ARGUMENT = 1,
  CHOREO_ERR_IO = 2,
  CHOREO_ERR_UNSUPPORTED_FORMAT = 3,
  CHOREO_ERR_EMPTY_AUDIO = 4,
  CHOREO_ERR_MALFORMED = 5,
  CHOREO_ERR_SCHEMA_VERSION = 6,
  CHOREO_ERR_INVARIANT = 7,
  CHOREO_ERR_TOO_LARGE = 8,
  CHOREO_ERR_INTERNAL = 9
} choreo_status;

typedef enum choreo_repr {
  CHOREO_REPR_STATE = 0,
  CHOREO_REPR_ACTION = 1,
  CHOREO_REPR_STATE_ACTION = 2
} choreo_repr;

typedef enum choreo_baseline {
  CHOREO_BASELINE_SYNC_SEQ = 0,
  CHOREO_BASELINE_UNSYNC_SEQ = 1,
  CHOREO_BASELINE_SYNC_RANDOM = 2,
  CHOREO_BASELINE_UNSYNC_RANDOM = 3
} choreo_baseline;

typedef enum choreo_vis {
  CHOREO_VIS_GRID_DOT = 0,
  CHOREO_VIS_PULSE_DISC = 1,
  CHOREO_VIS_STICK_FIGURE = 2
} choreo_vis;

typedef struct choreo_audio choreo_audio;
typedef struct choreo_music choreo_music;
typedef struct choreo_beats choreo_beats;
typedef struct choreo_trace choreo_trace;
typedef struct choreo_table choreo_table;

typedef struct choreo_mfcc_config {
  int sample_rate;
  int n_fft;
  int hop_length;
  int n_mels;
  int n_coeffs;
  double fmin;
  double fmax; /* 0: half the sample rate */
  double log_floor;
} choreo_mfcc_config;

typedef struct choreo_agent_params {
  int k_states;
  int n_steps;
  int start_state; /* negative: floor(k_states / 2) */
  int chunk_size;
  choreo_repr repr;
} choreo_agent_params;

typedef struct choreo_render_options {
  choreo_vis vis;
  int width;
  int height;
  double fps;
} choreo_render_options;

#define CHOREO_ORACLE_MAX_STEPS 14

typedef struct choreo_oracle_report {
  int n_steps;
  int greedy_defined;
  double greedy_score;
  int exhaustive_defined;
  double exhaustive_score;
  int identical;                                          /* same action sequence */
  char greedy_actions[CHOREO_ORACLE_MAX_STEPS + 1];       /* 'D','S','U', NUL-terminated */
  char exhaustive_actions[CHOREO_ORACLE_MAX_STEPS + 1];
} choreo_oracle_report;

/* --- general ---------------------------------------------------------- */

CHOREO_API const char* choreo_version(void);
CHOREO_API const char* choreo_status_string(choreo_status status);
CHOREO_API const char* choreo_last_error(void);

CHOREO_API void choreo_mfcc_config_default(choreo_mfcc_config* config);
CHOREO_API void choreo_agent_params_default(choreo_agent_params* params);
CHOREO_API void choreo_render_options_default(choreo_render_options* options);

/* Accept "state", "action", "state-action" / "state_action"; "sync-seq",
 * "unsync-seq", "sync-random", "unsync-random"; "grid-dot", "pulse-disc",
 * "stick-figure". */
CHOREO_API choreo_status choreo_parse_repr(const char* name, choreo_repr* out);
CHOREO_API choreo_status choreo_parse_baseline(const char* name, choreo_baseline* out);
CHOREO_API choreo_status choreo_parse_vis(const char* name, choreo_vis* out);

/* --- audio ------------------------------------------------------------ */

/* PCM WAV, 8/16/24/32-bit integer or 32-bit float, mono or stereo.
 * Downmixed to mono and resampled to target_rate. */
CHOREO_API choreo_status choreo_audio_load(const char* path, int target_rate, choreo_audio** out);
CHOREO_API void choreo_audio_free(choreo_audio* audio);
CHOREO_API size_t choreo_audio_num_samples(const choreo_audio* audio);
CHOREO_API int choreo_audio_sample_rate(const choreo_audio* audio);
CHOREO_API double choreo_audio_duration(const choreo_audio* audio);
CHOREO_API const double* choreo_audio_samples(const choreo_audio* audio);

/* --- music self-similarity -------------------------------------------- */

/* config may be NULL for the defaults. */
CHOREO_API choreo_status choreo_music_compute(const choreo_audio* audio, const choreo_mfcc_config* config,
                                              choreo_music** out);
/* Wraps a caller-supplied m x m row-major matrix. It must be symmetric with
 * unit diagonal and entries in (0, 1]. */
CHOREO_API choreo_status choreo_music_from_values(const double* values, size_t m, double frame_hop_seconds,
                                                  choreo_music** out);
CHOREO_API void choreo_music_free(choreo_music* music);
CHOREO_API size_t choreo_music_size(const choreo_music* music);
CHOREO_API choreo_status choreo_music_copy_values(const choreo_music* music, double* out, size_t capacity);
CHOREO_API choreo_status choreo_music_write_csv(const choreo_music* music, const char* path);
CHOREO_API choreo_status choreo_music_write_png(const choreo_music* music, const char* path);

/* --- beats ------------------------------------------------------------ */

CHOREO_API choreo_status choreo_beats_detect(const choreo_audio* audio, choreo_beats** out);
CHOREO_API void choreo_beats_free(choreo_beats* beats);
CHOREO_API size_t choreo_beats_count(const choreo_beats* beats);
CHOREO_API const double* choreo_beats_times(const choreo_beats* beats);
CHOREO_API double choreo_beats_tempo(const choreo_beats* beats);
CHOREO_API choreo_status choreo_beats_write_json(const choreo_beats* beats, const char* path);

/* --- dances ----------------------------------------------------------- */

/* Chunked greedy search. audio (may be NULL) only supplies trace metadata. */
CHOREO_API choreo_status choreo_choreograph(const choreo_music* music, const choreo_audio* audio,
                                            const choreo_agent_params* params, choreo_trace** out);

/* Baseline dance scored under params->repr. beats is required for the
 * synced kinds and ignored otherwise; seed is used by the random kinds. */
CHOREO_API choreo_status choreo_generate_baseline(const choreo_music* music, const choreo_audio* audio,
                                                  const choreo_beats* beats, choreo_baseline kind,
                                                  const choreo_agent_params* params, uint64_t seed,
                                                  choreo_trace** out);

/* Greedy against exhaustive search for params->n_steps <= CHOREO_ORACLE_MAX_STEPS. */
CHOREO_API choreo_status choreo_oracle_check(const choreo_music* music, const choreo_agent_params* params,
                                             choreo_oracle_report* out);

/* --- traces ----------------------------------------------------------- */

CHOREO_API choreo_status choreo_trace_read(const char* path, choreo_trace** out);
CHOREO_API choreo_status choreo_trace_write(const choreo_trace* trace, const char* path);
CHOREO_API void choreo_trace_free(choreo_trace* trace);
CHOREO_API int choreo_trace_n_steps(const choreo_trace* trace);
CHOREO_API int choreo_trace_k_states(const choreo_trace* trace);
CHOREO_API choreo_repr choreo_trace_repr(const choreo_trace* trace);
/* Returns 1 and stores the score when the trace has one, else 0. */
CHOREO_API int choreo_trace_score(const choreo_trace* trace, double* score);
/* Copies up to capacity states; returns the number of steps. */
CHOREO_API size_t choreo_trace_copy_states(const choreo_trace* trace, int* out, size_t capacity);
/* Writes the 'D'/'S'/'U' symbols plus a NUL when capacity allows; returns
 * the number of steps. */
CHOREO_API size_t choreo_trace_copy_actions(const choreo_trace* trace, char* out, size_t capacity);

/* Recomputes the alignment score of the trace's dance against music.
 * *defined is set to 0 when the score is undefined (zero variance). */
CHOREO_API choreo_status choreo_trace_rescore(const choreo_trace* trace, const choreo_music* music,
                                              choreo_repr repr, double* score, int* defined);

/* --- rendering -------------------------------------------------------- */

CHOREO_API choreo_status choreo_render_gif(const choreo_trace* trace, const choreo_render_options* options,
                                           const char* path, size_t* n_frames);
CHOREO_API choreo_status choreo_render_png_frames(const choreo_trace* trace,
                                                  const choreo_render_options* options, const char* dir,
                                                  size_t* n_frames);

/* --- comparison table ------------------------------------------------- */

CHOREO_API choreo_status choreo_table_compute(const choreo_music* music, const choreo_beats* beats,
                                              double duration_s, const choreo_agent_params* params,
                                              const uint64_t* seeds, size_t n_seeds, choreo_table** out);
CHOREO_API void choreo_table_free(choreo_table* table);
CHOREO_API size_t choreo_table_rows(const choreo_table* table);
CHOREO_API const char* choreo_table_row_name(const choreo_table* table, size_t row);
/* Mean score of a row under repr; returns 0 when undefined or out of range. */
CHOREO_API int choreo_table_mean(const choreo_table* table, size_t row, choreo_repr repr, double* mean);
CHOREO_API const char* choreo_table_text(const choreo_table* table);
CHOREO_API const char* choreo_table_csv(const choreo_table* table);

#ifdef __cplusplus
}
#endif

#endif /* CHOREO_CHOREO_H */
