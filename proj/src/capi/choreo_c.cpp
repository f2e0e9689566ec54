#include "choreo/choreo.h"

#include <cmath>
#include <cstring>
#include <exception>
#include <fstream>
#include <new>
#include <string>

#include "choreo/audio.hpp"
#include "choreo/baselines.hpp"
#include "choreo/error.hpp"
#include "choreo/evaluate.hpp"
#include "choreo/features.hpp"
#include "choreo/render.hpp"
#include "choreo/search.hpp"
#include "choreo/trace.hpp"

struct choreo_audio {
  choreo::AudioBuffer buffer;
};

struct choreo_music {
  choreo::MusicMatrix matrix;
};

struct choreo_beats {
  choreo::BeatTimes beats;
};

struct choreo_trace {
  choreo::DanceTrace trace;
};

struct choreo_table {
  choreo::ScoreTable table;
  std::string text;
  std::string csv;
};

namespace {

thread_local std::string g_last_error;

choreo_status to_status(choreo::ErrorCode code) {
  using choreo::ErrorCode;
  switch (code) {
    case ErrorCode::InvalidArgument: return CHOREO_ERR_INVALID_ARGUMENT;
    case ErrorCode::Io: return CHOREO_ERR_IO;
    case ErrorCode::UnsupportedFormat: return CHOREO_ERR_UNSUPPORTED_FORMAT;
    case ErrorCode::EmptyAudio: return CHOREO_ERR_EMPTY_AUDIO;
    case ErrorCode::Malformed: return CHOREO_ERR_MALFORMED;
    case ErrorCode::SchemaVersion: return CHOREO_ERR_SCHEMA_VERSION;
    case ErrorCode::InvariantViolation: return CHOREO_ERR_INVARIANT;
    case ErrorCode::TooLarge: return CHOREO_ERR_TOO_LARGE;
  }
  return CHOREO_ERR_INTERNAL;
}

template <class F>
choreo_status guarded(F&& body) {
  try {
    body();
    return CHOREO_OK;
  } catch (const choreo::Error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return CHOREO_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return CHOREO_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return CHOREO_ERR_INTERNAL;
  }
}

void require(bool ok, const char* what) {
  if (!ok) choreo::fail(choreo::ErrorCode::InvalidArgument, what);
}

choreo::Representation to_repr(choreo_repr r) {
  switch (r) {
    case CHOREO_REPR_STATE: return choreo::Representation::State;
    case CHOREO_REPR_ACTION: return choreo::Representation::Action;
    case CHOREO_REPR_STATE_ACTION: return choreo::Representation::StateAction;
  }
  choreo::fail(choreo::ErrorCode::InvalidArgument, "unknown representation");
}

choreo_repr from_repr(choreo::Representation r) {
  switch (r) {
    case choreo::Representation::State: return CHOREO_REPR_STATE;
    case choreo::Representation::Action: return CHOREO_REPR_ACTION;
    case choreo::Representation::StateAction: return CHOREO_REPR_STATE_ACTION;
  }
  return CHOREO_REPR_ACTION;
}

choreo::AgentConfig to_agent(const choreo_agent_params& p) {
  choreo::AgentConfig agent{p.k_states, p.n_steps, p.start_state < 0 ? p.k_states / 2 : p.start_state};
  agent.validate();
  return agent;
}

choreo::SearchConfig to_search(const choreo_agent_params& p) {
  require(p.chunk_size > 0, "chunk size must be positive");
  choreo::SearchConfig cfg{static_cast<std::size_t>(p.chunk_size), to_repr(p.repr), to_agent(p)};
  cfg.validate();
  return cfg;
}

choreo::MfccConfig to_mfcc(const choreo_mfcc_config& c) {
  choreo::MfccConfig cfg;
  cfg.sample_rate = c.sample_rate;
  cfg.n_fft = c.n_fft;
  cfg.hop_length = c.hop_length;
  cfg.n_mels = c.n_mels;
  cfg.n_coeffs = c.n_coeffs;
  cfg.fmin = c.fmin;
  cfg.fmax = c.fmax;
  cfg.log_floor = c.log_floor;
  cfg.validate();
  return cfg;
}

choreo::Visualization to_vis(const choreo_render_options* o) {
  choreo_render_options opts;
  if (o) {
    opts = *o;
  } else {
    choreo_render_options_default(&opts);
  }
  choreo::Visualization vis;
  switch (opts.vis) {
    case CHOREO_VIS_GRID_DOT: vis.kind = choreo::VisKind::GridDot; break;
    case CHOREO_VIS_PULSE_DISC: vis.kind = choreo::VisKind::PulseDisc; break;
    case CHOREO_VIS_STICK_FIGURE: vis.kind = choreo::VisKind::StickFigure; break;
    default: choreo::fail(choreo::ErrorCode::InvalidArgument, "unknown visualization");
  }
  vis.width = opts.width;
  vis.height = opts.height;
  vis.fps = opts.fps;
  return vis;
}

choreo::TraceAudio trace_audio(const choreo_audio* audio) {
  if (!audio) return {};
  return {audio->buffer.source_path, audio->buffer.duration_seconds(), audio->buffer.sample_rate};
}

void fill_trace(choreo::DanceTrace& t, const choreo::DanceSequence& seq) {
  t.actions = seq.actions;
  t.states = seq.states;
  t.params.k_states = seq.config.k_states;
  t.params.n_steps = static_cast<int>(seq.size());
  t.params.start_state = seq.config.start_state;
}

void copy_actions(const choreo::DanceSequence& seq, char* out) {
  std::size_t i = 0;
  for (; i < seq.size(); ++i) out[i] = choreo::action_symbol(seq.actions[i]);
  out[i] = '\0';
}

}  // namespace

extern "C" {

const char* choreo_version(void) { return "1.0.0"; }

const char* choreo_status_string(choreo_status status) {
  switch (status) {
    case CHOREO_OK: return "ok";
    case CHOREO_ERR_INVALID_ARGUMENT: return "invalid argument";
    case CHOREO_ERR_IO: return "i/o error";
    case CHOREO_ERR_UNSUPPORTED_FORMAT: return "unsupported format";
    case CHOREO_ERR_EMPTY_AUDIO: return "empty audio";
    case CHOREO_ERR_MALFORMED: return "malformed input";
    case CHOREO_ERR_SCHEMA_VERSION: return "unsupported schema version";
    case CHOREO_ERR_INVARIANT: return "invariant violation";
    case CHOREO_ERR_TOO_LARGE: return "problem too large";
    case CHOREO_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* choreo_last_error(void) { return g_last_error.c_str(); }

void choreo_mfcc_config_default(choreo_mfcc_config* config) {
  if (!config) return;
  choreo::MfccConfig d;
  *config = {d.sample_rate, d.n_fft, d.hop_length, d.n_mels, d.n_coeffs, d.fmin, d.fmax, d.log_floor};
}

void choreo_agent_params_default(choreo_agent_params* params) {
  if (!params) return;
  *params = {20, 100, -1, 5, CHOREO_REPR_ACTION};
}

void choreo_render_options_default(choreo_render_options* options) {
  if (!options) return;
  choreo::Visualization d;
  *options = {CHOREO_VIS_GRID_DOT, d.width, d.height, d.fps};
}

choreo_status choreo_parse_repr(const char* name, choreo_repr* out) {
  return guarded([&] {
    require(name && out, "null argument");
    auto r = choreo::representation_from_string(name);
    if (!r) choreo::fail(choreo::ErrorCode::InvalidArgument, std::string("unknown representation: ") + name);
    *out = from_repr(*r);
  });
}

choreo_status choreo_parse_baseline(const char* name, choreo_baseline* out) {
  return guarded([&] {
    require(name && out, "null argument");
    auto k = choreo::baseline_from_string(name);
    if (!k) choreo::fail(choreo::ErrorCode::InvalidArgument, std::string("unknown baseline: ") + name);
    *out = static_cast<choreo_baseline>(*k);
  });
}

choreo_status choreo_parse_vis(const char* name, choreo_vis* out) {
  return guarded([&] {
    require(name && out, "null argument");
    auto v = choreo::vis_from_string(name);
    if (!v) choreo::fail(choreo::ErrorCode::InvalidArgument, std::string("unknown visualization: ") + name);
    *out = static_cast<choreo_vis>(*v);
  });
}

choreo_status choreo_audio_load(const char* path, int target_rate, choreo_audio** out) {
  return guarded([&] {
    require(path && out, "null argument");
    require(target_rate > 0, "target sample rate must be positive");
    *out = nullptr;
    *out = new choreo_audio{choreo::load_audio(path, target_rate)};
  });
}

void choreo_audio_free(choreo_audio* audio) { delete audio; }

size_t choreo_audio_num_samples(const choreo_audio* audio) { return audio ? audio->buffer.size() : 0; }

int choreo_audio_sample_rate(const choreo_audio* audio) { return audio ? audio->buffer.sample_rate : 0; }

double choreo_audio_duration(const choreo_audio* audio) {
  return audio ? audio->buffer.duration_seconds() : 0.0;
}

const double* choreo_audio_samples(const choreo_audio* audio) {
  return audio ? audio->buffer.samples.data() : nullptr;
}

choreo_status choreo_music_compute(const choreo_audio* audio, const choreo_mfcc_config* config,
                                   choreo_music** out) {
  return guarded([&] {
    require(audio && out, "null argument");
    *out = nullptr;
    choreo::MfccConfig cfg;
    if (config) cfg = to_mfcc(*config);
    if (cfg.sample_rate != audio->buffer.sample_rate) {
      choreo::fail(choreo::ErrorCode::InvalidArgument, "MFCC sample rate differs from the audio sample rate");
    }
    *out = new choreo_music{choreo::music_matrix(choreo::compute_mfcc(audio->buffer, cfg))};
  });
}

choreo_status choreo_music_from_values(const double* values, size_t m, double frame_hop_seconds,
                                       choreo_music** out) {
  return guarded([&] {
    require(values && out, "null argument");
    require(m >= 2, "music matrix needs at least two frames");
    *out = nullptr;
    choreo::MusicMatrix music{choreo::SquareMatrix(m, 0.0), frame_hop_seconds};
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        double v = values[i * m + j];
        if (!(v > 0.0 && v <= 1.0)) choreo::fail(choreo::ErrorCode::InvalidArgument, "music entries must lie in (0, 1]");
        if (i == j && v != 1.0) choreo::fail(choreo::ErrorCode::InvalidArgument, "music diagonal must be 1");
        if (v != values[j * m + i]) choreo::fail(choreo::ErrorCode::InvalidArgument, "music matrix must be symmetric");
        music.values(i, j) = v;
      }
    }
    *out = new choreo_music{std::move(music)};
  });
}

void choreo_music_free(choreo_music* music) { delete music; }

size_t choreo_music_size(const choreo_music* music) { return music ? music->matrix.m() : 0; }

choreo_status choreo_music_copy_values(const choreo_music* music, double* out, size_t capacity) {
  return guarded([&] {
    require(music && out, "null argument");
    std::size_t n = music->matrix.m() * music->matrix.m();
    require(capacity >= n, "buffer too small for the music matrix");
    std::memcpy(out, music->matrix.values.data().data(), n * sizeof(double));
  });
}

choreo_status choreo_music_write_csv(const choreo_music* music, const char* path) {
  return guarded([&] {
    require(music && path, "null argument");
    choreo::write_music_csv(music->matrix, path);
  });
}

choreo_status choreo_music_write_png(const choreo_music* music, const char* path) {
  return guarded([&] {
    require(music && path, "null argument");
    choreo::write_music_png(music->matrix, path);
  });
}

choreo_status choreo_beats_detect(const choreo_audio* audio, choreo_beats** out) {
  return guarded([&] {
    require(audio && out, "null argument");
    *out = nullptr;
    choreo::BeatTrackerConfig cfg;
    cfg.analysis.sample_rate = audio->buffer.sample_rate;
    *out = new choreo_beats{choreo::detect_beats(audio->buffer, cfg)};
  });
}

void choreo_beats_free(choreo_beats* beats) { delete beats; }

size_t choreo_beats_count(const choreo_beats* beats) { return beats ? beats->beats.times.size() : 0; }

const double* choreo_beats_times(const choreo_beats* beats) {
  return beats ? beats->beats.times.data() : nullptr;
}

double choreo_beats_tempo(const choreo_beats* beats) { return beats ? beats->beats.tempo_bpm : 0.0; }

choreo_status choreo_beats_write_json(const choreo_beats* beats, const char* path) {
  return guarded([&] {
    require(beats && path, "null argument");
    std::ofstream f(path, std::ios::binary);
    if (!f) choreo::fail(choreo::ErrorCode::Io, std::string("cannot write ") + path);
    f << choreo::beats_json(beats->beats);
    if (!f) choreo::fail(choreo::ErrorCode::Io, std::string("write failed: ") + path);
  });
}

choreo_status choreo_choreograph(const choreo_music* music, const choreo_audio* audio,
                                 const choreo_agent_params* params, choreo_trace** out) {
  return guarded([&] {
    require(music && params && out, "null argument");
    *out = nullptr;
    choreo::SearchConfig cfg = to_search(*params);
    choreo::SearchResult found = choreo::greedy_chunked_search(music->matrix, cfg);

    choreo::DanceTrace t;
    t.audio = trace_audio(audio);
    fill_trace(t, found.sequence);
    t.params.representation = cfg.representation;
    t.params.approach = "search";
    t.params.chunk_size = cfg.chunk_size;
    t.params.action_space = "clamped";
    t.score = found.score.pearson;
    *out = new choreo_trace{std::move(t)};
  });
}

choreo_status choreo_generate_baseline(const choreo_music* music, const choreo_audio* audio,
                                       const choreo_beats* beats, choreo_baseline kind,
                                       const choreo_agent_params* params, uint64_t seed, choreo_trace** out) {
  return guarded([&] {
    require(music && params && out, "null argument");
    require(kind >= CHOREO_BASELINE_SYNC_SEQ && kind <= CHOREO_BASELINE_UNSYNC_RANDOM, "unknown baseline");
    *out = nullptr;
    auto k = static_cast<choreo::BaselineKind>(kind);
    choreo::AgentConfig agent = to_agent(*params);
    choreo::Representation repr = to_repr(params->repr);
    if (music->matrix.m() < static_cast<std::size_t>(agent.n_steps)) {
      choreo::fail(choreo::ErrorCode::InvalidArgument, "music has fewer frames than dance steps");
    }

    std::set<std::size_t> steps;
    if (choreo::is_synced(k)) {
      require(beats != nullptr, "synced baselines need beats");
      require(audio != nullptr, "synced baselines need the audio duration");
      steps = choreo::beats_to_steps(beats->beats, static_cast<std::size_t>(agent.n_steps),
                                     audio->buffer.duration_seconds());
    }
    choreo::DanceSequence seq = choreo::generate_baseline(k, agent, steps, seed);

    choreo::DanceTrace t;
    t.audio = trace_audio(audio);
    fill_trace(t, seq);
    t.params.representation = repr;
    t.params.approach = std::string(choreo::to_string(k));
    if (choreo::is_random(k)) {
      t.params.seed = seed;
      t.params.rng = std::string(choreo::kBaselineRngName);
    }
    t.params.action_space = "allowed";
    if (choreo::is_synced(k)) t.beats_s = beats->beats.times;
    t.score = choreo::alignment_score(music->matrix, seq, repr).pearson;
    *out = new choreo_trace{std::move(t)};
  });
}

choreo_status choreo_oracle_check(const choreo_music* music, const choreo_agent_params* params,
                                  choreo_oracle_report* out) {
  return guarded([&] {
    require(music && params && out, "null argument");
    require(params->n_steps >= 1 && params->n_steps <= CHOREO_ORACLE_MAX_STEPS,
            "oracle check supports 1 to 14 steps");
    choreo::SearchConfig cfg = to_search(*params);
    choreo::SearchResult greedy = choreo::greedy_chunked_search(music->matrix, cfg);
    choreo::SearchResult exact =
        choreo::exhaustive_search(music->matrix, cfg, static_cast<std::size_t>(params->n_steps));

    *out = {};
    out->n_steps = params->n_steps;
    out->greedy_defined = greedy.score.defined();
    out->greedy_score = greedy.score.pearson.value_or(std::nan(""));
    out->exhaustive_defined = exact.score.defined();
    out->exhaustive_score = exact.score.pearson.value_or(std::nan(""));
    out->identical = greedy.sequence.actions == exact.sequence.actions;
    copy_actions(greedy.sequence, out->greedy_actions);
    copy_actions(exact.sequence, out->exhaustive_actions);
  });
}

choreo_status choreo_trace_read(const char* path, choreo_trace** out) {
  return guarded([&] {
    require(path && out, "null argument");
    *out = nullptr;
    *out = new choreo_trace{choreo::read_trace(path)};
  });
}

choreo_status choreo_trace_write(const choreo_trace* trace, const char* path) {
  return guarded([&] {
    require(trace && path, "null argument");
    choreo::write_trace(trace->trace, path);
  });
}

void choreo_trace_free(choreo_trace* trace) { delete trace; }

int choreo_trace_n_steps(const choreo_trace* trace) { return trace ? trace->trace.params.n_steps : 0; }

int choreo_trace_k_states(const choreo_trace* trace) { return trace ? trace->trace.params.k_states : 0; }

choreo_repr choreo_trace_repr(const choreo_trace* trace) {
  return trace ? from_repr(trace->trace.params.representation) : CHOREO_REPR_ACTION;
}

int choreo_trace_score(const choreo_trace* trace, double* score) {
  if (!trace || !trace->trace.score) return 0;
  if (score) *score = *trace->trace.score;
  return 1;
}

size_t choreo_trace_copy_states(const choreo_trace* trace, int* out, size_t capacity) {
  if (!trace) return 0;
  const auto& s = trace->trace.states;
  if (out) {
    for (std::size_t i = 0; i < s.size() && i < capacity; ++i) out[i] = s[i];
  }
  return s.size();
}

size_t choreo_trace_copy_actions(const choreo_trace* trace, char* out, size_t capacity) {
  if (!trace) return 0;
  const auto& a = trace->trace.actions;
  if (out && capacity > 0) {
    std::size_t i = 0;
    for (; i < a.size() && i + 1 < capacity; ++i) out[i] = choreo::action_symbol(a[i]);
    out[i] = '\0';
  }
  return a.size();
}

choreo_status choreo_trace_rescore(const choreo_trace* trace, const choreo_music* music, choreo_repr repr,
                                   double* score, int* defined) {
  return guarded([&] {
    require(trace && music && score && defined, "null argument");
    choreo::validate_trace(trace->trace);
    auto s = choreo::alignment_score(music->matrix, trace->trace.sequence(), to_repr(repr));
    *defined = s.defined();
    *score = s.pearson.value_or(std::nan(""));
  });
}

choreo_status choreo_render_gif(const choreo_trace* trace, const choreo_render_options* options,
                                const char* path, size_t* n_frames) {
  return guarded([&] {
    require(trace && path, "null argument");
    choreo::Visualization vis = to_vis(options);
    auto frames = choreo::render_frames(trace->trace, vis);
    choreo::write_gif(frames, vis.fps, path);
    if (n_frames) *n_frames = frames.size();
  });
}

choreo_status choreo_render_png_frames(const choreo_trace* trace, const choreo_render_options* options,
                                       const char* dir, size_t* n_frames) {
  return guarded([&] {
    require(trace && dir, "null argument");
    choreo::Visualization vis = to_vis(options);
    auto frames = choreo::render_frames(trace->trace, vis);
    choreo::write_png_frames(frames, dir);
    if (n_frames) *n_frames = frames.size();
  });
}

choreo_status choreo_table_compute(const choreo_music* music, const choreo_beats* beats, double duration_s,
                                   const choreo_agent_params* params, const uint64_t* seeds, size_t n_seeds,
                                   choreo_table** out) {
  return guarded([&] {
    require(music && beats && params && out, "null argument");
    require(seeds != nullptr || n_seeds == 0, "null seeds");
    require(params->chunk_size > 0, "chunk size must be positive");
    *out = nullptr;
    auto table = choreo::score_table(music->matrix, beats->beats, duration_s, to_agent(*params),
                                     std::span<const std::uint64_t>(seeds, n_seeds),
                                     static_cast<std::size_t>(params->chunk_size));
    auto* t = new choreo_table{std::move(table), {}, {}};
    t->text = t->table.to_text();
    t->csv = t->table.to_csv();
    *out = t;
  });
}

void choreo_table_free(choreo_table* table) { delete table; }

size_t choreo_table_rows(const choreo_table* table) { return table ? table->table.rows.size() : 0; }

const char* choreo_table_row_name(const choreo_table* table, size_t row) {
  if (!table || row >= table->table.rows.size()) return nullptr;
  return table->table.rows[row].approach.c_str();
}

int choreo_table_mean(const choreo_table* table, size_t row, choreo_repr repr, double* mean) {
  if (!table || row >= table->table.rows.size()) return 0;
  if (repr < CHOREO_REPR_STATE || repr > CHOREO_REPR_STATE_ACTION) return 0;
  const auto& cell = table->table.rows[row].by_representation[static_cast<std::size_t>(repr)];
  if (!cell.mean) return 0;
  if (mean) *mean = *cell.mean;
  return 1;
}

const char* choreo_table_text(const choreo_table* table) { return table ? table->text.c_str() : ""; }

const char* choreo_table_csv(const choreo_table* table) { return table ? table->csv.c_str() : ""; }

}  // extern "C"
