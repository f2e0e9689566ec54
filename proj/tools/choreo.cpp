// choreo command-line tool. Talks to the library through the C API only.

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "choreo/choreo.h"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

struct DataError {
  std::string message;
};

struct UsageError {
  std::string message;
};

void check(choreo_status status, const std::string& context) {
  if (status == CHOREO_OK) return;
  throw DataError{context + ": " + choreo_last_error()};
}

template <class T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};

using Audio = std::unique_ptr<choreo_audio, Deleter<choreo_audio, choreo_audio_free>>;
using Music = std::unique_ptr<choreo_music, Deleter<choreo_music, choreo_music_free>>;
using Beats = std::unique_ptr<choreo_beats, Deleter<choreo_beats, choreo_beats_free>>;
using Trace = std::unique_ptr<choreo_trace, Deleter<choreo_trace, choreo_trace_free>>;
using Table = std::unique_ptr<choreo_table, Deleter<choreo_table, choreo_table_free>>;

std::string number(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string score_text(bool defined, double v) { return defined ? number(v) : "undefined"; }

// Options shared by every subcommand that analyses audio.
struct AnalysisOptions {
  choreo_mfcc_config mfcc{};

  AnalysisOptions() { choreo_mfcc_config_default(&mfcc); }

  void add_to(CLI::App* app) {
    app->add_option("--sample-rate", mfcc.sample_rate, "Analysis sample rate in Hz")->check(CLI::PositiveNumber);
    app->add_option("--n-fft", mfcc.n_fft, "FFT size")->check(CLI::PositiveNumber);
    app->add_option("--hop-length", mfcc.hop_length, "STFT hop in samples")->check(CLI::PositiveNumber);
    app->add_option("--n-mels", mfcc.n_mels, "Mel bands")->check(CLI::PositiveNumber);
    app->add_option("--n-mfcc", mfcc.n_coeffs, "MFCC coefficients kept")->check(CLI::PositiveNumber);
    app->add_option("--fmin", mfcc.fmin, "Lowest mel frequency in Hz")->check(CLI::NonNegativeNumber);
    app->add_option("--fmax", mfcc.fmax, "Highest mel frequency in Hz, 0 for Nyquist")->check(CLI::NonNegativeNumber);
  }

  Audio load(const std::string& path) const {
    choreo_audio* a = nullptr;
    check(choreo_audio_load(path.c_str(), mfcc.sample_rate, &a), path);
    return Audio(a);
  }

  Music music(const choreo_audio* audio, const std::string& path) const {
    choreo_music* m = nullptr;
    check(choreo_music_compute(audio, &mfcc, &m), path);
    return Music(m);
  }
};

Beats detect_beats(const choreo_audio* audio, const std::string& path) {
  choreo_beats* b = nullptr;
  check(choreo_beats_detect(audio, &b), path);
  return Beats(b);
}

choreo_repr parse_repr(const std::string& name) {
  choreo_repr r;
  if (choreo_parse_repr(name.c_str(), &r) != CHOREO_OK) throw UsageError{choreo_last_error()};
  return r;
}

const std::vector<std::string> kReprNames = {"state", "action", "state-action", "state_action"};
const std::vector<std::string> kBaselineNames = {"sync-seq", "unsync-seq", "sync-random", "unsync-random"};
const std::vector<std::string> kVisNames = {"grid-dot", "pulse-disc", "stick-figure"};

// key=value lines; '#' starts a comment. Keys are long flag names without
// the leading dashes.
std::map<std::string, std::string> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError{"cannot read config file " + path};
  std::map<std::string, std::string> out;
  std::string line;
  int lineno = 0;
  auto trim = [](std::string s) {
    auto b = s.find_first_not_of(" \t\r");
    auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw UsageError{path + ":" + std::to_string(lineno) + ": expected key=value"};
    }
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.rfind("--", 0) == 0) key.erase(0, 2);
    if (key.empty()) throw UsageError{path + ":" + std::to_string(lineno) + ": empty key"};
    out[key] = value;
  }
  return out;
}

// Fills options of `sub` that were not given on the command line. Keys no
// subcommand knows are rejected; keys meant for other subcommands are skipped.
void apply_config(CLI::App& app, CLI::App* sub, const std::map<std::string, std::string>& config) {
  for (const auto& [key, value] : config) {
    CLI::Option* opt = sub->get_option_no_throw("--" + key);
    if (opt == nullptr) {
      bool known = false;
      for (CLI::App* other : app.get_subcommands({})) {
        if (other->get_option_no_throw("--" + key) != nullptr) known = true;
      }
      if (!known) throw UsageError{"unknown config key '" + key + "'"};
      continue;
    }
    if (opt->count() > 0) continue;
    opt->add_result(value);
    opt->run_callback();
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Music-aligned choreography search"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string config_path;
  app.add_option("--config", config_path, "key=value file supplying defaults for any flag");
  app.set_version_flag("--version", std::string(choreo_version()));

  choreo_agent_params agent;
  choreo_agent_params_default(&agent);
  std::string repr_name = "action";
  AnalysisOptions analysis;

  auto add_agent = [&](CLI::App* sub, bool with_chunk) {
    sub->add_option("--steps,-n", agent.n_steps, "Dance steps N")->check(CLI::PositiveNumber);
    sub->add_option("--states,-k", agent.k_states, "Agent states K")->check(CLI::Range(2, 1 << 20));
    sub->add_option("--start", agent.start_state, "Start state, default K/2")->check(CLI::NonNegativeNumber);
    if (with_chunk) sub->add_option("--chunk", agent.chunk_size, "Search chunk size")->check(CLI::PositiveNumber);
  };

  // analyze
  std::string audio_path, trace_path, out_path, matrix_png, matrix_csv, beats_path;
  CLI::App* analyze = app.add_subcommand("analyze", "Music self-similarity matrix and beats");
  analyze->add_option("audio", audio_path, "Input WAV file")->required();
  analyze->add_option("--matrix-png", matrix_png, "Write the music matrix as a grayscale PNG");
  analyze->add_option("--matrix-csv", matrix_csv, "Write the music matrix as CSV");
  analyze->add_option("--beats", beats_path, "Write detected beats as JSON");
  analysis.add_to(analyze);

  // choreograph
  CLI::App* choreograph = app.add_subcommand("choreograph", "Search a dance aligned with the music");
  choreograph->add_option("audio", audio_path, "Input WAV file")->required();
  add_agent(choreograph, true);
  choreograph->add_option("--repr", repr_name, "Dance representation")->check(CLI::IsMember(kReprNames));
  choreograph->add_option("--output,-o", out_path, "Trace JSON to write");
  analysis.add_to(choreograph);

  // baseline
  std::string kind_name;
  std::uint64_t seed = 0;
  CLI::App* baseline = app.add_subcommand("baseline", "Generate a baseline dance");
  baseline->add_option("audio", audio_path, "Input WAV file")->required();
  baseline->add_option("--kind", kind_name, "Baseline kind")->check(CLI::IsMember(kBaselineNames));
  add_agent(baseline, false);
  baseline->add_option("--seed", seed, "Seed for the random kinds");
  baseline->add_option("--repr", repr_name, "Representation used for the recorded score")
      ->check(CLI::IsMember(kReprNames));
  baseline->add_option("--output,-o", out_path, "Trace JSON to write");
  analysis.add_to(baseline);

  // render
  choreo_render_options render_opts;
  choreo_render_options_default(&render_opts);
  std::string vis_name = "grid-dot", gif_path, frames_dir;
  CLI::App* render = app.add_subcommand("render", "Render a trace as GIF or PNG frames");
  render->add_option("trace", trace_path, "Trace JSON")->required();
  render->add_option("--vis", vis_name, "Visualization")->check(CLI::IsMember(kVisNames));
  render->add_option("--fps", render_opts.fps, "Frames per second")->check(CLI::PositiveNumber);
  render->add_option("--width", render_opts.width, "Canvas width")->check(CLI::Range(64, 4096));
  render->add_option("--height", render_opts.height, "Canvas height")->check(CLI::Range(64, 4096));
  render->add_option("--gif", gif_path, "Animated GIF to write");
  render->add_option("--frames", frames_dir, "Directory for frame_NNNNNN.png files");

  // score
  CLI::App* score = app.add_subcommand("score", "Recompute a trace's alignment score");
  score->add_option("trace", trace_path, "Trace JSON")->required();
  score->add_option("audio", audio_path, "Input WAV file")->required();
  CLI::Option* score_repr =
      score->add_option("--repr", repr_name, "Representation, default the trace's")->check(CLI::IsMember(kReprNames));
  analysis.add_to(score);

  // table
  std::vector<std::uint64_t> seeds;
  std::string csv_path;
  CLI::App* table = app.add_subcommand("table", "Compare the search against the baselines");
  table->add_option("audio", audio_path, "Input WAV file")->required();
  add_agent(table, true);
  table->add_option("--seeds", seeds, "Comma-separated seeds for the random baselines")->delimiter(',');
  table->add_option("--csv", csv_path, "Also write the table as CSV");
  analysis.add_to(table);

  // oracle-check
  CLI::App* oracle = app.add_subcommand("oracle-check", "Compare greedy search with exhaustive search");
  oracle->add_option("audio", audio_path, "Input WAV file")->required();
  int oracle_steps = 5;
  oracle->add_option("--steps,-n", oracle_steps, "Dance steps N (1-10)")->check(CLI::Range(1, 10));
  oracle->add_option("--states,-k", agent.k_states, "Agent states K")->check(CLI::Range(2, 1 << 20));
  oracle->add_option("--start", agent.start_state, "Start state, default K/2")->check(CLI::NonNegativeNumber);
  oracle->add_option("--chunk", agent.chunk_size, "Search chunk size")->check(CLI::PositiveNumber);
  oracle->add_option("--repr", repr_name, "Dance representation")->check(CLI::IsMember(kReprNames));
  analysis.add_to(oracle);

  try {
    app.parse(argc, argv);
    CLI::App* sub = app.get_subcommands().front();
    if (!config_path.empty()) apply_config(app, sub, read_config(config_path));
    agent.repr = parse_repr(repr_name);

    if (sub == analyze) {
      Audio audio = analysis.load(audio_path);
      Music music = analysis.music(audio.get(), audio_path);
      Beats beats = detect_beats(audio.get(), audio_path);
      if (!matrix_png.empty()) check(choreo_music_write_png(music.get(), matrix_png.c_str()), matrix_png);
      if (!matrix_csv.empty()) check(choreo_music_write_csv(music.get(), matrix_csv.c_str()), matrix_csv);
      if (!beats_path.empty()) check(choreo_beats_write_json(beats.get(), beats_path.c_str()), beats_path);
      std::printf("duration_s: %s\n", number(choreo_audio_duration(audio.get())).c_str());
      std::printf("frames: %zu\n", choreo_music_size(music.get()));
      std::printf("tempo_bpm: %s\n", number(choreo_beats_tempo(beats.get())).c_str());
      std::printf("beats: %zu\n", choreo_beats_count(beats.get()));
    } else if (sub == choreograph) {
      if (out_path.empty()) throw UsageError{"choreograph needs --output"};
      Audio audio = analysis.load(audio_path);
      Music music = analysis.music(audio.get(), audio_path);
      choreo_trace* t = nullptr;
      check(choreo_choreograph(music.get(), audio.get(), &agent, &t), "search");
      Trace trace(t);
      check(choreo_trace_write(trace.get(), out_path.c_str()), out_path);
      double s = 0.0;
      bool defined = choreo_trace_score(trace.get(), &s);
      std::printf("score: %s\n", score_text(defined, s).c_str());
    } else if (sub == baseline) {
      if (kind_name.empty()) throw UsageError{"baseline needs --kind"};
      if (out_path.empty()) throw UsageError{"baseline needs --output"};
      choreo_baseline kind;
      if (choreo_parse_baseline(kind_name.c_str(), &kind) != CHOREO_OK) throw UsageError{choreo_last_error()};
      Audio audio = analysis.load(audio_path);
      Music music = analysis.music(audio.get(), audio_path);
      Beats beats;
      if (kind == CHOREO_BASELINE_SYNC_SEQ || kind == CHOREO_BASELINE_SYNC_RANDOM) {
        beats = detect_beats(audio.get(), audio_path);
      }
      choreo_trace* t = nullptr;
      check(choreo_generate_baseline(music.get(), audio.get(), beats.get(), kind, &agent, seed, &t), kind_name);
      Trace trace(t);
      check(choreo_trace_write(trace.get(), out_path.c_str()), out_path);
      double s = 0.0;
      bool defined = choreo_trace_score(trace.get(), &s);
      std::printf("score: %s\n", score_text(defined, s).c_str());
    } else if (sub == render) {
      if (gif_path.empty() && frames_dir.empty()) throw UsageError{"render needs --gif or --frames"};
      if (choreo_parse_vis(vis_name.c_str(), &render_opts.vis) != CHOREO_OK) throw UsageError{choreo_last_error()};
      choreo_trace* t = nullptr;
      check(choreo_trace_read(trace_path.c_str(), &t), trace_path);
      Trace trace(t);
      std::size_t n = 0;
      if (!gif_path.empty()) check(choreo_render_gif(trace.get(), &render_opts, gif_path.c_str(), &n), gif_path);
      if (!frames_dir.empty()) {
        check(choreo_render_png_frames(trace.get(), &render_opts, frames_dir.c_str(), &n), frames_dir);
      }
      std::printf("frames: %zu\n", n);
    } else if (sub == score) {
      choreo_trace* t = nullptr;
      check(choreo_trace_read(trace_path.c_str(), &t), trace_path);
      Trace trace(t);
      Audio audio = analysis.load(audio_path);
      Music music = analysis.music(audio.get(), audio_path);
      choreo_repr r = score_repr->count() > 0 ? agent.repr : choreo_trace_repr(trace.get());
      double s = 0.0;
      int defined = 0;
      check(choreo_trace_rescore(trace.get(), music.get(), r, &s, &defined), trace_path);
      std::printf("%s\n", score_text(defined != 0, s).c_str());
    } else if (sub == table) {
      if (seeds.empty()) {
        for (std::uint64_t s = 0; s < 20; ++s) seeds.push_back(s);
      }
      Audio audio = analysis.load(audio_path);
      Music music = analysis.music(audio.get(), audio_path);
      Beats beats = detect_beats(audio.get(), audio_path);
      choreo_table* t = nullptr;
      check(choreo_table_compute(music.get(), beats.get(), choreo_audio_duration(audio.get()), &agent, seeds.data(),
                                 seeds.size(), &t),
            "table");
      Table tab(t);
      std::fputs(choreo_table_text(tab.get()), stdout);
      if (!csv_path.empty()) {
        std::ofstream f(csv_path, std::ios::binary);
        f << choreo_table_csv(tab.get());
        if (!f) throw DataError{"cannot write " + csv_path};
      }
    } else if (sub == oracle) {
      Audio audio = analysis.load(audio_path);
      Music music = analysis.music(audio.get(), audio_path);
      agent.n_steps = oracle_steps;
      choreo_oracle_report report;
      check(choreo_oracle_check(music.get(), &agent, &report), "oracle-check");
      std::printf("steps: %d\n", report.n_steps);
      std::printf("greedy:     %s score %s\n", report.greedy_actions,
                  score_text(report.greedy_defined, report.greedy_score).c_str());
      std::printf("exhaustive: %s score %s\n", report.exhaustive_actions,
                  score_text(report.exhaustive_defined, report.exhaustive_score).c_str());
      if (report.identical) {
        std::printf("result: identical\n");
      } else {
        std::printf("result: different\n");
      }
    }
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const UsageError& e) {
    std::fprintf(stderr, "error: %s\n", e.message.c_str());
    return kExitUsage;
  } catch (const DataError& e) {
    std::fprintf(stderr, "error: %s\n", e.message.c_str());
    return kExitData;
  }
  return 0;
}
