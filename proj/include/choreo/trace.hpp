#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "choreo/dance.hpp"

namespace choreo {

inline constexpr int kTraceSchemaVersion = 1;

struct TraceAudio {
  std::string path;
  double duration_s = 0.0;
  int sample_rate = 0;

  bool operator==(const TraceAudio&) const = default;
};

struct TraceParams {
  int k_states = 20;
  int n_steps = 0;
  int start_state = 10;
  Representation representation = Representation::Action;
  std::string approach;                  // "search" or a baseline name
  std::optional<std::uint64_t> seed;     // random baselines
  std::optional<std::size_t> chunk_size; // search
  std::optional<std::string> rng;        // generator name, random baselines
  std::string action_space;              // "clamped" (search) or "allowed" (baselines)

  bool operator==(const TraceParams&) const = default;
};

/// Serializable record of one dance: where the audio came from, how the
/// dance was produced, the trajectory and its final score.
struct DanceTrace {
  int schema_version = kTraceSchemaVersion;
  TraceAudio audio;
  TraceParams params;
  std::vector<Action> actions;
  std::vector<int> states;
  std::optional<double> score;
  std::optional<std::vector<double>> beats_s;

  AgentConfig agent() const { return {params.k_states, params.n_steps, params.start_state}; }
  DanceSequence sequence() const;

  bool operator==(const DanceTrace&) const = default;
};

/// Checks lengths, state range and the clamp recurrence. Throws
/// ErrorCode::InvariantViolation naming the first offending index.
void validate_trace(const DanceTrace& trace);

std::string trace_to_json(const DanceTrace& trace);
DanceTrace trace_from_json(const std::string& text);

void write_trace(const DanceTrace& trace, const std::filesystem::path& path);
DanceTrace read_trace(const std::filesystem::path& path);

}  // namespace choreo
