#include "choreo/trace.hpp"

#include <fstream>
#include <iterator>
#include <sstream>

#include "choreo/error.hpp"
#include "json.hpp"

namespace choreo {
namespace {

using Json = nlohmann::ordered_json;

template <typename T>
T required(const Json& obj, const char* key, const char* where) {
  auto it = obj.find(key);
  if (it == obj.end()) fail(ErrorCode::Malformed, std::string("missing field ") + where + "." + key);
  try {
    return it->get<T>();
  } catch (const nlohmann::json::exception&) {
    fail(ErrorCode::Malformed, std::string("wrong type for field ") + where + "." + key);
  }
}

template <typename T>
std::optional<T> optional_field(const Json& obj, const char* key, const char* where) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  try {
    return it->get<T>();
  } catch (const nlohmann::json::exception&) {
    fail(ErrorCode::Malformed, std::string("wrong type for field ") + where + "." + key);
  }
}

const Json& required_object(const Json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_object()) fail(ErrorCode::Malformed, std::string("missing object ") + key);
  return *it;
}

}  // namespace

DanceSequence DanceTrace::sequence() const {
  DanceSequence seq;
  seq.config = agent();
  seq.actions = actions;
  seq.states = states;
  return seq;
}

void validate_trace(const DanceTrace& trace) {
  const auto& p = trace.params;
  if (p.k_states < 2) fail(ErrorCode::InvariantViolation, "params.K must be at least 2");
  if (p.n_steps < 1) fail(ErrorCode::InvariantViolation, "params.N must be at least 1");
  if (p.start_state < 0 || p.start_state >= p.k_states) {
    fail(ErrorCode::InvariantViolation, "params.start_state outside [0, K-1]");
  }
  const auto n = static_cast<std::size_t>(p.n_steps);
  if (trace.actions.size() != n) {
    fail(ErrorCode::InvariantViolation, "actions has " + std::to_string(trace.actions.size()) +
                                            " entries, expected N = " + std::to_string(n));
  }
  if (trace.states.size() != n) {
    fail(ErrorCode::InvariantViolation, "states has " + std::to_string(trace.states.size()) +
                                            " entries, expected N = " + std::to_string(n));
  }
  int state = p.start_state;
  for (std::size_t t = 0; t < n; ++t) {
    state = clamp_state(state + static_cast<int>(trace.actions[t]), p.k_states);
    if (trace.states[t] != state) {
      fail(ErrorCode::InvariantViolation, "states[" + std::to_string(t) + "] = " +
                                              std::to_string(trace.states[t]) + " but actions imply " +
                                              std::to_string(state));
    }
  }
  if (trace.score && !(*trace.score >= -1.0 && *trace.score <= 1.0)) {
    fail(ErrorCode::InvariantViolation, "score outside [-1, 1]");
  }
}

std::string trace_to_json(const DanceTrace& trace) {
  Json j;
  j["schema_version"] = trace.schema_version;
  j["audio"] = {{"path", trace.audio.path},
                {"duration_s", trace.audio.duration_s},
                {"sample_rate", trace.audio.sample_rate}};
  Json params;
  params["K"] = trace.params.k_states;
  params["N"] = trace.params.n_steps;
  params["start_state"] = trace.params.start_state;
  params["representation"] = std::string(to_string(trace.params.representation));
  params["approach"] = trace.params.approach;
  if (trace.params.chunk_size) params["chunk_size"] = *trace.params.chunk_size;
  if (trace.params.seed) params["seed"] = *trace.params.seed;
  if (trace.params.rng) params["rng"] = *trace.params.rng;
  params["action_space"] = trace.params.action_space;
  j["params"] = std::move(params);

  Json actions = Json::array();
  for (Action a : trace.actions) actions.push_back(std::string(1, action_symbol(a)));
  j["actions"] = std::move(actions);
  j["states"] = trace.states;
  j["score"] = trace.score ? Json(*trace.score) : Json(nullptr);
  if (trace.beats_s) j["beats_s"] = *trace.beats_s;
  return j.dump(2) + "\n";
}

DanceTrace trace_from_json(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorCode::Malformed, std::string("trace is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) fail(ErrorCode::Malformed, "trace must be a JSON object");

  DanceTrace t;
  t.schema_version = required<int>(j, "schema_version", "trace");
  if (t.schema_version != kTraceSchemaVersion) {
    fail(ErrorCode::SchemaVersion, "unsupported trace schema_version " + std::to_string(t.schema_version) +
                                       " (expected " + std::to_string(kTraceSchemaVersion) + ")");
  }

  if (auto it = j.find("audio"); it != j.end()) {
    if (!it->is_object()) fail(ErrorCode::Malformed, "audio must be an object");
    t.audio.path = optional_field<std::string>(*it, "path", "audio").value_or("");
    t.audio.duration_s = optional_field<double>(*it, "duration_s", "audio").value_or(0.0);
    t.audio.sample_rate = optional_field<int>(*it, "sample_rate", "audio").value_or(0);
  }

  const Json& params = required_object(j, "params");
  t.params.k_states = required<int>(params, "K", "params");
  t.params.n_steps = required<int>(params, "N", "params");
  t.params.start_state = optional_field<int>(params, "start_state", "params").value_or(t.params.k_states / 2);
  auto repr_name = required<std::string>(params, "representation", "params");
  auto repr = representation_from_string(repr_name);
  if (!repr) fail(ErrorCode::Malformed, "unknown representation '" + repr_name + "'");
  t.params.representation = *repr;
  t.params.approach = optional_field<std::string>(params, "approach", "params").value_or("");
  t.params.chunk_size = optional_field<std::size_t>(params, "chunk_size", "params");
  t.params.seed = optional_field<std::uint64_t>(params, "seed", "params");
  t.params.rng = optional_field<std::string>(params, "rng", "params");
  t.params.action_space = optional_field<std::string>(params, "action_space", "params").value_or("");

  auto symbols = required<std::vector<std::string>>(j, "actions", "trace");
  t.actions.reserve(symbols.size());
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    std::optional<Action> a;
    if (symbols[i].size() == 1) a = action_from_symbol(symbols[i][0]);
    if (!a) fail(ErrorCode::Malformed, "actions[" + std::to_string(i) + "] is not one of D, S, U");
    t.actions.push_back(*a);
  }
  t.states = required<std::vector<int>>(j, "states", "trace");
  t.score = optional_field<double>(j, "score", "trace");
  t.beats_s = optional_field<std::vector<double>>(j, "beats_s", "trace");

  validate_trace(t);
  return t;
}

void write_trace(const DanceTrace& trace, const std::filesystem::path& path) {
  validate_trace(trace);
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::Io, "cannot write " + path.string());
  out << trace_to_json(trace);
  if (!out) fail(ErrorCode::Io, "write failed: " + path.string());
}

DanceTrace read_trace(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::Io, "cannot open " + path.string());
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return trace_from_json(text);
}

}  // namespace choreo
