#include "choreo/dance.hpp"

#include <cstdlib>
#include <string>

#include "choreo/error.hpp"

namespace choreo {

char action_symbol(Action a) noexcept {
  switch (a) {
    case Action::Down: return 'D';
    case Action::Stay: return 'S';
    case Action::Up: return 'U';
  }
  return '?';
}

std::optional<Action> action_from_symbol(char c) noexcept {
  switch (c) {
    case 'D': return Action::Down;
    case 'S': return Action::Stay;
    case 'U': return Action::Up;
    default: return std::nullopt;
  }
}

std::string_view to_string(Representation r) noexcept {
  switch (r) {
    case Representation::State: return "state";
    case Representation::Action: return "action";
    case Representation::StateAction: return "state_action";
  }
  return "unknown";
}

std::optional<Representation> representation_from_string(std::string_view s) noexcept {
  if (s == "state") return Representation::State;
  if (s == "action") return Representation::Action;
  if (s == "state_action" || s == "state-action") return Representation::StateAction;
  return std::nullopt;
}

AgentConfig AgentConfig::centered(int k_states, int n_steps) {
  return AgentConfig{k_states, n_steps, k_states / 2};
}

void AgentConfig::validate() const {
  if (k_states < 2) fail(ErrorCode::InvalidArgument, "K must be at least 2");
  if (n_steps < 1) fail(ErrorCode::InvalidArgument, "N must be at least 1");
  if (start_state < 0 || start_state >= k_states) {
    fail(ErrorCode::InvalidArgument, "start state must lie in [0, K-1]");
  }
}

DanceSequence apply_actions(const AgentConfig& config, std::span<const Action> actions) {
  config.validate();
  if (actions.empty()) fail(ErrorCode::InvalidArgument, "need at least one action");
  DanceSequence seq;
  seq.config = config;
  seq.actions.assign(actions.begin(), actions.end());
  seq.states.resize(actions.size());
  int state = config.start_state;
  for (std::size_t t = 0; t < actions.size(); ++t) {
    state = clamp_state(state + static_cast<int>(actions[t]), config.k_states);
    seq.states[t] = state;
  }
  return seq;
}

void fill_dance_matrix(std::span<const int> states, std::span<const Action> actions, int k_states,
                       Representation repr, SquareMatrix& out) {
  const std::size_t n = states.size();
  if (out.size() != n) out = SquareMatrix(n);
  const double span = static_cast<double>(k_states - 1);
  for (std::size_t i = 0; i < n; ++i) {
    out(i, i) = 1.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      double v = 0.0;
      switch (repr) {
        case Representation::State:
          v = 1.0 - static_cast<double>(std::abs(states[i] - states[j])) / span;
          break;
        case Representation::Action:
          v = actions[i] == actions[j] ? 1.0 : 0.0;
          break;
        case Representation::StateAction: {
          double s = 1.0 - static_cast<double>(std::abs(states[i] - states[j])) / span;
          double a = actions[i] == actions[j] ? 1.0 : 0.0;
          v = 0.5 * (s + a);
          break;
        }
      }
      out(i, j) = v;
      out(j, i) = v;
    }
  }
}

DanceMatrix dance_matrix(const DanceSequence& seq, Representation repr, std::size_t prefix_len) {
  if (prefix_len < 1 || prefix_len > seq.size()) {
    fail(ErrorCode::InvalidArgument, "prefix length " + std::to_string(prefix_len) +
                                         " outside [1, " + std::to_string(seq.size()) + "]");
  }
  DanceMatrix out;
  out.representation = repr;
  fill_dance_matrix(std::span(seq.states).first(prefix_len), std::span(seq.actions).first(prefix_len),
                    seq.config.k_states, repr, out.values);
  return out;
}

std::size_t nearest_source_index(std::size_t p, std::size_t source, std::size_t target) {
  std::size_t idx = p * source / target;
  return idx < source ? idx : source - 1;
}

SquareMatrix upsample_nearest(const SquareMatrix& values, std::size_t target) {
  const std::size_t l = values.size();
  if (l == 0) fail(ErrorCode::InvalidArgument, "cannot upsample an empty matrix");
  if (target < l) {
    fail(ErrorCode::InvalidArgument, "upsample target " + std::to_string(target) +
                                         " smaller than source " + std::to_string(l));
  }
  std::vector<std::size_t> map(target);
  for (std::size_t p = 0; p < target; ++p) map[p] = nearest_source_index(p, l, target);
  SquareMatrix out(target);
  for (std::size_t p = 0; p < target; ++p) {
    auto src = values.row(map[p]);
    for (std::size_t q = 0; q < target; ++q) out(p, q) = src[map[q]];
  }
  return out;
}

}  // namespace choreo
