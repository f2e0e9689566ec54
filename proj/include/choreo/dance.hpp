#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "choreo/matrix.hpp"

namespace choreo {

enum class Action : std::int8_t { Down = -1, Stay = 0, Up = 1 };

inline constexpr Action kAllActions[3] = {Action::Down, Action::Stay, Action::Up};

char action_symbol(Action a) noexcept;  // 'D', 'S', 'U'
std::optional<Action> action_from_symbol(char c) noexcept;

enum class Representation { State, Action, StateAction };

inline constexpr Representation kAllRepresentations[3] = {
    Representation::State, Representation::Action, Representation::StateAction};

std::string_view to_string(Representation r) noexcept;  // state / action / state_action
/// Accepts "state", "action", "state_action" and "state-action".
std::optional<Representation> representation_from_string(std::string_view s) noexcept;

struct AgentConfig {
  int k_states = 20;
  int n_steps = 100;
  int start_state = 10;

  /// Starts in the middle, floor(K / 2).
  static AgentConfig centered(int k_states, int n_steps);
  void validate() const;
};

/// The agent's trajectory. states[t] is the state after actions[t]; the
/// start state only enters through the recurrence.
struct DanceSequence {
  std::vector<Action> actions;
  std::vector<int> states;
  AgentConfig config;

  std::size_t size() const noexcept { return actions.size(); }
  bool operator==(const DanceSequence& o) const {
    return actions == o.actions && states == o.states && config.k_states == o.config.k_states &&
           config.start_state == o.config.start_state;
  }
};

inline int clamp_state(int state, int k_states) {
  return state < 0 ? 0 : (state >= k_states ? k_states - 1 : state);
}

/// Runs the clamp recurrence. Out-of-bounds moves leave the state unchanged
/// but are recorded as taken.
DanceSequence apply_actions(const AgentConfig& config, std::span<const Action> actions);

struct DanceMatrix {
  SquareMatrix values;
  Representation representation = Representation::Action;
};

/// Similarity of the first `prefix_len` steps:
///   state:        1 - |s_i - s_j| / (K - 1)
///   action:       1 if a_i == a_j else 0
///   state_action: mean of the two
DanceMatrix dance_matrix(const DanceSequence& seq, Representation repr, std::size_t prefix_len);

/// Same as dance_matrix on raw arrays, writing into `out` (resized to L x L).
void fill_dance_matrix(std::span<const int> states, std::span<const Action> actions, int k_states,
                       Representation repr, SquareMatrix& out);

/// Index of the source row that output row p copies: min(floor(p * L / M), L - 1).
std::size_t nearest_source_index(std::size_t p, std::size_t source, std::size_t target);

/// Nearest-neighbour expansion of an L x L matrix to target x target (target >= L).
SquareMatrix upsample_nearest(const SquareMatrix& values, std::size_t target);
inline SquareMatrix upsample_nearest(const DanceMatrix& dance, std::size_t target) {
  return upsample_nearest(dance.values, target);
}

}  // namespace choreo
