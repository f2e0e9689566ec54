#include "choreo/search.hpp"

#include <string>
#include <vector>

#include "choreo/error.hpp"

namespace choreo {
namespace {

std::uint64_t pow3(std::size_t n) {
  std::uint64_t v = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (v > kMaxExhaustiveCandidates) return v * 3;  // saturating enough for the guard
    v *= 3;
  }
  return v;
}

void check_music(const MusicMatrix& music, std::size_t n_steps) {
  if (music.m() < 2 || music.m() < n_steps) {
    fail(ErrorCode::InvalidArgument, "music matrix has " + std::to_string(music.m()) +
                                         " frames; need at least " + std::to_string(n_steps) +
                                         " (one per dance step)");
  }
}

// Scores every extension of actions[0, committed) by `width` steps and leaves
// the winning extension written into `actions`. Returns the winning score.
std::optional<double> best_extension(const MusicWindow& window, const AgentConfig& agent,
                                     Representation repr, std::vector<Action>& actions,
                                     std::vector<int>& states, std::size_t committed, std::size_t width) {
  const std::size_t len = committed + width;
  const int base_state = committed ? states[committed - 1] : agent.start_state;
  auto tail = std::span(actions).subspan(committed, width);
  const std::span<const int> state_prefix(states.data(), len);
  const std::span<const Action> action_prefix(actions.data(), len);
  SquareMatrix scratch(len);

  const std::uint64_t candidates = pow3(width);
  std::uint64_t best_index = 0;
  std::optional<double> best;
  for (std::uint64_t idx = 0; idx < candidates; ++idx) {
    decode_candidate(idx, tail);
    int s = base_state;
    for (std::size_t t = committed; t < len; ++t) {
      s = clamp_state(s + static_cast<int>(actions[t]), agent.k_states);
      states[t] = s;
    }
    fill_dance_matrix(state_prefix, action_prefix, agent.k_states, repr, scratch);
    std::optional<double> score = window.correlate(scratch);
    if (idx == 0 || score_better(score, best)) {
      best = score;
      best_index = idx;
    }
  }

  decode_candidate(best_index, tail);
  int s = base_state;
  for (std::size_t t = committed; t < len; ++t) {
    s = clamp_state(s + static_cast<int>(actions[t]), agent.k_states);
    states[t] = s;
  }
  return best;
}

}  // namespace

void SearchConfig::validate() const {
  agent.validate();
  if (chunk_size < 1) fail(ErrorCode::InvalidArgument, "chunk size must be at least 1");
  if (pow3(chunk_size) > kMaxExhaustiveCandidates) {
    fail(ErrorCode::TooLarge, "chunk size " + std::to_string(chunk_size) + " gives too many candidates");
  }
}

void decode_candidate(std::uint64_t index, std::span<Action> out) {
  for (std::size_t i = out.size(); i-- > 0;) {
    out[i] = static_cast<Action>(static_cast<int>(index % 3) - 1);
    index /= 3;
  }
}

SearchResult greedy_chunked_search(const MusicMatrix& music, const SearchConfig& config) {
  config.validate();
  const auto n = static_cast<std::size_t>(config.agent.n_steps);
  check_music(music, n);

  std::vector<Action> actions(n, Action::Stay);
  std::vector<int> states(n, config.agent.start_state);
  std::size_t committed = 0;
  while (committed < n) {
    std::size_t width = std::min(config.chunk_size, n - committed);
    MusicWindow window(music, music_window_size(committed + width, n, music.m()));
    best_extension(window, config.agent, config.representation, actions, states, committed, width);
    committed += width;
  }

  SearchResult result;
  result.sequence = apply_actions(config.agent, actions);
  result.score = alignment_score(music, result.sequence, config.representation);
  return result;
}

SearchResult exhaustive_search(const MusicMatrix& music, const SearchConfig& config, std::size_t n_steps) {
  config.validate();
  if (n_steps < 1) fail(ErrorCode::InvalidArgument, "n_steps must be at least 1");
  if (pow3(n_steps) > kMaxExhaustiveCandidates) {
    fail(ErrorCode::TooLarge, "3^" + std::to_string(n_steps) + " candidates exceed the exhaustive limit of " +
                                  std::to_string(kMaxExhaustiveCandidates));
  }
  check_music(music, n_steps);

  AgentConfig agent = config.agent;
  agent.n_steps = static_cast<int>(n_steps);
  std::vector<Action> actions(n_steps, Action::Stay);
  std::vector<int> states(n_steps, agent.start_state);
  MusicWindow window(music, music_window_size(n_steps, n_steps, music.m()));
  best_extension(window, agent, config.representation, actions, states, 0, n_steps);

  SearchResult result;
  result.sequence = apply_actions(agent, actions);
  result.score = alignment_score(music, result.sequence, config.representation);
  return result;
}

}  // namespace choreo
