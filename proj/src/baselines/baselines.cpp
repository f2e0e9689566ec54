#include "choreo/baselines.hpp"

#include <limits>
#include <vector>

#include "choreo/error.hpp"

namespace choreo {

std::string_view to_string(BaselineKind kind) noexcept {
  switch (kind) {
    case BaselineKind::SyncSeq: return "sync-seq";
    case BaselineKind::UnsyncSeq: return "unsync-seq";
    case BaselineKind::SyncRandom: return "sync-random";
    case BaselineKind::UnsyncRandom: return "unsync-random";
  }
  return "unknown";
}

std::optional<BaselineKind> baseline_from_string(std::string_view s) noexcept {
  for (BaselineKind k : kAllBaselines) {
    if (s == to_string(k)) return k;
  }
  return std::nullopt;
}

bool is_random(BaselineKind kind) noexcept {
  return kind == BaselineKind::SyncRandom || kind == BaselineKind::UnsyncRandom;
}

bool is_synced(BaselineKind kind) noexcept {
  return kind == BaselineKind::SyncSeq || kind == BaselineKind::SyncRandom;
}

std::uint64_t uniform_below(BaselineRng& rng, std::uint64_t bound) {
  if (bound == 0) fail(ErrorCode::InvalidArgument, "uniform_below: bound must be positive");
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  // Largest multiple of bound that fits; values at or above it are redrawn.
  const std::uint64_t limit = kMax - (kMax % bound + 1) % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x > limit);
  return x % bound;
}

std::size_t allowed_actions(int state, int k_states, Action (&out)[3]) {
  std::size_t n = 0;
  if (state > 0) out[n++] = Action::Down;
  out[n++] = Action::Stay;
  if (state < k_states - 1) out[n++] = Action::Up;
  return n;
}

DanceSequence generate_baseline(BaselineKind kind, const AgentConfig& agent,
                                const std::set<std::size_t>& beat_steps, std::uint64_t seed) {
  agent.validate();
  const auto n = static_cast<std::size_t>(agent.n_steps);
  std::vector<Action> actions(n, Action::Stay);
  BaselineRng rng(seed);

  int state = agent.start_state;
  int direction = 1;
  for (std::size_t t = 0; t < n; ++t) {
    bool moves = !is_synced(kind) || beat_steps.contains(t);
    if (!moves) continue;
    Action a = Action::Stay;
    if (is_random(kind)) {
      Action choices[3];
      std::size_t count = allowed_actions(state, agent.k_states, choices);
      a = choices[uniform_below(rng, count)];
    } else {
      if (state + direction < 0 || state + direction >= agent.k_states) direction = -direction;
      a = static_cast<Action>(direction);
    }
    actions[t] = a;
    state += static_cast<int>(a);
  }
  return apply_actions(agent, actions);
}

}  // namespace choreo
