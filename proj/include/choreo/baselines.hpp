#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <string_view>

#include "choreo/dance.hpp"

namespace choreo {

enum class BaselineKind { SyncSeq, UnsyncSeq, SyncRandom, UnsyncRandom };

inline constexpr BaselineKind kAllBaselines[4] = {BaselineKind::SyncSeq, BaselineKind::UnsyncSeq,
                                                  BaselineKind::SyncRandom, BaselineKind::UnsyncRandom};

std::string_view to_string(BaselineKind kind) noexcept;  // sync-seq, unsync-seq, ...
std::optional<BaselineKind> baseline_from_string(std::string_view s) noexcept;
bool is_random(BaselineKind kind) noexcept;
bool is_synced(BaselineKind kind) noexcept;

/// Generator used by the random baselines, recorded in traces by this name.
using BaselineRng = std::mt19937_64;
inline constexpr std::string_view kBaselineRngName = "mt19937_64";

/// Uniform integer in [0, bound) by rejection on the raw 64-bit output, so
/// draws do not depend on the standard library's distribution code.
std::uint64_t uniform_below(BaselineRng& rng, std::uint64_t bound);

/// Actions that keep the agent inside [0, K-1], in Down, Stay, Up order.
std::size_t allowed_actions(int state, int k_states, Action (&out)[3]);

/// Sequential kinds walk from the start state heading Up and reverse at the
/// boundaries. Synced kinds only move on `beat_steps`. Random kinds draw
/// uniformly from the allowed actions with a generator seeded by `seed`.
DanceSequence generate_baseline(BaselineKind kind, const AgentConfig& agent,
                                const std::set<std::size_t>& beat_steps, std::uint64_t seed = 0);

}  // namespace choreo
