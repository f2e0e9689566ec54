#pragma once

#include <cstddef>
#include <cstdint>

#include "choreo/dance.hpp"
#include "choreo/features.hpp"
#include "choreo/objective.hpp"

namespace choreo {

struct SearchConfig {
  std::size_t chunk_size = 5;
  Representation representation = Representation::Action;
  AgentConfig agent;

  void validate() const;
};

struct SearchResult {
  DanceSequence sequence;
  AlignmentScore score;
};

/// Upper bound on the candidates exhaustive_search will enumerate.
inline constexpr std::uint64_t kMaxExhaustiveCandidates = 10'000'000;

/// Single-beam search over chunks. Each chunk is the argmax, over all 3^r
/// action choices appended to the committed prefix, of the alignment score
/// of the whole prefix. Ties go to the lexicographically smallest choice
/// (Down < Stay < Up, earliest step most significant); Undefined scores
/// lose to any defined one.
SearchResult greedy_chunked_search(const MusicMatrix& music, const SearchConfig& config);

/// Global argmax over all 3^N sequences with the same scoring and tie rule.
/// Throws ErrorCode::TooLarge when 3^N exceeds kMaxExhaustiveCandidates.
SearchResult exhaustive_search(const MusicMatrix& music, const SearchConfig& config, std::size_t n_steps);

/// Decodes candidate `index` (base 3, first step most significant) into
/// `out`, digit 0 -> Down, 1 -> Stay, 2 -> Up.
void decode_candidate(std::uint64_t index, std::span<Action> out);

}  // namespace choreo
