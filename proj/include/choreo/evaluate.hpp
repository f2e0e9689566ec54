#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "choreo/baselines.hpp"
#include "choreo/dance.hpp"
#include "choreo/features.hpp"

namespace choreo {

/// Alignment scores of one approach under one representation. For random
/// baselines the statistics run over seeds; Undefined draws are counted but
/// excluded from mean and std.
struct ScoreCell {
  std::optional<double> mean;
  double stddev = 0.0;  // sample standard deviation, 0 for a single value
  std::size_t n_defined = 0;
  std::size_t n_total = 0;
};

struct ScoreRow {
  std::string approach;  // search-state, search-action, search-state_action, sync-seq, ...
  std::array<ScoreCell, 3> by_representation;  // indexed like kAllRepresentations

  const ScoreCell& cell(Representation r) const { return by_representation[static_cast<std::size_t>(r)]; }
};

struct ScoreTable {
  std::vector<ScoreRow> rows;

  std::string to_csv() const;
  std::string to_text() const;
  const ScoreRow* find(std::string_view approach) const;
};

/// Seven rows: the chunked search under each representation, then the four
/// baselines. Every dance is scored under all three representations.
ScoreTable score_table(const MusicMatrix& music, const BeatTimes& beats, double duration_s,
                       const AgentConfig& agent, std::span<const std::uint64_t> seeds,
                       std::size_t chunk_size = 5);

}  // namespace choreo
