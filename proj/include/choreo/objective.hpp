#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "choreo/dance.hpp"
#include "choreo/features.hpp"

namespace choreo {

/// Pearson correlation. std::nullopt when either input has zero variance.
/// Throws on length mismatch or fewer than two elements.
std::optional<double> pearson(std::span<const double> x, std::span<const double> y);

struct AlignmentScore {
  std::optional<double> pearson;  // nullopt is "Undefined"
  std::size_t l_steps = 0;
  std::size_t m_frames = 0;

  bool defined() const noexcept { return pearson.has_value(); }
};

/// Scores closer than this count as equal, so candidates that tie in exact
/// arithmetic but differ by rounding still fall to the tie-break rule.
inline constexpr double kScoreTieTolerance = 1e-12;

/// Strict ordering used by every search: Undefined ranks below any value.
inline bool score_better(const std::optional<double>& a, const std::optional<double>& b) {
  if (!a) return false;
  if (!b) return true;
  return *a > *b + kScoreTieTolerance;
}

/// Music submatrix size for a prefix of `prefix_len` out of `n_steps`
/// steps: max(2, round(L * M / N)), kept within [L, M].
std::size_t music_window_size(std::size_t prefix_len, std::size_t n_steps, std::size_t m_frames);

/// Top-left m x m block of the music matrix, pre-centred so a dance matrix
/// can be correlated against it repeatedly. Scores through this class are
/// bit-identical to alignment_score for the same inputs.
class MusicWindow {
public:
  MusicWindow(const MusicMatrix& music, std::size_t m);

  std::size_t size() const noexcept { return m_; }

  /// Pearson between this window and `dance` upsampled to m x m, both
  /// vectorized row-major including the diagonal.
  std::optional<double> correlate(const SquareMatrix& dance) const;

private:
  std::size_t m_;
  std::vector<double> centered_;
  double sum_squares_ = 0.0;
};

/// Scores the first L steps of `seq` against the proportional top-left
/// music submatrix.
AlignmentScore alignment_score(const MusicMatrix& music, const DanceSequence& seq, Representation repr,
                               std::size_t prefix_len);

inline AlignmentScore alignment_score(const MusicMatrix& music, const DanceSequence& seq,
                                      Representation repr) {
  return alignment_score(music, seq, repr, seq.size());
}

}  // namespace choreo
