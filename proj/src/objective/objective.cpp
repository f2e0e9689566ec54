#include "choreo/objective.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "choreo/error.hpp"

namespace choreo {
namespace {

double clamp_unit(double r) { return std::clamp(r, -1.0, 1.0); }

}  // namespace

std::optional<double> pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) fail(ErrorCode::InvalidArgument, "pearson: length mismatch");
  if (x.size() < 2) fail(ErrorCode::InvalidArgument, "pearson: need at least two elements");
  const auto n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double dx = x[i] - mx, dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) return std::nullopt;
  return clamp_unit(sxy / std::sqrt(sxx * syy));
}

std::size_t music_window_size(std::size_t prefix_len, std::size_t n_steps, std::size_t m_frames) {
  if (n_steps == 0) fail(ErrorCode::InvalidArgument, "n_steps must be positive");
  std::size_t m = (2 * prefix_len * m_frames + n_steps) / (2 * n_steps);
  m = std::max<std::size_t>({m, 2, prefix_len});
  return std::min(m, m_frames);
}

MusicWindow::MusicWindow(const MusicMatrix& music, std::size_t m) : m_(m) {
  if (m < 2 || m > music.m()) {
    fail(ErrorCode::InvalidArgument, "music window " + std::to_string(m) + " outside [2, " +
                                         std::to_string(music.m()) + "]");
  }
  double sum = 0.0;
  for (std::size_t p = 0; p < m; ++p) {
    auto row = music.values.row(p);
    double row_sum = 0.0;
    for (std::size_t q = 0; q < m; ++q) row_sum += row[q];
    sum += row_sum;
  }
  const double mean = sum / static_cast<double>(m * m);
  centered_.resize(m * m);
  for (std::size_t p = 0; p < m; ++p) {
    auto row = music.values.row(p);
    double row_ss = 0.0;
    for (std::size_t q = 0; q < m; ++q) {
      double c = row[q] - mean;
      centered_[p * m + q] = c;
      row_ss += c * c;
    }
    sum_squares_ += row_ss;
  }
}

std::optional<double> MusicWindow::correlate(const SquareMatrix& dance) const {
  const std::size_t l = dance.size();
  if (l < 1 || l > m_) {
    fail(ErrorCode::InvalidArgument, "dance matrix of size " + std::to_string(l) +
                                         " cannot be upsampled to " + std::to_string(m_));
  }
  if (sum_squares_ == 0.0) return std::nullopt;

  std::vector<std::size_t> map(m_);
  std::vector<double> count(l, 0.0);
  for (std::size_t p = 0; p < m_; ++p) {
    map[p] = nearest_source_index(p, l, m_);
    count[map[p]] += 1.0;
  }

  // Mean and spread of the upsampled matrix via block multiplicities.
  double sum = 0.0;
  for (std::size_t a = 0; a < l; ++a) {
    auto row = dance.row(a);
    double row_sum = 0.0;
    for (std::size_t b = 0; b < l; ++b) row_sum += count[b] * row[b];
    sum += count[a] * row_sum;
  }
  const double mean = sum / static_cast<double>(m_ * m_);
  double ss = 0.0;
  for (std::size_t a = 0; a < l; ++a) {
    auto row = dance.row(a);
    double row_ss = 0.0;
    for (std::size_t b = 0; b < l; ++b) {
      double d = row[b] - mean;
      row_ss += count[b] * d * d;
    }
    ss += count[a] * row_ss;
  }
  if (ss == 0.0) return std::nullopt;

  std::vector<double> shifted(l);
  double cov = 0.0;
  std::size_t current = l;
  for (std::size_t p = 0; p < m_; ++p) {
    if (map[p] != current) {
      current = map[p];
      auto row = dance.row(current);
      for (std::size_t b = 0; b < l; ++b) shifted[b] = row[b] - mean;
    }
    const double* x = centered_.data() + p * m_;
    double acc = 0.0;
    for (std::size_t q = 0; q < m_; ++q) acc += x[q] * shifted[map[q]];
    cov += acc;
  }
  return clamp_unit(cov / std::sqrt(sum_squares_ * ss));
}

AlignmentScore alignment_score(const MusicMatrix& music, const DanceSequence& seq, Representation repr,
                               std::size_t prefix_len) {
  const std::size_t n = seq.size();
  if (prefix_len < 1 || prefix_len > n) {
    fail(ErrorCode::InvalidArgument, "prefix length " + std::to_string(prefix_len) + " outside [1, " +
                                         std::to_string(n) + "]");
  }
  if (music.m() < prefix_len || music.m() < 2) {
    fail(ErrorCode::InvalidArgument, "music has " + std::to_string(music.m()) +
                                         " frames, fewer than the " + std::to_string(prefix_len) +
                                         " dance steps being scored");
  }
  AlignmentScore score;
  score.l_steps = prefix_len;
  score.m_frames = music_window_size(prefix_len, n, music.m());
  DanceMatrix dance = dance_matrix(seq, repr, prefix_len);
  score.pearson = MusicWindow(music, score.m_frames).correlate(dance.values);
  return score;
}

}  // namespace choreo
