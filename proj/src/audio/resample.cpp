#include <cmath>
#include <cstdint>
#include <numbers>
#include <numeric>

#include "choreo/audio.hpp"
#include "choreo/error.hpp"

namespace choreo {
namespace {

constexpr double kRolloff = 0.94;
constexpr double kZeroCrossings = 32.0;
constexpr double kKaiserBeta = 10.0;
constexpr std::int64_t kMaxTabulatedPhases = 4096;

double sinc(double x) {
  if (x == 0.0) return 1.0;
  double px = std::numbers::pi * x;
  return std::sin(px) / px;
}

class Kernel {
public:
  Kernel(double cutoff, double half_width)
      : cutoff_(cutoff), half_width_(half_width), norm_(std::cyl_bessel_i(0.0, kKaiserBeta)) {}

  // x in input samples, cutoff in cycles per input sample.
  double operator()(double x) const {
    double r = x / half_width_;
    if (r <= -1.0 || r >= 1.0) return 0.0;
    double window = std::cyl_bessel_i(0.0, kKaiserBeta * std::sqrt(1.0 - r * r)) / norm_;
    return 2.0 * cutoff_ * sinc(2.0 * cutoff_ * x) * window;
  }

private:
  double cutoff_;
  double half_width_;
  double norm_;
};

// Taps for fractional offset `frac`, covering input offsets -reach..reach,
// normalized to unit DC gain.
std::vector<double> phase_taps(const Kernel& kernel, double frac, int reach) {
  std::vector<double> taps(2 * reach + 1);
  double sum = 0.0;
  for (int o = -reach; o <= reach; ++o) {
    double h = kernel(frac - o);
    taps[o + reach] = h;
    sum += h;
  }
  if (sum != 0.0) {
    for (double& h : taps) h /= sum;
  }
  return taps;
}

double apply_taps(std::span<const double> input, std::int64_t base, int reach,
                  const std::vector<double>& taps) {
  auto n = static_cast<std::int64_t>(input.size());
  double acc = 0.0;
  std::int64_t lo = std::max<std::int64_t>(0, base - reach);
  std::int64_t hi = std::min<std::int64_t>(n - 1, base + reach);
  for (std::int64_t k = lo; k <= hi; ++k) acc += input[k] * taps[k - base + reach];
  return acc;
}

}  // namespace

std::vector<double> resample(std::span<const double> input, int from_rate, int to_rate) {
  if (from_rate <= 0 || to_rate <= 0) fail(ErrorCode::InvalidArgument, "sample rates must be positive");
  if (from_rate == to_rate) return {input.begin(), input.end()};

  std::int64_t g = std::gcd(from_rate, to_rate);
  std::int64_t up = to_rate / g;
  std::int64_t down = from_rate / g;
  auto n = static_cast<std::int64_t>(input.size());
  std::int64_t out_n = (n * up + down / 2) / down;

  double ratio = static_cast<double>(to_rate) / from_rate;
  double cutoff = 0.5 * std::min(1.0, ratio) * kRolloff;
  double half_width = kZeroCrossings / (2.0 * cutoff);
  int reach = static_cast<int>(std::ceil(half_width));
  Kernel kernel(cutoff, half_width);

  std::vector<double> out(static_cast<std::size_t>(out_n));
  if (up <= kMaxTabulatedPhases) {
    std::vector<std::vector<double>> table(static_cast<std::size_t>(up));
    for (std::int64_t p = 0; p < up; ++p) {
      table[p] = phase_taps(kernel, static_cast<double>(p) / up, reach);
    }
    for (std::int64_t j = 0; j < out_n; ++j) {
      std::int64_t pos = j * down;
      out[j] = apply_taps(input, pos / up, reach, table[pos % up]);
    }
  } else {
    for (std::int64_t j = 0; j < out_n; ++j) {
      std::int64_t pos = j * down;
      auto taps = phase_taps(kernel, static_cast<double>(pos % up) / up, reach);
      out[j] = apply_taps(input, pos / up, reach, taps);
    }
  }
  return out;
}

}  // namespace choreo
