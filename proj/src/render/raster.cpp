#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "choreo/error.hpp"
#include "choreo/render.hpp"

namespace choreo {
namespace {

constexpr Rgb kBackground{255, 255, 255};
constexpr Rgb kInk{0, 0, 0};
constexpr Rgb kGuide{170, 170, 170};

void fill_circle(Image& img, Point c, double r, Rgb color) {
  int x0 = static_cast<int>(std::floor(c.x - r)), x1 = static_cast<int>(std::ceil(c.x + r));
  int y0 = static_cast<int>(std::floor(c.y - r)), y1 = static_cast<int>(std::ceil(c.y + r));
  for (int y = std::max(0, y0); y <= std::min(img.height - 1, y1); ++y) {
    for (int x = std::max(0, x0); x <= std::min(img.width - 1, x1); ++x) {
      double dx = x + 0.5 - c.x, dy = y + 0.5 - c.y;
      if (dx * dx + dy * dy <= r * r) img.set(x, y, color);
    }
  }
}

// Pixels whose centre lies within half_width of segment ab.
void draw_segment(Image& img, Point a, Point b, double half_width, Rgb color) {
  int x0 = static_cast<int>(std::floor(std::min(a.x, b.x) - half_width));
  int x1 = static_cast<int>(std::ceil(std::max(a.x, b.x) + half_width));
  int y0 = static_cast<int>(std::floor(std::min(a.y, b.y) - half_width));
  int y1 = static_cast<int>(std::ceil(std::max(a.y, b.y) + half_width));
  double vx = b.x - a.x, vy = b.y - a.y;
  double len2 = vx * vx + vy * vy;
  for (int y = std::max(0, y0); y <= std::min(img.height - 1, y1); ++y) {
    for (int x = std::max(0, x0); x <= std::min(img.width - 1, x1); ++x) {
      double px = x + 0.5 - a.x, py = y + 0.5 - a.y;
      double t = len2 > 0.0 ? std::clamp((px * vx + py * vy) / len2, 0.0, 1.0) : 0.0;
      double dx = px - t * vx, dy = py - t * vy;
      if (dx * dx + dy * dy <= half_width * half_width) img.set(x, y, color);
    }
  }
}

double fraction(int state, int k_states) {
  return static_cast<double>(state) / static_cast<double>(k_states - 1);
}

double grid_margin(int k_states, int width, int height) {
  return 0.05 * width + grid_dot_radius(k_states, width, height);
}

void check_canvas(int width, int height) {
  if (width < kMinCanvas || height < kMinCanvas) {
    fail(ErrorCode::InvalidArgument, "canvas must be at least " + std::to_string(kMinCanvas) + "x" +
                                         std::to_string(kMinCanvas));
  }
}

}  // namespace

Image::Image(int w, int h, Rgb fill) : width(w), height(h), rgb(static_cast<std::size_t>(w) * h * 3) {
  for (std::size_t i = 0; i < rgb.size(); i += 3) {
    rgb[i] = fill.r;
    rgb[i + 1] = fill.g;
    rgb[i + 2] = fill.b;
  }
}

std::string_view to_string(VisKind kind) noexcept {
  switch (kind) {
    case VisKind::GridDot: return "grid-dot";
    case VisKind::PulseDisc: return "pulse-disc";
    case VisKind::StickFigure: return "stick-figure";
  }
  return "unknown";
}

std::optional<VisKind> vis_from_string(std::string_view s) noexcept {
  for (VisKind k : {VisKind::GridDot, VisKind::PulseDisc, VisKind::StickFigure}) {
    if (s == to_string(k)) return k;
  }
  return std::nullopt;
}

double grid_dot_radius(int k_states, int width, int height) {
  double spacing = 0.9 * width / std::max(1, k_states - 1);
  return std::max(2.0, std::min(0.4 * spacing, 0.2 * height));
}

Point grid_dot_center(int state, int k_states, int width, int height) {
  double margin = grid_margin(k_states, width, height);
  return {margin + fraction(state, k_states) * (width - 2.0 * margin), height / 2.0};
}

double disc_min_radius(int width, int height) { return 0.08 * std::min(width, height); }
double disc_max_radius(int width, int height) { return 0.45 * std::min(width, height); }

double disc_radius(int state, int k_states, int width, int height) {
  double lo = disc_min_radius(width, height), hi = disc_max_radius(width, height);
  return lo + fraction(state, k_states) * (hi - lo);
}

StickPose stick_pose(int state, int k_states) {
  double f = fraction(state, k_states);
  return {-60.0 + 120.0 * f, 25.0 * f};
}

Image render_state(VisKind kind, int state, int k_states, int width, int height) {
  check_canvas(width, height);
  if (k_states < 2 || state < 0 || state >= k_states) fail(ErrorCode::InvalidArgument, "state outside [0, K-1]");
  Image img(width, height, kBackground);

  switch (kind) {
    case VisKind::GridDot: {
      Point first = grid_dot_center(0, k_states, width, height);
      Point last = grid_dot_center(k_states - 1, k_states, width, height);
      draw_segment(img, first, last, 1.0, kGuide);
      double tick = std::max(1.5, grid_dot_radius(k_states, width, height) / 3.0);
      for (int k = 0; k < k_states; ++k) fill_circle(img, grid_dot_center(k, k_states, width, height), tick, kGuide);
      fill_circle(img, grid_dot_center(state, k_states, width, height), grid_dot_radius(k_states, width, height),
                  kInk);
      break;
    }
    case VisKind::PulseDisc:
      fill_circle(img, {width / 2.0, height / 2.0}, disc_radius(state, k_states, width, height), kInk);
      break;
    case VisKind::StickFigure: {
      double s = std::min(width, height);
      double half = std::max(1.0, 0.012 * s);
      double cx = width / 2.0;
      Point neck{cx, height * 0.5 - 0.18 * s};
      Point hip{cx, height * 0.5 + 0.1 * s};
      double head_r = 0.07 * s;
      double arm = 0.22 * s, leg = 0.3 * s;
      StickPose pose = stick_pose(state, k_states);
      double a = pose.arm_deg * std::numbers::pi / 180.0;
      double l = pose.leg_deg * std::numbers::pi / 180.0;
      fill_circle(img, {cx, neck.y - head_r}, head_r, kInk);
      draw_segment(img, neck, hip, half, kInk);
      draw_segment(img, neck, {cx - arm * std::cos(a), neck.y - arm * std::sin(a)}, half, kInk);
      draw_segment(img, neck, {cx + arm * std::cos(a), neck.y - arm * std::sin(a)}, half, kInk);
      draw_segment(img, hip, {cx - leg * std::sin(l), hip.y + leg * std::cos(l)}, half, kInk);
      draw_segment(img, hip, {cx + leg * std::sin(l), hip.y + leg * std::cos(l)}, half, kInk);
      break;
    }
  }
  return img;
}

std::size_t frame_count(double duration_s, double fps) {
  if (!(fps > 0.0)) fail(ErrorCode::InvalidArgument, "fps must be positive");
  if (!(duration_s >= 0.0)) fail(ErrorCode::InvalidArgument, "duration must be non-negative");
  return static_cast<std::size_t>(std::llround(duration_s * fps));
}

std::size_t frame_step(std::size_t frame, std::size_t n_frames, std::size_t n_steps) {
  return frame * n_steps / n_frames;
}

std::vector<Image> render_frames(const DanceTrace& trace, const Visualization& vis) {
  validate_trace(trace);
  check_canvas(vis.width, vis.height);
  // Without an audio duration every step gets one frame.
  const std::size_t n_frames = trace.audio.duration_s > 0.0 ? frame_count(trace.audio.duration_s, vis.fps)
                                                             : trace.states.size();
  if (n_frames == 0) fail(ErrorCode::InvalidArgument, "trace duration yields zero frames at this fps");

  const int k = trace.params.k_states;
  const std::size_t n_steps = trace.states.size();
  std::map<int, Image> by_state;
  std::vector<Image> frames;
  frames.reserve(n_frames);
  for (std::size_t f = 0; f < n_frames; ++f) {
    int state = trace.states[frame_step(f, n_frames, n_steps)];
    auto it = by_state.find(state);
    if (it == by_state.end()) {
      it = by_state.emplace(state, render_state(vis.kind, state, k, vis.width, vis.height)).first;
    }
    frames.push_back(it->second);
  }
  return frames;
}

}  // namespace choreo
