#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "choreo/image.hpp"
#include "choreo/trace.hpp"

namespace choreo {

enum class VisKind { GridDot, PulseDisc, StickFigure };

std::string_view to_string(VisKind kind) noexcept;  // grid-dot, pulse-disc, stick-figure
std::optional<VisKind> vis_from_string(std::string_view s) noexcept;

struct Visualization {
  VisKind kind = VisKind::GridDot;
  int width = 320;
  int height = 240;
  double fps = 20.0;
};

inline constexpr int kMinCanvas = 64;

struct Point {
  double x = 0.0;
  double y = 0.0;
};

/// Centre of slot `state` among K slots spread across the canvas.
Point grid_dot_center(int state, int k_states, int width, int height);
double grid_dot_radius(int k_states, int width, int height);

double disc_min_radius(int width, int height);
double disc_max_radius(int width, int height);
/// r_min + state / (K - 1) * (r_max - r_min).
double disc_radius(int state, int k_states, int width, int height);

struct StickPose {
  double arm_deg = 0.0;  // arm angle above horizontal, -60 (down) .. +60 (up)
  double leg_deg = 0.0;  // leg spread from vertical, 0 .. 25
};
StickPose stick_pose(int state, int k_states);

/// One frame showing the agent at `state`.
Image render_state(VisKind kind, int state, int k_states, int width, int height);

/// Frame count round(duration_s * fps).
std::size_t frame_count(double duration_s, double fps);
/// Step shown by frame f: floor(f * N / F). Steps get equal runs, the
/// remainder spread evenly.
std::size_t frame_step(std::size_t frame, std::size_t n_frames, std::size_t n_steps);

/// Renders the whole trace. Frames inside one step are identical. A trace
/// without an audio duration gets one frame per step.
std::vector<Image> render_frames(const DanceTrace& trace, const Visualization& vis);

}  // namespace choreo
