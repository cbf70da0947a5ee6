// Copyright 2026 The rydmis Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <numbers>
#include <span>
#include <string_view>
#include <vector>

namespace rydmis {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kMinSegmentDuration = 0.02;  // µs

// C¹ piecewise cubic Hermite interpolant with Fritsch–Carlson slope limiting.
// Monotone on every knot interval, so values never leave the knot range.
class MonotoneCubic {
 public:
  MonotoneCubic() = default;
  MonotoneCubic(std::vector<double> times, std::vector<double> values);

  double operator()(double t) const;
  const std::vector<double>& times() const noexcept { return t_; }
  const std::vector<double>& values() const noexcept { return y_; }
  const std::vector<double>& slopes() const noexcept { return m_; }

 private:
  std::vector<double> t_, y_, m_;
};

MonotoneCubic monotone_cubic_interpolate(std::span<const double> times, std::span<const double> values);

// One control channel. Either a monotone spline through knots, or piecewise
// constant with values[k] on [times[k], times[k+1]). Output is
// scale * base(t) + shift.
class Waveform {
 public:
  enum class Kind { spline, piecewise_constant };

  static Waveform spline(std::vector<double> times, std::vector<double> values);
  static Waveform piecewise(std::vector<double> boundaries, std::vector<double> values);

  Kind kind() const noexcept { return kind_; }
  double operator()(double t) const;
  // Knot times (spline) or segment boundaries (piecewise).
  const std::vector<double>& breakpoints() const noexcept { return times_; }
  const std::vector<double>& base_values() const noexcept { return values_; }
  double scale() const noexcept { return scale_; }
  double shift() const noexcept { return shift_; }

  Waveform transformed(double scale, double shift) const;
  Waveform time_scaled(double factor) const;

 private:
  Kind kind_ = Kind::piecewise_constant;
  std::vector<double> times_;
  std::vector<double> values_;
  MonotoneCubic spline_;
  double scale_ = 1.0;
  double shift_ = 0.0;
};

enum class ScheduleKind { vqaa, qaoa, raw };
std::string_view to_string(ScheduleKind kind);

// Ω(t), δ(t) on [0, T] in rad/µs.
class Schedule {
 public:
  Schedule() = default;
  Schedule(double duration, Waveform omega, Waveform delta, ScheduleKind kind);

  double duration() const noexcept { return duration_; }
  ScheduleKind kind() const noexcept { return kind_; }
  const Waveform& omega() const noexcept { return omega_; }
  const Waveform& delta() const noexcept { return delta_; }

  double omega_at(double t) const { return omega_(t); }
  double delta_at(double t) const { return delta_(t); }

  // Sorted union of both channels' breakpoints, including 0 and T. Controls
  // are smooth (splines) or constant (piecewise) between consecutive entries.
  std::vector<double> segments() const;

 private:
  double duration_ = 0.0;
  Waveform omega_;
  Waveform delta_;
  ScheduleKind kind_ = ScheduleKind::raw;
};

struct HardwareBounds {
  double omega_max = kTwoPi * 2.0;       // rad/µs
  double delta_max_abs = kTwoPi * 10.0;  // rad/µs
  double min_duration = kMinSegmentDuration;
};

// Box for VQAA parameters. Defaults follow the hardware bounds with T in
// [0.5, 4] µs.
struct VqaaBounds {
  double t_min = 0.5;
  double t_max = 4.0;
  double omega_min = 0.0;
  double omega_max = kTwoPi * 2.0;
  double delta_min = -kTwoPi * 10.0;
  double delta_max = kTwoPi * 10.0;
};

// θ = [T, ω_1..ω_m, δ_0..δ_{m+1}] (dimension 2m+3). All knots sit on the
// uniform grid t_j = T·j/(m+1); Ω is pinned to zero at both ends.
struct VqaaParams {
  double duration = 0.0;
  std::vector<double> omega_knots;  // m interior values
  std::vector<double> delta_knots;  // m+2 values

  std::size_t m() const noexcept { return omega_knots.size(); }
  std::vector<double> to_vector() const;
  static VqaaParams from_vector(std::span<const double> theta, std::size_t m);
};

std::vector<double> vqaa_knot_times(double duration, std::size_t m);
Schedule vqaa_schedule(const VqaaParams& p, const VqaaBounds& bounds = {});

struct QaoaParams {
  std::vector<double> t_cost;  // µs, one per layer
  std::vector<double> t_mix;
  double omega_mix = kTwoPi * 2.0;
  double delta_cost = -kTwoPi * 4.0;
  bool init_pulse = true;

  std::size_t depth() const noexcept { return t_cost.size(); }
};

// Optional π/2 pulse of length π/(2Ω_mix), then per layer (Ω=0, δ=δ_cost for
// t_cost) followed by (Ω=Ω_mix, δ=0 for t_mix).
Schedule qaoa_schedule(const QaoaParams& q, double min_duration = kMinSegmentDuration);
double qaoa_init_pulse_duration(double omega_mix);

struct Miscalibrated {
  Schedule schedule;
  bool exceeds_bounds = false;  // reported, never clipped
  bool degenerate = false;      // Ω ≡ 0
  double omega_peak = 0.0;
  double delta_peak_abs = 0.0;
};

Miscalibrated miscalibrate(const Schedule& s, double omega_scale, double delta_shift,
                           const HardwareBounds& bounds = {});

// Same control shapes played over factor·T.
Schedule stretch(const Schedule& s, double factor);

// Peak |Ω| and |δ| on a dense grid (plus breakpoints).
struct ControlPeaks {
  double omega_min = 0.0;
  double omega_max = 0.0;
  double delta_min = 0.0;
  double delta_max = 0.0;
};
ControlPeaks scan_controls(const Schedule& s, std::size_t points = 10000);

struct WaveformSample {
  double t = 0.0;
  double omega = 0.0;
  double delta = 0.0;
};
std::vector<WaveformSample> sample_waveform(const Schedule& s, std::size_t points);

}  // namespace rydmis
