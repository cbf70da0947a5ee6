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

#include "rydmis/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "rydmis/error.hpp"

namespace rydmis {

MonotoneCubic::MonotoneCubic(std::vector<double> times, std::vector<double> values)
    : t_(std::move(times)), y_(std::move(values)) {
  const auto n = t_.size();
  if (n != y_.size()) raise(ErrorKind::LengthMismatch, "knot times and values differ in length");
  if (n < 2) raise(ErrorKind::InvalidArgument, "interpolation needs at least two knots");
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (!(t_[k] < t_[k + 1])) raise(ErrorKind::NonMonotoneTimes, "knot times must be strictly increasing");
  }
  std::vector<double> secant(n - 1);
  for (std::size_t k = 0; k + 1 < n; ++k) secant[k] = (y_[k + 1] - y_[k]) / (t_[k + 1] - t_[k]);

  m_.assign(n, 0.0);
  m_[0] = secant[0];
  m_[n - 1] = secant[n - 2];
  for (std::size_t k = 1; k + 1 < n; ++k) {
    m_[k] = secant[k - 1] * secant[k] <= 0.0 ? 0.0 : 0.5 * (secant[k - 1] + secant[k]);
  }
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (secant[k] == 0.0) {
      m_[k] = 0.0;
      m_[k + 1] = 0.0;
      continue;
    }
    const double a = m_[k] / secant[k];
    const double b = m_[k + 1] / secant[k];
    // Opposite-sign slopes were zeroed above; clamp any one-sided endpoint too.
    if (a < 0.0) m_[k] = 0.0;
    if (b < 0.0) m_[k + 1] = 0.0;
    const double r2 = a * a + b * b;
    if (r2 > 9.0) {
      const double tau = 3.0 / std::sqrt(r2);
      m_[k] = tau * a * secant[k];
      m_[k + 1] = tau * b * secant[k];
    }
  }
}

double MonotoneCubic::operator()(double t) const {
  if (t <= t_.front()) return y_.front();
  if (t >= t_.back()) return y_.back();
  const auto it = std::upper_bound(t_.begin(), t_.end(), t);
  const auto k = static_cast<std::size_t>(it - t_.begin()) - 1;
  const double h = t_[k + 1] - t_[k];
  const double s = (t - t_[k]) / h;
  const double s2 = s * s;
  const double s3 = s2 * s;
  const double h00 = 2 * s3 - 3 * s2 + 1;
  const double h10 = s3 - 2 * s2 + s;
  const double h01 = -2 * s3 + 3 * s2;
  const double h11 = s3 - s2;
  return h00 * y_[k] + h10 * h * m_[k] + h01 * y_[k + 1] + h11 * h * m_[k + 1];
}

MonotoneCubic monotone_cubic_interpolate(std::span<const double> times, std::span<const double> values) {
  return MonotoneCubic({times.begin(), times.end()}, {values.begin(), values.end()});
}

Waveform Waveform::spline(std::vector<double> times, std::vector<double> values) {
  Waveform w;
  w.kind_ = Kind::spline;
  w.spline_ = MonotoneCubic(times, values);
  w.times_ = std::move(times);
  w.values_ = std::move(values);
  return w;
}

Waveform Waveform::piecewise(std::vector<double> boundaries, std::vector<double> values) {
  if (boundaries.size() != values.size() + 1 || values.empty()) {
    raise(ErrorKind::LengthMismatch, "piecewise waveform needs one more boundary than values");
  }
  for (std::size_t k = 0; k + 1 < boundaries.size(); ++k) {
    if (!(boundaries[k] < boundaries[k + 1])) raise(ErrorKind::NonMonotoneTimes, "segment boundaries");
  }
  Waveform w;
  w.kind_ = Kind::piecewise_constant;
  w.times_ = std::move(boundaries);
  w.values_ = std::move(values);
  return w;
}

double Waveform::operator()(double t) const {
  double base = 0.0;
  if (kind_ == Kind::spline) {
    base = spline_(t);
  } else {
    const auto it = std::upper_bound(times_.begin(), times_.end(), t);
    std::size_t k = it == times_.begin() ? 0 : static_cast<std::size_t>(it - times_.begin()) - 1;
    k = std::min(k, values_.size() - 1);
    base = values_[k];
  }
  return scale_ * base + shift_;
}

Waveform Waveform::transformed(double scale, double shift) const {
  Waveform w = *this;
  w.scale_ = scale_ * scale;
  w.shift_ = shift_ * scale + shift;
  return w;
}

Waveform Waveform::time_scaled(double factor) const {
  if (!(factor > 0.0)) raise(ErrorKind::InvalidArgument, "time scale factor must be positive");
  std::vector<double> t = times_;
  for (auto& x : t) x *= factor;
  Waveform w = kind_ == Kind::spline ? spline(std::move(t), values_) : piecewise(std::move(t), values_);
  w.scale_ = scale_;
  w.shift_ = shift_;
  return w;
}

std::string_view to_string(ScheduleKind kind) {
  switch (kind) {
    case ScheduleKind::vqaa: return "vqaa";
    case ScheduleKind::qaoa: return "qaoa";
    case ScheduleKind::raw: return "raw";
  }
  return "raw";
}

Schedule::Schedule(double duration, Waveform omega, Waveform delta, ScheduleKind kind)
    : duration_(duration), omega_(std::move(omega)), delta_(std::move(delta)), kind_(kind) {
  if (!(duration > 0.0) || !std::isfinite(duration)) raise(ErrorKind::InvalidArgument, "duration must be positive");
}

std::vector<double> Schedule::segments() const {
  std::vector<double> pts{0.0, duration_};
  for (const auto* w : {&omega_, &delta_}) {
    for (double t : w->breakpoints()) {
      if (t > 0.0 && t < duration_) pts.push_back(t);
    }
  }
  std::sort(pts.begin(), pts.end());
  // Merge breakpoints closer than round-off.
  std::vector<double> out;
  for (double t : pts) {
    if (out.empty() || t - out.back() > 1e-12 * std::max(1.0, duration_)) out.push_back(t);
  }
  out.back() = duration_;
  return out;
}

std::vector<double> VqaaParams::to_vector() const {
  std::vector<double> v{duration};
  v.insert(v.end(), omega_knots.begin(), omega_knots.end());
  v.insert(v.end(), delta_knots.begin(), delta_knots.end());
  return v;
}

VqaaParams VqaaParams::from_vector(std::span<const double> theta, std::size_t m) {
  if (theta.size() != 2 * m + 3) {
    raise(ErrorKind::LengthMismatch, "VQAA vector of length " + std::to_string(theta.size()) + ", expected " +
                                         std::to_string(2 * m + 3));
  }
  VqaaParams p;
  p.duration = theta[0];
  p.omega_knots.assign(theta.begin() + 1, theta.begin() + 1 + static_cast<std::ptrdiff_t>(m));
  p.delta_knots.assign(theta.begin() + 1 + static_cast<std::ptrdiff_t>(m), theta.end());
  return p;
}

std::vector<double> vqaa_knot_times(double duration, std::size_t m) {
  std::vector<double> t(m + 2);
  for (std::size_t j = 0; j < m + 2; ++j) t[j] = duration * static_cast<double>(j) / static_cast<double>(m + 1);
  t.back() = duration;
  return t;
}

namespace {

bool outside(double v, double lo, double hi) {
  const double slack = 1e-12 * std::max({1.0, std::abs(lo), std::abs(hi)});
  return v < lo - slack || v > hi + slack;
}

[[noreturn]] void bound_violation(const std::string& name, double v, double lo, double hi) {
  std::ostringstream os;
  os << name << " = " << v << " outside [" << lo << ", " << hi << "]";
  raise(ErrorKind::BoundViolation, os.str());
}

}  // namespace

Schedule vqaa_schedule(const VqaaParams& p, const VqaaBounds& b) {
  const auto m = p.m();
  if (p.delta_knots.size() != m + 2) {
    raise(ErrorKind::LengthMismatch, "VQAA needs m+2 = " + std::to_string(m + 2) + " detuning knots, got " +
                                         std::to_string(p.delta_knots.size()));
  }
  if (outside(p.duration, b.t_min, b.t_max)) bound_violation("T", p.duration, b.t_min, b.t_max);
  for (std::size_t i = 0; i < m; ++i) {
    if (outside(p.omega_knots[i], b.omega_min, b.omega_max)) {
      bound_violation("omega[" + std::to_string(i + 1) + "]", p.omega_knots[i], b.omega_min, b.omega_max);
    }
  }
  for (std::size_t i = 0; i < m + 2; ++i) {
    if (outside(p.delta_knots[i], b.delta_min, b.delta_max)) {
      bound_violation("delta[" + std::to_string(i) + "]", p.delta_knots[i], b.delta_min, b.delta_max);
    }
  }
  if (!(p.duration > 0.0)) bound_violation("T", p.duration, b.t_min, b.t_max);
  auto times = vqaa_knot_times(p.duration, m);
  std::vector<double> omega{0.0};
  omega.insert(omega.end(), p.omega_knots.begin(), p.omega_knots.end());
  omega.push_back(0.0);
  return Schedule(p.duration, Waveform::spline(times, std::move(omega)), Waveform::spline(times, p.delta_knots),
                  ScheduleKind::vqaa);
}

double qaoa_init_pulse_duration(double omega_mix) {
  if (!(omega_mix > 0.0)) raise(ErrorKind::InvalidArgument, "mixing amplitude must be positive");
  return std::numbers::pi / (2.0 * omega_mix);
}

Schedule qaoa_schedule(const QaoaParams& q, double min_duration) {
  if (q.t_cost.size() != q.t_mix.size()) raise(ErrorKind::LengthMismatch, "t_cost and t_mix lengths differ");
  std::vector<double> bounds{0.0};
  std::vector<double> omega, delta;
  auto push = [&](double dt, double w, double d) {
    bounds.push_back(bounds.back() + dt);
    omega.push_back(w);
    delta.push_back(d);
  };
  if (q.init_pulse) push(qaoa_init_pulse_duration(q.omega_mix), q.omega_mix, 0.0);
  for (std::size_t j = 0; j < q.depth(); ++j) {
    for (auto [name, dt] : {std::pair{"t_cost", q.t_cost[j]}, std::pair{"t_mix", q.t_mix[j]}}) {
      if (!(dt >= min_duration * (1.0 - 1e-12))) {
        std::ostringstream os;
        os << name << "[" << j + 1 << "] = " << dt << " µs below minimum " << min_duration << " µs";
        raise(ErrorKind::DurationTooShort, os.str());
      }
    }
    push(q.t_cost[j], 0.0, q.delta_cost);
    push(q.t_mix[j], q.omega_mix, 0.0);
  }
  if (omega.empty()) raise(ErrorKind::InvalidArgument, "QAOA schedule with no segments");
  const double total = bounds.back();
  auto omega_w = Waveform::piecewise(bounds, std::move(omega));
  auto delta_w = Waveform::piecewise(std::move(bounds), std::move(delta));
  return Schedule(total, std::move(omega_w), std::move(delta_w), ScheduleKind::qaoa);
}

ControlPeaks scan_controls(const Schedule& s, std::size_t points) {
  ControlPeaks pk{s.omega_at(0.0), s.omega_at(0.0), s.delta_at(0.0), s.delta_at(0.0)};
  auto visit = [&](double t) {
    const double w = s.omega_at(t);
    const double d = s.delta_at(t);
    pk.omega_min = std::min(pk.omega_min, w);
    pk.omega_max = std::max(pk.omega_max, w);
    pk.delta_min = std::min(pk.delta_min, d);
    pk.delta_max = std::max(pk.delta_max, d);
  };
  for (std::size_t i = 0; i <= points; ++i) visit(s.duration() * static_cast<double>(i) / static_cast<double>(points));
  for (double t : s.segments()) visit(t);
  return pk;
}

Miscalibrated miscalibrate(const Schedule& s, double omega_scale, double delta_shift, const HardwareBounds& bounds) {
  Miscalibrated out;
  out.schedule = Schedule(s.duration(), s.omega().transformed(omega_scale, 0.0), s.delta().transformed(1.0, delta_shift),
                          s.kind());
  const auto pk = scan_controls(out.schedule);
  out.omega_peak = std::max(std::abs(pk.omega_min), std::abs(pk.omega_max));
  out.delta_peak_abs = std::max(std::abs(pk.delta_min), std::abs(pk.delta_max));
  out.exceeds_bounds = pk.omega_min < 0.0 || out.omega_peak > bounds.omega_max * (1 + 1e-12) ||
                       out.delta_peak_abs > bounds.delta_max_abs * (1 + 1e-12);
  out.degenerate = omega_scale == 0.0 || out.omega_peak == 0.0;
  return out;
}

Schedule stretch(const Schedule& s, double factor) {
  return Schedule(s.duration() * factor, s.omega().time_scaled(factor), s.delta().time_scaled(factor), s.kind());
}

std::vector<WaveformSample> sample_waveform(const Schedule& s, std::size_t points) {
  if (points < 2) raise(ErrorKind::InvalidArgument, "need at least two waveform samples");
  std::vector<WaveformSample> out;
  out.reserve(points);
  for (std::size_t i = 0; i < points; ++i) {
    const double t = s.duration() * static_cast<double>(i) / static_cast<double>(points - 1);
    out.push_back({t, s.omega_at(t), s.delta_at(t)});
  }
  return out;
}

}  // namespace rydmis
