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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "rydmis/error.hpp"
#include "rydmis/schedule.hpp"

namespace rydmis {
namespace {

template <class F>
ErrorKind kind_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::InvalidArgument;  // sentinel; callers compare against a different kind
}

TEST(MonotoneCubic, HitsKnotsAndReproducesLines) {
  const MonotoneCubic line({0.0, 0.5, 2.0, 3.0}, {1.0, 2.0, 5.0, 7.0});
  for (double t = 0.0; t <= 3.0; t += 0.01) EXPECT_NEAR(line(t), 1.0 + 2.0 * t, 1e-12);
  const MonotoneCubic c({0.0, 1.0, 2.0}, {0.0, 4.0, 1.0});
  EXPECT_DOUBLE_EQ(c(1.0), 4.0);
  EXPECT_DOUBLE_EQ(c(-1.0), 0.0);
  EXPECT_DOUBLE_EQ(c(5.0), 1.0);
}

TEST(MonotoneCubic, NoOvershootOnRandomData) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int rep = 0; rep < 50; ++rep) {
    std::vector<double> t{0.0}, y{u(rng)};
    for (int k = 0; k < 7; ++k) {
      t.push_back(t.back() + 0.1 + std::abs(u(rng)));
      y.push_back(rep % 2 ? y.back() + std::abs(u(rng)) : u(rng));
    }
    const auto f = monotone_cubic_interpolate(t, y);
    for (std::size_t k = 0; k + 1 < t.size(); ++k) {
      const double lo = std::min(y[k], y[k + 1]), hi = std::max(y[k], y[k + 1]);
      double prev = y[k];
      for (int s = 1; s <= 50; ++s) {
        const double v = f(t[k] + (t[k + 1] - t[k]) * s / 50.0);
        EXPECT_GE(v, lo - 1e-9);
        EXPECT_LE(v, hi + 1e-9);
        if (y[k + 1] >= y[k]) EXPECT_GE(v, prev - 1e-9);
        else EXPECT_LE(v, prev + 1e-9);
        prev = v;
      }
    }
  }
}

TEST(MonotoneCubic, RejectsBadKnots) {
  EXPECT_EQ(kind_of([] { MonotoneCubic({0.0, 0.0}, {1.0, 2.0}); }), ErrorKind::NonMonotoneTimes);
  EXPECT_EQ(kind_of([] { MonotoneCubic({0.0, 1.0}, {1.0}); }), ErrorKind::LengthMismatch);
}

TEST(Waveform, PiecewiseAndTransforms) {
  const auto w = Waveform::piecewise({0.0, 1.0, 3.0}, {2.0, -1.0});
  EXPECT_DOUBLE_EQ(w(0.5), 2.0);
  EXPECT_DOUBLE_EQ(w(1.0), -1.0);
  EXPECT_DOUBLE_EQ(w(3.0), -1.0);
  const auto tw = w.transformed(2.0, 0.5);
  EXPECT_DOUBLE_EQ(tw(0.5), 4.5);
  EXPECT_DOUBLE_EQ(tw.transformed(1.0, 1.0)(2.0), -0.5);
  EXPECT_DOUBLE_EQ(w.time_scaled(2.0)(1.5), 2.0);
  EXPECT_EQ(kind_of([] { Waveform::piecewise({0.0, 1.0}, {1.0, 2.0}); }), ErrorKind::LengthMismatch);
}

TEST(Schedule, SegmentsAreTheBreakpointUnion) {
  const Schedule s(3.0, Waveform::piecewise({0.0, 1.0, 3.0}, {1.0, 2.0}), Waveform::spline({0.0, 1.5, 3.0}, {0, 1, 2}),
                   ScheduleKind::raw);
  EXPECT_EQ(s.segments(), (std::vector<double>{0.0, 1.0, 1.5, 3.0}));
  EXPECT_THROW(Schedule(0.0, Waveform::piecewise({0, 1}, {1}), Waveform::piecewise({0, 1}, {1}), ScheduleKind::raw),
               Error);
}

TEST(Vqaa, EndpointsAndKnots) {
  const VqaaParams p{2.0, {3.0, 6.0, 3.0}, {-10.0, -5.0, 0.0, 5.0, 10.0}};
  const auto s = vqaa_schedule(p);
  EXPECT_EQ(s.kind(), ScheduleKind::vqaa);
  EXPECT_DOUBLE_EQ(s.duration(), 2.0);
  EXPECT_DOUBLE_EQ(s.omega_at(0.0), 0.0);
  EXPECT_DOUBLE_EQ(s.omega_at(2.0), 0.0);
  const auto t = vqaa_knot_times(2.0, 3);
  EXPECT_EQ(t.size(), 5u);
  EXPECT_DOUBLE_EQ(s.omega_at(t[2]), 6.0);
  for (std::size_t j = 0; j < 5; ++j) EXPECT_NEAR(s.delta_at(t[j]), p.delta_knots[j], 1e-12);
  const auto back = VqaaParams::from_vector(p.to_vector(), 3);
  EXPECT_EQ(back.to_vector(), p.to_vector());
}

TEST(Vqaa, BoundsAreEnforced) {
  VqaaParams p{2.0, {3.0, 30.0, 3.0}, {-10.0, -5.0, 0.0, 5.0, 10.0}};
  EXPECT_EQ(kind_of([&] { vqaa_schedule(p); }), ErrorKind::BoundViolation);
  p.omega_knots[1] = 3.0;
  p.duration = 9.0;
  EXPECT_EQ(kind_of([&] { vqaa_schedule(p); }), ErrorKind::BoundViolation);
  p.duration = 2.0;
  p.delta_knots.pop_back();
  EXPECT_EQ(kind_of([&] { vqaa_schedule(p); }), ErrorKind::LengthMismatch);
  EXPECT_EQ(kind_of([] { VqaaParams::from_vector(std::vector<double>(8, 1.0), 3); }), ErrorKind::LengthMismatch);
}

TEST(Vqaa, ControlsStayInsideHardwareBox) {
  const VqaaBounds b;
  const VqaaParams p{4.0, {b.omega_max, b.omega_max, 0.0, b.omega_max},
                     {b.delta_min, b.delta_max, b.delta_min, b.delta_max, b.delta_min, b.delta_max}};
  const auto pk = scan_controls(vqaa_schedule(p, b));
  EXPECT_GE(pk.omega_min, -1e-12);
  EXPECT_LE(pk.omega_max, b.omega_max + 1e-9);
  EXPECT_GE(pk.delta_min, b.delta_min - 1e-9);
  EXPECT_LE(pk.delta_max, b.delta_max + 1e-9);
}

TEST(Qaoa, LayerLayout) {
  QaoaParams q;
  q.t_cost = {0.1, 0.2};
  q.t_mix = {0.05, 0.07};
  const auto s = qaoa_schedule(q);
  const double t0 = qaoa_init_pulse_duration(q.omega_mix);
  EXPECT_NEAR(t0, 0.125, 1e-12);
  EXPECT_NEAR(s.duration(), t0 + 0.42, 1e-12);
  EXPECT_DOUBLE_EQ(s.omega_at(0.5 * t0), q.omega_mix);
  EXPECT_DOUBLE_EQ(s.delta_at(0.5 * t0), 0.0);
  EXPECT_DOUBLE_EQ(s.omega_at(t0 + 0.05), 0.0);
  EXPECT_DOUBLE_EQ(s.delta_at(t0 + 0.05), q.delta_cost);
  EXPECT_DOUBLE_EQ(s.omega_at(t0 + 0.12), q.omega_mix);
  EXPECT_DOUBLE_EQ(s.delta_at(t0 + 0.12), 0.0);
  EXPECT_EQ(s.segments().size(), 6u);
  q.init_pulse = false;
  EXPECT_NEAR(qaoa_schedule(q).duration(), 0.42, 1e-12);
}

TEST(Qaoa, RejectsShortAndMismatchedLayers) {
  QaoaParams q;
  q.t_cost = {0.01};
  q.t_mix = {0.1};
  EXPECT_EQ(kind_of([&] { qaoa_schedule(q); }), ErrorKind::DurationTooShort);
  q.t_cost = {0.1, 0.1};
  EXPECT_EQ(kind_of([&] { qaoa_schedule(q); }), ErrorKind::LengthMismatch);
  EXPECT_THROW(qaoa_init_pulse_duration(0.0), Error);
}

TEST(Miscalibration, ScalesShiftsAndFlags) {
  const VqaaParams p{2.0, {8.0, 10.0, 8.0}, {-20.0, -5.0, 0.0, 5.0, 20.0}};
  const auto s = vqaa_schedule(p);
  const auto m = miscalibrate(s, 1.1, 2.0);
  for (double t = 0.0; t <= 2.0; t += 0.1) {
    EXPECT_NEAR(m.schedule.omega_at(t), 1.1 * s.omega_at(t), 1e-12);
    EXPECT_NEAR(m.schedule.delta_at(t), s.delta_at(t) + 2.0, 1e-12);
  }
  EXPECT_FALSE(m.exceeds_bounds);
  EXPECT_FALSE(m.degenerate);
  const auto hot = miscalibrate(s, 1.3, 0.0);
  EXPECT_TRUE(hot.exceeds_bounds);
  EXPECT_NEAR(hot.omega_peak, 1.3 * 10.0, 1e-6);
  EXPECT_TRUE(miscalibrate(s, 0.0, 0.0).degenerate);
  EXPECT_TRUE(miscalibrate(s, 1.0, 50.0).exceeds_bounds);
}

TEST(Stretch, PreservesShape) {
  const VqaaParams p{2.0, {3.0, 6.0, 3.0}, {-10.0, -5.0, 0.0, 5.0, 10.0}};
  const auto s = vqaa_schedule(p);
  const auto st = stretch(s, 1.5);
  EXPECT_DOUBLE_EQ(st.duration(), 3.0);
  for (double t = 0.0; t <= 2.0; t += 0.05) {
    EXPECT_NEAR(st.omega_at(1.5 * t), s.omega_at(t), 1e-10);
    EXPECT_NEAR(st.delta_at(1.5 * t), s.delta_at(t), 1e-10);
  }
  EXPECT_THROW(stretch(s, 0.0), Error);
}

TEST(Sampling, WaveformCsvPoints) {
  const VqaaParams p{2.0, {3.0, 6.0, 3.0}, {-10.0, -5.0, 0.0, 5.0, 10.0}};
  const auto pts = sample_waveform(vqaa_schedule(p), 11);
  ASSERT_EQ(pts.size(), 11u);
  EXPECT_DOUBLE_EQ(pts.front().t, 0.0);
  EXPECT_DOUBLE_EQ(pts.back().t, 2.0);
  EXPECT_DOUBLE_EQ(pts.back().delta, 10.0);
  EXPECT_THROW(sample_waveform(vqaa_schedule(p), 1), Error);
}

}  // namespace
}  // namespace rydmis
