// Copyright 2026 The gaugenoise Authors
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

#include <limits>
#include <vector>

#include "gaugenoise/dynamics.hpp"

namespace gaugenoise {

/// Tr{G D[rho0]}: the initial growth rate of the gauge violation, with D the
/// Lindblad-form dissipator. rho0 is in the product basis and must lie in the
/// target sector (PreconditionError otherwise).
double first_order_slope(const ModelSystem& model, const CouplingSet& couplings, const NoiseSpec& noise,
                         const DenseMatrix& rho0, double bin_tolerance = kDegeneracyTolerance);

struct ScalingFit {
  double exponent = 0.0;
  double amplitude = 0.0;  // y = amplitude * x^exponent
  double r_squared = 0.0;
  double window_min = 0.0;
  double window_max = 0.0;
  std::size_t n_points = 0;
};

/// Least-squares line through (log x, log y) for the points with x inside
/// [window_min, window_max]. Needs at least 3 points, all positive.
ScalingFit fit_power_law(const std::vector<double>& xs, const std::vector<double>& ys,
                         double window_min = 0.0,
                         double window_max = std::numeric_limits<double>::infinity());

struct GrowthWindow {
  bool empty = true;
  double t_min = 0.0;
  double t_max = 0.0;
};

/// Largest initial stretch of the trajectory whose local log-log slope of
/// epsilon(t) stays within 1 +- tolerance.
GrowthWindow linear_growth_window(const Trajectory& traj, double tolerance = 0.1);

/// Log-log interpolation of epsilon(t); t must lie inside the sampled range.
double violation_at(const Trajectory& traj, double t);

}  // namespace gaugenoise
