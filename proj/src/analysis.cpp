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

#include "gaugenoise/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace gaugenoise {

double first_order_slope(const ModelSystem& model, const CouplingSet& couplings, const NoiseSpec& noise,
                         const DenseMatrix& rho0, double bin_tolerance) {
  const OperatorMatrix g = violation_operator(model);
  if (rho0.rows() != g.dim() || rho0.cols() != g.dim()) throw DimensionError("first_order_slope: state dimension mismatch");
  const double eps0 = expectation(rho0, g);
  if (std::abs(eps0) > 1e-10) {
    std::ostringstream os;
    os << "first_order_slope: initial state is outside the target sector (epsilon = " << eps0 << ")";
    throw PreconditionError(os.str());
  }
  const auto eig = hermitian_eig(model.system_hamiltonian());
  const auto d = build_lindblad_dissipator(eig, couplings, noise, bin_tolerance);
  const DenseMatrix rho_e = to_eigenbasis(rho0, eig);
  return trace_product(to_eigenbasis(g, eig), d.apply(rho_e)).real();
}

ScalingFit fit_power_law(const std::vector<double>& xs, const std::vector<double>& ys, double window_min,
                         double window_max) {
  if (xs.size() != ys.size()) throw ValidationError("fit_power_law: xs and ys differ in length");
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (xs[i] < window_min || xs[i] > window_max) continue;
    if (!(xs[i] > 0.0) || !(ys[i] > 0.0)) {
      std::ostringstream os;
      os << "fit_power_law: nonpositive data point (" << xs[i] << ", " << ys[i] << ")";
      throw ValidationError(os.str());
    }
    lx.push_back(std::log(xs[i]));
    ly.push_back(std::log(ys[i]));
  }
  if (lx.size() < 3) throw ValidationError("fit_power_law: fewer than 3 points inside the window");
  const double m = static_cast<double>(lx.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= m;
  my /= m;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
    syy += (ly[i] - my) * (ly[i] - my);
  }
  if (sxx == 0.0) throw ValidationError("fit_power_law: all x values coincide");
  ScalingFit fit;
  fit.exponent = sxy / sxx;
  fit.amplitude = std::exp(my - fit.exponent * mx);
  fit.r_squared = syy == 0.0 ? 1.0 : std::clamp(sxy * sxy / (sxx * syy), 0.0, 1.0);
  fit.window_min = std::exp(*std::min_element(lx.begin(), lx.end()));
  fit.window_max = std::exp(*std::max_element(lx.begin(), lx.end()));
  fit.n_points = lx.size();
  return fit;
}

GrowthWindow linear_growth_window(const Trajectory& traj, double tolerance) {
  std::vector<double> lt, le;
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    if (traj.times[i] > 0.0 && traj.violation[i] > 0.0) {
      lt.push_back(std::log(traj.times[i]));
      le.push_back(std::log(traj.violation[i]));
    } else if (!lt.empty()) {
      break;
    }
  }
  GrowthWindow w;
  if (lt.size() < 2) return w;
  std::size_t last = 0;
  bool any = false;
  for (std::size_t i = 0; i < lt.size(); ++i) {
    const std::size_t lo = i == 0 ? 0 : i - 1;
    const std::size_t hi = i + 1 < lt.size() ? i + 1 : i;
    const double slope = (le[hi] - le[lo]) / (lt[hi] - lt[lo]);
    if (std::abs(slope - 1.0) > tolerance) break;
    last = i;
    any = true;
  }
  if (!any) return w;
  w.empty = false;
  w.t_min = std::exp(lt.front());
  w.t_max = std::exp(lt[last]);
  return w;
}

double violation_at(const Trajectory& traj, double t) {
  const auto& ts = traj.times;
  if (ts.empty() || t < ts.front() || t > ts.back()) throw ValidationError("violation_at: time outside trajectory");
  auto it = std::lower_bound(ts.begin(), ts.end(), t);
  const auto i = static_cast<std::size_t>(it - ts.begin());
  if (ts[i] == t) return traj.violation[i];
  const double t0 = ts[i - 1], t1 = ts[i];
  const double e0 = traj.violation[i - 1], e1 = traj.violation[i];
  if (t0 > 0.0 && e0 > 0.0 && e1 > 0.0) {
    const double f = std::log(t / t0) / std::log(t1 / t0);
    return std::exp(std::log(e0) + f * std::log(e1 / e0));
  }
  return e0 + (e1 - e0) * (t - t0) / (t1 - t0);
}

}  // namespace gaugenoise
