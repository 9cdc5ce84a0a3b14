// Copyright 2026 The rltlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef RLT_GPD_H_
#define RLT_GPD_H_

#include <functional>
#include <span>
#include <vector>

namespace rlt {

// Generalized Pareto distribution fitted to threshold exceedances.
struct GpdFit {
  double threshold_u = 0.0;
  double shape_xi = 0.0;
  double scale = 1.0;
  int n_exceedances = 0;
  double cvm_statistic = 0.0;
  double log_likelihood = 0.0;
};

// Below this magnitude the shape is treated as 0 (exponential limit).
inline constexpr double kGpdShapeEpsilon = 1e-9;

// Upper end of the support: -scale/xi for xi < 0, +inf otherwise.
double GpdSupportEnd(double shape_xi, double scale);

double GpdLogDensity(double x, double shape_xi, double scale);
double GpdCdf(double x, double shape_xi, double scale);

// Sum of log densities. Throws kSupportViolation when a sample lies outside
// the support and kInvalidArgument for scale <= 0 or negative samples.
double GpdLogLikelihood(std::span<const double> samples, double shape_xi,
                        double scale);

// W^2 = 1/(12n) + sum_i ((2i-1)/(2n) - F(x_(i)))^2 over sorted samples.
double CvmStatistic(std::span<const double> samples,
                    const std::function<double(double)>& cdf);

struct GpdFitOptions {
  int min_exceedances = 10;
  double xi_min = -0.9;
  double xi_max = 2.0;
  double xi_step = 0.05;
};

struct GpdGridPoint {
  double shape_xi;
  double scale;
  double log_likelihood;
};

// Maximum likelihood by derivative-free search: a shape grid with the scale
// profiled by golden-section search in log-scale, then Nelder-Mead over
// (shape, log scale) from the best grid point, bounded to the grid's shape
// range. Deterministic. `grid_trace`, when non-null, receives every grid
// point evaluated. threshold_u is left at 0 for the caller to fill.
// Throws kTooFewSamples, kDegenerateSample.
GpdFit FitGpd(std::span<const double> samples, const GpdFitOptions& options = {},
              std::vector<GpdGridPoint>* grid_trace = nullptr);

}  // namespace rlt

#endif  // RLT_GPD_H_
