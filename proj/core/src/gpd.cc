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

#include "rlt/gpd.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "rlt/error.h"

namespace rlt {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Non-throwing log-likelihood: -inf outside the parameter space or support.
double LogLikelihoodOrNegInf(std::span<const double> samples, double xi,
                             double scale) {
  if (!(scale > 0.0) || !std::isfinite(scale)) return kNegInf;
  double total = 0.0;
  if (std::fabs(xi) < kGpdShapeEpsilon) {
    double sum = 0.0;
    for (double x : samples) sum += x;
    return -static_cast<double>(samples.size()) * std::log(scale) - sum / scale;
  }
  const double exponent = -1.0 / xi - 1.0;
  for (double x : samples) {
    const double z = 1.0 + xi * x / scale;
    if (!(z > 0.0)) return kNegInf;
    total += exponent * std::log(z);
  }
  return total - static_cast<double>(samples.size()) * std::log(scale);
}

struct ProfileResult {
  double log_scale;
  double log_likelihood;
};

// Golden-section search for the best log(scale) at a fixed shape.
ProfileResult ProfileScale(std::span<const double> samples, double xi,
                           double x_max) {
  double lo = std::log(x_max * 1e-8);
  if (xi < 0.0) lo = std::max(lo, std::log(-xi * x_max) + 1e-12);
  double hi = std::log(x_max * 1e4);
  auto f = [&](double log_scale) {
    return LogLikelihoodOrNegInf(samples, xi, std::exp(log_scale));
  };
  constexpr double kInvPhi = 0.6180339887498949;
  double a = lo;
  double b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int iter = 0; iter < 120 && (b - a) > 1e-12; ++iter) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
  }
  return fc >= fd ? ProfileResult{c, fc} : ProfileResult{d, fd};
}

struct Vertex {
  double xi;
  double log_scale;
  double value;  // log-likelihood, maximised
};

Vertex NelderMead(std::span<const double> samples, Vertex start,
                  const GpdFitOptions& options) {
  auto f = [&](double xi, double log_scale) {
    if (xi < options.xi_min || xi > options.xi_max) return kNegInf;
    return LogLikelihoodOrNegInf(samples, xi, std::exp(log_scale));
  };
  auto make = [&](double xi, double log_scale) {
    return Vertex{xi, log_scale, f(xi, log_scale)};
  };
  std::array<Vertex, 3> simplex = {
      start,
      make(start.xi + 0.5 * options.xi_step, start.log_scale),
      make(start.xi, start.log_scale + 0.05),
  };
  auto by_value = [](const Vertex& a, const Vertex& b) {
    return a.value > b.value;
  };
  for (int iter = 0; iter < 2000; ++iter) {
    std::sort(simplex.begin(), simplex.end(), by_value);
    Vertex& best = simplex[0];
    Vertex& worst = simplex[2];
    const double spread = std::max(std::fabs(best.xi - worst.xi),
                                   std::fabs(best.log_scale - worst.log_scale));
    if (std::isfinite(worst.value) &&
        std::fabs(best.value - worst.value) <= 1e-13 * (1.0 + std::fabs(best.value)) &&
        spread < 1e-9) {
      break;
    }
    const double cx = 0.5 * (simplex[0].xi + simplex[1].xi);
    const double cy = 0.5 * (simplex[0].log_scale + simplex[1].log_scale);
    const Vertex reflected = make(cx + (cx - worst.xi), cy + (cy - worst.log_scale));
    if (reflected.value > best.value) {
      const Vertex expanded =
          make(cx + 2.0 * (cx - worst.xi), cy + 2.0 * (cy - worst.log_scale));
      worst = expanded.value > reflected.value ? expanded : reflected;
      continue;
    }
    if (reflected.value > simplex[1].value) {
      worst = reflected;
      continue;
    }
    const bool outside = reflected.value > worst.value;
    const Vertex contracted =
        outside ? make(cx + 0.5 * (reflected.xi - cx),
                       cy + 0.5 * (reflected.log_scale - cy))
                : make(cx + 0.5 * (worst.xi - cx), cy + 0.5 * (worst.log_scale - cy));
    if (contracted.value > std::max(worst.value, outside ? reflected.value : kNegInf)) {
      worst = contracted;
      continue;
    }
    for (int i = 1; i < 3; ++i) {
      simplex[i] = make(best.xi + 0.5 * (simplex[i].xi - best.xi),
                        best.log_scale + 0.5 * (simplex[i].log_scale - best.log_scale));
    }
  }
  return *std::max_element(simplex.begin(), simplex.end(),
                           [](const Vertex& a, const Vertex& b) {
                             return a.value < b.value;
                           });
}

}  // namespace

double GpdSupportEnd(double shape_xi, double scale) {
  if (shape_xi < 0.0 && std::fabs(shape_xi) >= kGpdShapeEpsilon) {
    return -scale / shape_xi;
  }
  return std::numeric_limits<double>::infinity();
}

double GpdLogDensity(double x, double shape_xi, double scale) {
  if (!(scale > 0.0) || x < 0.0) return kNegInf;
  if (std::fabs(shape_xi) < kGpdShapeEpsilon) return -std::log(scale) - x / scale;
  const double z = 1.0 + shape_xi * x / scale;
  if (!(z > 0.0)) return kNegInf;
  return -std::log(scale) + (-1.0 / shape_xi - 1.0) * std::log(z);
}

double GpdCdf(double x, double shape_xi, double scale) {
  if (x <= 0.0) return 0.0;
  if (std::fabs(shape_xi) < kGpdShapeEpsilon) return -std::expm1(-x / scale);
  const double z = 1.0 + shape_xi * x / scale;
  if (z <= 0.0) return 1.0;
  return -std::expm1(-std::log(z) / shape_xi);
}

double GpdLogLikelihood(std::span<const double> samples, double shape_xi,
                        double scale) {
  if (!(scale > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                fmt::format("GPD scale must be > 0, got {}", scale));
  }
  const double end = GpdSupportEnd(shape_xi, scale);
  for (double x : samples) {
    if (x < 0.0) {
      throw Error(ErrorCode::kInvalidArgument,
                  fmt::format("negative exceedance {}", x));
    }
    if (x >= end) {
      throw Error(ErrorCode::kSupportViolation,
                  fmt::format("sample {} outside support [0, {})", x, end));
    }
  }
  return LogLikelihoodOrNegInf(samples, shape_xi, scale);
}

double CvmStatistic(std::span<const double> samples,
                    const std::function<double(double)>& cdf) {
  if (samples.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "CvM statistic of an empty sample");
  }
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const auto n = static_cast<double>(sorted.size());
  double w2 = 1.0 / (12.0 * n);
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double plotting = (2.0 * static_cast<double>(i) + 1.0) / (2.0 * n);
    const double diff = plotting - cdf(sorted[i]);
    w2 += diff * diff;
  }
  return w2;
}

GpdFit FitGpd(std::span<const double> samples, const GpdFitOptions& options,
              std::vector<GpdGridPoint>* grid_trace) {
  if (static_cast<int>(samples.size()) < options.min_exceedances ||
      samples.size() < 2) {
    throw Error(ErrorCode::kTooFewSamples,
                fmt::format("{} exceedances, need {}", samples.size(),
                            options.min_exceedances));
  }
  const auto [min_it, max_it] = std::minmax_element(samples.begin(), samples.end());
  if (*min_it < 0.0) {
    throw Error(ErrorCode::kInvalidArgument,
                fmt::format("negative exceedance {}", *min_it));
  }
  if (*min_it == *max_it) {
    throw Error(ErrorCode::kDegenerateSample,
                fmt::format("all {} samples equal {}", samples.size(), *min_it));
  }
  const double x_max = *max_it;

  Vertex best{0.0, 0.0, kNegInf};
  const int steps = static_cast<int>(
      std::floor((options.xi_max - options.xi_min) / options.xi_step + 1e-9));
  for (int i = 0; i <= steps; ++i) {
    const double xi = options.xi_min + i * options.xi_step;
    const ProfileResult profile = ProfileScale(samples, xi, x_max);
    if (grid_trace != nullptr) {
      grid_trace->push_back({xi, std::exp(profile.log_scale), profile.log_likelihood});
    }
    if (profile.log_likelihood > best.value) {
      best = {xi, profile.log_scale, profile.log_likelihood};
    }
  }
  const Vertex refined = NelderMead(samples, best, options);
  if (refined.value > best.value) best = refined;

  GpdFit fit;
  fit.shape_xi = best.xi;
  fit.scale = std::exp(best.log_scale);
  fit.log_likelihood = best.value;
  fit.n_exceedances = static_cast<int>(samples.size());
  fit.cvm_statistic = CvmStatistic(samples, [&](double x) {
    return GpdCdf(x, fit.shape_xi, fit.scale);
  });
  return fit;
}

}  // namespace rlt
