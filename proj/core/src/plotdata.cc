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

#include "rlt/plotdata.h"

#include <algorithm>
#include <cmath>
#include <map>

#include <fmt/format.h>

#include "rlt/error.h"

namespace rlt {
namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                    "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
                                    "#bcbd22", "#17becf"};

// Plot area inside a fixed-size document, mapping data to pixels.
class Frame {
 public:
  Frame(double left, double top, double width, double height, double x_min,
        double x_max, double y_min, double y_max)
      : left_(left), top_(top), width_(width), height_(height),
        x_min_(x_min), x_max_(x_max > x_min ? x_max : x_min + 1.0),
        y_min_(y_min), y_max_(y_max > y_min ? y_max : y_min + 1.0) {}

  double X(double v) const {
    return left_ + (v - x_min_) / (x_max_ - x_min_) * width_;
  }
  double Y(double v) const {
    return top_ + height_ - (v - y_min_) / (y_max_ - y_min_) * height_;
  }

  std::string Axes(const std::string& x_label, const std::string& y_label,
                   int ticks = 5) const {
    std::string out = fmt::format(
        "<rect x=\"{:.1f}\" y=\"{:.1f}\" width=\"{:.1f}\" height=\"{:.1f}\" "
        "fill=\"none\" stroke=\"#333\"/>\n",
        left_, top_, width_, height_);
    for (int i = 0; i <= ticks; ++i) {
      const double xv = x_min_ + (x_max_ - x_min_) * i / ticks;
      const double yv = y_min_ + (y_max_ - y_min_) * i / ticks;
      out += fmt::format(
          "<text x=\"{:.1f}\" y=\"{:.1f}\" font-size=\"10\" "
          "text-anchor=\"middle\">{}</text>\n",
          X(xv), top_ + height_ + 14, fmt::format("{:.3g}", xv));
      out += fmt::format(
          "<text x=\"{:.1f}\" y=\"{:.1f}\" font-size=\"10\" "
          "text-anchor=\"end\">{}</text>\n",
          left_ - 4, Y(yv) + 3, fmt::format("{:.3g}", yv));
    }
    out += fmt::format(
        "<text x=\"{:.1f}\" y=\"{:.1f}\" font-size=\"12\" "
        "text-anchor=\"middle\">{}</text>\n",
        left_ + width_ / 2, top_ + height_ + 32, XmlEscape(x_label));
    out += fmt::format(
        "<text x=\"{:.1f}\" y=\"{:.1f}\" font-size=\"12\" text-anchor=\"middle\" "
        "transform=\"rotate(-90 {:.1f} {:.1f})\">{}</text>\n",
        left_ - 40, top_ + height_ / 2, left_ - 40, top_ + height_ / 2,
        XmlEscape(y_label));
    return out;
  }

 private:
  double left_, top_, width_, height_;
  double x_min_, x_max_, y_min_, y_max_;
};

std::string Document(double width, double height, const std::string& title,
                     const std::string& body) {
  return fmt::format(
      "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{:.0f}\" "
      "height=\"{:.0f}\" viewBox=\"0 0 {:.0f} {:.0f}\" "
      "font-family=\"sans-serif\">\n"
      "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      "<text x=\"{:.1f}\" y=\"20\" font-size=\"14\" "
      "text-anchor=\"middle\">{}</text>\n{}</svg>\n",
      width, height, width, height, width / 2, XmlEscape(title), body);
}

}  // namespace

std::string XmlEscape(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::vector<CdfPoint> CutoffCdf(const TruncationPrediction& prediction) {
  std::map<int, int> counts;
  for (const auto& [query_id, k] : prediction.cutoffs) ++counts[k];
  std::vector<CdfPoint> cdf;
  const auto total = static_cast<double>(prediction.cutoffs.size());
  int running = 0;
  for (const auto& [k, count] : counts) {
    running += count;
    cdf.push_back({k, running / total});
  }
  return cdf;
}

Histogram CutoffHistogram(std::span<const int> cutoffs, int list_depth,
                          int bins) {
  if (list_depth < 1 || bins < 1) {
    throw Error(ErrorCode::kInvalidArgument, "histogram needs depth, bins >= 1");
  }
  Histogram h;
  h.bin_width = static_cast<double>(list_depth) / bins;
  h.counts.assign(bins, 0);
  for (int k : cutoffs) {
    auto bin = static_cast<int>(std::floor(k / h.bin_width));
    bin = std::clamp(bin, 0, bins - 1);
    ++h.counts[bin];
  }
  return h;
}

std::string RenderTradeoffSvg(std::span<const ScatterPoint> methods,
                              std::span<const ScatterPoint> frontier,
                              const std::string& title,
                              const std::string& metric_label) {
  constexpr double kWidth = 760;
  constexpr double kHeight = 460;
  double x_max = 0.0;
  double y_min = 1.0;
  double y_max = 0.0;
  auto extend = [&](const ScatterPoint& p) {
    x_max = std::max(x_max, p.latency);
    y_min = std::min(y_min, p.metric);
    y_max = std::max(y_max, p.metric);
  };
  for (const auto& p : methods) extend(p);
  for (const auto& p : frontier) extend(p);
  const double pad = std::max(0.01, (y_max - y_min) * 0.05);
  const Frame frame(70, 40, 460, 360, 0.0, x_max * 1.05, y_min - pad, y_max + pad);
  std::string body = frame.Axes("Mean latency per query (s)", metric_label);

  if (!frontier.empty()) {
    std::string points;
    for (const auto& p : frontier) {
      points += fmt::format("{:.1f},{:.1f} ", frame.X(p.latency), frame.Y(p.metric));
    }
    body += fmt::format(
        "<polyline points=\"{}\" fill=\"none\" stroke=\"#999\" "
        "stroke-dasharray=\"4 3\"/>\n",
        points);
  }
  for (std::size_t i = 0; i < methods.size(); ++i) {
    const auto& p = methods[i];
    const char* color = kPalette[i % std::size(kPalette)];
    body += fmt::format(
        "<circle cx=\"{:.1f}\" cy=\"{:.1f}\" r=\"4\" fill=\"{}\"/>\n",
        frame.X(p.latency), frame.Y(p.metric), color);
    const double ly = 50 + 16 * static_cast<double>(i);
    body += fmt::format(
        "<circle cx=\"550\" cy=\"{:.1f}\" r=\"4\" fill=\"{}\"/>\n"
        "<text x=\"560\" y=\"{:.1f}\" font-size=\"11\">{}</text>\n",
        ly, color, ly + 4, XmlEscape(p.label));
  }
  if (!frontier.empty()) {
    const double ly = 50 + 16 * static_cast<double>(methods.size());
    body += fmt::format(
        "<line x1=\"542\" y1=\"{:.1f}\" x2=\"558\" y2=\"{:.1f}\" stroke=\"#999\" "
        "stroke-dasharray=\"4 3\"/>\n"
        "<text x=\"562\" y=\"{:.1f}\" font-size=\"11\">Fixed-k frontier</text>\n",
        ly, ly, ly + 4);
  }
  return Document(kWidth, kHeight, title, body);
}

std::string RenderHistogramsSvg(
    const std::vector<std::pair<std::string, Histogram>>& histograms,
    int list_depth, const std::string& title) {
  constexpr double kPanelWidth = 300;
  constexpr double kPanelHeight = 180;
  constexpr int kColumns = 3;
  const int rows = std::max<int>(1, (static_cast<int>(histograms.size()) + kColumns - 1) / kColumns);
  const double width = kColumns * kPanelWidth;
  const double height = 40 + rows * kPanelHeight;
  std::string body;
  for (std::size_t i = 0; i < histograms.size(); ++i) {
    const auto& [label, h] = histograms[i];
    const double left = static_cast<double>(i % kColumns) * kPanelWidth + 50;
    const double top = 40 + static_cast<double>(i / kColumns) * kPanelHeight + 20;
    int peak = 1;
    for (int c : h.counts) peak = std::max(peak, c);
    const Frame frame(left, top, kPanelWidth - 70, kPanelHeight - 70, 0.0,
                      list_depth, 0.0, peak);
    body += frame.Axes("cut-off k", "queries", 4);
    body += fmt::format(
        "<text x=\"{:.1f}\" y=\"{:.1f}\" font-size=\"11\" "
        "text-anchor=\"middle\">{}</text>\n",
        left + (kPanelWidth - 70) / 2, top - 6, XmlEscape(label));
    for (std::size_t b = 0; b < h.counts.size(); ++b) {
      if (h.counts[b] == 0) continue;
      const double x0 = frame.X(h.bin_width * static_cast<double>(b));
      const double x1 = frame.X(h.bin_width * static_cast<double>(b + 1));
      const double y = frame.Y(h.counts[b]);
      body += fmt::format(
          "<rect x=\"{:.1f}\" y=\"{:.1f}\" width=\"{:.1f}\" height=\"{:.1f}\" "
          "fill=\"{}\"/>\n",
          x0, y, std::max(0.5, x1 - x0 - 0.5), frame.Y(0.0) - y,
          kPalette[i % std::size(kPalette)]);
    }
  }
  return Document(width, height, title, body);
}

std::string RenderCdfSvg(std::span<const CdfPoint> cdf, int list_depth,
                         const std::string& title) {
  constexpr double kWidth = 520;
  constexpr double kHeight = 400;
  const Frame frame(70, 40, 400, 300, 0.0, list_depth, 0.0, 1.0);
  std::string body = frame.Axes("oracle cut-off k", "fraction of queries");
  std::string points;
  double previous = 0.0;
  points += fmt::format("{:.1f},{:.1f} ", frame.X(0.0), frame.Y(0.0));
  for (const auto& p : cdf) {
    points += fmt::format("{:.1f},{:.1f} ", frame.X(p.k), frame.Y(previous));
    points += fmt::format("{:.1f},{:.1f} ", frame.X(p.k), frame.Y(p.fraction));
    previous = p.fraction;
  }
  points += fmt::format("{:.1f},{:.1f}", frame.X(list_depth), frame.Y(previous));
  body += fmt::format(
      "<polyline points=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"2\"/>\n",
      points, kPalette[0]);
  return Document(kWidth, kHeight, title, body);
}

}  // namespace rlt
