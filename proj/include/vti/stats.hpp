#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

namespace vti {

// Summary statistics with the degenerate-input convention used across the
// feature set: every statistic of an empty series is 0. Std is population
// (divide by count).
struct SeriesStats {
  double sum = 0.0;
  double mean = 0.0;
  double min = 0.0;
  double max = 0.0;
  double stddev = 0.0;
};

inline SeriesStats series_stats(std::span<const double> xs) {
  SeriesStats s;
  if (xs.empty()) return s;
  s.min = xs[0];
  s.max = xs[0];
  for (double x : xs) {
    s.sum += x;
    s.min = std::min(s.min, x);
    s.max = std::max(s.max, x);
  }
  s.mean = s.sum / static_cast<double>(xs.size());
  double acc = 0.0;
  for (double x : xs) acc += (x - s.mean) * (x - s.mean);
  s.stddev = std::sqrt(acc / static_cast<double>(xs.size()));
  return s;
}

// Linear-interpolation quantile (the numpy "linear" convention), q in [0,1].
// Empty input yields 0.
inline double quantile_linear(std::vector<double> xs, double q) {
  if (xs.empty()) return 0.0;
  std::sort(xs.begin(), xs.end());
  if (xs.size() == 1) return xs[0];
  double pos = q * static_cast<double>(xs.size() - 1);
  auto lo = static_cast<std::size_t>(pos);
  if (lo >= xs.size() - 1) return xs.back();
  double frac = pos - static_cast<double>(lo);
  return xs[lo] + frac * (xs[lo + 1] - xs[lo]);
}

} // namespace vti
