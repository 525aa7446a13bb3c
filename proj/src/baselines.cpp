#include "vti/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

namespace vti {

namespace {

FeatureRanking ranking_from_scores(std::vector<double> scores) {
  FeatureRanking r;
  r.order.resize(scores.size());
  std::iota(r.order.begin(), r.order.end(), 0);
  std::stable_sort(r.order.begin(), r.order.end(), [&](std::size_t a, std::size_t b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return a < b;
  });
  r.scores = std::move(scores);
  return r;
}

} // namespace

FeatureRanking relief_ranking(const Dataset& d, uint64_t seed) {
  if (d.m() < 2) throw std::invalid_argument("relief: need at least 2 samples");
  if (d.num_classes() < 2) throw std::invalid_argument("relief: need at least 2 classes");
  Dataset scaled = min_max_scale(d);
  std::size_t m = scaled.m(), n = scaled.n();

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, m - 1);
  std::vector<double> w(n, 0.0);

  for (std::size_t iter = 0; iter < m; ++iter) {
    std::size_t r = pick(rng);
    const auto& x = scaled.rows[r];

    // Nearest hit and nearest miss by Manhattan distance; index breaks ties.
    std::size_t hit = m, miss = m;
    double hit_d = 0, miss_d = 0;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == r) continue;
      double dist = 0;
      for (std::size_t j = 0; j < n; ++j) dist += std::fabs(scaled.rows[i][j] - x[j]);
      if (scaled.labels[i] == scaled.labels[r]) {
        if (hit == m || dist < hit_d) {
          hit = i;
          hit_d = dist;
        }
      } else if (miss == m || dist < miss_d) {
        miss = i;
        miss_d = dist;
      }
    }
    if (hit == m || miss == m) continue; // class with a single sample

    for (std::size_t j = 0; j < n; ++j) {
      w[j] += std::fabs(x[j] - scaled.rows[miss][j]) -
              std::fabs(x[j] - scaled.rows[hit][j]);
    }
  }
  for (double& v : w) v /= static_cast<double>(m);
  return ranking_from_scores(std::move(w));
}

FeatureRanking pearson_ranking(const Dataset& d) {
  std::size_t m = d.m(), n = d.n();
  if (m < 2) throw std::invalid_argument("pearson: need at least 2 samples");
  std::vector<double> scores(n, 0.0);

  for (std::size_t j = 0; j < n; ++j) {
    double mean_x = 0;
    for (std::size_t i = 0; i < m; ++i) mean_x += d.rows[i][j];
    mean_x /= static_cast<double>(m);
    double var_x = 0;
    for (std::size_t i = 0; i < m; ++i) {
      double dx = d.rows[i][j] - mean_x;
      var_x += dx * dx;
    }
    if (var_x == 0) continue; // constant feature scores 0

    double best = 0.0;
    for (std::size_t c = 0; c < d.num_classes(); ++c) {
      double mean_y = 0;
      for (std::size_t i = 0; i < m; ++i) {
        mean_y += (static_cast<std::size_t>(d.labels[i]) == c) ? 1.0 : 0.0;
      }
      mean_y /= static_cast<double>(m);
      double cov = 0, var_y = 0;
      for (std::size_t i = 0; i < m; ++i) {
        double y = (static_cast<std::size_t>(d.labels[i]) == c) ? 1.0 : 0.0;
        cov += (d.rows[i][j] - mean_x) * (y - mean_y);
        var_y += (y - mean_y) * (y - mean_y);
      }
      if (var_y == 0) continue;
      best = std::max(best, std::fabs(cov / std::sqrt(var_x * var_y)));
    }
    scores[j] = best;
  }
  return ranking_from_scores(std::move(scores));
}

FeatureRanking fscore_ranking(const Dataset& d) {
  std::size_t m = d.m(), n = d.n();
  if (m < 2) throw std::invalid_argument("fscore: need at least 2 samples");
  std::size_t num_classes = d.num_classes();
  std::vector<double> scores(n, 0.0);

  std::vector<std::size_t> class_count(num_classes, 0);
  for (int label : d.labels) class_count[static_cast<std::size_t>(label)]++;

  for (std::size_t j = 0; j < n; ++j) {
    double grand_mean = 0;
    for (std::size_t i = 0; i < m; ++i) grand_mean += d.rows[i][j];
    grand_mean /= static_cast<double>(m);

    std::vector<double> class_mean(num_classes, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
      class_mean[static_cast<std::size_t>(d.labels[i])] += d.rows[i][j];
    }
    for (std::size_t c = 0; c < num_classes; ++c) {
      if (class_count[c] > 0) class_mean[c] /= static_cast<double>(class_count[c]);
    }

    double between = 0, within = 0;
    for (std::size_t c = 0; c < num_classes; ++c) {
      double dm = class_mean[c] - grand_mean;
      between += static_cast<double>(class_count[c]) * dm * dm;
    }
    for (std::size_t i = 0; i < m; ++i) {
      double dv = d.rows[i][j] - class_mean[static_cast<std::size_t>(d.labels[i])];
      within += dv * dv;
    }
    scores[j] = within == 0 ? 0.0 : between / within;
  }
  return ranking_from_scores(std::move(scores));
}

} // namespace vti
