#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "vti/dataset.hpp"

namespace vti {

// Min-Max scaling to [0,1] per feature column; a constant column maps to
// all-zeros.
Dataset min_max_scale(const Dataset& d);
std::vector<double> min_max_scale_column(std::span<const double> col);

// Chi-square statistic of two adjacent intervals' class-count rows
// (Kerber's 2xC table). Expected-frequency-zero terms contribute 0; two
// empty intervals score 0 so they merge first.
double chi_square(std::span<const std::size_t> row_a,
                  std::span<const std::size_t> row_b);

// Chi-square critical value, df in 1..20, confidence in {0.90, 0.95, 0.99}.
double chi_square_critical(std::size_t df, double confidence);

// k consecutive intervals over the observed value range. cut_points holds
// the k-1 interior boundaries (midpoints between adjacent surviving
// distinct values); lo/hi are the observed extremes. A value exactly on a
// cut point belongs to the left interval.
struct IntervalPartition {
  std::vector<double> cut_points;
  double lo = 0.0;
  double hi = 0.0;

  std::size_t k() const { return cut_points.size() + 1; }
  std::size_t interval_of(double x) const;
};

// Bottom-up supervised discretization: start from one interval per distinct
// value, repeatedly merge the adjacent pair with minimal chi-square while
// the interval count exceeds max_intervals or the minimal chi-square is
// below the critical value at `confidence` with num_classes-1 degrees of
// freedom (or until one interval remains).
IntervalPartition chimerge(std::span<const double> values, std::span<const int> labels,
                           std::size_t num_classes, std::size_t max_intervals,
                           double confidence);

enum class SupportMode { midpoint, bin_index };

// Per-class relative frequencies over the partition's intervals. Every row
// sums to 1; a class with zero samples is an error. Support positions are
// interval midpoints in feature space, or 0,1,2,... in bin_index mode.
struct ClassDistributionMatrix {
  std::vector<std::vector<double>> p; // C x k
  std::vector<double> support;        // k ascending positions
};

ClassDistributionMatrix class_distributions(std::span<const double> values,
                                            std::span<const int> labels,
                                            std::size_t num_classes,
                                            const IntervalPartition& partition,
                                            SupportMode mode = SupportMode::midpoint);

// 1-D optimal transport cost with ground metric |x-y| over a shared
// ascending support: sum_i |CDFp_i - CDFq_i| * (support_{i+1} - support_i).
// p and q must be normalized within 1e-9.
double wasserstein_1d(std::span<const double> p, std::span<const double> q,
                      std::span<const double> support);

// Sum of pairwise Wasserstein distances over all unordered class pairs.
double feature_score(const ClassDistributionMatrix& dist);

struct FeatureRanking {
  std::vector<double> scores;       // per original feature index
  std::vector<std::size_t> order;   // feature indices, score descending,
                                    // ties by ascending index
};

struct AddfsParams {
  std::size_t max_intervals = 15;
  double confidence = 0.95;
  SupportMode support = SupportMode::midpoint;
};

// The full pipeline: scale, then per feature chimerge -> distributions ->
// score; pure function of its inputs.
FeatureRanking rank_features(const Dataset& d, const AddfsParams& params = {});

// First ceil(fraction * n) indices of the ranking order, fraction in (0,1].
std::vector<std::size_t> select_top(const FeatureRanking& r, double fraction);

} // namespace vti
