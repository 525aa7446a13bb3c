#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "vti/addfs.hpp"
#include "vti/classifiers.hpp"
#include "vti/cross_validation.hpp"
#include "vti/dataset.hpp"
#include "vti/metrics.hpp"

namespace vti {

using SelectorFn = std::function<FeatureRanking(const Dataset&)>;

enum class SelectorKind { addfs, relief, pearson, fscore, none };

SelectorKind selector_from_name(const std::string& name);
std::string selector_name(SelectorKind kind);

// `none` ranks features in their original order (no selection signal).
SelectorFn make_selector(SelectorKind kind, const AddfsParams& addfs_params,
                         uint64_t seed);

struct EvalOutcome {
  std::vector<double> fold_acc;
  std::vector<double> fold_f1;
  double mean_acc = 0.0;
  double mean_f1 = 0.0;
  double std_acc = 0.0; // population std over folds
  double std_f1 = 0.0;
  ConfusionMatrix aggregate{0};
};

// Plain k-fold evaluation of a classifier on the given dataset.
EvalOutcome cross_validate(const Dataset& d, const TrainFn& train,
                           std::size_t k_folds, uint64_t seed, unsigned jobs = 1);

struct SweepPoint {
  double fraction = 1.0;
  std::size_t n_features = 0;
  EvalOutcome outcome;
};

struct SweepReport {
  std::string selector;
  std::vector<SweepPoint> points;
};

// For each fraction: rank features on each training fold only (unless
// `leaky`, which fits the selector once on the full dataset), keep the top
// ceil(fraction*n), train and evaluate. Deterministic under a fixed seed.
SweepReport run_sweep(const Dataset& d, const SelectorFn& selector,
                      const std::string& selector_label,
                      const std::vector<double>& fractions, const TrainFn& train,
                      std::size_t k_folds, uint64_t seed, bool leaky = false,
                      unsigned jobs = 1);

struct AblationReport {
  EvalOutcome full;    // all 89 features
  EvalOutcome reduced; // peak-point columns removed (64 features)
  std::size_t removed_columns = 0;
  double delta_acc = 0.0;
  double delta_f1 = 0.0;
};

// Full feature set vs. the set with every PPP/BRPP/BRPPSW-derived column
// removed. The dataset's columns must follow the canonical naming.
AblationReport ablation_peak_features(const Dataset& d, const TrainFn& train,
                                      std::size_t k_folds, uint64_t seed,
                                      unsigned jobs = 1);

void write_sweep_csv(const std::filesystem::path& path,
                     const std::vector<SweepReport>& reports);

} // namespace vti
