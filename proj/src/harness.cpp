#include "vti/harness.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <stdexcept>

#include "vti/baselines.hpp"
#include "vti/csv.hpp"
#include "vti/features.hpp"
#include "vti/parallel.hpp"
#include "vti/stats.hpp"

namespace vti {

SelectorKind selector_from_name(const std::string& name) {
  if (name == "addfs") return SelectorKind::addfs;
  if (name == "relief") return SelectorKind::relief;
  if (name == "pearson") return SelectorKind::pearson;
  if (name == "fscore") return SelectorKind::fscore;
  if (name == "none") return SelectorKind::none;
  throw std::invalid_argument("unknown selector: " + name);
}

std::string selector_name(SelectorKind kind) {
  switch (kind) {
    case SelectorKind::addfs: return "addfs";
    case SelectorKind::relief: return "relief";
    case SelectorKind::pearson: return "pearson";
    case SelectorKind::fscore: return "fscore";
    case SelectorKind::none: return "none";
  }
  return "?";
}

SelectorFn make_selector(SelectorKind kind, const AddfsParams& addfs_params,
                         uint64_t seed) {
  switch (kind) {
    case SelectorKind::addfs:
      return [addfs_params](const Dataset& d) { return rank_features(d, addfs_params); };
    case SelectorKind::relief:
      return [seed](const Dataset& d) { return relief_ranking(d, seed); };
    case SelectorKind::pearson:
      return [](const Dataset& d) { return pearson_ranking(d); };
    case SelectorKind::fscore:
      return [](const Dataset& d) { return fscore_ranking(d); };
    case SelectorKind::none:
      return [](const Dataset& d) {
        FeatureRanking r;
        r.scores.assign(d.n(), 0.0);
        r.order.resize(d.n());
        std::iota(r.order.begin(), r.order.end(), 0);
        return r;
      };
  }
  throw std::invalid_argument("make_selector: bad kind");
}

namespace {

void finish_outcome(EvalOutcome& out) {
  SeriesStats acc = series_stats(out.fold_acc);
  SeriesStats f1 = series_stats(out.fold_f1);
  out.mean_acc = acc.mean;
  out.std_acc = acc.stddev;
  out.mean_f1 = f1.mean;
  out.std_f1 = f1.stddev;
}

EvalOutcome evaluate_folds(const Dataset& d, const TrainFn& train,
                           const std::vector<FoldSplit>& folds,
                           const std::vector<std::vector<std::size_t>>* fold_features,
                           unsigned jobs) {
  EvalOutcome out;
  out.fold_acc.resize(folds.size());
  out.fold_f1.resize(folds.size());
  std::vector<ConfusionMatrix> cms(folds.size(), ConfusionMatrix(d.num_classes()));

  parallel_for(folds.size(), jobs, [&](std::size_t f) {
    Dataset train_set = select_rows(d, folds[f].train);
    Dataset test_set = select_rows(d, folds[f].test);
    if (fold_features) {
      train_set = select_columns(train_set, (*fold_features)[f]);
      test_set = select_columns(test_set, (*fold_features)[f]);
    }
    auto model = train(train_set);
    ConfusionMatrix cm(d.num_classes());
    for (std::size_t i = 0; i < test_set.m(); ++i) {
      cm.add(static_cast<std::size_t>(test_set.labels[i]),
             static_cast<std::size_t>(model->predict(test_set.rows[i])));
    }
    out.fold_acc[f] = accuracy(cm);
    out.fold_f1[f] = macro_f1(cm);
    cms[f] = std::move(cm);
  });

  out.aggregate = ConfusionMatrix(d.num_classes());
  for (const auto& cm : cms) out.aggregate.merge(cm);
  finish_outcome(out);
  return out;
}

} // namespace

EvalOutcome cross_validate(const Dataset& d, const TrainFn& train,
                           std::size_t k_folds, uint64_t seed, unsigned jobs) {
  auto folds = stratified_kfold(d, k_folds, seed);
  return evaluate_folds(d, train, folds, nullptr, jobs);
}

SweepReport run_sweep(const Dataset& d, const SelectorFn& selector,
                      const std::string& selector_label,
                      const std::vector<double>& fractions, const TrainFn& train,
                      std::size_t k_folds, uint64_t seed, bool leaky, unsigned jobs) {
  for (double f : fractions) {
    if (!(f > 0.0 && f <= 1.0)) {
      throw std::invalid_argument("run_sweep: fraction out of (0,1]");
    }
  }
  auto folds = stratified_kfold(d, k_folds, seed);

  // Fit the selector on each fold's training rows only; the leaky variant
  // (for reproduction studies) fits once on everything.
  std::vector<FeatureRanking> rankings(folds.size());
  if (leaky) {
    FeatureRanking whole = selector(d);
    for (auto& r : rankings) r = whole;
  } else {
    parallel_for(folds.size(), jobs, [&](std::size_t f) {
      rankings[f] = selector(select_rows(d, folds[f].train));
    });
  }

  SweepReport report;
  report.selector = selector_label;
  for (double fraction : fractions) {
    std::vector<std::vector<std::size_t>> fold_features(folds.size());
    for (std::size_t f = 0; f < folds.size(); ++f) {
      fold_features[f] = select_top(rankings[f], fraction);
      std::sort(fold_features[f].begin(), fold_features[f].end());
    }
    SweepPoint point;
    point.fraction = fraction;
    point.n_features = fold_features[0].size();
    point.outcome = evaluate_folds(d, train, folds, &fold_features, jobs);
    report.points.push_back(std::move(point));
  }
  return report;
}

AblationReport ablation_peak_features(const Dataset& d, const TrainFn& train,
                                      std::size_t k_folds, uint64_t seed,
                                      unsigned jobs) {
  const auto& peaks = peak_feature_names();
  std::vector<std::size_t> keep;
  std::size_t removed = 0;
  for (std::size_t j = 0; j < d.feature_names.size(); ++j) {
    bool is_peak = std::find(peaks.begin(), peaks.end(), d.feature_names[j]) != peaks.end();
    if (is_peak) {
      removed++;
    } else {
      keep.push_back(j);
    }
  }
  if (removed != peaks.size()) {
    throw std::invalid_argument(
        "ablation: dataset columns do not follow the canonical naming (found " +
        std::to_string(removed) + " of " + std::to_string(peaks.size()) +
        " peak columns)");
  }

  AblationReport rep;
  rep.removed_columns = removed;
  auto folds = stratified_kfold(d, k_folds, seed);
  rep.full = evaluate_folds(d, train, folds, nullptr, jobs);
  Dataset reduced = select_columns(d, keep);
  rep.reduced = evaluate_folds(reduced, train, folds, nullptr, jobs);
  rep.delta_acc = rep.full.mean_acc - rep.reduced.mean_acc;
  rep.delta_f1 = rep.full.mean_f1 - rep.reduced.mean_f1;
  return rep;
}

void write_sweep_csv(const std::filesystem::path& path,
                     const std::vector<SweepReport>& reports) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write sweep csv: " + path.string());
  out << "selector,fraction,n_features,mean_acc,mean_f1,std_acc,std_f1\n";
  for (const SweepReport& rep : reports) {
    for (const SweepPoint& p : rep.points) {
      out << rep.selector << ',' << csv::format_double(p.fraction) << ','
          << p.n_features << ',' << csv::format_double(p.outcome.mean_acc) << ','
          << csv::format_double(p.outcome.mean_f1) << ','
          << csv::format_double(p.outcome.std_acc) << ','
          << csv::format_double(p.outcome.std_f1) << '\n';
    }
  }
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

} // namespace vti
