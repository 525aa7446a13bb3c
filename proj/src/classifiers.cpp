#include "vti/classifiers.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace vti {

namespace {

double gini(const std::vector<std::size_t>& counts, std::size_t total) {
  if (total == 0) return 0.0;
  double g = 1.0;
  for (std::size_t c : counts) {
    double p = static_cast<double>(c) / static_cast<double>(total);
    g -= p * p;
  }
  return g;
}

int majority_class(const std::vector<std::size_t>& counts) {
  std::size_t best = 0;
  for (std::size_t c = 1; c < counts.size(); ++c) {
    if (counts[c] > counts[best]) best = c; // tie keeps the lowest class id
  }
  return static_cast<int>(best);
}

struct BestSplit {
  bool found = false;
  std::size_t feature = 0;
  double threshold = 0.0;
  double decrease = 0.0;
};

} // namespace

int DecisionTree::grow(const Dataset& train, std::vector<std::size_t>& idx,
                       const Params& params) {
  std::size_t num_classes = train.num_classes();
  std::vector<std::size_t> counts(num_classes, 0);
  for (std::size_t i : idx) counts[static_cast<std::size_t>(train.labels[i])]++;

  double node_gini = gini(counts, idx.size());
  auto make_leaf = [&] {
    Node leaf;
    leaf.leaf_class = majority_class(counts);
    nodes_.push_back(leaf);
    return static_cast<int>(nodes_.size()) - 1;
  };
  if (idx.size() < params.min_samples_split || node_gini == 0.0) return make_leaf();

  // Exhaustive scan: for each feature, midpoint thresholds between adjacent
  // distinct sorted values, evaluated with prefix class counts.
  BestSplit best;
  std::size_t n_features = train.n();
  std::vector<std::size_t> sorted(idx);
  std::vector<std::size_t> left_counts(num_classes);
  double parent_impurity = node_gini * static_cast<double>(idx.size());

  for (std::size_t f = 0; f < n_features; ++f) {
    std::sort(sorted.begin(), sorted.end(), [&](std::size_t a, std::size_t b) {
      double va = train.rows[a][f], vb = train.rows[b][f];
      if (va != vb) return va < vb;
      return a < b;
    });
    std::fill(left_counts.begin(), left_counts.end(), 0);
    for (std::size_t pos = 0; pos + 1 < sorted.size(); ++pos) {
      left_counts[static_cast<std::size_t>(train.labels[sorted[pos]])]++;
      double v = train.rows[sorted[pos]][f];
      double v_next = train.rows[sorted[pos + 1]][f];
      if (v == v_next) continue;

      std::size_t n_left = pos + 1;
      std::size_t n_right = sorted.size() - n_left;
      double left_g = 0.0, right_g = 0.0;
      {
        double gl = 1.0, gr = 1.0;
        for (std::size_t c = 0; c < num_classes; ++c) {
          double pl = static_cast<double>(left_counts[c]) / static_cast<double>(n_left);
          double pr = static_cast<double>(counts[c] - left_counts[c]) /
                      static_cast<double>(n_right);
          gl -= pl * pl;
          gr -= pr * pr;
        }
        left_g = gl;
        right_g = gr;
      }
      double child_impurity = left_g * static_cast<double>(n_left) +
                              right_g * static_cast<double>(n_right);
      double decrease = parent_impurity - child_impurity;
      if (decrease > best.decrease + 1e-12 && decrease > 1e-12) {
        best.found = true;
        best.feature = f;
        best.threshold = v + (v_next - v) / 2.0;
        best.decrease = decrease;
      }
    }
  }
  if (!best.found) return make_leaf();

  std::vector<std::size_t> left_idx, right_idx;
  for (std::size_t i : idx) {
    (train.rows[i][best.feature] <= best.threshold ? left_idx : right_idx).push_back(i);
  }
  // A midpoint threshold always separates; guard against float surprises.
  if (left_idx.empty() || right_idx.empty()) return make_leaf();

  Node node;
  node.feature = static_cast<int>(best.feature);
  node.threshold = best.threshold;
  nodes_.push_back(node);
  auto self = static_cast<int>(nodes_.size()) - 1;
  idx.clear();
  idx.shrink_to_fit();
  nodes_[static_cast<std::size_t>(self)].left = grow(train, left_idx, params);
  nodes_[static_cast<std::size_t>(self)].right = grow(train, right_idx, params);
  return self;
}

void DecisionTree::fit(const Dataset& train, const Params& params) {
  if (train.m() == 0) throw std::invalid_argument("DecisionTree: empty training set");
  nodes_.clear();
  std::vector<std::size_t> idx(train.m());
  std::iota(idx.begin(), idx.end(), 0);
  grow(train, idx, params);
}

int DecisionTree::predict(std::span<const double> x) const {
  if (nodes_.empty()) throw std::logic_error("DecisionTree: predict before fit");
  std::size_t at = 0;
  for (;;) {
    const Node& node = nodes_[at];
    if (node.feature < 0) return node.leaf_class;
    at = static_cast<std::size_t>(
        x[static_cast<std::size_t>(node.feature)] <= node.threshold ? node.left
                                                                    : node.right);
  }
}

std::size_t DecisionTree::depth() const {
  // Nodes are stored parent-before-children; walk recursively from the root.
  std::function<std::size_t(std::size_t)> walk = [&](std::size_t at) -> std::size_t {
    const Node& node = nodes_[at];
    if (node.feature < 0) return 0;
    return 1 + std::max(walk(static_cast<std::size_t>(node.left)),
                        walk(static_cast<std::size_t>(node.right)));
  };
  return nodes_.empty() ? 0 : walk(0);
}

int knn_classify(const Dataset& train, std::span<const double> query, std::size_t k) {
  if (train.m() == 0) throw std::invalid_argument("knn: empty training set");
  if (k < 1 || k > train.m()) throw std::invalid_argument("knn: k out of range");

  std::vector<std::pair<double, std::size_t>> dist; // (squared distance, index)
  dist.reserve(train.m());
  for (std::size_t i = 0; i < train.m(); ++i) {
    double d2 = 0.0;
    const auto& row = train.rows[i];
    for (std::size_t j = 0; j < row.size(); ++j) {
      double d = row[j] - query[j];
      d2 += d * d;
    }
    dist.emplace_back(d2, i);
  }
  std::partial_sort(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(k),
                    dist.end());

  std::vector<std::size_t> votes(train.num_classes(), 0);
  for (std::size_t r = 0; r < k; ++r) {
    votes[static_cast<std::size_t>(train.labels[dist[r].second])]++;
  }
  std::size_t best_votes = *std::max_element(votes.begin(), votes.end());
  // Vote tie: the tied class with the nearest member wins.
  for (std::size_t r = 0; r < k; ++r) {
    auto c = static_cast<std::size_t>(train.labels[dist[r].second]);
    if (votes[c] == best_votes) return static_cast<int>(c);
  }
  return 0; // unreachable
}

namespace {

struct TreeModel : Model {
  DecisionTree tree;
  int predict(std::span<const double> x) const override { return tree.predict(x); }
};

struct KnnModel : Model {
  Dataset train;
  std::size_t k;
  int predict(std::span<const double> x) const override {
    return knn_classify(train, x, std::min(k, train.m()));
  }
};

} // namespace

TrainFn make_decision_tree_trainer() {
  return [](const Dataset& train) -> std::unique_ptr<Model> {
    auto m = std::make_unique<TreeModel>();
    m->tree.fit(train);
    return m;
  };
}

TrainFn make_knn_trainer(std::size_t k) {
  return [k](const Dataset& train) -> std::unique_ptr<Model> {
    auto m = std::make_unique<KnnModel>();
    m->train = train;
    m->k = k;
    return m;
  };
}

} // namespace vti
