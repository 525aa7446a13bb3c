#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <span>

#include "vti/dataset.hpp"

namespace vti {

// CART-style binary classification tree on Gini impurity. No depth cap,
// nodes split while they hold >= min_samples_split samples and some split
// strictly decreases impurity. Fully deterministic: split ties break on
// lowest feature index then lowest threshold, leaf ties on lowest class id.
class DecisionTree {
 public:
  struct Params {
    std::size_t min_samples_split = 2;
  };

  void fit(const Dataset& train) { fit(train, Params{}); }
  void fit(const Dataset& train, const Params& params);
  int predict(std::span<const double> x) const;

  std::size_t node_count() const { return nodes_.size(); }
  std::size_t depth() const;

 private:
  struct Node {
    int feature = -1;       // -1 marks a leaf
    double threshold = 0.0; // x[feature] <= threshold goes left
    int left = -1;
    int right = -1;
    int leaf_class = 0;
  };
  std::vector<Node> nodes_;

  int grow(const Dataset& train, std::vector<std::size_t>& idx,
           const Params& params);
};

// Majority class among the k Euclidean-nearest training rows. Distance ties
// break on lower training index; vote ties go to the tied class with the
// nearest member.
int knn_classify(const Dataset& train, std::span<const double> query, std::size_t k);

// Type-erased trained model, so the harness can treat classifiers uniformly.
struct Model {
  virtual ~Model() = default;
  virtual int predict(std::span<const double> x) const = 0;
};

using TrainFn = std::function<std::unique_ptr<Model>(const Dataset&)>;

TrainFn make_decision_tree_trainer();
TrainFn make_knn_trainer(std::size_t k);

} // namespace vti
