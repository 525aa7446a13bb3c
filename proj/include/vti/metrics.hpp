#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace vti {

// Rows are true classes, columns are predicted classes.
struct ConfusionMatrix {
  std::vector<std::vector<int64_t>> counts;

  explicit ConfusionMatrix(std::size_t num_classes = 0)
      : counts(num_classes, std::vector<int64_t>(num_classes, 0)) {}

  std::size_t num_classes() const { return counts.size(); }
  void add(std::size_t truth, std::size_t predicted) { counts[truth][predicted]++; }
  int64_t total() const;
  void merge(const ConfusionMatrix& other);
};

// trace / total. Throws on an empty matrix.
double accuracy(const ConfusionMatrix& cm);

double precision_of(const ConfusionMatrix& cm, std::size_t c); // 0/0 -> 0
double recall_of(const ConfusionMatrix& cm, std::size_t c);    // 0/0 -> 0
double f1_of(const ConfusionMatrix& cm, std::size_t c);

// Unweighted mean of per-class F1.
double macro_f1(const ConfusionMatrix& cm);

} // namespace vti
