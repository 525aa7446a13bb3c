#include "vti/metrics.hpp"

#include <stdexcept>

namespace vti {

int64_t ConfusionMatrix::total() const {
  int64_t t = 0;
  for (const auto& row : counts) {
    for (int64_t v : row) t += v;
  }
  return t;
}

void ConfusionMatrix::merge(const ConfusionMatrix& other) {
  if (counts.empty()) {
    counts = other.counts;
    return;
  }
  if (other.num_classes() != num_classes()) {
    throw std::invalid_argument("ConfusionMatrix::merge: size mismatch");
  }
  for (std::size_t i = 0; i < counts.size(); ++i) {
    for (std::size_t j = 0; j < counts.size(); ++j) counts[i][j] += other.counts[i][j];
  }
}

double accuracy(const ConfusionMatrix& cm) {
  int64_t t = cm.total();
  if (t == 0) throw std::invalid_argument("accuracy: empty confusion matrix");
  int64_t diag = 0;
  for (std::size_t i = 0; i < cm.num_classes(); ++i) diag += cm.counts[i][i];
  return static_cast<double>(diag) / static_cast<double>(t);
}

double precision_of(const ConfusionMatrix& cm, std::size_t c) {
  int64_t col = 0;
  for (std::size_t i = 0; i < cm.num_classes(); ++i) col += cm.counts[i][c];
  return col == 0 ? 0.0 : static_cast<double>(cm.counts[c][c]) / static_cast<double>(col);
}

double recall_of(const ConfusionMatrix& cm, std::size_t c) {
  int64_t row = 0;
  for (std::size_t j = 0; j < cm.num_classes(); ++j) row += cm.counts[c][j];
  return row == 0 ? 0.0 : static_cast<double>(cm.counts[c][c]) / static_cast<double>(row);
}

double f1_of(const ConfusionMatrix& cm, std::size_t c) {
  double p = precision_of(cm, c);
  double r = recall_of(cm, c);
  return (p + r) == 0.0 ? 0.0 : 2.0 * p * r / (p + r);
}

double macro_f1(const ConfusionMatrix& cm) {
  if (cm.total() == 0) throw std::invalid_argument("macro_f1: empty confusion matrix");
  double sum = 0.0;
  for (std::size_t c = 0; c < cm.num_classes(); ++c) sum += f1_of(cm, c);
  return sum / static_cast<double>(cm.num_classes());
}

} // namespace vti
