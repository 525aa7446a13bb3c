#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "vti/dataset.hpp"

namespace vti {

struct FoldSplit {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};

// Stratified k-fold: test folds are disjoint, cover all rows, and keep
// class proportions within one sample per class per fold. Deterministic
// given the seed. If some class has fewer than k samples, k is reduced to
// the smallest class count (with a warning on stderr); k < 2 throws.
std::vector<FoldSplit> stratified_kfold(const Dataset& d, std::size_t k,
                                        uint64_t seed);

} // namespace vti
