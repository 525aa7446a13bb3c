#include "vti/cross_validation.hpp"

#include <algorithm>
#include <iostream>
#include <random>
#include <stdexcept>

namespace vti {

std::vector<FoldSplit> stratified_kfold(const Dataset& d, std::size_t k,
                                        uint64_t seed) {
  if (k < 2) throw std::invalid_argument("stratified_kfold: k must be >= 2");
  if (d.m() == 0) throw std::invalid_argument("stratified_kfold: empty dataset");

  std::vector<std::vector<std::size_t>> by_class(d.num_classes());
  for (std::size_t i = 0; i < d.m(); ++i) {
    by_class[static_cast<std::size_t>(d.labels[i])].push_back(i);
  }
  std::size_t min_count = d.m();
  for (const auto& c : by_class) min_count = std::min(min_count, c.size());
  if (min_count < k) {
    std::cerr << "warning: smallest class has " << min_count
              << " samples; reducing folds from " << k << " to " << min_count << "\n";
    k = min_count;
    if (k < 2) throw std::invalid_argument("stratified_kfold: a class has < 2 samples");
  }

  std::mt19937_64 rng(seed);
  std::vector<std::vector<std::size_t>> fold_members(k);
  std::size_t rotate = 0;
  for (auto& members : by_class) {
    std::shuffle(members.begin(), members.end(), rng);
    std::size_t base = members.size() / k;
    std::size_t rem = members.size() % k;
    std::size_t at = 0;
    for (std::size_t f = 0; f < k; ++f) {
      // Rotate which folds receive the remainder so overall sizes balance.
      std::size_t take = base + ((f + k - rotate) % k < rem ? 1 : 0);
      for (std::size_t t = 0; t < take; ++t) fold_members[f].push_back(members[at++]);
    }
    rotate = (rotate + rem) % k;
  }

  std::vector<FoldSplit> splits(k);
  for (std::size_t f = 0; f < k; ++f) {
    std::sort(fold_members[f].begin(), fold_members[f].end());
    splits[f].test = fold_members[f];
    for (std::size_t g = 0; g < k; ++g) {
      if (g == f) continue;
      splits[f].train.insert(splits[f].train.end(), fold_members[g].begin(),
                             fold_members[g].end());
    }
    std::sort(splits[f].train.begin(), splits[f].train.end());
  }
  return splits;
}

} // namespace vti
