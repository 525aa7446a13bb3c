#pragma once

#include <cstdint>

#include "vti/addfs.hpp"
#include "vti/dataset.hpp"

namespace vti {

// Classic Relief on min-max-scaled features: m iterations of (random
// sample, nearest hit, nearest miss, additive weight update), Manhattan
// neighbor distance, weights averaged over iterations.
FeatureRanking relief_ranking(const Dataset& d, uint64_t seed);

// Per feature: max over classes of |Pearson correlation with the
// one-vs-rest class indicator|. Constant features score 0.
FeatureRanking pearson_ranking(const Dataset& d);

// Per feature: between-class over within-class variance ratio. Constant
// features score 0.
FeatureRanking fscore_ranking(const Dataset& d);

} // namespace vti
