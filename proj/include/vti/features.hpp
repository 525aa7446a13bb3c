#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vti/flow.hpp"
#include "vti/peaks.hpp"

namespace vti {

inline constexpr std::size_t kFeatureCount = 89;

// Canonical feature names, in the fixed column order of the feature matrix.
const std::vector<std::string>& feature_names();

// name -> what the feature measures, same order as feature_names().
const std::vector<std::pair<std::string, std::string>>& feature_dictionary();

// The 25 peak-point feature names (PPP / BRPP / BRPPSW derived columns).
const std::vector<std::string>& peak_feature_names();

void write_feature_dictionary(const std::filesystem::path& path);

struct FeatureVector {
  std::string flow_id;
  std::optional<std::string> label;
  std::array<double, kFeatureCount> values{};
};

// All 89 features of one flow. Throws std::invalid_argument on an empty
// flow. Pure function: identical flows give bit-identical vectors.
FeatureVector extract_features(const Flow& flow, const PeakParams& params,
                               std::string flow_id);

struct FeatureMatrix {
  std::vector<FeatureVector> rows;
};

// Row i is extract_features(flows[i]); runs per-flow extraction on up to
// `jobs` threads with output order fixed by input index.
FeatureMatrix extract_matrix(std::span<const Flow> flows, const PeakParams& params,
                             unsigned jobs = 1);

// CSV: flow_id, the 89 canonical columns, label. `header_comments` lines are
// emitted first, each prefixed with "# ".
void write_feature_csv(const std::filesystem::path& path, const FeatureMatrix& m,
                       const std::vector<std::string>& header_comments = {});

} // namespace vti
