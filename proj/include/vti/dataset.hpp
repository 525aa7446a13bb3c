#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "vti/features.hpp"

namespace vti {

// A labeled numeric dataset. Class ids index `class_names`, which is sorted,
// so the id assignment does not depend on row order.
struct Dataset {
  std::vector<std::vector<double>> rows; // m x n
  std::vector<int> labels;               // m class ids
  std::vector<std::string> class_names;  // id -> name
  std::vector<std::string> feature_names;
  std::size_t skipped_rows = 0; // dropped for missing values at load time

  std::size_t m() const { return rows.size(); }
  std::size_t n() const { return rows.empty() ? feature_names.size() : rows[0].size(); }
  std::size_t num_classes() const { return class_names.size(); }
};

// Loads a labeled table. Two layouts are auto-detected:
//  - CSV with a header row, last column = label;
//  - KEEL '@' format (@attribute/@data; @outputs names the label column).
// A leading flow_id column (from the feature-matrix CSV) is detected by
// name and carried out of the numeric block. Rows with missing values
// ('?' or empty cells) are skipped and counted; a non-numeric feature cell
// is an error naming row and column.
Dataset load_tabular(const std::filesystem::path& path);

Dataset dataset_from_matrix(const FeatureMatrix& m);

Dataset select_rows(const Dataset& d, std::span<const std::size_t> idx);
Dataset select_columns(const Dataset& d, std::span<const std::size_t> idx);

} // namespace vti
