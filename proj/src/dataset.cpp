#include "vti/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "vti/csv.hpp"

namespace vti {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

bool missing_cell(const std::string& s) {
  return s.empty() || s == "?" || s == "<null>";
}

struct RawTable {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows; // cell strings
  std::size_t label_col = 0;
  std::size_t skipped = 0;
};

RawTable read_csv_table(const std::filesystem::path& path, std::istream& in,
                        std::string first_line) {
  RawTable t;
  t.columns = csv::split(first_line);
  if (t.columns.size() < 2) {
    throw std::runtime_error(path.string() + ": need at least one feature and a label column");
  }
  t.label_col = t.columns.size() - 1;

  std::string line;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto cells = csv::split(line);
    if (cells.size() != t.columns.size()) {
      std::ostringstream msg;
      msg << path.string() << ":" << lineno << ": expected " << t.columns.size()
          << " cells, got " << cells.size();
      throw std::runtime_error(msg.str());
    }
    bool missing = std::any_of(cells.begin(), cells.end(),
                               [](const std::string& c) { return missing_cell(trim(c)); });
    if (missing) {
      t.skipped++;
      continue;
    }
    t.rows.push_back(std::move(cells));
  }
  return t;
}

RawTable read_keel_table(const std::filesystem::path& path, std::istream& in) {
  RawTable t;
  std::string line;
  std::size_t lineno = 0;
  std::string output_attr;
  bool in_data = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string s = trim(line);
    if (s.empty() || s[0] == '%') continue;
    if (!in_data && s[0] == '@') {
      std::string low = lower(s);
      if (low.rfind("@attribute", 0) == 0) {
        std::string rest = trim(s.substr(10));
        // Attribute name ends at whitespace, '{' or '['.
        std::size_t end = rest.find_first_of(" \t{[");
        t.columns.push_back(end == std::string::npos ? rest : trim(rest.substr(0, end)));
      } else if (low.rfind("@outputs", 0) == 0 || low.rfind("@output", 0) == 0) {
        output_attr = trim(s.substr(s.find_first_of(" \t") + 1));
        if (!output_attr.empty() && output_attr.back() == ',') output_attr.pop_back();
      } else if (low.rfind("@data", 0) == 0) {
        in_data = true;
        if (t.columns.empty()) {
          throw std::runtime_error(path.string() + ": @data before any @attribute");
        }
        t.label_col = t.columns.size() - 1;
        if (!output_attr.empty()) {
          auto it = std::find(t.columns.begin(), t.columns.end(), output_attr);
          if (it != t.columns.end()) {
            t.label_col = static_cast<std::size_t>(it - t.columns.begin());
          }
        }
      }
      continue;
    }
    if (!in_data) continue;
    auto cells = csv::split(s);
    for (std::string& c : cells) c = trim(c);
    if (cells.size() != t.columns.size()) {
      std::ostringstream msg;
      msg << path.string() << ":" << lineno << ": expected " << t.columns.size()
          << " cells, got " << cells.size();
      throw std::runtime_error(msg.str());
    }
    bool missing = std::any_of(cells.begin(), cells.end(),
                               [](const std::string& c) { return missing_cell(c); });
    if (missing) {
      t.skipped++;
      continue;
    }
    t.rows.push_back(std::move(cells));
  }
  if (!in_data) throw std::runtime_error(path.string() + ": KEEL file has no @data section");
  return t;
}

Dataset table_to_dataset(const std::filesystem::path& path, RawTable& t) {
  if (t.rows.empty()) {
    throw std::runtime_error(path.string() + ": no usable data rows");
  }

  // A leading flow_id column (our own feature CSV) is non-numeric metadata.
  std::size_t first_feature = 0;
  if (!t.columns.empty() && t.columns[0] == "flow_id") first_feature = 1;

  Dataset d;
  for (std::size_t c = first_feature; c < t.columns.size(); ++c) {
    if (c != t.label_col) d.feature_names.push_back(t.columns[c]);
  }

  std::map<std::string, int> class_ids;
  for (const auto& row : t.rows) class_ids.emplace(trim(row[t.label_col]), 0);
  int next = 0;
  for (auto& [name, id] : class_ids) id = next++;
  d.class_names.resize(class_ids.size());
  for (const auto& [name, id] : class_ids) d.class_names[static_cast<std::size_t>(id)] = name;

  d.rows.reserve(t.rows.size());
  d.labels.reserve(t.rows.size());
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    std::vector<double> vals;
    vals.reserve(d.feature_names.size());
    for (std::size_t c = first_feature; c < t.columns.size(); ++c) {
      if (c == t.label_col) continue;
      const std::string cell = trim(t.rows[r][c]);
      std::ostringstream ctx;
      ctx << path.string() << ": row " << (r + 1) << ", column '" << t.columns[c] << "'";
      vals.push_back(csv::parse_double(cell, ctx.str()));
    }
    d.rows.push_back(std::move(vals));
    d.labels.push_back(class_ids.at(trim(t.rows[r][t.label_col])));
  }
  d.skipped_rows = t.skipped;
  if (d.skipped_rows > 0) {
    std::cerr << path.string() << ": skipped " << d.skipped_rows
              << " rows with missing values\n";
  }
  return d;
}

} // namespace

Dataset load_tabular(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open dataset: " + path.string());

  std::string first;
  // Find the first non-blank, non-comment line to sniff the format.
  std::streampos start = in.tellg();
  while (std::getline(in, first)) {
    if (!first.empty() && first.back() == '\r') first.pop_back();
    if (!trim(first).empty() && first[0] != '#') break;
    start = in.tellg();
    first.clear();
  }
  if (trim(first).empty()) throw std::runtime_error(path.string() + ": empty dataset file");

  RawTable t;
  if (trim(first)[0] == '@') {
    in.clear();
    in.seekg(start);
    t = read_keel_table(path, in);
  } else {
    t = read_csv_table(path, in, first);
  }
  return table_to_dataset(path, t);
}

Dataset dataset_from_matrix(const FeatureMatrix& m) {
  Dataset d;
  d.feature_names = feature_names();
  std::map<std::string, int> class_ids;
  for (const FeatureVector& row : m.rows) {
    class_ids.emplace(row.label ? *row.label : std::string(), 0);
  }
  int next = 0;
  for (auto& [name, id] : class_ids) id = next++;
  d.class_names.resize(class_ids.size());
  for (const auto& [name, id] : class_ids) d.class_names[static_cast<std::size_t>(id)] = name;
  for (const FeatureVector& row : m.rows) {
    d.rows.emplace_back(row.values.begin(), row.values.end());
    d.labels.push_back(class_ids.at(row.label ? *row.label : std::string()));
  }
  return d;
}

Dataset select_rows(const Dataset& d, std::span<const std::size_t> idx) {
  Dataset out;
  out.feature_names = d.feature_names;
  out.class_names = d.class_names;
  out.rows.reserve(idx.size());
  out.labels.reserve(idx.size());
  for (std::size_t i : idx) {
    out.rows.push_back(d.rows[i]);
    out.labels.push_back(d.labels[i]);
  }
  return out;
}

Dataset select_columns(const Dataset& d, std::span<const std::size_t> idx) {
  Dataset out;
  out.class_names = d.class_names;
  out.labels = d.labels;
  for (std::size_t c : idx) out.feature_names.push_back(d.feature_names[c]);
  out.rows.reserve(d.rows.size());
  for (const auto& row : d.rows) {
    std::vector<double> r;
    r.reserve(idx.size());
    for (std::size_t c : idx) r.push_back(row[c]);
    out.rows.push_back(std::move(r));
  }
  return out;
}

} // namespace vti
