#include "vti/wilcoxon.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace vti {

namespace {

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

// P(T+ <= w) by full enumeration of the 2^n equally-likely sign vectors.
double exact_lower_tail(const std::vector<double>& ranks, double w) {
  std::size_t n = ranks.size();
  uint64_t total = uint64_t{1} << n;
  uint64_t hits = 0;
  for (uint64_t mask = 0; mask < total; ++mask) {
    double t_plus = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (uint64_t{1} << i)) t_plus += ranks[i];
    }
    if (t_plus <= w + 1e-9) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(total);
}

} // namespace

WilcoxonResult wilcoxon_signed_rank(std::span<const double> a,
                                    std::span<const double> b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("wilcoxon: paired vectors differ in length");
  }
  if (a.size() < 2) throw std::invalid_argument("wilcoxon: need at least 2 pairs");

  std::vector<double> diffs;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double d = a[i] - b[i];
    if (d != 0.0) diffs.push_back(d);
  }

  WilcoxonResult res;
  res.n_effective = diffs.size();
  if (diffs.empty()) {
    res.valid = false;
    res.p_value = std::nan("");
    return res;
  }
  res.valid = true;

  // Average ranks over tied |d|.
  std::vector<std::size_t> order(diffs.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return std::fabs(diffs[x]) < std::fabs(diffs[y]);
  });
  std::vector<double> rank(diffs.size(), 0.0);
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() &&
           std::fabs(diffs[order[j + 1]]) == std::fabs(diffs[order[i]])) {
      ++j;
    }
    double avg = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
    for (std::size_t t = i; t <= j; ++t) rank[order[t]] = avg;
    i = j + 1;
  }

  std::vector<double> ranks_only(rank);
  for (std::size_t t = 0; t < diffs.size(); ++t) {
    (diffs[t] > 0 ? res.r_plus : res.r_minus) += rank[t];
  }

  double w = std::min(res.r_plus, res.r_minus);
  if (res.n_effective <= 20) {
    res.method = WilcoxonResult::Method::exact;
    res.p_value = std::min(1.0, 2.0 * exact_lower_tail(ranks_only, w));
  } else {
    res.method = WilcoxonResult::Method::normal_approx;
    res.p_value = wilcoxon_normal_approx_p(res.r_plus, res.r_minus, res.n_effective);
  }
  return res;
}

double wilcoxon_normal_approx_p(double r_plus, double r_minus, std::size_t n_eff) {
  auto n = static_cast<double>(n_eff);
  double mean = n * (n + 1.0) / 4.0;
  double sd = std::sqrt(n * (n + 1.0) * (2.0 * n + 1.0) / 24.0);
  double z = (std::min(r_plus, r_minus) - mean) / sd;
  return std::min(1.0, 2.0 * normal_cdf(z));
}

} // namespace vti
