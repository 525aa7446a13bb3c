#include "vti/addfs.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <stdexcept>

namespace vti {

std::vector<double> min_max_scale_column(std::span<const double> col) {
  std::vector<double> out(col.begin(), col.end());
  if (col.empty()) return out;
  auto [lo_it, hi_it] = std::minmax_element(col.begin(), col.end());
  double lo = *lo_it, hi = *hi_it;
  if (hi == lo) {
    std::fill(out.begin(), out.end(), 0.0);
    return out;
  }
  double range = hi - lo;
  for (double& v : out) v = (v - lo) / range;
  return out;
}

Dataset min_max_scale(const Dataset& d) {
  Dataset out = d;
  if (d.m() == 0) return out;
  std::size_t n = d.n();
  std::vector<double> col(d.m());
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < d.m(); ++i) col[i] = d.rows[i][j];
    std::vector<double> scaled = min_max_scale_column(col);
    for (std::size_t i = 0; i < d.m(); ++i) out.rows[i][j] = scaled[i];
  }
  return out;
}

double chi_square(std::span<const std::size_t> row_a,
                  std::span<const std::size_t> row_b) {
  if (row_a.size() != row_b.size()) {
    throw std::invalid_argument("chi_square: row length mismatch");
  }
  std::size_t c = row_a.size();
  double n_a = 0, n_b = 0;
  std::vector<double> class_total(c, 0.0);
  for (std::size_t j = 0; j < c; ++j) {
    n_a += static_cast<double>(row_a[j]);
    n_b += static_cast<double>(row_b[j]);
    class_total[j] = static_cast<double>(row_a[j] + row_b[j]);
  }
  double total = n_a + n_b;
  if (total == 0) return 0.0; // two empty intervals merge for free

  double chi2 = 0.0;
  for (std::size_t j = 0; j < c; ++j) {
    double e_a = n_a / total * class_total[j];
    double e_b = n_b / total * class_total[j];
    if (e_a > 0) {
      double d = static_cast<double>(row_a[j]) - e_a;
      chi2 += d * d / e_a;
    }
    if (e_b > 0) {
      double d = static_cast<double>(row_b[j]) - e_b;
      chi2 += d * d / e_b;
    }
  }
  return chi2;
}

double chi_square_critical(std::size_t df, double confidence) {
  // Chi-square quantiles for df 1..20 at confidence 0.90 / 0.95 / 0.99.
  static constexpr double table[20][3] = {
      {2.705543, 3.841459, 6.634897},   {4.605170, 5.991465, 9.210340},
      {6.251389, 7.814728, 11.344867},  {7.779440, 9.487729, 13.276704},
      {9.236357, 11.070498, 15.086272}, {10.644641, 12.591587, 16.811894},
      {12.017037, 14.067140, 18.475307},{13.361566, 15.507313, 20.090235},
      {14.683657, 16.918978, 21.665994},{15.987179, 18.307038, 23.209251},
      {17.275009, 19.675138, 24.724970},{18.549348, 21.026070, 26.216967},
      {19.811929, 22.362032, 27.688250},{21.064144, 23.684791, 29.141238},
      {22.307130, 24.995790, 30.577914},{23.541829, 26.296228, 31.999927},
      {24.769035, 27.587112, 33.408664},{25.989423, 28.869299, 34.805306},
      {27.203571, 30.143527, 36.190869},{28.411981, 31.410433, 37.566235}};
  if (df < 1 || df > 20) {
    throw std::invalid_argument("chi_square_critical: df must be in 1..20, got " +
                                std::to_string(df));
  }
  int col;
  if (confidence == 0.90) col = 0;
  else if (confidence == 0.95) col = 1;
  else if (confidence == 0.99) col = 2;
  else throw std::invalid_argument("confidence must be one of 0.90, 0.95, 0.99");
  return table[df - 1][col];
}

std::size_t IntervalPartition::interval_of(double x) const {
  // First interval whose right boundary is >= x; a value exactly on a cut
  // point belongs to the left interval.
  auto it = std::lower_bound(cut_points.begin(), cut_points.end(), x);
  return static_cast<std::size_t>(it - cut_points.begin());
}

namespace {

// Doubly-linked interval list plus a lazy min-heap over adjacent pairs.
struct MergeState {
  struct Interval {
    double lo, hi;                  // lowest/highest distinct value inside
    std::vector<std::size_t> counts;
    int prev, next;
    std::size_t version = 0;        // bumps on every merge touching it
    bool alive = true;
    std::size_t origin;             // original index of `lo`, stable order key
  };
  std::vector<Interval> iv;
};

struct HeapEntry {
  double chi2;
  std::size_t origin; // left interval's order key, for deterministic ties
  int left;           // interval id
  std::size_t ver_l, ver_r;
  bool operator>(const HeapEntry& o) const {
    if (chi2 != o.chi2) return chi2 > o.chi2;
    return origin > o.origin;
  }
};

} // namespace

IntervalPartition chimerge(std::span<const double> values, std::span<const int> labels,
                           std::size_t num_classes, std::size_t max_intervals,
                           double confidence) {
  if (values.empty()) throw std::invalid_argument("chimerge: empty input");
  if (values.size() != labels.size()) {
    throw std::invalid_argument("chimerge: values/labels length mismatch");
  }
  if (max_intervals < 1) throw std::invalid_argument("chimerge: max_intervals must be >= 1");
  if (num_classes < 1) throw std::invalid_argument("chimerge: need at least one class");
  std::size_t df = num_classes > 1 ? num_classes - 1 : 1;
  double critical = chi_square_critical(df, confidence);

  // One initial interval per distinct value, ascending.
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return values[a] < values[b];
  });

  MergeState st;
  for (std::size_t oi = 0; oi < order.size(); ++oi) {
    double v = values[order[oi]];
    int label = labels[order[oi]];
    if (label < 0 || static_cast<std::size_t>(label) >= num_classes) {
      throw std::invalid_argument("chimerge: label out of range");
    }
    if (st.iv.empty() || v != st.iv.back().hi) {
      MergeState::Interval in;
      in.lo = in.hi = v;
      in.counts.assign(num_classes, 0);
      in.prev = st.iv.empty() ? -1 : static_cast<int>(st.iv.size()) - 1;
      in.next = -1;
      in.origin = st.iv.size();
      st.iv.push_back(std::move(in));
      if (st.iv.size() > 1) st.iv[st.iv.size() - 2].next = static_cast<int>(st.iv.size()) - 1;
    }
    st.iv.back().counts[static_cast<std::size_t>(label)]++;
  }

  std::size_t live = st.iv.size();
  int head = 0;

  std::priority_queue<HeapEntry, std::vector<HeapEntry>, std::greater<>> heap;
  auto push_pair = [&](int left) {
    int right = st.iv[static_cast<std::size_t>(left)].next;
    if (right < 0) return;
    double chi2 = chi_square(st.iv[static_cast<std::size_t>(left)].counts,
                             st.iv[static_cast<std::size_t>(right)].counts);
    heap.push({chi2, st.iv[static_cast<std::size_t>(left)].origin, left,
               st.iv[static_cast<std::size_t>(left)].version,
               st.iv[static_cast<std::size_t>(right)].version});
  };
  for (int id = head; id >= 0; id = st.iv[static_cast<std::size_t>(id)].next) {
    push_pair(id);
  }

  while (live > 1) {
    // Pop until a live, current pair surfaces.
    HeapEntry top{};
    bool found = false;
    while (!heap.empty()) {
      top = heap.top();
      auto& l = st.iv[static_cast<std::size_t>(top.left)];
      if (!l.alive || l.next < 0 || l.version != top.ver_l ||
          st.iv[static_cast<std::size_t>(l.next)].version != top.ver_r) {
        heap.pop();
        continue;
      }
      found = true;
      break;
    }
    if (!found) break;

    bool over_cap = live > max_intervals;
    if (!over_cap && top.chi2 >= critical) break;
    heap.pop();

    // Merge right into left.
    auto& l = st.iv[static_cast<std::size_t>(top.left)];
    auto& r = st.iv[static_cast<std::size_t>(l.next)];
    l.hi = r.hi;
    for (std::size_t j = 0; j < num_classes; ++j) l.counts[j] += r.counts[j];
    l.version++;
    r.alive = false;
    l.next = r.next;
    if (r.next >= 0) st.iv[static_cast<std::size_t>(r.next)].prev = top.left;
    live--;

    if (l.prev >= 0) push_pair(l.prev);
    push_pair(top.left);
  }

  IntervalPartition part;
  part.lo = st.iv[static_cast<std::size_t>(head)].lo;
  for (int id = head; id >= 0;) {
    const auto& in = st.iv[static_cast<std::size_t>(id)];
    part.hi = in.hi;
    if (in.next >= 0) {
      const auto& nxt = st.iv[static_cast<std::size_t>(in.next)];
      part.cut_points.push_back((in.hi + nxt.lo) / 2.0);
    }
    id = in.next;
  }
  return part;
}

ClassDistributionMatrix class_distributions(std::span<const double> values,
                                            std::span<const int> labels,
                                            std::size_t num_classes,
                                            const IntervalPartition& partition,
                                            SupportMode mode) {
  std::size_t k = partition.k();
  ClassDistributionMatrix out;
  out.p.assign(num_classes, std::vector<double>(k, 0.0));
  std::vector<std::size_t> class_total(num_classes, 0);

  for (std::size_t i = 0; i < values.size(); ++i) {
    auto c = static_cast<std::size_t>(labels[i]);
    out.p[c][partition.interval_of(values[i])] += 1.0;
    class_total[c]++;
  }
  for (std::size_t c = 0; c < num_classes; ++c) {
    if (class_total[c] == 0) {
      throw std::invalid_argument("class_distributions: class " + std::to_string(c) +
                                  " has no samples");
    }
    for (double& v : out.p[c]) v /= static_cast<double>(class_total[c]);
  }

  out.support.resize(k);
  if (mode == SupportMode::bin_index) {
    for (std::size_t g = 0; g < k; ++g) out.support[g] = static_cast<double>(g);
  } else {
    // Interval midpoints: boundaries are (lo, cut_1, ..., cut_{k-1}, hi).
    for (std::size_t g = 0; g < k; ++g) {
      double left = g == 0 ? partition.lo : partition.cut_points[g - 1];
      double right = g == k - 1 ? partition.hi : partition.cut_points[g];
      out.support[g] = (left + right) / 2.0;
    }
  }
  return out;
}

double wasserstein_1d(std::span<const double> p, std::span<const double> q,
                      std::span<const double> support) {
  std::size_t k = support.size();
  if (p.size() != k || q.size() != k) {
    throw std::invalid_argument("wasserstein_1d: size mismatch");
  }
  if (k == 0) throw std::invalid_argument("wasserstein_1d: empty support");
  double sum_p = 0, sum_q = 0;
  for (std::size_t i = 0; i < k; ++i) {
    if (p[i] < 0 || q[i] < 0) throw std::invalid_argument("wasserstein_1d: negative mass");
    sum_p += p[i];
    sum_q += q[i];
    if (i + 1 < k && support[i + 1] <= support[i]) {
      throw std::invalid_argument("wasserstein_1d: support must be strictly ascending");
    }
  }
  if (std::fabs(sum_p - 1.0) > 1e-9 || std::fabs(sum_q - 1.0) > 1e-9) {
    throw std::invalid_argument("wasserstein_1d: distributions must sum to 1");
  }

  double cdf_p = 0, cdf_q = 0, cost = 0;
  for (std::size_t i = 0; i + 1 < k; ++i) {
    cdf_p += p[i];
    cdf_q += q[i];
    cost += std::fabs(cdf_p - cdf_q) * (support[i + 1] - support[i]);
  }
  return cost;
}

double feature_score(const ClassDistributionMatrix& dist) {
  double total = 0.0;
  for (std::size_t a = 0; a < dist.p.size(); ++a) {
    for (std::size_t b = a + 1; b < dist.p.size(); ++b) {
      total += wasserstein_1d(dist.p[a], dist.p[b], dist.support);
    }
  }
  return total;
}

FeatureRanking rank_features(const Dataset& d, const AddfsParams& params) {
  if (d.m() < 2) throw std::invalid_argument("rank_features: need at least 2 samples");
  if (d.num_classes() < 2) {
    throw std::invalid_argument("rank_features: need at least 2 classes");
  }
  Dataset scaled = min_max_scale(d);
  std::size_t n = scaled.n();

  FeatureRanking r;
  r.scores.resize(n);
  std::vector<double> col(scaled.m());
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < scaled.m(); ++i) col[i] = scaled.rows[i][j];
    try {
      IntervalPartition part = chimerge(col, scaled.labels, scaled.num_classes(),
                                        params.max_intervals, params.confidence);
      ClassDistributionMatrix dist = class_distributions(
          col, scaled.labels, scaled.num_classes(), part, params.support);
      r.scores[j] = feature_score(dist);
    } catch (const std::exception& e) {
      std::string name = j < d.feature_names.size() ? d.feature_names[j]
                                                    : "column " + std::to_string(j);
      throw std::runtime_error("rank_features: feature '" + name + "': " + e.what());
    }
  }

  r.order.resize(n);
  std::iota(r.order.begin(), r.order.end(), 0);
  std::stable_sort(r.order.begin(), r.order.end(), [&](std::size_t a, std::size_t b) {
    if (r.scores[a] != r.scores[b]) return r.scores[a] > r.scores[b];
    return a < b;
  });
  return r;
}

std::vector<std::size_t> select_top(const FeatureRanking& r, double fraction) {
  if (!(fraction > 0.0 && fraction <= 1.0)) {
    throw std::invalid_argument("select_top: fraction must be in (0,1]");
  }
  auto n = static_cast<double>(r.order.size());
  // Tiny guard so representation error on an integral fraction*n cannot
  // bump the ceiling (0.2 * 10 evaluates just above 2).
  auto count = static_cast<std::size_t>(std::ceil(fraction * n - 1e-9));
  count = std::max<std::size_t>(count, 1);
  count = std::min(count, r.order.size());
  return {r.order.begin(), r.order.begin() + static_cast<std::ptrdiff_t>(count)};
}

} // namespace vti
