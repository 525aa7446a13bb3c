#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "vti/flow.hpp"
#include "vti/stats.hpp"

namespace vti {

// Parameters of the peak-point feature family.
struct PeakParams {
  double alpha = 5.0;       // PPP counter width (s)
  double beta = 60.0;       // PPP horizon (s); alpha must divide beta
  double rate_bucket = 1.0; // byte-rate bucket T (s)
  double window = 3.0;      // sliding window length L (s)
  double offset = 0.5;      // offset factor Z in (0,1]; window step = Z*L

  std::size_t theta() const; // beta / alpha
  void validate() const;     // throws std::invalid_argument
};

// Interior indices s (0-based, 0 < s < d-1) with
// series[s] >= series[s-1] and series[s] >= series[s+1].
// Endpoints are never peaks; plateaus yield multiple peaks.
std::vector<std::size_t> detect_peaks(std::span<const double> series);

enum class Dir { up, down, all };

// A flow packet restricted to one direction view, with time rebased to the
// flow's first packet (any view).
struct ViewPacket {
  double rel_ts = 0.0;
  double payload = 0.0;
  double wire_len = 0.0; // payload + header
};

std::vector<ViewPacket> view_packets(const Flow& flow, Dir dir);

// Payload peak points of one direction view. Peaks are detected over the
// packets with payload > 0; `counters[a]` counts peaks with rel_ts in
// [a*alpha, (a+1)*alpha) for a = 0..theta-1; `total` counts peaks over the
// whole flow duration.
struct PppResult {
  std::vector<double> counters; // length theta
  std::size_t total = 0;
  SeriesStats counter_stats; // mean/std/min/max over the theta counters
};

PppResult ppp_features(const Flow& flow, Dir dir, const PeakParams& params);

// Byte-rate peak count of one direction view: the flow duration is split
// into floor(duration/T) complete T-second buckets, BR = payload sum / T
// per bucket, and peaks of the BR sequence are counted.
std::size_t brpp_count(const Flow& flow, Dir dir, const PeakParams& params);

// Sliding-window byte-rate peaks: windows [z*Z*L, z*Z*L + L) for
// z = 0,1,... while the start lies before the flow duration; the window sum
// uses on-wire packet size (payload + header). `peak_sizes` are the window
// sums at interior peaks, in window order.
struct BrppswResult {
  std::vector<double> window_sums; // the full sequence R
  std::vector<double> peak_sizes;  // the peak subsequence R_F
  SeriesStats stats;               // over peak_sizes
};

BrppswResult brppsw_features(const Flow& flow, Dir dir, const PeakParams& params);

} // namespace vti
