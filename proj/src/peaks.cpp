#include "vti/peaks.hpp"

#include <cmath>
#include <stdexcept>

namespace vti {

std::size_t PeakParams::theta() const {
  return static_cast<std::size_t>(std::llround(beta / alpha));
}

void PeakParams::validate() const {
  if (alpha <= 0 || beta <= 0) throw std::invalid_argument("alpha and beta must be > 0");
  double ratio = beta / alpha;
  if (std::fabs(ratio - std::round(ratio)) > 1e-9 || std::llround(ratio) < 1) {
    throw std::invalid_argument("alpha must divide beta exactly");
  }
  if (rate_bucket <= 0) throw std::invalid_argument("rate bucket T must be > 0");
  if (window <= 0) throw std::invalid_argument("window L must be > 0");
  if (!(offset > 0 && offset <= 1)) throw std::invalid_argument("offset Z must be in (0,1]");
}

std::vector<std::size_t> detect_peaks(std::span<const double> series) {
  std::vector<std::size_t> peaks;
  for (std::size_t s = 1; s + 1 < series.size(); ++s) {
    if (series[s] >= series[s - 1] && series[s] >= series[s + 1]) peaks.push_back(s);
  }
  return peaks;
}

std::vector<ViewPacket> view_packets(const Flow& flow, Dir dir) {
  std::vector<ViewPacket> out;
  if (flow.packets.empty()) return out;
  double base = flow.packets.front().timestamp;
  for (const PacketRecord& p : flow.packets) {
    bool up = flow.upstream(p);
    if (dir == Dir::up && !up) continue;
    if (dir == Dir::down && up) continue;
    out.push_back({p.timestamp - base, static_cast<double>(p.payload_len),
                   static_cast<double>(p.payload_len) + static_cast<double>(p.header_len)});
  }
  return out;
}

PppResult ppp_features(const Flow& flow, Dir dir, const PeakParams& params) {
  params.validate();
  PppResult r;
  r.counters.assign(params.theta(), 0.0);

  // Peaks over the payload sequence of data packets (payload > 0 only).
  std::vector<double> payloads;
  std::vector<double> times;
  for (const ViewPacket& vp : view_packets(flow, dir)) {
    if (vp.payload > 0) {
      payloads.push_back(vp.payload);
      times.push_back(vp.rel_ts);
    }
  }
  for (std::size_t s : detect_peaks(payloads)) {
    r.total++;
    double t = times[s];
    if (t < params.beta) {
      auto a = static_cast<std::size_t>(t / params.alpha);
      if (a < r.counters.size()) r.counters[a] += 1.0;
    }
  }
  r.counter_stats = series_stats(r.counters);
  return r;
}

std::size_t brpp_count(const Flow& flow, Dir dir, const PeakParams& params) {
  params.validate();
  double dur = flow.duration();
  double t_bucket = params.rate_bucket;
  // Complete T-second buckets only; a partial trailing period is dropped.
  auto n = static_cast<std::size_t>(dur / t_bucket);
  if (n < 3) return 0;

  std::vector<double> rate(n, 0.0);
  for (const ViewPacket& vp : view_packets(flow, dir)) {
    std::size_t b;
    if (vp.rel_ts < static_cast<double>(n) * t_bucket) {
      b = static_cast<std::size_t>(vp.rel_ts / t_bucket);
      if (b >= n) b = n - 1;
    } else if (vp.rel_ts == static_cast<double>(n) * t_bucket) {
      b = n - 1; // exact-multiple duration: last packet closes the last bucket
    } else {
      continue;
    }
    rate[b] += vp.payload;
  }
  for (double& v : rate) v /= t_bucket;
  return detect_peaks(rate).size();
}

BrppswResult brppsw_features(const Flow& flow, Dir dir, const PeakParams& params) {
  params.validate();
  BrppswResult r;
  double dur = flow.duration();
  double step = params.offset * params.window;

  std::vector<ViewPacket> pkts = view_packets(flow, dir);
  for (std::size_t z = 0;; ++z) {
    double start = static_cast<double>(z) * step;
    if (start >= dur) break;
    double sum = 0.0;
    for (const ViewPacket& vp : pkts) {
      if (vp.rel_ts >= start && vp.rel_ts < start + params.window) sum += vp.wire_len;
    }
    r.window_sums.push_back(sum);
  }
  for (std::size_t s : detect_peaks(r.window_sums)) {
    r.peak_sizes.push_back(r.window_sums[s]);
  }
  r.stats = series_stats(r.peak_sizes);
  return r;
}

} // namespace vti
