#pragma once

// Test-only oracles and generators. The oracles re-derive the definitions
// with independent code paths so they can check the library implementation.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "vti/flow.hpp"
#include "vti/peaks.hpp"

namespace vti::testing {

// --- builders ---------------------------------------------------------------

inline PacketRecord make_packet(double ts, const Endpoint& src, const Endpoint& dst,
                                Transport tr, uint32_t payload, uint32_t header = 40,
                                uint32_t window = 0, uint8_t flags = 0) {
  PacketRecord p;
  p.timestamp = ts;
  p.src = src;
  p.dst = dst;
  p.transport = tr;
  p.payload_len = payload;
  p.header_len = header;
  p.tcp_window = window;
  p.tcp_flags = flags;
  return p;
}

// Single-tuple flow from (time, payload, upstream?) triples.
struct PktSpec {
  double ts;
  uint32_t payload;
  bool up = true;
  uint32_t header = 40;
};

inline Flow make_flow(const std::vector<PktSpec>& specs,
                      Transport tr = Transport::udp) {
  Endpoint client{"10.0.0.1", 40000};
  Endpoint server{"93.184.216.34", 443};
  Flow f;
  f.client = client;
  for (const PktSpec& s : specs) {
    PacketRecord p = make_packet(s.ts, s.up ? client : server, s.up ? server : client,
                                 tr, s.payload, s.header);
    if (p.payload_len > 0) f.nonzero_payload_count++;
    f.packets.push_back(std::move(p));
  }
  if (!f.packets.empty()) f.key = FiveTuple::of(f.packets.front());
  return f;
}

// --- peak-definition oracle -------------------------------------------------

// Literal transliteration of the peak rule: 1-based positions s with
// 1 < s <= d-1 and v_s >= v_{s-1}, v_s >= v_{s+1}. Returns 0-based indices.
inline std::vector<std::size_t> oracle_peaks(const std::vector<double>& v) {
  std::vector<std::size_t> out;
  std::size_t d = v.size();
  for (std::size_t s = 2; d >= 1 && s <= d - 1; ++s) {
    if (v[s - 1] >= v[s - 2] && v[s - 1] >= v[s]) out.push_back(s - 1);
  }
  return out;
}

struct OracleView {
  std::vector<double> ts;      // relative to flow start
  std::vector<double> payload;
  std::vector<double> wire;
};

inline OracleView oracle_view(const Flow& f, Dir dir) {
  OracleView v;
  if (f.packets.empty()) return v;
  double base = f.packets.front().timestamp;
  for (const PacketRecord& p : f.packets) {
    bool up = p.src == f.client;
    if ((dir == Dir::up && !up) || (dir == Dir::down && up)) continue;
    v.ts.push_back(p.timestamp - base);
    v.payload.push_back(p.payload_len);
    v.wire.push_back(static_cast<double>(p.payload_len) + p.header_len);
  }
  return v;
}

struct OraclePpp {
  std::vector<double> counters;
  std::size_t total = 0;
  double mean = 0, stddev = 0, cmin = 0, cmax = 0;
};

inline OraclePpp oracle_ppp(const Flow& f, Dir dir, const PeakParams& pp) {
  OracleView v = oracle_view(f, dir);
  std::vector<double> pay, times;
  for (std::size_t i = 0; i < v.payload.size(); ++i) {
    if (v.payload[i] > 0) {
      pay.push_back(v.payload[i]);
      times.push_back(v.ts[i]);
    }
  }
  auto peaks = oracle_peaks(pay);

  OraclePpp out;
  auto theta = static_cast<std::size_t>(std::llround(pp.beta / pp.alpha));
  out.counters.assign(theta, 0.0);
  out.total = peaks.size();
  // Per-bucket counting loop, one pass per bucket.
  for (std::size_t a = 0; a < theta; ++a) {
    double lo = static_cast<double>(a) * pp.alpha;
    double hi = lo + pp.alpha;
    for (std::size_t s : peaks) {
      if (times[s] >= lo && times[s] < hi) out.counters[a] += 1.0;
    }
  }
  double sum = 0;
  for (double c : out.counters) sum += c;
  out.mean = sum / static_cast<double>(theta);
  double acc = 0;
  for (double c : out.counters) acc += (c - out.mean) * (c - out.mean);
  out.stddev = std::sqrt(acc / static_cast<double>(theta));
  out.cmin = *std::min_element(out.counters.begin(), out.counters.end());
  out.cmax = *std::max_element(out.counters.begin(), out.counters.end());
  return out;
}

inline std::size_t oracle_brpp(const Flow& f, Dir dir, const PeakParams& pp) {
  OracleView v = oracle_view(f, dir);
  double dur = f.duration();
  std::size_t nb = 0;
  while (static_cast<double>(nb + 1) * pp.rate_bucket <= dur) ++nb;
  if (nb < 3) return 0;
  std::vector<double> br(nb, 0.0);
  for (std::size_t b = 0; b < nb; ++b) {
    double lo = static_cast<double>(b) * pp.rate_bucket;
    double hi = lo + pp.rate_bucket;
    double spp = 0;
    bool last = b == nb - 1;
    for (std::size_t i = 0; i < v.ts.size(); ++i) {
      if ((v.ts[i] >= lo && v.ts[i] < hi) || (last && v.ts[i] == hi)) spp += v.payload[i];
    }
    br[b] = spp / pp.rate_bucket;
  }
  return oracle_peaks(br).size();
}

inline std::vector<double> oracle_brppsw_peaks(const Flow& f, Dir dir,
                                               const PeakParams& pp) {
  OracleView v = oracle_view(f, dir);
  double dur = f.duration();
  double step = pp.offset * pp.window;
  std::vector<double> sums;
  for (std::size_t z = 0; static_cast<double>(z) * step < dur; ++z) {
    double lo = static_cast<double>(z) * step;
    double sum = 0;
    for (std::size_t i = 0; i < v.ts.size(); ++i) {
      if (v.ts[i] >= lo && v.ts[i] < lo + pp.window) sum += v.wire[i];
    }
    sums.push_back(sum);
  }
  std::vector<double> out;
  for (std::size_t s : oracle_peaks(sums)) out.push_back(sums[s]);
  return out;
}

// --- transport oracle -------------------------------------------------------

// Exact minimal-cost transportation between mass vectors p and q with cost
// |support_i - support_j|, solved as min-cost flow by successive shortest
// augmenting paths (Bellman-Ford over the residual graph).
inline double oracle_transport(const std::vector<double>& p, const std::vector<double>& q,
                               const std::vector<double>& support) {
  const std::size_t k = p.size();
  struct Arc {
    int to;
    double cap;
    double cost;
    std::size_t rev;
  };
  std::size_t nodes = 2 * k + 2;
  int src = 0, snk = static_cast<int>(2 * k + 1);
  std::vector<std::vector<Arc>> g(nodes);
  auto add = [&g](int u, int v, double cap, double cost) {
    g[static_cast<std::size_t>(u)].push_back({v, cap, cost, g[static_cast<std::size_t>(v)].size()});
    g[static_cast<std::size_t>(v)].push_back({u, 0.0, -cost, g[static_cast<std::size_t>(u)].size() - 1});
  };
  double supply = 0;
  for (std::size_t i = 0; i < k; ++i) {
    add(src, static_cast<int>(1 + i), p[i], 0.0);
    supply += p[i];
  }
  for (std::size_t j = 0; j < k; ++j) add(static_cast<int>(1 + k + j), snk, q[j], 0.0);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      add(static_cast<int>(1 + i), static_cast<int>(1 + k + j), 1e18,
          std::fabs(support[i] - support[j]));
    }
  }

  double total_cost = 0;
  for (int guard = 0; supply > 1e-12 && guard < 100000; ++guard) {
    const double inf = 1e30;
    std::vector<double> dist(nodes, inf);
    std::vector<int> prev_node(nodes, -1);
    std::vector<std::size_t> prev_arc(nodes, 0);
    dist[static_cast<std::size_t>(src)] = 0;
    for (std::size_t round = 0; round + 1 < nodes; ++round) {
      bool changed = false;
      for (std::size_t u = 0; u < nodes; ++u) {
        if (dist[u] >= inf) continue;
        for (std::size_t a = 0; a < g[u].size(); ++a) {
          const Arc& arc = g[u][a];
          if (arc.cap <= 1e-15) continue;
          double nd = dist[u] + arc.cost;
          if (nd < dist[static_cast<std::size_t>(arc.to)] - 1e-15) {
            dist[static_cast<std::size_t>(arc.to)] = nd;
            prev_node[static_cast<std::size_t>(arc.to)] = static_cast<int>(u);
            prev_arc[static_cast<std::size_t>(arc.to)] = a;
            changed = true;
          }
        }
      }
      if (!changed) break;
    }
    if (dist[static_cast<std::size_t>(snk)] >= inf) break;

    double push = supply;
    for (int at = snk; at != src; at = prev_node[static_cast<std::size_t>(at)]) {
      const Arc& arc = g[static_cast<std::size_t>(prev_node[static_cast<std::size_t>(at)])]
                        [prev_arc[static_cast<std::size_t>(at)]];
      push = std::min(push, arc.cap);
    }
    for (int at = snk; at != src; at = prev_node[static_cast<std::size_t>(at)]) {
      Arc& arc = g[static_cast<std::size_t>(prev_node[static_cast<std::size_t>(at)])]
                  [prev_arc[static_cast<std::size_t>(at)]];
      arc.cap -= push;
      g[static_cast<std::size_t>(arc.to)][arc.rev].cap += push;
    }
    total_cost += push * dist[static_cast<std::size_t>(snk)];
    supply -= push;
  }
  return total_cost;
}

// --- generators -------------------------------------------------------------

// Random single-tuple flow: `n` packets over roughly `duration` seconds,
// mixed directions, some zero payloads.
inline Flow random_flow(std::mt19937_64& rng, std::size_t n, double duration) {
  std::uniform_real_distribution<double> uts(0.0, duration);
  std::uniform_int_distribution<uint32_t> upay(0, 1500);
  std::uniform_int_distribution<int> udir(0, 1);
  std::vector<double> times(n);
  for (double& t : times) t = uts(rng);
  std::sort(times.begin(), times.end());
  std::vector<PktSpec> specs;
  specs.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    uint32_t pay = upay(rng);
    if (pay < 120) pay = 0; // sprinkle pure ACKs
    specs.push_back({times[i], pay, udir(rng) == 1, 40});
  }
  return make_flow(specs);
}

// Two-class corpus for the burst-structure experiment. Each A/B pair shares
// identical packet times and an identical payload multiset, so every
// order-invariant feature (IAT, payload, count, rate, header statistics) is
// bit-equal within the pair. Only the payload ARRANGEMENT differs: class
// "bursty" sends its large payloads in periodic runs, class "smooth"
// shuffles the same payloads uniformly. The class signal therefore lives
// entirely in the byte-rate/peak structure.
inline std::pair<std::vector<Flow>, std::vector<std::string>> burst_corpus(
    std::size_t pairs, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Flow> flows;
  std::vector<std::string> labels;

  std::uniform_real_distribution<double> gap_d(0.15, 0.25);
  std::uniform_int_distribution<uint32_t> high_d(1100, 1400);
  std::uniform_int_distribution<uint32_t> low_d(100, 400);
  const std::size_t n = 620;  // nonzero payloads keep the flow past the
                              // elephant cut; duration lands near 120 s
  const std::size_t run = 16; // packets per high/low half-period (~3 s)

  for (std::size_t pi = 0; pi < pairs; ++pi) {
    std::vector<double> times(n, 0.0);
    for (std::size_t i = 1; i < n; ++i) times[i] = times[i - 1] + gap_d(rng);

    std::vector<uint32_t> pay_periodic(n);
    for (std::size_t i = 0; i < n; ++i) {
      bool high = (i / run) % 2 == 0;
      pay_periodic[i] = high ? high_d(rng) : low_d(rng);
    }
    std::vector<uint32_t> pay_shuffled = pay_periodic;
    std::shuffle(pay_shuffled.begin(), pay_shuffled.end(), rng);

    auto build = [&times](const std::vector<uint32_t>& pay, const char* label) {
      std::vector<PktSpec> specs;
      specs.reserve(pay.size());
      for (std::size_t i = 0; i < pay.size(); ++i) {
        specs.push_back({times[i], pay[i], true, 28});
      }
      Flow f = make_flow(specs, Transport::udp);
      f.label = label;
      return f;
    };

    flows.push_back(build(pay_periodic, "bursty"));
    labels.emplace_back("bursty");
    flows.push_back(build(pay_shuffled, "smooth"));
    labels.emplace_back("smooth");
  }
  return {flows, labels};
}

} // namespace vti::testing
