#include "vti/features.hpp"

#include <fstream>
#include <mutex>
#include <stdexcept>

#include "vti/csv.hpp"
#include "vti/parallel.hpp"
#include "vti/stats.hpp"

namespace vti {

namespace {

// Builds the canonical (name, description) list once. Order defines the
// feature matrix columns.
std::vector<std::pair<std::string, std::string>> build_dictionary() {
  std::vector<std::pair<std::string, std::string>> d;
  auto add = [&d](const std::string& name, const std::string& desc) {
    d.emplace_back(name, desc);
  };

  const std::pair<const char*, const char*> dirs[] = {
      {"U", "upstream"}, {"D", "downstream"}, {"", "all-packets"}};
  const std::pair<const char*, const char*> stats4[] = {
      {"mean", "Mean"}, {"min", "Minimum"}, {"max", "Maximum"}, {"std", "Population std"}};

  for (auto [p, dn] : dirs) {
    for (auto [s, sn] : stats4) {
      add(std::string(p) + "IAT_" + s,
          std::string(sn) + " " + dn + " packet inter-arrival time (s)");
    }
  }
  for (auto [p, dn] : dirs) {
    add(std::string(p) + "Window_sum",
        std::string("Sum of ") + dn + " TCP window sizes (0 for UDP)");
    for (auto [s, sn] : stats4) {
      add(std::string(p) + "Window_" + s,
          std::string(sn) + " " + dn + " TCP window size (0 for UDP)");
    }
  }
  add("Upnum", "Number of upstream packets");
  add("Dpnum", "Number of downstream packets");
  add("pnum", "Number of packets in both directions");
  add("Upnum_s", "Upstream packets per second of flow duration");
  add("Dpnum_s", "Downstream packets per second of flow duration");
  add("pnum_s", "Packets per second of flow duration");
  add("UDpnum_s", "Ratio of downstream to upstream packet counts");
  for (const char* f : {"FIN", "SYN", "PSH", "ACK", "RST", "URG", "ECE", "CWR"}) {
    add(std::string(f) + "_cnt", std::string("Count of packets with the TCP ") + f + " flag");
  }
  add("UPSH_cnt", "Count of upstream packets with the TCP PSH flag");
  add("UURG_cnt", "Count of upstream packets with the TCP URG flag");
  add("DPSH_cnt", "Count of downstream packets with the TCP PSH flag");
  add("DURG_cnt", "Count of downstream packets with the TCP URG flag");
  for (auto [p, dn] : dirs) {
    add(std::string(p) + "hdr", std::string("Sum of ") + dn + " packet header lengths (bytes)");
  }
  for (auto [p, dn] : dirs) {
    add(std::string(p) + "hdrR",
        std::string("Ratio of ") + dn + " header length sum to payload length sum");
  }
  for (auto [p, dn] : dirs) {
    for (auto [s, sn] : stats4) {
      add(std::string(p) + "pay_" + s,
          std::string(sn) + " " + dn + " payload size (bytes)");
    }
  }
  add("Upayc", "Payload peak point count, upstream data packets");
  add("Dpayc", "Payload peak point count, downstream data packets");
  add("payc", "Payload peak point count, all data packets");
  for (auto [s, sn] : stats4) {
    add(std::string("PPP5_") + s,
        std::string(sn) +
            " of the per-bucket payload-peak counters (alpha-second buckets over the"
            " first beta seconds, all packets)");
  }
  add("UBRPP", "Byte-rate peak point count, upstream");
  add("DBRPP", "Byte-rate peak point count, downstream");
  add("BRPP", "Byte-rate peak point count, all packets");
  for (auto [p, dn] : dirs) {
    for (auto [s, sn] : stats4) {
      add(std::string(p) + "BRPPSW_" + s,
          std::string(sn) + " " + dn +
              " sliding-window byte-rate peak size (window sums use on-wire packet"
              " size, payload plus header)");
    }
  }
  add("BRPPSW_Q1", "First quartile of all-packets sliding-window peak sizes "
                   "(linear interpolation)");
  add("BRPPSW_Q2", "Second quartile of all-packets sliding-window peak sizes "
                   "(linear interpolation)");
  add("BRPPSW_Q3", "Third quartile of all-packets sliding-window peak sizes "
                   "(linear interpolation)");
  return d;
}

std::vector<std::string> build_peak_names() {
  std::vector<std::string> names = {"Upayc", "Dpayc", "payc",
                                    "PPP5_mean", "PPP5_min", "PPP5_max", "PPP5_std",
                                    "UBRPP", "DBRPP", "BRPP"};
  for (const char* p : {"U", "D", ""}) {
    for (const char* s : {"mean", "min", "max", "std"}) {
      names.push_back(std::string(p) + "BRPPSW_" + s);
    }
  }
  names.insert(names.end(), {"BRPPSW_Q1", "BRPPSW_Q2", "BRPPSW_Q3"});
  return names;
}

} // namespace

const std::vector<std::pair<std::string, std::string>>& feature_dictionary() {
  static const auto dict = build_dictionary();
  return dict;
}

const std::vector<std::string>& feature_names() {
  static const auto names = [] {
    std::vector<std::string> n;
    for (const auto& [name, desc] : feature_dictionary()) n.push_back(name);
    return n;
  }();
  return names;
}

const std::vector<std::string>& peak_feature_names() {
  static const auto names = build_peak_names();
  return names;
}

void write_feature_dictionary(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write dictionary: " + path.string());
  out << "# Flow feature dictionary: " << kFeatureCount
      << " per-flow statistics, in column order.\n"
      << "# Degenerate statistics (empty series, zero denominators) are 0.\n";
  for (const auto& [name, desc] : feature_dictionary()) {
    out << name << "\t" << desc << "\n";
  }
}

namespace {

struct ViewSlices {
  std::vector<double> iat;
  std::vector<double> window;
  std::vector<double> payload;
  double hdr_sum = 0.0;
  double pay_sum = 0.0;
  std::size_t count = 0;
};

ViewSlices slice_view(const Flow& flow, Dir dir) {
  ViewSlices v;
  double prev_ts = 0.0;
  bool have_prev = false;
  for (const PacketRecord& p : flow.packets) {
    bool up = flow.upstream(p);
    if (dir == Dir::up && !up) continue;
    if (dir == Dir::down && up) continue;
    if (have_prev) v.iat.push_back(p.timestamp - prev_ts);
    prev_ts = p.timestamp;
    have_prev = true;
    v.window.push_back(p.tcp_window);
    v.payload.push_back(p.payload_len);
    v.hdr_sum += p.header_len;
    v.pay_sum += p.payload_len;
    v.count++;
  }
  return v;
}

double ratio(double num, double den) { return den == 0.0 ? 0.0 : num / den; }

} // namespace

FeatureVector extract_features(const Flow& flow, const PeakParams& params,
                               std::string flow_id) {
  if (flow.packets.empty()) {
    throw std::invalid_argument("cannot extract features from an empty flow: " + flow_id);
  }
  params.validate();

  FeatureVector fv;
  fv.flow_id = std::move(flow_id);
  fv.label = flow.label;
  std::size_t i = 0;
  auto put = [&fv, &i](double v) { fv.values[i++] = v; };

  const Dir kDirs[] = {Dir::up, Dir::down, Dir::all};
  ViewSlices views[3] = {slice_view(flow, Dir::up), slice_view(flow, Dir::down),
                         slice_view(flow, Dir::all)};
  double dur = flow.duration();

  for (const ViewSlices& v : views) {
    SeriesStats s = series_stats(v.iat);
    put(s.mean); put(s.min); put(s.max); put(s.stddev);
  }
  for (const ViewSlices& v : views) {
    SeriesStats s = series_stats(v.window);
    put(s.sum); put(s.mean); put(s.min); put(s.max); put(s.stddev);
  }
  for (const ViewSlices& v : views) put(static_cast<double>(v.count));
  for (const ViewSlices& v : views) put(ratio(static_cast<double>(v.count), dur));
  put(ratio(static_cast<double>(views[1].count), static_cast<double>(views[0].count)));

  const uint8_t flag_bits[] = {tcpflag::fin, tcpflag::syn, tcpflag::psh, tcpflag::ack,
                               tcpflag::rst, tcpflag::urg, tcpflag::ece, tcpflag::cwr};
  for (uint8_t bit : flag_bits) {
    std::size_t count = 0;
    for (const PacketRecord& p : flow.packets) {
      if (p.tcp_flags & bit) count++;
    }
    put(static_cast<double>(count));
  }
  for (bool want_up : {true, false}) {
    for (uint8_t bit : {tcpflag::psh, tcpflag::urg}) {
      std::size_t count = 0;
      for (const PacketRecord& p : flow.packets) {
        if (flow.upstream(p) == want_up && (p.tcp_flags & bit)) count++;
      }
      put(static_cast<double>(count));
    }
  }

  for (const ViewSlices& v : views) put(v.hdr_sum);
  for (const ViewSlices& v : views) put(ratio(v.hdr_sum, v.pay_sum));
  for (const ViewSlices& v : views) {
    SeriesStats s = series_stats(v.payload);
    put(s.mean); put(s.min); put(s.max); put(s.stddev);
  }

  PppResult ppp[3];
  for (int d = 0; d < 3; ++d) ppp[d] = ppp_features(flow, kDirs[d], params);
  for (int d = 0; d < 3; ++d) put(static_cast<double>(ppp[d].total));
  // PPP5 statistics are read from the all-packets counters.
  const SeriesStats& cs = ppp[2].counter_stats;
  put(cs.mean); put(cs.min); put(cs.max); put(cs.stddev);

  for (int d = 0; d < 3; ++d) {
    put(static_cast<double>(brpp_count(flow, kDirs[d], params)));
  }

  BrppswResult sw[3];
  for (int d = 0; d < 3; ++d) sw[d] = brppsw_features(flow, kDirs[d], params);
  for (int d = 0; d < 3; ++d) {
    const SeriesStats& s = sw[d].stats;
    put(s.mean); put(s.min); put(s.max); put(s.stddev);
  }
  put(quantile_linear(sw[2].peak_sizes, 0.25));
  put(quantile_linear(sw[2].peak_sizes, 0.50));
  put(quantile_linear(sw[2].peak_sizes, 0.75));

  if (i != kFeatureCount) {
    throw std::logic_error("feature count mismatch: " + std::to_string(i));
  }
  return fv;
}

FeatureMatrix extract_matrix(std::span<const Flow> flows, const PeakParams& params,
                             unsigned jobs) {
  FeatureMatrix m;
  m.rows.resize(flows.size());
  std::string first_error;
  std::mutex err_mu;
  parallel_for(flows.size(), jobs, [&](std::size_t i) {
    std::string id = "f" + std::to_string(i) + ":" + to_string(flows[i].key);
    try {
      m.rows[i] = extract_features(flows[i], params, id);
    } catch (const std::exception& e) {
      std::scoped_lock lock(err_mu);
      if (first_error.empty()) first_error = id + ": " + e.what();
    }
  });
  if (!first_error.empty()) throw std::runtime_error(first_error);
  return m;
}

void write_feature_csv(const std::filesystem::path& path, const FeatureMatrix& m,
                       const std::vector<std::string>& header_comments) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write feature csv: " + path.string());
  for (const std::string& c : header_comments) out << "# " << c << "\n";
  out << "flow_id";
  for (const std::string& name : feature_names()) out << ',' << name;
  out << ",label\n";
  for (const FeatureVector& row : m.rows) {
    out << row.flow_id;
    for (double v : row.values) out << ',' << csv::format_double(v);
    out << ',' << (row.label ? *row.label : "") << '\n';
  }
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

} // namespace vti
