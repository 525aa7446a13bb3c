#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vti/packet.hpp"

namespace vti {

// A bidirectional flow: all packets sharing one canonical 5-tuple, in
// stream order. Upstream packets are those whose source equals `client`.
struct Flow {
  FiveTuple key;
  Endpoint client; // flow initiator: first SYN sender (TCP) or first packet sender
  std::vector<PacketRecord> packets;
  std::optional<std::string> label;
  std::optional<std::string> sni; // from the first packet carrying one
  std::size_t nonzero_payload_count = 0;

  bool upstream(const PacketRecord& p) const { return p.src == client; }

  // Last minus first timestamp; 0 for a single-packet flow.
  double duration() const {
    return packets.empty() ? 0.0
                           : packets.back().timestamp - packets.front().timestamp;
  }
};

// Partitions a packet stream into flows keyed by canonical 5-tuple.
// Flow order is order of first appearance; packet order within a flow
// preserves stream order.
std::vector<Flow> assemble_flows(std::span<const PacketRecord> packets);

// Keeps exactly the flows with nonzero_payload_count >= threshold
// (boundary inclusive), preserving order.
std::vector<Flow> filter_elephant(const std::vector<Flow>& flows,
                                  std::size_t threshold = 500);

struct LabelRule {
  std::string pattern; // glob over the flow SNI: '*' and '?' wildcards
  std::string cls;
};

// One `pattern<TAB>class` per line, '#' comments, evaluated top-down.
std::vector<LabelRule> load_label_rules(const std::filesystem::path& path);

bool glob_match(std::string_view pattern, std::string_view text);

// Labels each flow with the class of the first rule matching its SNI;
// unmatched flows get `fallback` when provided. Returns the number of
// flows left unlabeled.
std::size_t label_flows(std::vector<Flow>& flows,
                        const std::vector<LabelRule>& rules,
                        const std::optional<std::string>& fallback);

} // namespace vti
