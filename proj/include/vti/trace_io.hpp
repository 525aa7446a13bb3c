#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vti/packet.hpp"

namespace vti {

// --- text traces -----------------------------------------------------------
// One packet per line:
//   timestamp,src_addr,src_port,dst_addr,dst_port,proto,payload_len,
//   header_len,tcp_window,tcp_flags,sni
// proto is "tcp" or "udp"; tcp_flags is a string over FSPAREUC; empty
// fields denote absence; '#' starts a comment line.

std::vector<PacketRecord> read_text_trace(const std::filesystem::path& path);
void write_text_trace(const std::filesystem::path& path,
                      std::span<const PacketRecord> packets);

std::string flags_to_string(uint8_t flags);
uint8_t flags_from_string(std::string_view s, const std::string& context);

// --- capture files ---------------------------------------------------------
// Classic pcap (magic 0xa1b2c3d4 / 0xd4c3b2a1, microsecond or nanosecond
// variants, either byte order). Yields one record per IP packet carrying
// TCP or UDP; everything else is skipped silently. Timestamps are rebased
// so the first packet reads 0.0. A truncated final record warns and stops.
std::vector<PacketRecord> read_capture(const std::filesystem::path& path);

// Server name from a TLS ClientHello, if `payload` starts one.
std::optional<std::string> extract_client_hello_sni(std::span<const uint8_t> payload);

} // namespace vti
