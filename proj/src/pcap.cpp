#include "vti/trace_io.hpp"

#include <array>
#include <cstring>
#include <fstream>
#include <iostream>
#include <stdexcept>

namespace vti {

namespace {

constexpr uint32_t kMagicUsec = 0xa1b2c3d4u;
constexpr uint32_t kMagicUsecSwapped = 0xd4c3b2a1u;
constexpr uint32_t kMagicNsec = 0xa1b23c4du;
constexpr uint32_t kMagicNsecSwapped = 0x4d3cb2a1u;

constexpr uint32_t kLinkEthernet = 1;
constexpr uint32_t kLinkRawIp = 101;

constexpr uint16_t kEtherTypeIpv4 = 0x0800;
constexpr uint16_t kEtherTypeIpv6 = 0x86dd;
constexpr uint16_t kEtherTypeVlan = 0x8100;
constexpr uint16_t kEtherTypeQinQ = 0x88a8;

constexpr uint8_t kProtoTcp = 6;
constexpr uint8_t kProtoUdp = 17;

uint32_t swap32(uint32_t v) {
  return v << 24 | (v & 0xff00u) << 8 | (v >> 8 & 0xff00u) | v >> 24;
}

uint16_t net16(const uint8_t* p) { return static_cast<uint16_t>(p[0] << 8 | p[1]); }

std::string ipv4_to_string(const uint8_t* p) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%u.%u.%u.%u", p[0], p[1], p[2], p[3]);
  return buf;
}

std::string ipv6_to_string(const uint8_t* p) {
  // Plain full form; compression is not needed for flow keying.
  char buf[40];
  std::snprintf(buf, sizeof(buf),
                "%02x%02x:%02x%02x:%02x%02x:%02x%02x:%02x%02x:%02x%02x:%02x%02x:%02x%02x",
                p[0], p[1], p[2], p[3], p[4], p[5], p[6], p[7], p[8], p[9],
                p[10], p[11], p[12], p[13], p[14], p[15]);
  return buf;
}

struct PcapHeader {
  uint32_t magic;
  uint16_t ver_major, ver_minor;
  int32_t thiszone;
  uint32_t sigfigs, snaplen, linktype;
};

struct PacketHeader {
  uint32_t ts_sec, ts_sub, incl_len, orig_len;
};

// Parsed L3 view of one captured frame; `ok` is false for frames to skip.
struct Parsed {
  bool ok = false;
  PacketRecord rec;
};

Parsed parse_ip(const uint8_t* data, std::size_t len, uint32_t orig_frame_len,
                std::size_t link_header_len) {
  Parsed out;
  if (len < 1) return out;
  uint8_t version = data[0] >> 4;

  std::string src_addr, dst_addr;
  uint8_t proto = 0;
  std::size_t l4_off = 0;
  std::size_t ip_payload_len = 0; // transport header + payload, per IP header fields

  if (version == 4) {
    if (len < 20) return out;
    std::size_t ihl = static_cast<std::size_t>(data[0] & 0x0f) * 4;
    if (ihl < 20 || len < ihl) return out;
    uint16_t total_len = net16(data + 2);
    uint16_t frag = net16(data + 6);
    if (frag & 0x1fff) return out; // non-first fragment: no transport header
    proto = data[9];
    src_addr = ipv4_to_string(data + 12);
    dst_addr = ipv4_to_string(data + 16);
    l4_off = ihl;
    if (total_len < ihl) return out;
    ip_payload_len = static_cast<std::size_t>(total_len) - ihl;
  } else if (version == 6) {
    if (len < 40) return out;
    proto = data[6]; // extension headers are not chased
    src_addr = ipv6_to_string(data + 8);
    dst_addr = ipv6_to_string(data + 24);
    l4_off = 40;
    ip_payload_len = net16(data + 4);
  } else {
    return out;
  }

  if (proto != kProtoTcp && proto != kProtoUdp) return out;
  if (len < l4_off + (proto == kProtoTcp ? 20u : 8u)) return out;
  const uint8_t* l4 = data + l4_off;

  PacketRecord& p = out.rec;
  p.src.addr = std::move(src_addr);
  p.dst.addr = std::move(dst_addr);
  p.src.port = net16(l4);
  p.dst.port = net16(l4 + 2);

  std::size_t transport_hdr = 0;
  if (proto == kProtoTcp) {
    p.transport = Transport::tcp;
    transport_hdr = static_cast<std::size_t>(l4[12] >> 4) * 4;
    if (transport_hdr < 20) return out;
    p.tcp_flags = l4[13];
    p.tcp_window = net16(l4 + 14);
  } else {
    p.transport = Transport::udp;
    transport_hdr = 8;
    uint16_t udp_len = net16(l4 + 4);
    // Prefer the UDP length field for the datagram payload.
    if (udp_len >= 8) ip_payload_len = udp_len;
  }
  if (ip_payload_len < transport_hdr) return out;
  p.payload_len = static_cast<uint32_t>(ip_payload_len - transport_hdr);

  // Header bytes = everything on the wire that is not transport payload.
  uint32_t frame_len = std::max<uint32_t>(
      orig_frame_len, static_cast<uint32_t>(link_header_len + l4_off + transport_hdr));
  p.header_len = frame_len - p.payload_len;

  if (proto == kProtoTcp && p.payload_len > 0) {
    std::size_t payload_off = l4_off + transport_hdr;
    if (payload_off < len) {
      std::span<const uint8_t> captured(data + payload_off, len - payload_off);
      p.sni = extract_client_hello_sni(captured);
      if (p.sni && p.sni->empty()) p.sni.reset();
    }
  }

  out.ok = true;
  return out;
}

} // namespace

std::vector<PacketRecord> read_capture(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open capture: " + path.string());

  PcapHeader hdr{};
  if (!in.read(reinterpret_cast<char*>(&hdr), sizeof(hdr))) {
    throw std::runtime_error("not a pcap file (short global header): " + path.string());
  }

  bool swapped = false;
  bool nanos = false;
  switch (hdr.magic) {
    case kMagicUsec: break;
    case kMagicNsec: nanos = true; break;
    case kMagicUsecSwapped: swapped = true; break;
    case kMagicNsecSwapped: swapped = true; nanos = true; break;
    default:
      throw std::runtime_error("not a pcap file (bad magic): " + path.string());
  }
  uint32_t linktype = swapped ? swap32(hdr.linktype) : hdr.linktype;
  if (linktype != kLinkEthernet && linktype != kLinkRawIp) {
    throw std::runtime_error("unsupported pcap link type " + std::to_string(linktype) +
                             ": " + path.string());
  }

  std::vector<PacketRecord> out;
  std::vector<uint8_t> buf;
  bool have_base = false;
  double base_ts = 0.0;
  double prev_ts = 0.0;
  std::size_t pkt_index = 0;

  for (;;) {
    PacketHeader ph{};
    if (!in.read(reinterpret_cast<char*>(&ph), sizeof(ph))) {
      if (in.gcount() != 0) {
        std::cerr << "warning: truncated packet header at end of " << path.string()
                  << ", stopping\n";
      }
      break;
    }
    if (swapped) {
      ph.ts_sec = swap32(ph.ts_sec);
      ph.ts_sub = swap32(ph.ts_sub);
      ph.incl_len = swap32(ph.incl_len);
      ph.orig_len = swap32(ph.orig_len);
    }
    if (ph.incl_len > 0x4000000u) {
      throw std::runtime_error("corrupt pcap record (incl_len " +
                               std::to_string(ph.incl_len) + "): " + path.string());
    }
    buf.resize(ph.incl_len);
    if (!in.read(reinterpret_cast<char*>(buf.data()), ph.incl_len)) {
      std::cerr << "warning: truncated final record in " << path.string()
                << ", stopping\n";
      break;
    }
    ++pkt_index;

    double ts = static_cast<double>(ph.ts_sec) +
                static_cast<double>(ph.ts_sub) * (nanos ? 1e-9 : 1e-6);
    if (!have_base) {
      base_ts = ts;
      prev_ts = ts;
      have_base = true;
    }
    if (ts < prev_ts) {
      throw std::runtime_error("out-of-order timestamp at packet " +
                               std::to_string(pkt_index) + ": " + path.string());
    }
    prev_ts = ts;

    const uint8_t* l3 = buf.data();
    std::size_t l3_len = buf.size();
    std::size_t link_hdr = 0;
    if (linktype == kLinkEthernet) {
      if (buf.size() < 14) continue;
      std::size_t off = 12;
      uint16_t ethertype = net16(&buf[off]);
      while (ethertype == kEtherTypeVlan || ethertype == kEtherTypeQinQ) {
        if (buf.size() < off + 6) break;
        off += 4;
        ethertype = net16(&buf[off]);
      }
      if (ethertype != kEtherTypeIpv4 && ethertype != kEtherTypeIpv6) continue;
      link_hdr = off + 2;
      l3 = buf.data() + link_hdr;
      l3_len = buf.size() - link_hdr;
    }

    Parsed parsed = parse_ip(l3, l3_len, ph.orig_len, link_hdr);
    if (!parsed.ok) continue;
    parsed.rec.timestamp = ts - base_ts;
    out.push_back(std::move(parsed.rec));
  }
  return out;
}

} // namespace vti
