#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>

namespace vti {

enum class Transport : uint8_t { tcp, udp };

// TCP flag bits, wire order.
namespace tcpflag {
inline constexpr uint8_t fin = 0x01;
inline constexpr uint8_t syn = 0x02;
inline constexpr uint8_t rst = 0x04;
inline constexpr uint8_t psh = 0x08;
inline constexpr uint8_t ack = 0x10;
inline constexpr uint8_t urg = 0x20;
inline constexpr uint8_t ece = 0x40;
inline constexpr uint8_t cwr = 0x80;
} // namespace tcpflag

struct Endpoint {
  std::string addr;
  uint16_t port = 0;

  // Lexicographic on address, then port: the canonical flow-key order.
  auto operator<=>(const Endpoint&) const = default;
};

// One observed packet. Timestamps are seconds since the start of the
// source trace; payload_len of 0 is valid (pure ACKs).
struct PacketRecord {
  double timestamp = 0.0;
  Endpoint src;
  Endpoint dst;
  Transport transport = Transport::tcp;
  uint32_t payload_len = 0;
  uint32_t header_len = 0;
  uint32_t tcp_window = 0; // 0 for UDP
  uint8_t tcp_flags = 0;   // empty for UDP
  std::optional<std::string> sni; // set only on a TLS ClientHello packet
};

// Direction-agnostic flow key: (a,b) and (b,a) map to the same tuple.
struct FiveTuple {
  Endpoint a;
  Endpoint b;
  Transport transport = Transport::tcp;

  static FiveTuple of(const PacketRecord& p) {
    FiveTuple t;
    t.transport = p.transport;
    if (p.src <= p.dst) {
      t.a = p.src;
      t.b = p.dst;
    } else {
      t.a = p.dst;
      t.b = p.src;
    }
    return t;
  }

  auto operator<=>(const FiveTuple&) const = default;
};

std::string to_string(const Endpoint& e);
std::string to_string(const FiveTuple& t);

} // namespace vti
