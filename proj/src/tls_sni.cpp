#include "vti/trace_io.hpp"

#include <cstdint>

namespace vti {

namespace {

constexpr uint8_t kContentTypeHandshake = 0x16;
constexpr uint8_t kHandshakeClientHello = 0x01;
constexpr uint16_t kExtensionServerName = 0x0000;

uint16_t be16(const uint8_t* p) {
  return static_cast<uint16_t>(p[0] << 8 | p[1]);
}

std::optional<std::string> parse_server_name_list(std::span<const uint8_t> d) {
  if (d.size() < 2) return std::nullopt;
  std::size_t pos = 2; // server name list length
  while (pos + 3 <= d.size()) {
    uint8_t name_type = d[pos];
    uint16_t name_len = be16(&d[pos + 1]);
    pos += 3;
    if (pos + name_len > d.size()) return std::nullopt;
    if (name_type == 0x00) { // host_name
      return std::string(reinterpret_cast<const char*>(&d[pos]), name_len);
    }
    pos += name_len;
  }
  return std::nullopt;
}

} // namespace

std::optional<std::string> extract_client_hello_sni(std::span<const uint8_t> payload) {
  // TLS record header: type, version (2), length (2).
  if (payload.size() < 5) return std::nullopt;
  if (payload[0] != kContentTypeHandshake) return std::nullopt;
  if (payload[1] < 3) return std::nullopt; // SSL2/SSL3 framing cannot carry SNI

  std::size_t pos = 5;
  // Handshake header: type, length (3).
  if (pos + 4 > payload.size()) return std::nullopt;
  if (payload[pos] != kHandshakeClientHello) return std::nullopt;
  pos += 4;

  // client_version + random
  if (pos + 2 + 32 > payload.size()) return std::nullopt;
  pos += 2 + 32;

  // session id
  if (pos + 1 > payload.size()) return std::nullopt;
  std::size_t session_len = payload[pos];
  pos += 1 + session_len;
  if (pos > payload.size()) return std::nullopt;

  // cipher suites
  if (pos + 2 > payload.size()) return std::nullopt;
  std::size_t cipher_len = be16(&payload[pos]);
  pos += 2 + cipher_len;
  if (pos > payload.size()) return std::nullopt;

  // compression methods
  if (pos + 1 > payload.size()) return std::nullopt;
  std::size_t comp_len = payload[pos];
  pos += 1 + comp_len;
  if (pos > payload.size()) return std::nullopt;

  // extensions
  if (pos + 2 > payload.size()) return std::nullopt;
  std::size_t ext_total = be16(&payload[pos]);
  pos += 2;
  std::size_t ext_end = std::min(pos + ext_total, payload.size());
  while (pos + 4 <= ext_end) {
    uint16_t ext_type = be16(&payload[pos]);
    uint16_t ext_len = be16(&payload[pos + 2]);
    pos += 4;
    if (pos + ext_len > ext_end) return std::nullopt;
    if (ext_type == kExtensionServerName) {
      return parse_server_name_list(payload.subspan(pos, ext_len));
    }
    pos += ext_len;
  }
  return std::nullopt;
}

} // namespace vti
