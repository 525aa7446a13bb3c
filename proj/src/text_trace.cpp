#include "vti/trace_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "vti/csv.hpp"

namespace vti {

namespace {

constexpr std::string_view kFlagLetters = "FSPARUEC";

uint8_t flag_bit(char c) {
  switch (c) {
    case 'F': return tcpflag::fin;
    case 'S': return tcpflag::syn;
    case 'P': return tcpflag::psh;
    case 'A': return tcpflag::ack;
    case 'R': return tcpflag::rst;
    case 'U': return tcpflag::urg;
    case 'E': return tcpflag::ece;
    case 'C': return tcpflag::cwr;
    default: return 0;
  }
}

[[noreturn]] void fail(const std::filesystem::path& path, std::size_t lineno,
                       const std::string& what) {
  std::ostringstream msg;
  msg << path.string() << ":" << lineno << ": " << what;
  throw std::runtime_error(msg.str());
}

uint16_t parse_port(const std::string& field, const std::filesystem::path& path,
                    std::size_t lineno) {
  long v = csv::parse_long(field, path.string() + ":" + std::to_string(lineno));
  if (v < 0 || v > 65535) fail(path, lineno, "port out of range: " + field);
  return static_cast<uint16_t>(v);
}

uint32_t parse_len(const std::string& field, const char* what,
                   const std::filesystem::path& path, std::size_t lineno) {
  if (field.empty()) return 0;
  long v = csv::parse_long(field, path.string() + ":" + std::to_string(lineno));
  if (v < 0) fail(path, lineno, std::string(what) + " must be >= 0: " + field);
  return static_cast<uint32_t>(v);
}

} // namespace

std::string flags_to_string(uint8_t flags) {
  std::string s;
  for (char c : kFlagLetters) {
    if (flags & flag_bit(c)) s.push_back(c);
  }
  return s;
}

uint8_t flags_from_string(std::string_view s, const std::string& context) {
  uint8_t flags = 0;
  for (char c : s) {
    uint8_t bit = flag_bit(c);
    if (!bit) {
      throw std::runtime_error(context + ": unknown TCP flag letter '" +
                               std::string(1, c) + "'");
    }
    flags |= bit;
  }
  return flags;
}

std::vector<PacketRecord> read_text_trace(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open trace: " + path.string());

  std::vector<PacketRecord> out;
  std::string line;
  std::size_t lineno = 0;
  double prev_ts = -1.0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;

    auto fields = csv::split(line);
    if (fields.size() != 11) {
      fail(path, lineno, "expected 11 comma-separated fields, got " +
                             std::to_string(fields.size()));
    }
    std::string ctx = path.string() + ":" + std::to_string(lineno);

    PacketRecord p;
    p.timestamp = csv::parse_double(fields[0], ctx);
    if (p.timestamp < 0) fail(path, lineno, "negative timestamp");
    if (p.timestamp < prev_ts) fail(path, lineno, "timestamps must be non-decreasing");
    prev_ts = p.timestamp;

    if (fields[1].empty() || fields[3].empty()) fail(path, lineno, "empty address");
    p.src = {fields[1], parse_port(fields[2], path, lineno)};
    p.dst = {fields[3], parse_port(fields[4], path, lineno)};

    if (fields[5] == "tcp") {
      p.transport = Transport::tcp;
    } else if (fields[5] == "udp") {
      p.transport = Transport::udp;
    } else {
      fail(path, lineno, "proto must be tcp or udp: " + fields[5]);
    }

    p.payload_len = parse_len(fields[6], "payload_len", path, lineno);
    p.header_len = parse_len(fields[7], "header_len", path, lineno);
    p.tcp_window = parse_len(fields[8], "tcp_window", path, lineno);
    p.tcp_flags = flags_from_string(fields[9], ctx);
    if (p.transport == Transport::udp && (p.tcp_window != 0 || p.tcp_flags != 0)) {
      fail(path, lineno, "UDP packets cannot carry TCP window or flags");
    }
    if (!fields[10].empty()) p.sni = fields[10];

    out.push_back(std::move(p));
  }
  return out;
}

void write_text_trace(const std::filesystem::path& path,
                      std::span<const PacketRecord> packets) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write trace: " + path.string());
  out << "# timestamp,src_addr,src_port,dst_addr,dst_port,proto,payload_len,"
         "header_len,tcp_window,tcp_flags,sni\n";
  for (const PacketRecord& p : packets) {
    out << csv::format_double(p.timestamp) << ',' << p.src.addr << ','
        << p.src.port << ',' << p.dst.addr << ',' << p.dst.port << ','
        << (p.transport == Transport::tcp ? "tcp" : "udp") << ','
        << p.payload_len << ',' << p.header_len << ',' << p.tcp_window << ','
        << flags_to_string(p.tcp_flags) << ',' << (p.sni ? *p.sni : "") << '\n';
  }
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

} // namespace vti
