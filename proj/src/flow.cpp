#include "vti/flow.hpp"

#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace vti {

std::string to_string(const Endpoint& e) {
  return e.addr + ":" + std::to_string(e.port);
}

std::string to_string(const FiveTuple& t) {
  return to_string(t.a) + "-" + to_string(t.b) +
         (t.transport == Transport::tcp ? "/tcp" : "/udp");
}

std::vector<Flow> assemble_flows(std::span<const PacketRecord> packets) {
  std::map<FiveTuple, std::size_t> index;
  std::vector<Flow> flows;

  for (const PacketRecord& p : packets) {
    FiveTuple key = FiveTuple::of(p);
    auto [it, inserted] = index.try_emplace(key, flows.size());
    if (inserted) {
      Flow f;
      f.key = key;
      flows.push_back(std::move(f));
    }
    Flow& f = flows[it->second];
    if (p.payload_len > 0) f.nonzero_payload_count++;
    if (!f.sni && p.sni) f.sni = p.sni;
    f.packets.push_back(p);
  }

  // Client = source of the first SYN for TCP, else the first packet's source.
  for (Flow& f : flows) {
    f.client = f.packets.front().src;
    if (f.key.transport == Transport::tcp) {
      for (const PacketRecord& p : f.packets) {
        if (p.tcp_flags & tcpflag::syn) {
          f.client = p.src;
          break;
        }
      }
    }
  }
  return flows;
}

std::vector<Flow> filter_elephant(const std::vector<Flow>& flows,
                                  std::size_t threshold) {
  if (threshold < 1) throw std::invalid_argument("elephant threshold must be >= 1");
  std::vector<Flow> kept;
  for (const Flow& f : flows) {
    if (f.nonzero_payload_count >= threshold) kept.push_back(f);
  }
  return kept;
}

bool glob_match(std::string_view pattern, std::string_view text) {
  // Iterative *-backtracking matcher; '?' matches one character.
  std::size_t p = 0, t = 0;
  std::size_t star = std::string_view::npos, mark = 0;
  while (t < text.size()) {
    if (p < pattern.size() && (pattern[p] == '?' || pattern[p] == text[t])) {
      ++p;
      ++t;
    } else if (p < pattern.size() && pattern[p] == '*') {
      star = p++;
      mark = t;
    } else if (star != std::string_view::npos) {
      p = star + 1;
      t = ++mark;
    } else {
      return false;
    }
  }
  while (p < pattern.size() && pattern[p] == '*') ++p;
  return p == pattern.size();
}

std::vector<LabelRule> load_label_rules(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open label rules: " + path.string());
  std::vector<LabelRule> rules;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0 || tab + 1 >= line.size()) {
      std::ostringstream msg;
      msg << path.string() << ":" << lineno
          << ": expected 'pattern<TAB>class'";
      throw std::runtime_error(msg.str());
    }
    rules.push_back({line.substr(0, tab), line.substr(tab + 1)});
  }
  if (rules.empty()) {
    throw std::runtime_error("label rules file has no rules: " + path.string());
  }
  return rules;
}

std::size_t label_flows(std::vector<Flow>& flows,
                        const std::vector<LabelRule>& rules,
                        const std::optional<std::string>& fallback) {
  std::size_t unlabeled = 0;
  for (Flow& f : flows) {
    f.label.reset();
    if (f.sni) {
      for (const LabelRule& r : rules) {
        if (glob_match(r.pattern, *f.sni)) {
          f.label = r.cls;
          break;
        }
      }
    }
    if (!f.label) {
      if (fallback) {
        f.label = fallback;
      } else {
        ++unlabeled;
      }
    }
  }
  return unlabeled;
}

} // namespace vti
