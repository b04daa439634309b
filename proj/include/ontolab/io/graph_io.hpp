#pragma once

// Functional-graph files.
//
// Text: first token is the state count n, followed by n successor indices,
// one per line. `index_base` selects 0- or 1-based labels. Lines starting
// with '#' are comments, except "# index_base: 1", which sets the label base
// when the caller does not fix it.
//
// Binary: the 4-byte magic "FGR1", a little-endian uint64 n, then n
// little-endian uint32 successors (always 0-based).

#include <array>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ontolab/error.hpp"
#include "ontolab/info_loss.hpp"

namespace ontolab::io {

inline constexpr std::array<char, 4> kGraphMagic{'F', 'G', 'R', '1'};

/// Label base declared by a "# index_base: B" line, if any.
inline std::optional<unsigned> declared_index_base(const std::string& comment) {
  std::istringstream ls(comment.substr(comment.find('#') + 1));
  std::string key;
  unsigned base = 0;
  if (ls >> key && key == "index_base:" && ls >> base) return base;
  return std::nullopt;
}

inline info_loss::FunctionalGraph parse_graph_text(std::istream& in, std::optional<unsigned> base = std::nullopt) {
  std::optional<unsigned> declared;
  std::vector<std::uint64_t> tokens;
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] == '#') {
      if (!declared) declared = declared_index_base(line);
      continue;
    }
    std::istringstream ls(line);
    std::string tok;
    while (ls >> tok) {
      try {
        std::size_t used = 0;
        const auto v = std::stoull(tok, &used);
        require(used == tok.size(), ErrorCode::kIoError, "bad token '" + tok + "' in graph file");
        tokens.push_back(v);
      } catch (const std::logic_error&) {
        fail(ErrorCode::kIoError, "bad token '" + tok + "' in graph file");
      }
    }
  }
  require(!tokens.empty(), ErrorCode::kIoError, "graph file is empty");
  const unsigned index_base = base.value_or(declared.value_or(0));
  require(index_base <= 1, ErrorCode::kInvalidParameter, "index_base must be 0 or 1");
  const auto n = tokens.front();
  require(tokens.size() == n + 1, ErrorCode::kIoError,
          "graph header says " + std::to_string(n) + " states but file lists " +
              std::to_string(tokens.size() - 1) + " successors");
  std::vector<info_loss::State> succ(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    const auto v = tokens[i + 1];
    require(v >= index_base && v - index_base < n, ErrorCode::kIndexOutOfRange,
            "successor " + std::to_string(v) + " out of range");
    succ[i] = static_cast<info_loss::State>(v - index_base);
  }
  return info_loss::FunctionalGraph(std::move(succ));
}

inline info_loss::FunctionalGraph parse_graph_binary(std::istream& in) {
  std::array<char, 4> magic{};
  in.read(magic.data(), magic.size());
  require(in.good() && magic == kGraphMagic, ErrorCode::kIoError, "missing FGR1 magic");
  unsigned char buf[8];
  in.read(reinterpret_cast<char*>(buf), 8);
  require(in.good(), ErrorCode::kIoError, "truncated binary graph header");
  std::uint64_t n = 0;
  for (int k = 7; k >= 0; --k) n = (n << 8) | buf[k];
  require(n >= 1 && n <= 0xffffffffULL, ErrorCode::kIoError, "bad state count in binary graph");
  std::vector<info_loss::State> succ(n);
  for (auto& s : succ) {
    in.read(reinterpret_cast<char*>(buf), 4);
    require(in.good() || (in.eof() && in.gcount() == 4), ErrorCode::kIoError, "truncated binary graph");
    s = static_cast<info_loss::State>(buf[0]) | static_cast<info_loss::State>(buf[1]) << 8 |
        static_cast<info_loss::State>(buf[2]) << 16 | static_cast<info_loss::State>(buf[3]) << 24;
  }
  return info_loss::FunctionalGraph(std::move(succ));
}

/// Detects the binary magic, otherwise parses text.
inline info_loss::FunctionalGraph load_graph(const std::string& path, std::optional<unsigned> index_base = std::nullopt) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), ErrorCode::kIoError, "cannot open graph file " + path);
  std::array<char, 4> head{};
  in.read(head.data(), head.size());
  const bool binary = in.gcount() == 4 && head == kGraphMagic;
  in.clear();
  in.seekg(0);
  return binary ? parse_graph_binary(in) : parse_graph_text(in, index_base);
}

inline void write_graph_text(std::ostream& out, const info_loss::FunctionalGraph& g, unsigned index_base = 0) {
  if (index_base != 0) out << "# index_base: " << index_base << '\n';
  out << g.size() << '\n';
  for (auto s : g.successors()) out << (s + index_base) << '\n';
}

inline void write_graph_binary(std::ostream& out, const info_loss::FunctionalGraph& g) {
  out.write(kGraphMagic.data(), kGraphMagic.size());
  std::uint64_t n = g.size();
  for (int k = 0; k < 8; ++k) out.put(static_cast<char>((n >> (8 * k)) & 0xff));
  for (auto s : g.successors()) {
    for (int k = 0; k < 4; ++k) out.put(static_cast<char>((s >> (8 * k)) & 0xff));
  }
}

}  // namespace ontolab::io
