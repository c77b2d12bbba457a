#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "bots/composite.hpp"
#include "bots/error.hpp"
#include "bots/graph.hpp"

namespace bots {

namespace detail {

inline std::string strip_comment(std::string line) {
  if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
  return line;
}

inline std::vector<std::string> split_words(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> words;
  for (std::string w; in >> w;) words.push_back(w);
  return words;
}

inline long long parse_int(const std::string& word, std::size_t line_no) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(word, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != word.size() || word.empty()) {
    throw ParseError("line " + std::to_string(line_no) + ": expected an integer, got '" + word +
                     "'");
  }
  return v;
}

inline NodeId parse_node(const std::string& word, std::size_t line_no) {
  const long long v = parse_int(word, line_no);
  if (v < 1 || v > 0xffffffffLL) {
    throw ParseError("line " + std::to_string(line_no) + ": node id out of range: " + word);
  }
  return NodeId{static_cast<std::uint32_t>(v)};
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ParseError("cannot write " + path.string());
  out << text;
}

}  // namespace detail

/// Parses the instance text format:
///
///     n <count>
///     <u> <v>                  one arc per line
///     coord <id> <col> <row>   optional labeling
///
/// `#` starts a comment.
inline Graph parse_instance(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::optional<std::size_t> n;
  std::vector<Arc> arcs;
  std::map<NodeId, Coord> coords;
  std::size_t line_no = 0;
  for (std::string raw; std::getline(in, raw);) {
    ++line_no;
    const auto words = detail::split_words(detail::strip_comment(raw));
    if (words.empty()) continue;
    if (!n) {
      if (words.size() != 2 || words[0] != "n") {
        throw ParseError("line " + std::to_string(line_no) + ": expected 'n <count>' header");
      }
      const long long count = detail::parse_int(words[1], line_no);
      if (count < 1) throw ParseError("line " + std::to_string(line_no) + ": node count must be positive");
      n = static_cast<std::size_t>(count);
    } else if (words[0] == "coord") {
      if (words.size() != 4) {
        throw ParseError("line " + std::to_string(line_no) + ": expected 'coord <id> <col> <row>'");
      }
      coords[detail::parse_node(words[1], line_no)] =
          Coord{static_cast<int>(detail::parse_int(words[2], line_no)),
                static_cast<int>(detail::parse_int(words[3], line_no))};
    } else if (words.size() == 2) {
      arcs.emplace_back(detail::parse_node(words[0], line_no), detail::parse_node(words[1], line_no));
    } else {
      throw ParseError("line " + std::to_string(line_no) + ": malformed line '" + raw + "'");
    }
  }
  if (!n) throw ParseError("missing 'n <count>' header");
  return build_graph(std::move(arcs), *n).with_coords(std::move(coords));
}

/// Canonical text: header, arcs ascending by (u, v), then coordinates by id.
inline std::string format_instance(const Graph& g) {
  std::ostringstream out;
  out << "n " << g.node_count() << '\n';
  for (const Arc& a : g.relations()) out << a.from.value << ' ' << a.to.value << '\n';
  for (const auto& [v, c] : g.coords()) {
    out << "coord " << v.value << ' ' << c.col << ' ' << c.row << '\n';
  }
  return out.str();
}

inline Graph load_instance(const std::filesystem::path& path) {
  try {
    return parse_instance(detail::read_file(path));
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

inline void save_instance(const Graph& g, const std::filesystem::path& path) {
  detail::write_file(path, format_instance(g));
}

/// Composite recipe text. Blocks are numbered from 1 in order of appearance.
///
///     block grid <k> <m> [at <col> <row> [transposed]]
///     block file <path>  [at <col> <row> [transposed]]
///     overlay                          merge nodes sharing a plane position
///     identify <i>:<u> <j>:<v>
///     join <i>:<u> <j>:<v>             adds the arc pair u<->v
///     relabel <old> <new>
///     expect_n <count>
///
/// Relative file paths resolve against `base_dir`.
inline CompositeSpec parse_composite_spec(std::string_view text,
                                          const std::filesystem::path& base_dir = {}) {
  CompositeSpec spec;
  bool overlay = false;
  std::istringstream in{std::string(text)};
  std::size_t line_no = 0;
  auto fail = [&](const std::string& what) {
    throw ParseError("line " + std::to_string(line_no) + ": " + what);
  };
  auto block_node = [&](const std::string& word) {
    const auto colon = word.find(':');
    if (colon == std::string::npos) fail("expected <block>:<node>, got '" + word + "'");
    const long long b = detail::parse_int(word.substr(0, colon), line_no);
    if (b < 1) fail("block numbers start at 1");
    return BlockNode{static_cast<std::size_t>(b - 1), detail::parse_node(word.substr(colon + 1), line_no)};
  };
  for (std::string raw; std::getline(in, raw);) {
    ++line_no;
    const auto w = detail::split_words(detail::strip_comment(raw));
    if (w.empty()) continue;
    if (w[0] == "block") {
      if (w.size() < 3) fail("incomplete block line");
      Block blk;
      std::size_t rest = 0;
      if (w[1] == "grid") {
        if (w.size() < 4) fail("expected 'block grid <k> <m>'");
        const long long k = detail::parse_int(w[2], line_no), m = detail::parse_int(w[3], line_no);
        if (k < 1 || m < 1) fail("grid dimensions must be positive");
        blk.graph = detail::lattice(static_cast<std::size_t>(k), static_cast<std::size_t>(m));
        rest = 4;
      } else if (w[1] == "file") {
        blk.graph = load_instance(base_dir / w[2]);
        rest = 3;
      } else {
        fail("unknown block kind '" + w[1] + "'");
      }
      if (rest < w.size()) {
        if (w[rest] != "at" || w.size() < rest + 3) fail("expected 'at <col> <row> [transposed]'");
        Placement p{{static_cast<int>(detail::parse_int(w[rest + 1], line_no)),
                     static_cast<int>(detail::parse_int(w[rest + 2], line_no))},
                    false};
        if (w.size() == rest + 4) {
          if (w[rest + 3] != "transposed") fail("unexpected '" + w[rest + 3] + "'");
          p.transposed = true;
        } else if (w.size() > rest + 4) {
          fail("trailing words on block line");
        }
        blk.placement = p;
      }
      spec.blocks.push_back(std::move(blk));
    } else if (w[0] == "overlay" && w.size() == 1) {
      overlay = true;
    } else if ((w[0] == "identify" || w[0] == "join") && w.size() == 3) {
      spec.splices.push_back({w[0] == "identify" ? Splice::Kind::identify : Splice::Kind::join,
                              block_node(w[1]), block_node(w[2])});
    } else if (w[0] == "relabel" && w.size() == 3) {
      spec.relabel[detail::parse_node(w[1], line_no)] = detail::parse_node(w[2], line_no);
    } else if (w[0] == "expect_n" && w.size() == 2) {
      spec.expected_nodes = static_cast<std::size_t>(detail::parse_int(w[1], line_no));
    } else {
      fail("malformed line '" + raw + "'");
    }
  }
  if (overlay) identify_overlaps(spec);
  return spec;
}

inline CompositeSpec load_composite_spec(const std::filesystem::path& path) {
  try {
    return parse_composite_spec(detail::read_file(path), path.parent_path());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

}  // namespace bots
