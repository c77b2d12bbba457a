#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <filesystem>
#include <iomanip>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "bots/composite.hpp"
#include "bots/count.hpp"
#include "bots/delay.hpp"
#include "bots/error.hpp"
#include "bots/graph.hpp"
#include "bots/grid.hpp"
#include "bots/instance_io.hpp"
#include "bots/partition.hpp"
#include "bots/search.hpp"
#include "bots/top_path.hpp"

namespace bots {

/// Number of minimum-hop paths source -> target. Plain BFS distances, then
/// counts pushed forward along arcs that increase the distance by one.
/// Deliberately shares nothing with the region partition or the enumerator.
inline Count oracle_count_paths(const Graph& g, NodeId source, NodeId target) {
  if (!g.contains(source) || !g.contains(target)) throw UnknownNode("oracle: unknown node");
  constexpr std::size_t kUnseen = std::numeric_limits<std::size_t>::max();
  const std::size_t n = g.node_count();
  std::vector<std::size_t> dist(n, kUnseen);
  std::vector<std::uint32_t> order;
  std::deque<std::uint32_t> queue{source.value - 1};
  dist[source.value - 1] = 0;
  while (!queue.empty()) {
    const std::uint32_t u = queue.front();
    queue.pop_front();
    order.push_back(u);
    for (NodeId v : g.out(NodeId{u + 1})) {
      if (dist[v.value - 1] == kUnseen) {
        dist[v.value - 1] = dist[u] + 1;
        queue.push_back(v.value - 1);
      }
    }
  }
  if (dist[target.value - 1] == kUnseen) {
    throw Unreachable("oracle: " + to_string(target) + " unreachable from " + to_string(source));
  }
  std::vector<Count> ways(n, 0);
  ways[source.value - 1] = 1;
  for (std::uint32_t u : order) {  // BFS order is nondecreasing distance
    if (ways[u] == 0) continue;
    for (NodeId v : g.out(NodeId{u + 1})) {
      if (dist[v.value - 1] == dist[u] + 1) ways[v.value - 1] += ways[u];
    }
  }
  return ways[target.value - 1];
}

// ---------------------------------------------------------------------------
// Composite constraints

struct BorderConstraint {
  std::size_t region = 0;
  std::vector<NodeId> nodes;
};

struct LegCount {
  NodeId from;
  NodeId to;
  Count count;
};

struct CompositeConstraintSet {
  std::string name;
  std::size_t nodes = 0;
  NodeId source{1};
  NodeId target{1};
  std::optional<std::size_t> length;
  std::vector<BorderConstraint> borders;
  std::vector<LegCount> legs;
  Count total_breadth;
};

struct ConstraintCheck {
  std::string what;
  bool ok = false;
  std::string detail;
};

struct CompositeValidation {
  std::vector<ConstraintCheck> checks;

  bool passed() const {
    for (const auto& c : checks) {
      if (!c.ok) return false;
    }
    return !checks.empty();
  }
};

namespace detail {

inline std::vector<NodeId> ids(std::initializer_list<std::uint32_t> xs) {
  std::vector<NodeId> out;
  for (auto x : xs) out.emplace_back(x);
  return out;
}

inline std::string join_ids(const std::vector<NodeId>& v) {
  std::string s = "{";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i].value);
  return s + "}";
}

}  // namespace detail

/// Two grids sharing a 2x2 patch, 1 -> 46 through sigma_8 = {20, 24}.
inline CompositeConstraintSet fig3_left_constraints() {
  CompositeConstraintSet c;
  c.name = "fig3_left";
  c.nodes = 46;
  c.target = NodeId{46};
  c.length = 14;
  c.borders = {{8, detail::ids({20, 24})}};
  c.legs = {{NodeId{1}, NodeId{20}, 35}, {NodeId{1}, NodeId{24}, 35},
            {NodeId{20}, NodeId{46}, 35}, {NodeId{24}, NodeId{46}, 35}};
  c.total_breadth = 2450;
  return c;
}

/// Two grids sharing a 3x2 patch, 1 -> 44 through {20, 24, 26}.
inline CompositeConstraintSet fig3_right_constraints() {
  CompositeConstraintSet c;
  c.name = "fig3_right";
  c.nodes = 44;
  c.target = NodeId{44};
  c.length = 13;
  c.borders = {{8, detail::ids({20, 24, 26})}};
  c.legs = {{NodeId{1}, NodeId{20}, 35},  {NodeId{1}, NodeId{24}, 35},  {NodeId{1}, NodeId{26}, 15},
            {NodeId{20}, NodeId{44}, 15}, {NodeId{24}, NodeId{44}, 20}, {NodeId{26}, NodeId{44}, 15}};
  c.total_breadth = 1450;
  return c;
}

/// Three grids, 1 -> 63 through {20, 24, 26} then {39, 43, 49}.
inline CompositeConstraintSet fig4_constraints() {
  CompositeConstraintSet c;
  c.name = "fig4";
  c.nodes = 63;
  c.target = NodeId{63};
  c.length = 18;
  c.borders = {{8, detail::ids({20, 24, 26})}, {13, detail::ids({39, 43, 49})}};
  const std::uint32_t first[] = {20, 24, 26}, second[] = {39, 43, 49};
  const int into_first[] = {35, 35, 15};
  const int middle[3][3] = {{5, 10, 6}, {10, 10, 4}, {10, 5, 1}};
  const int out_of_second[] = {15, 20, 15};
  for (int i = 0; i < 3; ++i) c.legs.push_back({NodeId{1}, NodeId{first[i]}, into_first[i]});
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) c.legs.push_back({NodeId{first[i]}, NodeId{second[j]}, middle[i][j]});
  }
  for (int j = 0; j < 3; ++j) c.legs.push_back({NodeId{second[j]}, NodeId{63}, out_of_second[j]});
  c.total_breadth = 31100;
  return c;
}

/// Checks every constraint independently; failures are listed, never thrown.
inline CompositeValidation validate_composite(const Graph& g, const CompositeConstraintSet& c) {
  CompositeValidation v;
  auto add = [&](std::string what, bool ok, std::string detail) {
    v.checks.push_back({std::move(what), ok, std::move(detail)});
  };
  add("node count", g.node_count() == c.nodes,
      "expected " + std::to_string(c.nodes) + ", got " + std::to_string(g.node_count()));
  if (!g.contains(c.source) || !g.contains(c.target)) {
    add("endpoints", false, "source or target not in graph");
    return v;
  }
  std::optional<RegionPartition> p;
  try {
    p = partition(g, c.source);
  } catch (const Error& e) {
    add("partition", false, e.what());
  }
  if (p && c.length) {
    const std::size_t got = shortest_length(*p, c.target);
    add("length", got == *c.length, "expected " + std::to_string(*c.length) + ", got " + std::to_string(got));
  }
  if (p) {
    const auto chosen = choose_borders(*p, p->region_of(c.target));
    for (const auto& b : c.borders) {
      const std::string what = "border sigma_" + std::to_string(b.region);
      if (b.region < 1 || b.region > p->region_count()) {
        add(what, false, "region out of range");
        continue;
      }
      const auto& members = p->region(b.region);
      const bool chosen_ok = std::find(chosen.begin(), chosen.end(), b.region) != chosen.end();
      add(what, members == b.nodes && chosen_ok,
          "expected " + detail::join_ids(b.nodes) + ", got " + detail::join_ids(members) +
              (chosen_ok ? "" : ", not a chosen border"));
    }
  }
  auto count = [&](NodeId from, NodeId to) -> std::optional<Count> {
    try {
      return oracle_count_paths(g, from, to);
    } catch (const Error&) {
      return std::nullopt;
    }
  };
  for (const auto& leg : c.legs) {
    const auto got = count(leg.from, leg.to);
    add("count " + to_string(leg.from) + "->" + to_string(leg.to), got && *got == leg.count,
        "expected " + leg.count.str() + ", got " + (got ? got->str() : "unreachable"));
  }
  const auto total = count(c.source, c.target);
  add("total breadth", total && *total == c.total_breadth,
      "expected " + c.total_breadth.str() + ", got " + (total ? total->str() : "unreachable"));
  return v;
}

// ---------------------------------------------------------------------------
// Table reproduction

enum class RowStatus { Match, Mismatch, PaperTypoFlag, Skipped };

inline std::string to_string(RowStatus s) {
  switch (s) {
    case RowStatus::Match: return "MATCH";
    case RowStatus::Mismatch: return "MISMATCH";
    case RowStatus::PaperTypoFlag: return "PAPER_TYPO_FLAG";
    case RowStatus::Skipped: return "SKIPPED";
  }
  return "?";
}

struct TableRow {
  std::string label;
  std::size_t L = 0;
  Count LT;
  Count B;
  double ratio = 0;
  std::size_t expected_L = 0;
  Count expected_LT;
  Count expected_B;
  double expected_ratio = 0;
  RowStatus status = RowStatus::Skipped;
  std::string note;
  double seconds = 0;
};

struct TableReport {
  int id = 0;
  std::string title;
  std::vector<TableRow> rows;

  /// Every row matched, typo-flagged rows included.
  bool passed() const {
    for (const auto& r : rows) {
      if (r.status == RowStatus::Mismatch || r.status == RowStatus::Skipped) return false;
    }
    return !rows.empty();
  }
};

namespace detail {

struct PaperRow {
  std::string label;
  std::size_t k = 0, m = 0;   // grid rows
  std::string file;           // composite rows
  std::size_t L = 0;
  std::uint64_t LT = 0, B = 0;
  double ratio = 0;
  // printed values that contradict the derived ones
  std::optional<std::uint64_t> printed_LT;
  std::optional<double> printed_ratio;
  std::string note;
};

inline PaperRow grid_row(std::size_t k, std::size_t m, std::size_t L, std::uint64_t LT, std::uint64_t B,
                         double ratio, std::string note = {}) {
  PaperRow r;
  r.label = std::to_string(k) + "x" + std::to_string(m);
  r.k = k;
  r.m = m;
  r.L = L;
  r.LT = LT;
  r.B = B;
  r.ratio = ratio;
  r.note = std::move(note);
  return r;
}

inline PaperRow file_row(std::string label, std::string file, std::size_t L, std::uint64_t LT,
                         std::uint64_t B, double ratio, std::string note = {}) {
  PaperRow r;
  r.label = std::move(label);
  r.file = std::move(file);
  r.L = L;
  r.LT = LT;
  r.B = B;
  r.ratio = ratio;
  r.note = std::move(note);
  return r;
}

inline std::vector<PaperRow> paper_rows(int id) {
  switch (id) {
    case 1:
      return {grid_row(5, 5, 8, 251, 70, 3.59),          grid_row(6, 6, 10, 923, 252, 3.66),
              grid_row(7, 7, 12, 3431, 924, 3.71),       grid_row(8, 8, 14, 12869, 3432, 3.75),
              grid_row(9, 9, 16, 48619, 12870, 3.78),    grid_row(10, 10, 18, 184755, 48620, 3.80),
              grid_row(11, 11, 20, 705431, 184756, 3.82)};
    case 2:
      return {grid_row(25, 4, 27, 23750, 2925, 8.12, "L_T printed as 2,3750"),
              grid_row(30, 4, 32, 46375, 4960, 9.35), grid_row(35, 4, 37, 82250, 7770, 10.59),
              grid_row(40, 4, 42, 135750, 11480, 11.82)};
    case 3: {
      auto typo = grid_row(60, 3, 61, 39710, 1830, 21.70, "table prints L_T 38710 and ratio 21.15");
      typo.printed_LT = 38710;
      typo.printed_ratio = 21.15;
      return {grid_row(55, 3, 56, 30855, 1540, 20.04), typo, grid_row(65, 3, 66, 50115, 2145, 23.36)};
    }
    case 4:
      return {file_row("46", "fig3_left.txt", 14, 8861, 2450, 3.62),
              file_row("44", "fig3_right.txt", 13, 5276, 1450, 3.64)};
    case 5:
      return {file_row("63", "fig4.txt", 18, 113051, 31100, 3.64, "B printed as 31, L_T as 11 3051")};
    default:
      throw InvalidArgument("unknown table " + std::to_string(id) + " (expected 1..5)");
  }
}

inline std::optional<CompositeConstraintSet> constraints_for(const std::string& file) {
  if (file == "fig3_left.txt") return fig3_left_constraints();
  if (file == "fig3_right.txt") return fig3_right_constraints();
  if (file == "fig4.txt") return fig4_constraints();
  return std::nullopt;
}

inline bool same_to_2dp(double a, double b) { return std::llround(a * 100) == std::llround(b * 100); }

}  // namespace detail

inline std::string table_title(int id) {
  switch (id) {
    case 1: return "k x k grids";
    case 2: return "k x 4 grids";
    case 3: return "k x 3 grids";
    case 4: return "two 5x5 composites";
    case 5: return "three 5x5 composite";
    default: return "";
  }
}

/// Runs generate/load -> partition -> enumerate for every row of the table and
/// compares against the published values. Composite rows need the instance
/// files in `data_dir`; a missing or invalid file marks the row SKIPPED.
inline TableReport reproduce_table(int id, const std::filesystem::path& data_dir = ".",
                                   const SearchOptions& opt = {}) {
  TableReport report;
  report.id = id;
  report.title = table_title(id);
  for (const auto& ref : detail::paper_rows(id)) {
    TableRow row;
    row.label = ref.label;
    row.expected_L = ref.L;
    row.expected_LT = ref.LT;
    row.expected_B = ref.B;
    row.expected_ratio = ref.ratio;
    row.note = ref.note;
    const auto start = std::chrono::steady_clock::now();
    try {
      Graph g;
      if (ref.file.empty()) {
        g = generate_grid({ref.k, ref.m});
      } else {
        g = load_instance(data_dir / ref.file);
        if (auto c = detail::constraints_for(ref.file)) {
          const auto v = validate_composite(g, *c);
          if (!v.passed()) {
            for (const auto& ch : v.checks) {
              if (!ch.ok) throw InvalidGraph(ref.file + " fails " + ch.what + ": " + ch.detail);
            }
          }
        }
      }
      const auto p = partition(g, NodeId{1});
      const auto found = enumerate_shortest_paths(g, p, NodeId{static_cast<std::uint32_t>(g.node_count())}, opt);
      row.L = found.stats.length;
      row.LT = found.stats.loop_times;
      row.B = found.stats.breadth;
      row.ratio = found.stats.ratio;
      const bool ok = row.L == row.expected_L && row.LT == row.expected_LT && row.B == row.expected_B &&
                      detail::same_to_2dp(row.ratio, row.expected_ratio);
      if (!ok) {
        row.status = RowStatus::Mismatch;
      } else {
        row.status = ref.printed_LT || ref.printed_ratio ? RowStatus::PaperTypoFlag : RowStatus::Match;
      }
    } catch (const std::exception& e) {
      row.status = RowStatus::Skipped;
      row.note = e.what();
    }
    row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    report.rows.push_back(std::move(row));
  }
  return report;
}

inline std::string format_ratio(double r) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(2) << r;
  return s.str();
}

inline void write_table_text(const TableReport& r, std::ostream& out) {
  out << "table " << r.id << ": " << r.title << '\n';
  out << std::left << std::setw(8) << "instance" << std::right << std::setw(5) << "L" << std::setw(10) << "LT"
      << std::setw(10) << "B" << std::setw(8) << "ratio" << "  status\n";
  for (const auto& row : r.rows) {
    out << std::left << std::setw(8) << row.label << std::right << std::setw(5) << row.L << std::setw(10)
        << row.LT.str() << std::setw(10) << row.B.str() << std::setw(8) << format_ratio(row.ratio) << "  "
        << to_string(row.status);
    if (!row.note.empty()) out << "  (" << row.note << ")";
    out << '\n';
  }
}

/// Columns instance,L,LT,B,ratio,status.
inline void write_table_csv(const TableReport& r, std::ostream& out) {
  out << "instance,L,LT,B,ratio,status\n";
  for (const auto& row : r.rows) {
    out << row.label << ',' << row.L << ',' << row.LT.str() << ',' << row.B.str() << ','
        << format_ratio(row.ratio) << ',' << to_string(row.status) << '\n';
  }
}

// ---------------------------------------------------------------------------
// Chain growth

struct ChainRow {
  std::size_t depth = 0;
  std::size_t nodes = 0;
  std::vector<std::uint64_t> stage_evaluations;
  std::uint64_t staged_sum = 0;
  Count breadth;  // exhaustive shortest-path count, by the oracle
  bool ok = false;
};

struct ChainGrowthReport {
  std::vector<ChainRow> rows;
  bool linear = false;  // successive differences exactly 61 and 19

  bool passed() const {
    if (rows.empty() || !linear) return false;
    for (const auto& r : rows) {
      if (!r.ok) return false;
    }
    return true;
  }
};

inline std::uint64_t chain_expected_sum(std::size_t depth) { return 13 + 61 * depth; }
inline std::size_t chain_expected_nodes(std::size_t depth) { return 44 + 19 * (depth - 2); }

/// Builds the depth-N chain for each N in [first, last], runs the staged
/// search and checks per-stage evaluations 85, 61 ... 61, 50.
inline ChainGrowthReport chain_growth_check(std::size_t first = 2, std::size_t last = 6) {
  if (first < 2 || last < first) throw InvalidArgument("chain depths must satisfy 2 <= first <= last");
  ChainGrowthReport rep;
  for (std::size_t depth = first; depth <= last; ++depth) {
    ChainRow row;
    row.depth = depth;
    const Graph g = compose(chain_spec(depth));
    row.nodes = g.node_count();
    const NodeId source{1}, target{static_cast<std::uint32_t>(g.node_count())};
    const auto p = partition(g, source);
    const auto blocks = decompose_blocks(p, choose_borders(p, p.region_of(target)));
    const auto staged = top_path_staged(g, p, blocks, DelayProfile::constant(10), target, 0);
    row.stage_evaluations = staged.stage_evaluations;
    row.staged_sum = staged.total_evaluations();
    row.breadth = oracle_count_paths(g, source, target);
    std::vector<std::uint64_t> expected{85};
    for (std::size_t j = 2; j < depth; ++j) expected.push_back(61);
    expected.push_back(50);
    row.ok = row.nodes == chain_expected_nodes(depth) && row.staged_sum == chain_expected_sum(depth) &&
             row.stage_evaluations == expected;
    rep.rows.push_back(std::move(row));
  }
  rep.linear = true;
  for (std::size_t i = 1; i < rep.rows.size(); ++i) {
    rep.linear = rep.linear && rep.rows[i].staged_sum - rep.rows[i - 1].staged_sum == 61 &&
                 rep.rows[i].nodes - rep.rows[i - 1].nodes == 19;
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Pascal labels

struct PascalCheck {
  bool ok = false;
  Count corner;
  std::vector<std::string> failures;
};

/// On the k x k grid every label is the sum of the labels to its left and
/// above, and the far corner holds C(2k-2, k-1).
inline PascalCheck verify_pascal(std::size_t k) {
  if (k < 2) throw InvalidArgument("verify_pascal requires k >= 2");
  const Graph g = generate_grid({k, k});
  const auto p = partition(g, NodeId{1});
  const CountTable labels = count_labels(g, p);
  PascalCheck out;
  for (std::size_t row = 1; row <= k; ++row) {
    for (std::size_t col = 1; col <= k; ++col) {
      if (row == 1 && col == 1) continue;
      Count expect = 0;
      if (col > 1) expect += labels[grid_node(k, col - 1, row)];
      if (row > 1) expect += labels[grid_node(k, col, row - 1)];
      const Count& got = labels[grid_node(k, col, row)];
      if (got != expect) {
        out.failures.push_back("(" + std::to_string(col) + "," + std::to_string(row) + "): " + got.str() +
                               " != " + expect.str());
      }
    }
  }
  out.corner = labels[grid_node(k, k, k)];
  if (out.corner != binomial(2 * k - 2, k - 1)) out.failures.push_back("corner " + out.corner.str());
  out.ok = out.failures.empty();
  return out;
}

}  // namespace bots
