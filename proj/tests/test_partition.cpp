#include <gtest/gtest.h>

#include <random>

#include "bots/bots.hpp"
#include "support.hpp"

using namespace bots;

namespace {

std::vector<NodeId> ids(std::initializer_list<std::uint32_t> xs) {
  std::vector<NodeId> out;
  for (auto x : xs) out.emplace_back(x);
  return out;
}

}  // namespace

TEST(Partition, FiveByFiveSizes) {
  const auto p = partition(generate_grid({5, 5}), NodeId{1});
  EXPECT_EQ(p.region_sizes(), (std::vector<std::size_t>{1, 2, 3, 4, 5, 4, 3, 2, 1}));
  EXPECT_EQ(shortest_length(p, NodeId{25}), 8u);
  EXPECT_EQ(shortest_length(p, NodeId{1}), 0u);
  EXPECT_TRUE(find_bridge_regions(p).empty());
}

TEST(Partition, TwoNodePair) {
  const auto p = partition(build_graph({Arc{1, 2}}), NodeId{1});
  ASSERT_EQ(p.region_count(), 2u);
  EXPECT_EQ(p.region(1), ids({1}));
  EXPECT_EQ(p.region(2), ids({2}));
}

TEST(Partition, LongGridLength) {
  const Graph g = generate_grid({25, 4});
  EXPECT_EQ(shortest_length(partition(g, NodeId{1}), NodeId{100}), 27u);
}

TEST(Partition, Errors) {
  const Graph g = build_graph({Arc{1, 2}, Arc{3, 2}});
  EXPECT_THROW(partition(g, NodeId{1}), Unreachable);
  EXPECT_THROW(partition(g, NodeId{9}), UnknownNode);
  const auto reach = partition_reachable(g, NodeId{1});
  EXPECT_FALSE(reach.contains(NodeId{3}));
  EXPECT_THROW(reach.region_of(NodeId{3}), UnknownNode);
  EXPECT_THROW(reach.region(0), InvalidArgument);
}

TEST(Partition, UnreachableMessageNamesNodes) {
  const Graph g = build_graph({Arc{1, 2}, Arc{3, 2}});
  try {
    partition(g, NodeId{1});
    FAIL();
  } catch (const Unreachable& e) {
    EXPECT_NE(std::string(e.what()).find("3"), std::string::npos);
  }
}

TEST(Partition, Fig3Left) {
  const auto p = partition(compose(fig3_left_spec()), NodeId{1});
  EXPECT_EQ(p.region(8), ids({20, 24}));
  const auto bridges = find_bridge_regions(p);
  EXPECT_NE(std::find(bridges.begin(), bridges.end(), 8u), bridges.end());
  EXPECT_EQ(choose_borders(p), (std::vector<std::size_t>{8}));
  const auto seq = decompose_blocks(p, {8});
  ASSERT_EQ(seq.depth(), 2u);
  EXPECT_EQ(seq.blocks[0], (RegionInterval{1, 8}));
  EXPECT_EQ(seq.blocks[1], (RegionInterval{8, 15}));
}

TEST(Partition, Fig3RightAdjacentBridges) {
  const auto p = partition(compose(fig3_right_spec()), NodeId{1});
  EXPECT_EQ(p.region_sizes(), (std::vector<std::size_t>{1, 2, 3, 4, 5, 4, 3, 3, 4, 5, 4, 3, 2, 1}));
  EXPECT_EQ(find_bridge_regions(p), (std::vector<std::size_t>{7, 8}));
  EXPECT_EQ(p.region(7), ids({15, 19, 23}));
  EXPECT_EQ(p.region(8), ids({20, 24, 26}));
  EXPECT_EQ(choose_borders(p), (std::vector<std::size_t>{8}));
}

TEST(Partition, Fig4Blocks) {
  const auto p = partition(compose(fig4_spec()), NodeId{1});
  const auto borders = choose_borders(p, p.region_of(NodeId{63}));
  EXPECT_EQ(borders, (std::vector<std::size_t>{8, 13}));
  EXPECT_EQ(p.region(13), ids({39, 43, 49}));
  const auto seq = decompose_blocks(p, borders);
  EXPECT_EQ(seq.depth(), 3u);
  EXPECT_EQ(decompose_blocks(p, {}).depth(), 1u);
}

TEST(Partition, DecomposeRejections) {
  const auto p = partition(compose(fig4_spec()), NodeId{1});
  EXPECT_THROW(decompose_blocks(p, {1}), InvalidArgument);
  EXPECT_THROW(decompose_blocks(p, {p.region_count()}), InvalidArgument);
  EXPECT_THROW(decompose_blocks(p, {13, 8}), InvalidArgument);
  EXPECT_THROW(decompose_blocks(p, {7, 8}), InvalidArgument);
  EXPECT_THROW(decompose_blocks(p, {5}), InvalidArgument);
}

TEST(Partition, PlateauIsNotAllBridges) {
  // path 1-2-3 then a corridor of width 2, sizes [1,1,2,2,2,2,1]
  std::vector<Arc> a;
  auto pair = [&](std::uint32_t u, std::uint32_t v) {
    a.emplace_back(u, v);
    a.emplace_back(v, u);
  };
  pair(1, 2);
  pair(2, 3);
  pair(2, 4);
  for (std::uint32_t i = 3; i <= 7; i += 2) {
    pair(i, i + 2);
    pair(i + 1, i + 3);
    pair(i, i + 1);
  }
  pair(9, 11);
  pair(10, 11);
  const auto p = partition(build_graph(a), NodeId{1});
  const auto sizes = p.region_sizes();
  for (std::size_t b : find_bridge_regions(p)) {
    EXPECT_TRUE(sizes[b - 2] > sizes[b - 1] || sizes[b - 1] < sizes[b]);
  }
}

TEST(Partition, RandomDigraphInvariants) {
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    std::uniform_int_distribution<int> n_d(1, 50), extra_d(0, 80);
    const Graph g = testing_support::random_reachable_digraph(rng, n_d(rng), extra_d(rng));
    const auto p = partition(g, NodeId{1});
    const auto dist = testing_support::bfs_distances(g, NodeId{1});
    std::size_t covered = 0;
    for (std::size_t i = 1; i <= p.region_count(); ++i) {
      covered += p.region(i).size();
      for (NodeId v : p.region(i)) {
        EXPECT_EQ(static_cast<long>(shortest_length(p, v)), dist[v.value]);
        if (i == 1) continue;
        bool has_pred = false;
        for (NodeId u : g.in(v)) has_pred = has_pred || p.region_of(u) == i - 1;
        EXPECT_TRUE(has_pred);
      }
    }
    EXPECT_EQ(covered, g.node_count());
    const auto sizes = p.region_sizes();
    for (std::size_t b : find_bridge_regions(p)) {
      ASSERT_GT(b, 1u);
      ASSERT_LT(b, sizes.size());
      EXPECT_TRUE(sizes[b - 2] >= sizes[b - 1] && sizes[b - 1] <= sizes[b]);
    }
  }
}
