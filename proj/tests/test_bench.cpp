#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "bots/bots.hpp"
#include "support.hpp"

using namespace bots;

namespace {

const std::filesystem::path kData = BOTS_DATA_DIR;

}  // namespace

TEST(Oracle, Examples) {
  EXPECT_EQ(oracle_count_paths(generate_grid({5, 5}), NodeId{1}, NodeId{25}), 70);
  EXPECT_EQ(oracle_count_paths(build_graph({Arc{1, 2}}), NodeId{1}, NodeId{2}), 1);
  EXPECT_EQ(oracle_count_paths(build_graph({Arc{1, 2}}), NodeId{1}, NodeId{1}), 1);
  EXPECT_THROW(oracle_count_paths(build_graph({Arc{1, 2}}), NodeId{2}, NodeId{1}), Unreachable);
}

TEST(Oracle, InteriorPairOnSixByFour) {
  const Graph g = generate_grid({6, 4});
  const NodeId s = grid_node(6, 2, 2), t = grid_node(6, 5, 4);
  const auto r = enumerate_shortest_paths(g, partition(g, s), t);
  EXPECT_EQ(oracle_count_paths(g, s, t), Count(r.stats.breadth));
  EXPECT_EQ(r.stats.breadth, 10u);  // C(5, 2)
}

TEST(Oracle, AgreesWithEnumerationOnRandomGraphs) {
  std::mt19937 rng(300);
  for (int trial = 0; trial < 300; ++trial) {
    std::uniform_int_distribution<int> n_d(1, 40), extra_d(0, 60);
    const Graph g = testing_support::random_reachable_digraph(rng, n_d(rng), extra_d(rng));
    std::uniform_int_distribution<std::uint32_t> pick(1, static_cast<std::uint32_t>(g.node_count()));
    const NodeId s{pick(rng)}, t{pick(rng)};
    const auto p = partition_reachable(g, s);
    if (!p.contains(t)) {
      EXPECT_THROW(oracle_count_paths(g, s, t), Unreachable);
      continue;
    }
    EXPECT_EQ(oracle_count_paths(g, s, t), Count(enumerate_shortest_paths(g, p, t).stats.breadth));
  }
}

TEST(Tables, GridTablesMatch) {
  for (int id : {1, 2, 3}) {
    const auto rep = reproduce_table(id, kData);
    EXPECT_TRUE(rep.passed()) << id;
  }
  const auto t1 = reproduce_table(1, kData);
  ASSERT_EQ(t1.rows.size(), 7u);
  for (const auto& row : t1.rows) EXPECT_EQ(row.status, RowStatus::Match) << row.label;
}

TEST(Tables, TypoRowIsFlagged) {
  const auto rep = reproduce_table(3, kData);
  ASSERT_EQ(rep.rows.size(), 3u);
  EXPECT_EQ(rep.rows[0].status, RowStatus::Match);
  EXPECT_EQ(rep.rows[1].status, RowStatus::PaperTypoFlag);
  EXPECT_EQ(rep.rows[1].LT, 39710);
  EXPECT_EQ(rep.rows[1].B, 1830);
  EXPECT_NE(rep.rows[1].note.find("38710"), std::string::npos);
  EXPECT_EQ(rep.rows[2].status, RowStatus::Match);
}

TEST(Tables, CompositeTables) {
  const auto t4 = reproduce_table(4, kData);
  ASSERT_EQ(t4.rows.size(), 2u);
  EXPECT_EQ(t4.rows[0].B, 2450);
  EXPECT_EQ(t4.rows[0].L, 14u);
  EXPECT_EQ(t4.rows[0].LT, 8861);
  EXPECT_EQ(t4.rows[1].B, 1450);
  EXPECT_EQ(t4.rows[1].L, 13u);
  EXPECT_EQ(t4.rows[1].LT, 5276);
  EXPECT_TRUE(t4.passed());
  const auto t5 = reproduce_table(5, kData);
  ASSERT_EQ(t5.rows.size(), 1u);
  EXPECT_EQ(t5.rows[0].B, 31100);
  EXPECT_EQ(t5.rows[0].LT, 113051);
  EXPECT_TRUE(t5.passed());
}

TEST(Tables, MissingFilesAreSkippedNotFabricated) {
  const auto rep = reproduce_table(4, testing_support::scratch_dir("empty"));
  for (const auto& row : rep.rows) {
    EXPECT_EQ(row.status, RowStatus::Skipped);
    EXPECT_EQ(row.B, 0);
  }
  EXPECT_FALSE(rep.passed());
}

TEST(Tables, InvalidCompositeFileIsSkipped) {
  const auto dir = testing_support::scratch_dir("bad");
  save_instance(generate_grid({5, 5}), dir / "fig4.txt");
  const auto rep = reproduce_table(5, dir);
  EXPECT_EQ(rep.rows[0].status, RowStatus::Skipped);
  EXPECT_NE(rep.rows[0].note.find("node count"), std::string::npos) << rep.rows[0].note;
}

TEST(Tables, UnknownTable) { EXPECT_THROW(reproduce_table(6), InvalidArgument); }

TEST(Tables, Csv) {
  std::ostringstream out;
  write_table_csv(reproduce_table(3, kData), out);
  EXPECT_EQ(out.str(),
            "instance,L,LT,B,ratio,status\n"
            "55x3,56,30855,1540,20.04,MATCH\n"
            "60x3,61,39710,1830,21.70,PAPER_TYPO_FLAG\n"
            "65x3,66,50115,2145,23.36,MATCH\n");
}

TEST(Composites, ShippedFilesPass) {
  EXPECT_TRUE(validate_composite(load_instance(kData / "fig3_left.txt"), fig3_left_constraints()).passed());
  EXPECT_TRUE(validate_composite(load_instance(kData / "fig3_right.txt"), fig3_right_constraints()).passed());
  EXPECT_TRUE(validate_composite(load_instance(kData / "fig4.txt"), fig4_constraints()).passed());
}

TEST(Composites, Fig4Legs) {
  const Graph g = load_instance(kData / "fig4.txt");
  EXPECT_EQ(oracle_count_paths(g, NodeId{1}, NodeId{20}), 35);
  EXPECT_EQ(oracle_count_paths(g, NodeId{1}, NodeId{24}), 35);
  EXPECT_EQ(oracle_count_paths(g, NodeId{1}, NodeId{26}), 15);
  EXPECT_EQ(oracle_count_paths(g, NodeId{20}, NodeId{39}), 5);
  EXPECT_EQ(oracle_count_paths(g, NodeId{20}, NodeId{43}), 10);
  EXPECT_EQ(oracle_count_paths(g, NodeId{20}, NodeId{49}), 6);
  EXPECT_EQ(oracle_count_paths(g, NodeId{26}, NodeId{49}), 1);
  EXPECT_EQ(oracle_count_paths(g, NodeId{1}, NodeId{63}), 31100);
}

TEST(Composites, FailuresAreListed) {
  const auto v = validate_composite(generate_grid({5, 5}), fig4_constraints());
  EXPECT_FALSE(v.passed());
  std::size_t failed = 0;
  for (const auto& c : v.checks) failed += c.ok ? 0 : 1;
  EXPECT_GE(failed, 1u);
  // the wrong instance for the right constraints
  EXPECT_FALSE(validate_composite(compose(fig3_right_spec()), fig3_left_constraints()).passed());
}

TEST(ChainGrowth, DepthsTwoToSix) {
  const auto rep = chain_growth_check(2, 6);
  ASSERT_EQ(rep.rows.size(), 5u);
  EXPECT_TRUE(rep.passed());
  EXPECT_TRUE(rep.linear);
  EXPECT_EQ(rep.rows[0].stage_evaluations, (std::vector<std::uint64_t>{85, 50}));
  EXPECT_EQ(rep.rows[1].staged_sum, 196u);
  EXPECT_EQ(rep.rows[1].breadth, 31100);
  EXPECT_EQ(rep.rows[2].nodes, 82u);
  EXPECT_EQ(rep.rows[2].breadth, 660850);
  EXPECT_EQ(rep.rows[4].nodes, 120u);
  for (const auto& row : rep.rows) EXPECT_EQ(row.staged_sum, 13 + 61 * row.depth);
  EXPECT_THROW(chain_growth_check(1, 3), InvalidArgument);
}

TEST(Pascal, Examples) {
  for (std::size_t k = 2; k <= 10; ++k) {
    const auto r = verify_pascal(k);
    EXPECT_TRUE(r.ok) << k;
    EXPECT_EQ(r.corner, binomial(2 * k - 2, k - 1));
  }
  EXPECT_EQ(verify_pascal(5).corner, 70);
  EXPECT_EQ(verify_pascal(10).corner, 48620);
  EXPECT_THROW(verify_pascal(1), InvalidArgument);
}
